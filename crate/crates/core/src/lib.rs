//! Exact polynomial arithmetic over `Q` and finite fields, symmetric determinantal
//! representations of plane quintics, cubic threefolds containing a line, and the degree
//! bookkeeping of admissible double covers.

pub mod cover;
pub mod determinantal;
pub mod error;
pub mod field;
pub mod geometry;
pub mod matrix;
pub mod pipeline;
pub mod poly;
pub mod random;
pub mod scalar;
pub mod text;

pub use determinantal::{
    associated_conic, build_cubic, discriminant, extract_matrix, Conic, CubicThreefold, PlaneQuintic,
    SymmetricMatrixRep,
};
pub use error::{Error, ParseError, Result};
pub use field::GaloisField;
pub use poly::{poly_arith, Alphabet, ArithOp, Degree, Monomial, Poly};
pub use scalar::{Domain, DomainTag, Scalar};
