//! Lines and points in projective space, singular loci over finite fields, and the
//! even-contact test between the discriminant quintic and the conic.

mod contact;
mod local;
mod projective;
mod search;
mod univariate;

pub use contact::{even_contact_check, share_component, ContactPoint, ContactReport, ContactVerdict};
pub use local::{intersection_multiplicity, is_node, local_expansion, DEFAULT_ORDER_BOUND};
pub use projective::{contains_line, move_line_to_standard, ProjLine, ProjPoint, ProjTransform};
pub use search::{singular_points_plane_curve, smoothness_search, SmoothnessCertificate, SmoothnessVerdict};
