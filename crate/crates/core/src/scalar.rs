//! Exact coefficients: rationals with arbitrary-precision parts, or elements of `F_{p^k}`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::GaloisField;

/// The coefficient ring of a polynomial.
#[derive(Clone, Debug)]
pub enum Domain {
    Rational,
    Finite(Arc<GaloisField>),
}

/// Coarse classification of a [`Domain`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainTag {
    Rational,
    PrimeField(u64),
    Extension { p: u64, k: u32 },
}

impl PartialEq for Domain {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Domain::Rational, Domain::Rational) => true,
            (Domain::Finite(a), Domain::Finite(b)) => Arc::ptr_eq(a, b) || **a == **b,
            _ => false,
        }
    }
}

impl Eq for Domain {}

impl Domain {
    pub fn prime(p: u64) -> Result<Self> {
        Ok(Domain::Finite(Arc::new(GaloisField::prime(p)?)))
    }

    pub fn extension(p: u64, k: u32) -> Result<Self> {
        Ok(Domain::Finite(Arc::new(GaloisField::new(p, k)?)))
    }

    pub fn tag(&self) -> DomainTag {
        match self {
            Domain::Rational => DomainTag::Rational,
            Domain::Finite(f) if f.degree() == 1 => DomainTag::PrimeField(f.characteristic()),
            Domain::Finite(f) => DomainTag::Extension { p: f.characteristic(), k: f.degree() },
        }
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            Domain::Rational => 0,
            Domain::Finite(f) => f.characteristic(),
        }
    }

    pub fn field(&self) -> Option<&Arc<GaloisField>> {
        match self {
            Domain::Rational => None,
            Domain::Finite(f) => Some(f),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Domain::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Domain::Finite(f) => Scalar::Finite(FieldElem { value: f.from_i64(n), field: f.clone() }),
        }
    }

    /// Image of a rational number; fails when the denominator vanishes modulo `p`.
    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar> {
        match self {
            Domain::Rational => Ok(Scalar::Rational(r.clone())),
            Domain::Finite(f) => {
                let p = BigInt::from(f.characteristic());
                let reduce = |n: &BigInt| n.mod_floor(&p).to_u64().expect("residue fits");
                let num = reduce(r.numer());
                let den = reduce(r.denom());
                let inv = f.inv(den).ok_or_else(|| Error::NotInvertible(format!("denominator {}", r.denom())))?;
                Ok(Scalar::Finite(FieldElem { value: f.mul(num, inv), field: f.clone() }))
            }
        }
    }

    /// Element with the given packed index (finite domains only).
    pub fn element(&self, value: u64) -> Scalar {
        match self {
            Domain::Rational => panic!("packed elements exist only in finite domains"),
            Domain::Finite(f) => {
                assert!(value < f.order(), "element index out of range");
                Scalar::Finite(FieldElem { value, field: f.clone() })
            }
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag() {
            DomainTag::Rational => write!(f, "QQ"),
            DomainTag::PrimeField(p) => write!(f, "GF({p})"),
            DomainTag::Extension { p, k } => write!(f, "GF({p}^{k})"),
        }
    }
}

/// An element of a finite field together with the field it lives in.
#[derive(Clone, Debug)]
pub struct FieldElem {
    field: Arc<GaloisField>,
    value: u64,
}

impl FieldElem {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    /// Coefficient vector over the prime field, length exactly `k`.
    pub fn coeffs(&self) -> Vec<u64> {
        self.field.coeffs(self.value)
    }
}

/// An exact scalar.
///
/// Arithmetic between scalars of different domains panics; polynomial-level operations check
/// domains first and report [`Error::DomainMismatch`].
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Finite(FieldElem),
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Finite(a), Scalar::Finite(b)) => {
                a.value == b.value && (Arc::ptr_eq(&a.field, &b.field) || *a.field == *b.field)
            }
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Scalar::Rational(r) => {
                0u8.hash(state);
                r.numer().hash(state);
                r.denom().hash(state);
            }
            Scalar::Finite(e) => {
                1u8.hash(state);
                e.value.hash(state);
            }
        }
    }
}

impl Scalar {
    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Rational(_) => Domain::Rational,
            Scalar::Finite(e) => Domain::Finite(e.field.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Finite(e) => e.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Finite(e) => e.value == 1,
        }
    }

    /// Packed index for finite-field scalars.
    pub fn as_packed(&self) -> Option<u64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Finite(e) => Some(e.value),
        }
    }

    fn finite_op(a: &FieldElem, b: &FieldElem, op: impl Fn(&GaloisField, u64, u64) -> u64) -> Scalar {
        assert!(
            Arc::ptr_eq(&a.field, &b.field) || *a.field == *b.field,
            "scalar arithmetic across different fields"
        );
        Scalar::Finite(FieldElem { value: op(&a.field, a.value, b.value), field: a.field.clone() })
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Finite(a), Scalar::Finite(b)) => Self::finite_op(a, b, GaloisField::add),
            _ => panic!("scalar arithmetic across different domains"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Finite(a), Scalar::Finite(b)) => Self::finite_op(a, b, GaloisField::sub),
            _ => panic!("scalar arithmetic across different domains"),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Finite(a), Scalar::Finite(b)) => Self::finite_op(a, b, GaloisField::mul),
            _ => panic!("scalar arithmetic across different domains"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Finite(a) => {
                Scalar::Finite(FieldElem { value: a.field.neg(a.value), field: a.field.clone() })
            }
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(a) if a.is_zero() => None,
            Scalar::Rational(a) => Some(Scalar::Rational(a.recip())),
            Scalar::Finite(a) => a
                .field
                .inv(a.value)
                .map(|value| Scalar::Finite(FieldElem { value, field: a.field.clone() })),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(num_traits::pow(a.clone(), e as usize)),
            Scalar::Finite(a) => Scalar::Finite(FieldElem {
                value: a.field.pow(a.value, e as u64),
                field: a.field.clone(),
            }),
        }
    }

    /// Multiplies by a small integer (the image of `n` in the domain).
    pub fn mul_int(&self, n: i64) -> Scalar {
        self.mul(&self.domain().from_i64(n))
    }

    /// Whether the value prints with a leading minus sign (negative rationals only).
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }

    /// Re-express the scalar in another domain: reduction `Q -> F_p`, embedding `F_p -> F_{p^k}`.
    pub fn to_domain(&self, target: &Domain) -> Result<Scalar> {
        match (self, target) {
            (Scalar::Rational(r), _) => target.from_rational(r),
            (Scalar::Finite(e), Domain::Finite(f)) => {
                if *e.field == **f {
                    return Ok(Scalar::Finite(FieldElem { value: e.value, field: f.clone() }));
                }
                if e.field.degree() == 1 && e.field.characteristic() == f.characteristic() {
                    return Ok(Scalar::Finite(FieldElem { value: e.value, field: f.clone() }));
                }
                Err(Error::DomainMismatch(self.domain().to_string(), target.to_string()))
            }
            (Scalar::Finite(_), Domain::Rational) => {
                Err(Error::DomainMismatch(self.domain().to_string(), target.to_string()))
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Finite(e) => write!(f, "{}", e.field.format(e.value)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let s = Domain::Rational.from_rational(&q(6, -4)).unwrap();
        match &s {
            Scalar::Rational(r) => {
                assert_eq!(r.numer(), &BigInt::from(-3));
                assert_eq!(r.denom(), &BigInt::from(2));
            }
            _ => unreachable!(),
        }
        assert_eq!(s.to_string(), "-3/2");
    }

    #[test]
    fn reduction_modulo_p() {
        let d = Domain::prime(7).unwrap();
        let half = d.from_rational(&q(1, 2)).unwrap();
        assert_eq!(half.as_packed(), Some(4));
        assert!(d.from_rational(&q(1, 14)).is_err());
        assert_eq!(d.from_i64(-3).as_packed(), Some(4));
    }

    #[test]
    fn embedding_into_extension() {
        let base = Domain::prime(11).unwrap();
        let ext = Domain::extension(11, 2).unwrap();
        let five = base.from_i64(5);
        let e = five.to_domain(&ext).unwrap();
        assert_eq!(e.as_packed(), Some(5));
        if let Scalar::Finite(fe) = &e {
            assert_eq!(fe.coeffs().len(), 2);
        }
        assert!(e.to_domain(&base).is_err());
        assert_eq!(ext.tag(), DomainTag::Extension { p: 11, k: 2 });
    }

    #[test]
    fn inverse_and_zero() {
        let d = Domain::Rational;
        assert!(d.zero().inv().is_none());
        assert_eq!(d.from_i64(4).inv().unwrap().mul(&d.from_i64(4)), d.one());
    }
}
