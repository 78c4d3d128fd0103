//! Contact of the conic `h = 0` with the quintic `det A = 0`.
//!
//! Along the conic `l3 det A` is congruent to `-(l3 q1 - l2 q2)^2`, so when both curves are
//! reduced every local intersection number should be even and their sum equal to 10.

use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use super::local::intersection_multiplicity;
use super::projective::ProjPoint;
use super::search::{scan_common_zeros, search_field, CompiledPoly};
use crate::error::{Error, Result};
use crate::matrix::sylvester_resultant;
use crate::poly::Poly;
use crate::scalar::Domain;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContactPoint {
    pub point: ProjPoint,
    /// Degree of the smallest field containing the point's coordinates.
    pub field_degree: u32,
    pub multiplicity: u32,
    pub even: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContactVerdict {
    /// Every multiplicity is even and they add up to the Bezout number.
    EvenComplete,
    /// Some multiplicity is odd.
    OddContact,
    /// All found multiplicities are even but some intersection points lie beyond the searched
    /// extensions.
    Incomplete,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContactReport {
    pub p: u64,
    pub k_max: u32,
    pub points: Vec<ContactPoint>,
    pub total: u32,
    pub bezout: u32,
    pub all_even: bool,
    pub complete: bool,
    pub verdict: ContactVerdict,
}

/// Whether two plane curves share a component: some Sylvester resultant vanishes
/// identically. A common factor involves at least one variable, and the resultant in that
/// variable is then zero.
pub fn share_component(f: &Poly, g: &Poly) -> Result<bool> {
    for var in ["x", "y", "z"] {
        match sylvester_resultant(f, g, var) {
            Ok(r) if r.is_zero() => return Ok(true),
            Ok(_) | Err(Error::VariableAbsent(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(false)
}

/// Enumerates the intersection points of `delta = 0` and `conic = 0` over `F_{p^k}`,
/// `k <= k_max`, and reports their local intersection numbers.
pub fn even_contact_check(
    delta: &Poly,
    conic: &Poly,
    p: u64,
    k_max: u32,
    order_bound: u32,
) -> Result<ContactReport> {
    if delta.is_zero() || conic.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if k_max < 1 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    delta.check_compatible(conic)?;
    let (Some(dd), Some(dh)) = (delta.homogeneous_degree(), conic.homogeneous_degree()) else {
        return Err(Error::InvalidArgument("expected homogeneous plane curves".into()));
    };
    search_field(delta, p, 1)?;
    if share_component(delta, conic)? {
        return Err(Error::CommonComponent(String::new()));
    }
    let mut points = Vec::new();
    for k in 1..=k_max {
        let field = search_field(delta, p, k)?;
        let domain = Domain::Finite(Arc::clone(&field));
        let polys = [CompiledPoly::new(conic, &field)?, CompiledPoly::new(delta, &field)?];
        let mut found = Vec::new();
        scan_common_zeros(&field, &polys, 3, |pt| {
            found.push(ProjPoint::from_packed(&domain, pt));
            ControlFlow::Continue(())
        })?;
        for point in found {
            // points of smaller fields were counted at their own level
            if point.definition_degree() != k {
                continue;
            }
            let multiplicity = intersection_multiplicity(delta, conic, &point, order_bound)?;
            points.push(ContactPoint { point, field_degree: k, multiplicity, even: multiplicity % 2 == 0 });
        }
    }
    let total = points.iter().map(|c| c.multiplicity).sum();
    let bezout = dd * dh;
    let all_even = points.iter().all(|c| c.even);
    let complete = total == bezout;
    let verdict = match (all_even, complete) {
        (false, _) => ContactVerdict::OddContact,
        (true, true) => ContactVerdict::EvenComplete,
        (true, false) => ContactVerdict::Incomplete,
    };
    Ok(ContactReport { p, k_max, points, total, bezout, all_even, complete, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Alphabet;
    use crate::text::parse_poly;

    #[test]
    fn odd_contact_of_a_fifth_power() {
        let d = Domain::prime(11).unwrap();
        let a = Alphabet::plane();
        let delta = parse_poly("x^5", &a, &d).unwrap();
        let h = parse_poly("y*z", &a, &d).unwrap();
        let r = even_contact_check(&delta, &h, 11, 1, 12).unwrap();
        assert_eq!(r.points.len(), 2);
        assert!(r.points.iter().all(|c| c.multiplicity == 5));
        assert_eq!(r.total, 10);
        assert_eq!(r.verdict, ContactVerdict::OddContact);
    }

    #[test]
    fn common_component_detected() {
        let d = Domain::prime(11).unwrap();
        let a = Alphabet::plane();
        let delta = parse_poly("x^4*z + x*y^4", &a, &d).unwrap();
        let h = parse_poly("x*z", &a, &d).unwrap();
        assert!(matches!(even_contact_check(&delta, &h, 11, 1, 12), Err(Error::CommonComponent(_))));
    }

    #[test]
    fn conjugate_points_counted_once() {
        // the only F_7-point of x^2 + z^2 is (0:1:0), which is off the quintic
        let d = Domain::prime(7).unwrap();
        let a = Alphabet::plane();
        let h = parse_poly("x^2 + z^2", &a, &d).unwrap();
        let delta = parse_poly("y^5 + x^4*y + x*z^4", &a, &d).unwrap();
        let r1 = even_contact_check(&delta, &h, 7, 1, 12).unwrap();
        assert!(r1.points.is_empty());
        let r2 = even_contact_check(&delta, &h, 7, 2, 12).unwrap();
        assert!(r2.points.iter().all(|c| c.field_degree == 2));
        assert!(r2.total <= 10);
    }
}
