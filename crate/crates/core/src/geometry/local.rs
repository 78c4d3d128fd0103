//! Local algebra of plane curves at a point: tangent cones and intersection multiplicities.

use std::collections::HashMap;

use super::projective::ProjPoint;
use crate::error::{Error, Result};
use crate::matrix::{hessian, scalar_determinant};
use crate::poly::{Alphabet, Monomial, Poly};
use crate::scalar::{Domain, Scalar};

/// Default truncation order for [`intersection_multiplicity`]; above the Bezout bound 10 of a
/// quintic and a conic.
pub const DEFAULT_ORDER_BOUND: u32 = 12;

/// `f` in affine coordinates `(u, v)` centred at `point`.
///
/// The chart is the one where the leading coordinate of `point` equals 1; `u` and `v` are
/// the two remaining coordinates, in order.
pub fn local_expansion(f: &Poly, point: &ProjPoint) -> Result<Poly> {
    if f.alphabet().len() != 3 || point.coords().len() != 3 {
        return Err(Error::InvalidArgument("local expansions are for plane curves".into()));
    }
    let domain = point.domain();
    let f = if *f.domain() == domain { f.clone() } else { f.to_domain(&domain)? };
    let uv = Alphabet::new(&["u", "v"]);
    let lead = point.lead_index();
    let mut free = (0..3).filter(|&i| i != lead);
    let (iu, iv) = (free.next().expect("two"), free.next().expect("two"));
    let images = (0..3)
        .map(|i| {
            let mut terms = vec![(Monomial::one(2), point.coords()[i].clone())];
            if i == iu {
                terms.push((Monomial::var(2, 0), domain.one()));
            }
            if i == iv {
                terms.push((Monomial::var(2, 1), domain.one()));
            }
            Poly::from_terms(&uv, &domain, terms)
        })
        .collect::<Result<Vec<_>>>()?;
    f.compose(&images)
}

/// Whether `point` is an ordinary double point of the plane curve `curve = 0`: the local
/// expansion has no terms of order below 2 and a Hessian of rank 2 at the point.
pub fn is_node(curve: &Poly, point: &ProjPoint) -> Result<bool> {
    let local = local_expansion(curve, point)?;
    let domain = point.domain();
    let origin = [domain.zero(), domain.zero()];
    if !local.evaluate(&origin)?.is_zero() {
        return Err(Error::PointNotOnCurve);
    }
    for var in ["u", "v"] {
        if !local.partial_derivative(var)?.evaluate(&origin)?.is_zero() {
            return Err(Error::SmoothPoint);
        }
    }
    let hess: Vec<Vec<Scalar>> = hessian(&local, &["u", "v"])?
        .iter()
        .map(|row| row.iter().map(|e| e.evaluate(&origin)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    Ok(!scalar_determinant(&hess)?.is_zero())
}

/// `dim k[u,v] / ((f, g) + m^order)`: codimension of the truncated ideal, by Gaussian
/// elimination on the multiples `u^a v^b f`, `u^a v^b g` with `a + b < order`.
fn truncated_colength(f: &Poly, g: &Poly, order: u32, domain: &Domain) -> usize {
    let monomials: Vec<Monomial> = (0..order)
        .flat_map(|d| (0..=d).map(move |a| Monomial::new(vec![a, d - a])))
        .collect();
    let index: HashMap<&Monomial, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let dim = monomials.len();
    // reduced rows keyed by pivot column
    let mut pivots: HashMap<usize, Vec<Scalar>> = HashMap::new();
    for gen in [f, g] {
        for shift in &monomials {
            let mut row = vec![domain.zero(); dim];
            let mut nonzero = false;
            for (m, c) in gen.terms() {
                let prod = m.mul(shift);
                if prod.degree() < order {
                    row[index[&prod]] = c.clone();
                    nonzero = true;
                }
            }
            if !nonzero {
                continue;
            }
            // reduce against existing pivots in column order
            let mut col = 0;
            while let Some(c) = (col..dim).find(|&c| !row[c].is_zero()) {
                match pivots.get(&c) {
                    Some(prow) => {
                        let factor = row[c].clone();
                        for j in c..dim {
                            if !prow[j].is_zero() {
                                row[j] = row[j].sub(&factor.mul(&prow[j]));
                            }
                        }
                        col = c + 1;
                    }
                    None => {
                        let inv = row[c].inv().expect("nonzero");
                        for v in row.iter_mut().skip(c) {
                            *v = v.mul(&inv);
                        }
                        pivots.insert(c, row);
                        break;
                    }
                }
            }
        }
    }
    dim - pivots.len()
}

/// Local intersection number of the plane curves `f = 0` and `g = 0` at `point`.
///
/// Computed as the colength of `(f, g)` in the local ring, truncated at increasing orders
/// until two consecutive truncations agree. Returns 0 when the point is not on both curves,
/// and [`Error::CommonComponent`] when the colength has not stabilized by `order_bound`.
pub fn intersection_multiplicity(f: &Poly, g: &Poly, point: &ProjPoint, order_bound: u32) -> Result<u32> {
    let lf = local_expansion(f, point)?;
    let lg = local_expansion(g, point)?;
    let domain = point.domain();
    let origin = [domain.zero(), domain.zero()];
    if !lf.evaluate(&origin)?.is_zero() || !lg.evaluate(&origin)?.is_zero() {
        return Ok(0);
    }
    let mut prev = truncated_colength(&lf, &lg, 1, &domain);
    for order in 2..=order_bound + 1 {
        let cur = truncated_colength(&lf, &lg, order, &domain);
        if cur == prev {
            return Ok(cur as u32);
        }
        prev = cur;
    }
    Err(Error::CommonComponent(format!(" through {point} (no stabilization below order {order_bound})")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;

    fn plane(src: &str, d: &Domain) -> Poly {
        parse_poly(src, &Alphabet::plane(), d).unwrap()
    }

    #[test]
    fn node_and_cusp() {
        let d = Domain::Rational;
        let origin = ProjPoint::from_ints(&d, &[0, 0, 1]).unwrap();
        // xy + x^3 and x^2 + y^3, homogenized with z
        assert!(is_node(&plane("x*y*z + x^3", &d), &origin).unwrap());
        assert!(!is_node(&plane("x^2*z + y^3", &d), &origin).unwrap());
        assert_eq!(is_node(&plane("x*y*z + z^3", &d), &origin), Err(Error::PointNotOnCurve));
        assert_eq!(is_node(&plane("x*z^2 + y^3", &d), &origin), Err(Error::SmoothPoint));
    }

    #[test]
    fn node_away_from_the_origin_chart() {
        let d = Domain::prime(11).unwrap();
        // node at (1:2:3): (y - 2x)(z - 3x) times a line not through it
        let curve = &(&plane("y - 2*x", &d) * &plane("z - 3*x", &d)) * &plane("x + y + z", &d);
        let p = ProjPoint::from_ints(&d, &[1, 2, 3]).unwrap();
        assert!(is_node(&curve, &p).unwrap());
    }

    #[test]
    fn multiplicity_examples() {
        let d = Domain::Rational;
        let o = ProjPoint::from_ints(&d, &[0, 0, 1]).unwrap();
        let m = |f: &str, g: &str| intersection_multiplicity(&plane(f, &d), &plane(g, &d), &o, DEFAULT_ORDER_BOUND);
        assert_eq!(m("y", "y*z - x^2").unwrap(), 2);
        assert_eq!(m("y", "x").unwrap(), 1);
        assert_eq!(m("y^2*z - x^3", "y").unwrap(), 3);
        assert_eq!(m("y + z", "x").unwrap(), 0);
        assert!(matches!(m("x*y", "x*z + x*y"), Err(Error::CommonComponent(_))));
    }

    #[test]
    fn staircase_oracle() {
        // (y^a, x^b) has colength a*b
        let d = Domain::prime(7).unwrap();
        let o = ProjPoint::from_ints(&d, &[0, 0, 1]).unwrap();
        for a in 1..4u32 {
            for b in 1..4u32 {
                let f = plane(&format!("y^{a}"), &d);
                let g = plane(&format!("x^{b}"), &d);
                assert_eq!(intersection_multiplicity(&f, &g, &o, 12).unwrap(), a * b);
            }
        }
    }
}
