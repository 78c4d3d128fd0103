//! Seeded random forms and matrices.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::determinantal::{associated_conic, build_cubic, discriminant, SymmetricMatrixRep};
use crate::error::Result;
use crate::geometry::{smoothness_search, SmoothnessCertificate};
use crate::poly::{Alphabet, Monomial, Poly};
use crate::scalar::{Domain, Scalar};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Exponent vectors of total degree `d` in `n` variables, ascending graded-lex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() + 1 == n {
            cur.push(d);
            out.push(Monomial::new(cur.clone()));
            cur.pop();
            return;
        }
        for e in 0..=d {
            cur.push(e);
            rec(n, d - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
    }
    out.sort();
    out
}

/// A uniform scalar over `F_q`, or an integer in `-9..=9` over `Q`.
pub fn random_scalar<R: Rng>(domain: &Domain, rng: &mut R) -> Scalar {
    match domain.field() {
        Some(field) => domain.element(rng.gen_range(0..field.order())),
        None => domain.from_i64(rng.gen_range(-9..=9)),
    }
}

/// A homogeneous form of degree `d` with independent random coefficients.
pub fn random_form<R: Rng>(alphabet: &Alphabet, domain: &Domain, d: u32, rng: &mut R) -> Poly {
    let terms: Vec<_> = monomials_of_degree(alphabet.len(), d)
        .into_iter()
        .map(|m| (m, random_scalar(domain, rng)))
        .collect();
    Poly::from_terms(alphabet, domain, terms).expect("terms over the target domain")
}

/// A random matrix with the degree pattern (1, 1, 1, 2, 2, 3).
pub fn random_matrix<R: Rng>(domain: &Domain, rng: &mut R) -> SymmetricMatrixRep {
    let a = Alphabet::plane();
    let mut form = |d| random_form(&a, domain, d, rng);
    let (l1, l2, l3) = (form(1), form(1), form(1));
    let (q1, q2, f) = (form(2), form(2), form(3));
    SymmetricMatrixRep::new(l1, l2, l3, q1, q2, f).expect("degree pattern holds by construction")
}

#[derive(Clone, Debug, Serialize)]
pub struct SmoothSearch {
    #[serde(skip)]
    pub matrix: SymmetricMatrixRep,
    pub certificate: SmoothnessCertificate,
    /// Number of matrices drawn, including the returned one.
    pub attempts: u32,
}

/// Draws matrices over `F_p` from `rng` until one has nonzero `det A` and `h` and a cubic with
/// no singular point over `F_{p^k}`, `k <= k_max`.
pub fn search_smooth_matrix<R: Rng>(
    domain: &Domain,
    rng: &mut R,
    k_max: u32,
    max_attempts: u32,
) -> Result<Option<SmoothSearch>> {
    let p = domain.characteristic();
    for attempts in 1..=max_attempts {
        let matrix = random_matrix(domain, rng);
        if discriminant(&matrix).is_degenerate() || associated_conic(&matrix).is_degenerate() {
            continue;
        }
        let cubic = build_cubic(&matrix)?;
        let certificate = smoothness_search(cubic.form(), 4, p, k_max)?;
        if !certificate.is_singular() {
            return Ok(Some(SmoothSearch { matrix, certificate, attempts }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 3).len(), 10);
        assert_eq!(monomials_of_degree(5, 3).len(), 35);
        assert_eq!(monomials_of_degree(3, 0), vec![Monomial::one(3)]);
        assert!(monomials_of_degree(3, 2).iter().all(|m| m.degree() == 2));
    }

    #[test]
    fn seeded_draws_repeat() {
        let d = Domain::prime(101).unwrap();
        let a = random_matrix(&d, &mut seeded_rng(5));
        let b = random_matrix(&d, &mut seeded_rng(5));
        assert_eq!(a, b);
    }

    #[test]
    fn rational_coefficients_are_digits() {
        let mut rng = seeded_rng(1);
        let f = random_form(&Alphabet::plane(), &Domain::Rational, 3, &mut rng);
        assert!(f.terms().all(|(_, c)| {
            let s = c.to_string();
            s.trim_start_matches('-').len() == 1
        }));
    }
}
