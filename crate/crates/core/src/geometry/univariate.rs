//! Dense univariate polynomials over a [`GaloisField`], just enough to find roots.
//!
//! Coefficients are packed field elements, lowest degree first.

use crate::field::GaloisField;

/// Brute force is cheaper than Cantor-Zassenhaus below this field size.
const BRUTE_FORCE_LIMIT: u64 = 64;

pub(crate) enum Roots {
    /// The polynomial is identically zero.
    All,
    /// Distinct roots in ascending index order.
    Some(Vec<u64>),
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn eval(field: &GaloisField, a: &[u64], x: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| field.add(field.mul(acc, x), c))
}

fn monic(field: &GaloisField, a: Vec<u64>) -> Vec<u64> {
    let lead = *a.last().expect("nonzero");
    let inv = field.inv(lead).expect("nonzero");
    a.into_iter().map(|c| field.mul(c, inv)).collect()
}

/// Remainder of `a` modulo monic `m`.
fn rem(field: &GaloisField, mut a: Vec<u64>, m: &[u64]) -> Vec<u64> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let top = a.pop().expect("nonempty");
        if top == 0 {
            continue;
        }
        let shift = a.len() - dm;
        for (i, &c) in m[..dm].iter().enumerate() {
            a[shift + i] = field.sub(a[shift + i], field.mul(top, c));
        }
    }
    trim(a)
}

/// Quotient of `a` by monic `m`, assuming exact division.
fn div_exact(field: &GaloisField, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let mut q = vec![0; a.len() - dm];
    while r.len() > dm {
        let top = r.pop().expect("nonempty");
        let shift = r.len() - dm;
        q[shift] = top;
        if top == 0 {
            continue;
        }
        for (i, &c) in m[..dm].iter().enumerate() {
            r[shift + i] = field.sub(r[shift + i], field.mul(top, c));
        }
    }
    debug_assert!(trim(r).is_empty(), "division was not exact");
    q
}

fn mul_mod(field: &GaloisField, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    rem(field, out, m)
}

fn pow_mod(field: &GaloisField, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = rem(field, vec![1], m);
    let mut b = rem(field, base.to_vec(), m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(field, &acc, &b, m);
        }
        b = mul_mod(field, &b, &b, m);
        e >>= 1;
    }
    acc
}

fn gcd(field: &GaloisField, a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let mb = monic(field, b);
        let r = rem(field, a, &mb);
        a = mb;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        monic(field, a)
    }
}

/// Splits a monic squarefree polynomial whose roots all lie in the field (odd characteristic).
fn split(field: &GaloisField, g: Vec<u64>, out: &mut Vec<u64>) {
    match g.len() {
        0 | 1 => {}
        2 => out.push(field.neg(g[0])),
        _ => {
            let half = (field.order() - 1) / 2;
            for shift in 0..field.order() {
                let probe = pow_mod(field, &[shift, 1], half, &g);
                let mut probe = probe;
                if probe.is_empty() {
                    probe.push(0);
                }
                probe[0] = field.sub(probe[0], 1);
                let h = gcd(field, g.clone(), probe);
                if h.len() > 1 && h.len() < g.len() {
                    let rest = div_exact(field, &g, &h);
                    split(field, h, out);
                    split(field, rest, out);
                    return;
                }
            }
            unreachable!("x + a splits a product of distinct linear factors for some a");
        }
    }
}

/// Roots of a univariate polynomial in the field.
pub(crate) fn roots(field: &GaloisField, coeffs: &[u64]) -> Roots {
    let a = trim(coeffs.to_vec());
    match a.len() {
        0 => return Roots::All,
        1 => return Roots::Some(Vec::new()),
        2 => {
            let inv = field.inv(a[1]).expect("nonzero");
            return Roots::Some(vec![field.neg(field.mul(a[0], inv))]);
        }
        _ => {}
    }
    if field.order() <= BRUTE_FORCE_LIMIT {
        return Roots::Some(field.elements().filter(|&x| eval(field, &a, x) == 0).collect());
    }
    if a.len() == 3 {
        if let Some(r) = quadratic_roots(field, &a) {
            return Roots::Some(r);
        }
    }
    // gcd with x^q - x keeps exactly the distinct roots in the field
    let m = monic(field, a);
    let mut xq = pow_mod(field, &[0, 1], field.order(), &m);
    while xq.len() < 2 {
        xq.push(0);
    }
    xq[1] = field.sub(xq[1], 1);
    let g = gcd(field, m, xq);
    let mut out = Vec::new();
    split(field, g, &mut out);
    out.sort_unstable();
    out.dedup();
    Roots::Some(out)
}

fn quadratic_roots(field: &GaloisField, a: &[u64]) -> Option<Vec<u64>> {
    let (c, b, lead) = (a[0], a[1], a[2]);
    let disc = field.sub(field.mul(b, b), field.mul(field.from_i64(4), field.mul(lead, c)));
    let s = match field.sqrt_fast(disc)? {
        None => return Some(Vec::new()),
        Some(s) => s,
    };
    let inv = field.inv(field.mul(field.from_i64(2), lead)).expect("odd characteristic");
    let r1 = field.mul(field.sub(s, b), inv);
    let r2 = field.mul(field.sub(field.neg(s), b), inv);
    let mut r = vec![r1, r2];
    r.sort_unstable();
    r.dedup();
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(field: &GaloisField, a: &[u64]) -> Vec<u64> {
        field.elements().filter(|&x| eval(field, a, x) == 0).collect()
    }

    fn check(field: &GaloisField, a: &[u64]) {
        match roots(field, a) {
            Roots::All => assert!(a.iter().all(|&c| c == 0)),
            Roots::Some(r) => assert_eq!(r, brute(field, a), "poly {a:?}"),
        }
    }

    #[test]
    fn agrees_with_brute_force() {
        let field = GaloisField::new(11, 2).unwrap();
        // products of known linear factors plus noise
        let mut seed = 17u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) % field.order()
        };
        for deg in 1..=6 {
            for _ in 0..40 {
                let a: Vec<u64> = (0..=deg).map(|_| next()).collect();
                check(&field, &a);
            }
        }
        // fully split quintic with a repeated root
        let rts = [3u64, 3, 50, 77, 120];
        let mut a = vec![1u64];
        for r in rts {
            let mut next_poly = vec![0; a.len() + 1];
            for (i, &c) in a.iter().enumerate() {
                next_poly[i + 1] = field.add(next_poly[i + 1], c);
                next_poly[i] = field.sub(next_poly[i], field.mul(c, r));
            }
            a = next_poly;
        }
        check(&field, &a);
    }

    #[test]
    fn large_prime_field() {
        let field = GaloisField::prime(1_000_003).unwrap();
        // (x - 5)(x - 7)(x^2 + 1): -1 is a non-residue mod 1000003 (= 3 mod 4)
        let a = [35, 1_000_003 - 12, 36, 1_000_003 - 12, 1];
        match roots(&field, &a) {
            Roots::Some(r) => assert_eq!(r, vec![5, 7]),
            Roots::All => panic!(),
        }
    }
}
