//! Finite fields `F_p` and `F_{p^k}` (k <= 3) with elements packed as integers.
//!
//! An element of `F_{p^k}` is stored as the base-`p` integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! of its coefficient vector modulo a fixed monic irreducible polynomial. Elements of the prime
//! field keep the same index inside every extension, which makes the embedding `F_p -> F_{p^k}`
//! the identity on indices.

use crate::error::{Error, Result};

/// Largest extension degree supported.
pub const MAX_EXTENSION_DEGREE: u32 = 3;

/// Fields up to this size get discrete log / antilog tables.
const TABLE_LIMIT: u64 = 1 << 16;

#[derive(Debug)]
struct LogTables {
    /// `exp[i] = g^i` for `i in 0..2(q-1)`, doubled so sums of logs need no reduction.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
}

/// A finite field of order `p^k`.
#[derive(Debug)]
pub struct GaloisField {
    p: u64,
    k: u32,
    q: u64,
    /// Low-order coefficients `c_0..c_{k-1}` of the monic modulus `X^k + c_{k-1} X^{k-1} + ...`.
    /// Empty for prime fields.
    modulus: Vec<u64>,
    tables: Option<LogTables>,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for GaloisField {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl GaloisField {
    /// Builds `F_{p^k}`. For `k > 1` the modulus is the first monic irreducible polynomial of
    /// degree `k` when the low coefficients `(c_{k-1}, ..., c_0)` are read lexicographically.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p >= 1 << 32 {
            return Err(Error::InvalidField(format!("prime {p} exceeds 32 bits")));
        }
        if k == 0 || k > MAX_EXTENSION_DEGREE {
            return Err(Error::InvalidField(format!(
                "extension degree {k} outside 1..={MAX_EXTENSION_DEGREE}"
            )));
        }
        let q = p
            .checked_pow(k)
            .filter(|q| k == 1 || *q < 1 << 32)
            .ok_or_else(|| Error::InvalidField(format!("field of order {p}^{k} is too large")))?;
        let modulus = if k == 1 { Vec::new() } else { smallest_irreducible(p, k) };
        let mut field = GaloisField { p, k, q, modulus, tables: None };
        if q <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Low coefficients of the monic modulus (empty for a prime field).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn build_tables(&self) -> LogTables {
        let q = self.q;
        let n = q - 1;
        let factors = prime_factors(n);
        let generator = (2..q)
            .chain(std::iter::once(1))
            .find(|&g| factors.iter().all(|&r| self.pow_slow(g, n / r) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u64;
        for i in 0..n as usize {
            exp[i] = acc as u32;
            exp[i + n as usize] = acc as u32;
            log[acc as usize] = i as u32;
            acc = self.mul_slow(acc, generator);
        }
        LogTables { exp, log }
    }

    /// Coefficient vector `c_0..c_{k-1}` of an element.
    pub fn coeffs(&self, mut a: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> u64 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p)
    }

    /// Image of an integer under `Z -> F_p -> F_{p^k}`.
    pub fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if self.k == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            let c = a % self.p;
            out += ((self.p - c) % self.p) * place;
            place *= self.p;
            a /= self.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize] as u64,
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return a * b % self.p;
        }
        let k = self.k as usize;
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; 2 * k - 1];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % self.p;
            }
        }
        // X^k = -(c_{k-1} X^{k-1} + ... + c_0)
        for d in (k..2 * k - 1).rev() {
            let top = prod[d];
            if top == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &c) in self.modulus.iter().enumerate() {
                let idx = d - k + i;
                prod[idx] = (prod[idx] + (self.p - top) * c) % self.p;
            }
        }
        self.from_coeffs(&prod[..k])
    }

    fn pow_slow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        if a == 0 {
            return u64::from(e == 0);
        }
        if let Some(t) = &self.tables {
            let n = self.q - 1;
            let l = (t.log[a as usize] as u128 * (e % n) as u128 % n as u128) as usize;
            return t.exp[l] as u64;
        }
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        Some(match &self.tables {
            Some(t) => {
                let n = (self.q - 1) as u32;
                t.exp[((n - t.log[a as usize]) % n) as usize] as u64
            }
            None => self.pow(a, self.q - 2),
        })
    }

    /// A square root of `a`, if one exists. Only table-backed fields of odd characteristic
    /// answer directly; other fields return `None` and callers fall back to general root finding.
    pub(crate) fn sqrt_fast(&self, a: u64) -> Option<Option<u64>> {
        if self.p == 2 {
            return None;
        }
        let t = self.tables.as_ref()?;
        if a == 0 {
            return Some(Some(0));
        }
        let l = t.log[a as usize];
        Some(if l % 2 == 0 { Some(t.exp[(l / 2) as usize] as u64) } else { None })
    }

    /// True when `a` lies in the subfield `F_{p^j}`.
    pub fn in_subfield(&self, a: u64, j: u32) -> bool {
        self.pow(a, self.p.pow(j)) == a
    }

    /// Smallest `j` such that `a` lies in `F_{p^j}`.
    pub fn definition_degree(&self, a: u64) -> u32 {
        (1..=self.k)
            .find(|&j| self.k.is_multiple_of(j) && self.in_subfield(a, j))
            .unwrap_or(self.k)
    }

    /// All elements, in index order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }

    /// Renders an element with `a` standing for the class of `X`.
    pub fn format(&self, v: u64) -> String {
        if self.k == 1 {
            return v.to_string();
        }
        let cs = self.coeffs(v);
        let mut parts = Vec::new();
        for (i, &c) in cs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => var,
                _ => format!("{c}*{var}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }
}

/// Degree 2 and 3 polynomials are irreducible exactly when they have no root.
fn smallest_irreducible(p: u64, k: u32) -> Vec<u64> {
    let count = p.pow(k);
    for code in 0..count {
        // code read as (c_{k-1}, ..., c_0) with c_{k-1} most significant
        let mut low = vec![0u64; k as usize];
        let mut c = code;
        for i in 0..k as usize {
            low[i] = c % p;
            c /= p;
        }
        let has_root = (0..p).any(|x| {
            let mut acc = 1u64;
            for i in (0..k as usize).rev() {
                acc = (acc * x + low[i]) % p;
            }
            acc == 0
        });
        if !has_root {
            return low;
        }
    }
    unreachable!("irreducible polynomials of every degree exist")
}
