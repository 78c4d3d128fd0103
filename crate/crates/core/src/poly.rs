//! Sparse multivariate polynomials over a [`Domain`].
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose ordering is graded lexicographic
//! with respect to the declared alphabet. Zero coefficients are never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{Domain, Scalar};

/// Ordered variable names. Variable `i` of a monomial refers to `names[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet(Arc<[String]>);

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Alphabet(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    /// `x, y, z`: coordinates of the plane.
    pub fn plane() -> Self {
        Self::new(&["x", "y", "z"])
    }

    /// `x, y, z, w, t`: coordinates of projective 4-space.
    pub fn p4() -> Self {
        Self::new(&["x", "y", "z", "w", "t"])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.0
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.join(","))
    }
}

/// Exponent vector over an alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total degree, with `-inf` for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    alphabet: Alphabet,
    domain: Domain,
    terms: BTreeMap<Monomial, Scalar>,
}

/// `a op b` after checking that alphabets and domains agree.
pub fn poly_arith(a: &Poly, b: &Poly, op: ArithOp) -> Result<Poly> {
    a.check_compatible(b)?;
    Ok(match op {
        ArithOp::Add => a.add_unchecked(b, false),
        ArithOp::Sub => a.add_unchecked(b, true),
        ArithOp::Mul => a.mul_unchecked(b),
    })
}

impl Poly {
    pub fn zero(alphabet: &Alphabet, domain: &Domain) -> Self {
        Poly { alphabet: alphabet.clone(), domain: domain.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(alphabet: &Alphabet, c: Scalar) -> Self {
        let mut p = Self::zero(alphabet, &c.domain());
        if !c.is_zero() {
            p.terms.insert(Monomial::one(alphabet.len()), c);
        }
        p
    }

    pub fn var(alphabet: &Alphabet, domain: &Domain, name: &str) -> Result<Self> {
        let i = alphabet.index_of(name)?;
        Ok(Self::var_index(alphabet, domain, i))
    }

    pub fn var_index(alphabet: &Alphabet, domain: &Domain, i: usize) -> Self {
        Self::monomial(alphabet, Monomial::var(alphabet.len(), i), domain.one())
    }

    pub fn monomial(alphabet: &Alphabet, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.0.len(), alphabet.len(), "monomial length must match the alphabet");
        let mut p = Self::zero(alphabet, &c.domain());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from terms, merging repeats and dropping zeros.
    pub fn from_terms(
        alphabet: &Alphabet,
        domain: &Domain,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self> {
        let mut p = Self::zero(alphabet, domain);
        for (m, c) in terms {
            if m.0.len() != alphabet.len() {
                return Err(Error::DimensionMismatch { expected: alphabet.len(), found: m.0.len() });
            }
            if c.domain() != *domain {
                return Err(Error::DomainMismatch(c.domain().to_string(), domain.to_string()));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = existing.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.domain.zero())
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::NegInfinity, |m| Degree::Finite(m.degree()))
    }

    /// Common degree of all terms; `None` for mixed degrees and for zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.is_zero() || self.homogeneous_degree() == Some(d)
    }

    pub fn degree_in(&self, var: usize) -> Degree {
        self.terms
            .keys()
            .map(|m| m.0[var])
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(self.alphabet.to_string(), other.alphabet.to_string()));
        }
        if self.domain != other.domain {
            return Err(Error::DomainMismatch(self.domain.to_string(), other.domain.to_string()));
        }
        Ok(())
    }

    fn add_unchecked(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), if negate { c.neg() } else { c.clone() });
        }
        out
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(&self.alphabet, &self.domain);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        poly_arith(self, other, ArithOp::Add)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        poly_arith(self, other, ArithOp::Sub)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        poly_arith(self, other, ArithOp::Mul)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut out = Poly::zero(&self.alphabet, &self.domain);
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            let v = a.mul(c);
            if !v.is_zero() {
                out.terms.insert(m.clone(), v);
            }
        }
        out
    }

    pub fn scale_int(&self, n: i64) -> Poly {
        self.scale(&self.domain.from_i64(n))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(&self.alphabet, self.domain.one());
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Formal partial derivative by variable index.
    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(&self.alphabet, &self.domain);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(Monomial(exps), c.mul_int(e as i64));
        }
        out
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Poly> {
        Ok(self.derivative(self.alphabet.index_of(var)?))
    }

    /// Substitutes polynomials for the variables: variable `i` becomes `images[i]`.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.alphabet.len() {
            return Err(Error::DimensionMismatch { expected: self.alphabet.len(), found: images.len() });
        }
        let (alphabet, domain) = match images.first() {
            Some(first) => (first.alphabet.clone(), first.domain.clone()),
            None => return Ok(self.clone()),
        };
        for img in images {
            if img.alphabet != alphabet {
                return Err(Error::AlphabetMismatch(alphabet.to_string(), img.alphabet.to_string()));
            }
            if img.domain != domain {
                return Err(Error::DomainMismatch(domain.to_string(), img.domain.to_string()));
            }
        }
        if self.domain != domain {
            return Err(Error::DomainMismatch(self.domain.to_string(), domain.to_string()));
        }
        let max_exp: Vec<u32> = (0..images.len())
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        // powers[i][e] = images[i]^e
        let powers: Vec<Vec<Poly>> = images
            .iter()
            .zip(&max_exp)
            .map(|(img, &top)| {
                let mut v = vec![Poly::constant(&alphabet, domain.one())];
                for e in 1..=top as usize {
                    let next = v[e - 1].mul_unchecked(img);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Poly::zero(&alphabet, &domain);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(&alphabet, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul_unchecked(&powers[i][e as usize]);
                }
            }
            out = out.add_unchecked(&term, false);
        }
        Ok(out)
    }

    /// Replaces variable `i` by `sum_j t[i][j] * var_j`.
    ///
    /// With this convention `f.substitute_linear(A).substitute_linear(B)` equals
    /// `f.substitute_linear(A * B)`.
    pub fn substitute_linear(&self, t: &[Vec<Scalar>]) -> Result<Poly> {
        let n = self.alphabet.len();
        if t.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: t.len() });
        }
        for row in t {
            if row.len() != n {
                return Err(Error::NotSquare { rows: n, cols: row.len() });
            }
        }
        let det = crate::matrix::scalar_determinant(t)?;
        if det.is_zero() {
            return Err(Error::SingularTransform);
        }
        let images = t
            .iter()
            .map(|row| {
                let terms = row
                    .iter()
                    .enumerate()
                    .map(|(j, c)| (Monomial::var(n, j), c.clone()));
                Poly::from_terms(&self.alphabet, &self.domain, terms)
            })
            .collect::<Result<Vec<_>>>()?;
        self.compose(&images)
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.alphabet.len() {
            return Err(Error::DimensionMismatch { expected: self.alphabet.len(), found: point.len() });
        }
        if let Some(c) = point.iter().find(|c| c.domain() != self.domain) {
            return Err(Error::DomainMismatch(self.domain.to_string(), c.domain().to_string()));
        }
        let mut acc = self.domain.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    term = term.mul(&x.pow(e));
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Coefficients with respect to one variable: entry `j` multiplies `var^j`.
    /// The coefficient polynomials keep the alphabet and no longer involve `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let top = match self.degree_in(var) {
            Degree::NegInfinity => return Vec::new(),
            Degree::Finite(d) => d as usize,
        };
        let mut out = vec![Poly::zero(&self.alphabet, &self.domain); top + 1];
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            let e = std::mem::replace(&mut exps[var], 0) as usize;
            out[e].terms.insert(Monomial(exps), c.clone());
        }
        out
    }

    /// Moves the polynomial to another alphabet, matching variables by name.
    pub fn with_alphabet(&self, target: &Alphabet) -> Result<Poly> {
        let map = self
            .alphabet
            .names()
            .iter()
            .map(|n| target.index_of(n).ok())
            .collect::<Vec<_>>();
        let mut out = Poly::zero(target, &self.domain);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps[j] = e,
                    None => return Err(Error::UnknownVariable(self.alphabet.names()[i].clone())),
                }
            }
            out.terms.insert(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    /// Maps every coefficient into another domain (reduction mod `p`, or prime-field embedding).
    pub fn to_domain(&self, target: &Domain) -> Result<Poly> {
        let mut out = Poly::zero(&self.alphabet, target);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.to_domain(target)?);
        }
        Ok(out)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("incompatible polynomials")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("incompatible polynomials")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale_int(-1)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, names: &[String], m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (name, &e) in names.iter().zip(&m.0) {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            f.write_str(name)?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

/// Canonical text form: terms in descending graded-lex order, `c*x^a*y^b`, unit
/// coefficients omitted, `0` for the zero polynomial. Over `F_p` coefficients print as
/// representatives in `[0, p)`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let names = self.alphabet.names();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { c.neg() } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let constant = m.degree() == 0;
            let coeff = abs.to_string();
            let wrapped = if coeff.contains('+') { format!("({coeff})") } else { coeff };
            if constant {
                f.write_str(&wrapped)?;
            } else {
                if !abs.is_one() {
                    write!(f, "{wrapped}*")?;
                }
                write_monomial(f, names, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> (Alphabet, Domain, Poly, Poly, Poly) {
        let a = Alphabet::plane();
        let d = Domain::Rational;
        let x = Poly::var(&a, &d, "x").unwrap();
        let y = Poly::var(&a, &d, "y").unwrap();
        let z = Poly::var(&a, &d, "z").unwrap();
        (a, d, x, y, z)
    }

    #[test]
    fn arithmetic_examples() {
        let (a, d, x, y, _) = xyz();
        assert_eq!(&(&x + &y) + &(&x - &y), x.scale_int(2));
        assert_eq!(&(&x + &y) * &(&x - &y), &x.pow(2) - &y.pow(2));
        let zero = Poly::zero(&a, &d);
        assert!((&zero * &(&x + &y.pow(3))).is_zero());
        assert_eq!(zero.total_degree(), Degree::NegInfinity);
    }

    #[test]
    fn mismatches_are_errors() {
        let (_, _, x, _, _) = xyz();
        let p7 = x.to_domain(&Domain::prime(7).unwrap()).unwrap();
        assert!(matches!(x.try_add(&p7), Err(Error::DomainMismatch(..))));
        let other = x.with_alphabet(&Alphabet::p4()).unwrap();
        assert!(matches!(x.try_mul(&other), Err(Error::AlphabetMismatch(..))));
    }

    #[test]
    fn derivative_examples() {
        let (_, _, x, y, _) = xyz();
        assert_eq!(x.pow(3).partial_derivative("x").unwrap(), x.pow(2).scale_int(3));
        assert!((&x * &y).partial_derivative("z").unwrap().is_zero());
        let f = &(&x.pow(2) * &y) + &y.pow(3);
        assert_eq!(f.partial_derivative("y").unwrap(), &x.pow(2) + &y.pow(2).scale_int(3));
        assert!(matches!(f.partial_derivative("q"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn substitution_examples() {
        let a = Alphabet::p4();
        let d = Domain::Rational;
        let v = |n: &str| Poly::var(&a, &d, n).unwrap();
        let one = d.one();
        let zero = d.zero();
        let identity: Vec<Vec<Scalar>> = (0..5)
            .map(|i| (0..5).map(|j| if i == j { one.clone() } else { zero.clone() }).collect())
            .collect();
        assert_eq!(v("x").substitute_linear(&identity).unwrap(), v("x"));

        let mut swap = identity.clone();
        swap.swap(0, 1);
        assert_eq!(v("x").pow(2).substitute_linear(&swap).unwrap(), v("y").pow(2));

        // w -> w + x
        let mut shear = identity.clone();
        shear[3][0] = one.clone();
        let f = &v("x") * &v("w");
        assert_eq!(f.substitute_linear(&shear).unwrap(), &(&v("x") * &v("w")) + &v("x").pow(2));

        let mut singular = identity;
        singular[4] = vec![zero.clone(); 5];
        assert_eq!(f.substitute_linear(&singular), Err(Error::SingularTransform));
    }

    #[test]
    fn display_is_descending_grlex() {
        let (_, d, x, y, z) = xyz();
        let f = &(&(&x.pow(2) * &y) - &z.scale(&d.from_rational(&num_rational::BigRational::new(7.into(), 2.into())).unwrap())) + &Poly::constant(x.alphabet(), d.from_i64(-1));
        assert_eq!(f.to_string(), "x^2*y - 7/2*z - 1");
        assert_eq!((-&x).to_string(), "-x");
        let g = &(&y.pow(2) + &(&x * &z)) + &x.pow(2);
        assert_eq!(g.to_string(), "x^2 + x*z + y^2");
    }

    #[test]
    fn coefficients_in_a_variable() {
        let (_, _, x, y, _) = xyz();
        let f = &(&x.pow(2) * &y) + &(&x * &y.pow(2));
        let cs = f.coefficients_in(0);
        assert_eq!(cs.len(), 3);
        assert!(cs[0].is_zero());
        assert_eq!(cs[1], y.pow(2));
        assert_eq!(cs[2], y);
    }
}
