use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{scalar_determinant, scalar_inverse, scalar_matmul, scalar_rank};
use crate::poly::{Alphabet, Monomial, Poly};
use crate::scalar::{Domain, Scalar};

/// A point of `P^n`, stored with its first nonzero coordinate scaled to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: Vec<Scalar>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Scalar>) -> Result<Self> {
        let Some(first) = coords.first() else {
            return Err(Error::InvalidArgument("a point needs coordinates".into()));
        };
        let domain = first.domain();
        if let Some(c) = coords.iter().find(|c| c.domain() != domain) {
            return Err(Error::DomainMismatch(domain.to_string(), c.domain().to_string()));
        }
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidArgument("the zero vector is not a projective point".into()))?;
        let inv = lead.inv().expect("nonzero");
        Ok(ProjPoint { coords: coords.iter().map(|c| c.mul(&inv)).collect() })
    }

    pub fn from_ints(domain: &Domain, coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| domain.from_i64(c)).collect())
    }

    /// Builds a point from packed field indices that are already normalized.
    pub(crate) fn from_packed(domain: &Domain, coords: &[u64]) -> Self {
        let p = ProjPoint { coords: coords.iter().map(|&c| domain.element(c)).collect() };
        debug_assert!(p.coords.iter().find(|c| !c.is_zero()).is_some_and(Scalar::is_one));
        p
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    /// Ambient dimension `n` of `P^n`.
    pub fn dimension(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn domain(&self) -> Domain {
        self.coords[0].domain()
    }

    /// Index of the leading (unit) coordinate.
    pub fn lead_index(&self) -> usize {
        self.coords.iter().position(|c| !c.is_zero()).expect("nonzero point")
    }

    pub fn to_domain(&self, target: &Domain) -> Result<ProjPoint> {
        ProjPoint::new(self.coords.iter().map(|c| c.to_domain(target)).collect::<Result<_>>()?)
    }

    /// Smallest `j` with every coordinate in `F_{p^j}` (1 for rational points).
    pub fn definition_degree(&self) -> u32 {
        match self.domain() {
            Domain::Rational => 1,
            Domain::Finite(f) => {
                let k = f.degree();
                (1..=k)
                    .find(|&j| {
                        k % j == 0
                            && self.coords.iter().all(|c| f.in_subfield(c.as_packed().expect("finite"), j))
                    })
                    .unwrap_or(k)
            }
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(Scalar::to_string).collect();
        write!(f, "({})", parts.join(":"))
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.coords.iter().map(Scalar::to_string).collect();
        parts.serialize(s)
    }
}

/// A line of projective space spanned by two points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjLine {
    a: ProjPoint,
    b: ProjPoint,
}

impl ProjLine {
    pub fn new(a: ProjPoint, b: ProjPoint) -> Result<Self> {
        if a.coords.len() != b.coords.len() {
            return Err(Error::DimensionMismatch { expected: a.coords.len(), found: b.coords.len() });
        }
        if a.domain() != b.domain() {
            return Err(Error::DomainMismatch(a.domain().to_string(), b.domain().to_string()));
        }
        if scalar_rank(&[a.coords.clone(), b.coords.clone()]) < 2 {
            return Err(Error::DegenerateSpan);
        }
        Ok(ProjLine { a, b })
    }

    /// The line `x = y = z = 0` of `P^4`, spanned by `e_w` and `e_t`.
    pub fn standard(domain: &Domain) -> Self {
        let a = ProjPoint::from_ints(domain, &[0, 0, 0, 1, 0]).expect("unit vector");
        let b = ProjPoint::from_ints(domain, &[0, 0, 0, 0, 1]).expect("unit vector");
        ProjLine { a, b }
    }

    pub fn points(&self) -> (&ProjPoint, &ProjPoint) {
        (&self.a, &self.b)
    }

    pub fn domain(&self) -> Domain {
        self.a.domain()
    }

    /// Whether two spans coincide.
    pub fn same_as(&self, other: &ProjLine) -> bool {
        let rows = vec![
            self.a.coords.clone(),
            self.b.coords.clone(),
            other.a.coords.clone(),
            other.b.coords.clone(),
        ];
        self.domain() == other.domain() && scalar_rank(&rows) == 2
    }
}

/// An invertible linear map of projective space acting on column vectors of coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjTransform {
    matrix: Vec<Vec<Scalar>>,
}

impl ProjTransform {
    pub fn new(matrix: Vec<Vec<Scalar>>) -> Result<Self> {
        if scalar_determinant(&matrix)?.is_zero() {
            return Err(Error::SingularTransform);
        }
        Ok(ProjTransform { matrix })
    }

    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    pub fn inverse(&self) -> ProjTransform {
        let inv = scalar_inverse(&self.matrix)
            .expect("square")
            .expect("invertible by construction");
        ProjTransform { matrix: inv }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &ProjTransform) -> ProjTransform {
        ProjTransform { matrix: scalar_matmul(&self.matrix, &other.matrix) }
    }

    pub fn apply_point(&self, p: &ProjPoint) -> Result<ProjPoint> {
        let column: Vec<Vec<Scalar>> = p.coords.iter().map(|c| vec![c.clone()]).collect();
        if column.len() != self.matrix.len() {
            return Err(Error::DimensionMismatch { expected: self.matrix.len(), found: column.len() });
        }
        ProjPoint::new(scalar_matmul(&self.matrix, &column).into_iter().map(|mut r| r.remove(0)).collect())
    }

    pub fn apply_line(&self, l: &ProjLine) -> Result<ProjLine> {
        ProjLine::new(self.apply_point(&l.a)?, self.apply_point(&l.b)?)
    }

    /// Equation of the image hypersurface: `F o T^{-1}`.
    pub fn push_forward_form(&self, f: &Poly) -> Result<Poly> {
        let domain = self.matrix[0][0].domain();
        let f = if *f.domain() == domain { f.clone() } else { f.to_domain(&domain)? };
        f.substitute_linear(&self.inverse().matrix)
    }
}

/// Whether the hypersurface `F = 0` contains the line `L`.
///
/// Substitutes `s a + u b` for the coordinates and checks that the resulting binary form
/// vanishes identically.
pub fn contains_line(form: &Poly, line: &ProjLine) -> Result<bool> {
    let n = form.alphabet().len();
    if n != line.a.coords.len() {
        return Err(Error::DimensionMismatch { expected: n, found: line.a.coords.len() });
    }
    let domain = line.domain();
    let form = if *form.domain() == domain { form.clone() } else { form.to_domain(&domain)? };
    let su = Alphabet::new(&["s", "u"]);
    let images = (0..n)
        .map(|i| {
            Poly::from_terms(
                &su,
                &domain,
                [
                    (Monomial::new(vec![1, 0]), line.a.coords[i].clone()),
                    (Monomial::new(vec![0, 1]), line.b.coords[i].clone()),
                ],
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(form.compose(&images)?.is_zero())
}

/// A transform sending `L` to the standard line `x = y = z = 0`.
///
/// The spanning points are completed to a basis by adding standard basis vectors greedily
/// in coordinate order; the transform is the inverse of the basis matrix with columns
/// `(completion, a, b)`, so `a -> e_w` and `b -> e_t`.
pub fn move_line_to_standard(line: &ProjLine) -> Result<ProjTransform> {
    let n = line.a.coords.len();
    if n != 5 {
        return Err(Error::DimensionMismatch { expected: 5, found: n });
    }
    let domain = line.domain();
    let unit = |i: usize| -> Vec<Scalar> {
        (0..n).map(|j| if i == j { domain.one() } else { domain.zero() }).collect()
    };
    let mut chosen: Vec<Vec<Scalar>> = vec![line.a.coords.clone(), line.b.coords.clone()];
    let mut completion = Vec::new();
    for i in 0..n {
        if completion.len() == n - 2 {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(unit(i));
        if scalar_rank(&trial) == trial.len() {
            chosen = trial;
            completion.push(unit(i));
        }
    }
    if completion.len() != n - 2 {
        return Err(Error::DegenerateSpan);
    }
    let columns: Vec<Vec<Scalar>> =
        completion.into_iter().chain([line.a.coords.clone(), line.b.coords.clone()]).collect();
    let basis: Vec<Vec<Scalar>> = (0..n).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    Ok(ProjTransform::new(basis)?.inverse())
}
