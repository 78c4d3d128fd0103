//! Exhaustive common-zero scans over `P^n(F_{p^k})`.
//!
//! Points are visited in canonical form (first nonzero coordinate 1) in lexicographic order
//! of their packed coordinates. All coordinates but the last are enumerated; the last one is
//! solved for as a root of the first polynomial that does not vanish identically after the
//! others are fixed, and the remaining polynomials are checked at those roots only.

use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use super::projective::ProjPoint;
use super::univariate::{self, Roots};
use crate::error::{Error, Result};
use crate::field::GaloisField;
use crate::poly::Poly;
use crate::scalar::Domain;

/// A polynomial with coefficients packed into a fixed finite field, grouped by the exponent
/// of the last variable.
pub(crate) struct CompiledPoly {
    /// `by_last[j]` lists `(exponents of the other variables, coefficient)` for terms `* v^j`.
    by_last: Vec<Vec<(Vec<u32>, u64)>>,
}

impl CompiledPoly {
    pub(crate) fn new(poly: &Poly, field: &Arc<GaloisField>) -> Result<Self> {
        let target = Domain::Finite(field.clone());
        let poly = poly.to_domain(&target)?;
        let n = poly.alphabet().len();
        let mut by_last: Vec<Vec<(Vec<u32>, u64)>> = Vec::new();
        for (m, c) in poly.terms() {
            let e = m.exponents();
            let j = e[n - 1] as usize;
            if by_last.len() <= j {
                by_last.resize_with(j + 1, Vec::new);
            }
            by_last[j].push((e[..n - 1].to_vec(), c.as_packed().expect("finite")));
        }
        Ok(CompiledPoly { by_last })
    }

    fn max_exponent(&self) -> u32 {
        self.by_last
            .iter()
            .flatten()
            .flat_map(|(e, _)| e.iter().copied())
            .chain(std::iter::once(self.by_last.len().saturating_sub(1) as u32))
            .max()
            .unwrap_or(0)
    }

    /// Univariate polynomial in the last variable after fixing the others.
    fn specialize(&self, field: &GaloisField, powers: &PowerTable, prefix: &[u64]) -> Vec<u64> {
        self.by_last
            .iter()
            .map(|terms| {
                terms.iter().fold(0, |acc, (exps, c)| {
                    let mut v = *c;
                    for (&x, &e) in prefix.iter().zip(exps) {
                        if e > 0 {
                            v = field.mul(v, powers.get(x, e));
                        }
                    }
                    field.add(acc, v)
                })
            })
            .collect()
    }
}

/// `x^e` for every field element and `e <= max`.
struct PowerTable {
    stride: usize,
    table: Vec<u64>,
}

impl PowerTable {
    fn new(field: &GaloisField, max: u32) -> Self {
        let stride = max as usize + 1;
        let mut table = Vec::with_capacity(field.order() as usize * stride);
        for x in field.elements() {
            let mut acc = 1;
            for _ in 0..stride {
                table.push(acc);
                acc = field.mul(acc, x);
            }
        }
        PowerTable { stride, table }
    }

    #[inline]
    fn get(&self, x: u64, e: u32) -> u64 {
        self.table[x as usize * self.stride + e as usize]
    }
}

/// Largest field whose projective points we are willing to enumerate.
const MAX_SCAN_ORDER: u64 = 1 << 16;

/// Visits every common zero of `polys` in `P^{nvars-1}(field)`.
pub(crate) fn scan_common_zeros(
    field: &Arc<GaloisField>,
    polys: &[CompiledPoly],
    nvars: usize,
    mut visit: impl FnMut(&[u64]) -> ControlFlow<()>,
) -> Result<()> {
    if field.order() > MAX_SCAN_ORDER {
        return Err(Error::InvalidArgument(format!(
            "field of order {} is too large for an exhaustive scan",
            field.order()
        )));
    }
    let max = polys.iter().map(CompiledPoly::max_exponent).max().unwrap_or(0);
    let powers = PowerTable::new(field, max);
    let q = field.order();
    let last = nvars - 1;
    let mut point = vec![0u64; nvars];
    let mut out = vec![0u64; nvars];
    let mut cache: Vec<Option<Vec<u64>>> = Vec::with_capacity(polys.len());

    for lead in 0..nvars {
        point.iter_mut().for_each(|c| *c = 0);
        point[lead] = 1;
        if lead == last {
            let prefix = &point[..last];
            let zero = polys.iter().all(|p| univariate::eval(field, &p.specialize(field, &powers, prefix), 1) == 0);
            if zero && visit(&point).is_break() {
                return Ok(());
            }
            continue;
        }
        // odometer over coordinates lead+1 .. last-1
        loop {
            cache.clear();
            cache.resize(polys.len(), None);
            let prefix = &point[..last];
            let mut candidates: Option<Vec<u64>> = None;
            for (i, p) in polys.iter().enumerate() {
                let uni = p.specialize(field, &powers, prefix);
                match univariate::roots(field, &uni) {
                    Roots::All => cache[i] = Some(uni),
                    Roots::Some(r) => {
                        cache[i] = Some(uni);
                        candidates = Some(r);
                        break;
                    }
                }
            }
            let candidates: Vec<u64> = candidates.unwrap_or_else(|| field.elements().collect());
            for r in candidates {
                let ok = polys.iter().enumerate().all(|(i, p)| {
                    let uni = cache[i].get_or_insert_with(|| p.specialize(field, &powers, prefix));
                    univariate::eval(field, uni, r) == 0
                });
                if ok {
                    out[..last].copy_from_slice(prefix);
                    out[last] = r;
                    if visit(&out).is_break() {
                        return Ok(());
                    }
                }
            }
            let mut exhausted = true;
            let mut pos = last;
            while pos > lead + 1 {
                pos -= 1;
                point[pos] += 1;
                if point[pos] < q {
                    exhausted = false;
                    break;
                }
                point[pos] = 0;
            }
            if exhausted {
                break;
            }
        }
    }
    Ok(())
}

/// Field of the search and the prime it must match.
pub(crate) fn search_field(poly: &Poly, p: u64, k: u32) -> Result<Arc<GaloisField>> {
    match poly.domain() {
        Domain::Rational => return Err(Error::RationalSearch),
        Domain::Finite(f) if f.characteristic() != p || f.degree() != 1 => {
            return Err(Error::DomainMismatch(poly.domain().to_string(), format!("GF({p})")));
        }
        Domain::Finite(_) => {}
    }
    Ok(Arc::new(GaloisField::new(p, k)?))
}

/// Singular points of the plane curve `curve = 0` over `F_{p^k}`: common zeros of the curve
/// and its three partial derivatives.
pub fn singular_points_plane_curve(curve: &Poly, p: u64, k: u32) -> Result<Vec<ProjPoint>> {
    if curve.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if curve.alphabet().len() != 3 || !curve.is_homogeneous() {
        return Err(Error::InvalidArgument("expected a homogeneous form in three variables".into()));
    }
    let field = search_field(curve, p, k)?;
    let mut polys = (0..3)
        .map(|i| CompiledPoly::new(&curve.derivative(i), &field))
        .collect::<Result<Vec<_>>>()?;
    polys.push(CompiledPoly::new(curve, &field)?);
    let domain = Domain::Finite(field.clone());
    let mut out = Vec::new();
    scan_common_zeros(&field, &polys, 3, |pt| {
        out.push(ProjPoint::from_packed(&domain, pt));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SmoothnessVerdict {
    SingularPointFound { point: ProjPoint, extension_degree: u32 },
    NoSingularPointUpToDegree { k_max: u32 },
}

/// Outcome of [`smoothness_search`]; only ever a bounded statement about `F_{p^k}`-points.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SmoothnessCertificate {
    pub verdict: SmoothnessVerdict,
    pub p: u64,
    pub k_max: u32,
}

impl SmoothnessCertificate {
    pub fn is_singular(&self) -> bool {
        matches!(self.verdict, SmoothnessVerdict::SingularPointFound { .. })
    }

    pub fn singular_point(&self) -> Option<&ProjPoint> {
        match &self.verdict {
            SmoothnessVerdict::SingularPointFound { point, .. } => Some(point),
            SmoothnessVerdict::NoSingularPointUpToDegree { .. } => None,
        }
    }
}

/// Looks for a singular point of the hypersurface `form = 0` in `P^n(F_{p^k})`, `k = 1..=k_max`,
/// returning the first one found.
pub fn smoothness_search(form: &Poly, n: usize, p: u64, k_max: u32) -> Result<SmoothnessCertificate> {
    if k_max < 1 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    if form.alphabet().len() != n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, found: form.alphabet().len() });
    }
    if form.is_zero() || !form.is_homogeneous() {
        return Err(Error::InvalidArgument("expected a nonzero homogeneous form".into()));
    }
    for k in 1..=k_max {
        let field = search_field(form, p, k)?;
        // the form itself is checked last; by Euler's relation it is redundant when p does
        // not divide the degree
        let mut polys = (0..=n)
            .map(|i| CompiledPoly::new(&form.derivative(i), &field))
            .collect::<Result<Vec<_>>>()?;
        polys.push(CompiledPoly::new(form, &field)?);
        let domain = Domain::Finite(field.clone());
        let mut found = None;
        scan_common_zeros(&field, &polys, n + 1, |pt| {
            found = Some(ProjPoint::from_packed(&domain, pt));
            ControlFlow::Break(())
        })?;
        if let Some(point) = found {
            return Ok(SmoothnessCertificate {
                verdict: SmoothnessVerdict::SingularPointFound { point, extension_degree: k },
                p,
                k_max,
            });
        }
    }
    Ok(SmoothnessCertificate { verdict: SmoothnessVerdict::NoSingularPointUpToDegree { k_max }, p, k_max })
}
