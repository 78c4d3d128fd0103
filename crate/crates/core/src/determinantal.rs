//! Symmetric matrices of plane forms and the cubic threefolds they define.
//!
//! A [`SymmetricMatrixRep`] is the matrix
//!
//! ```text
//!     | l1  l2  q1 |
//! A = | l2  l3  q2 |      deg l = 1, deg q = 2, deg f = 3 in x, y, z
//!     | q1  q2  f  |
//! ```
//!
//! Its determinant is a plane quintic, its leading 2x2 minor a conic, and the quadratic form
//! of `A` evaluated on `(w, t, 1)` is a cubic in `P^4` containing the line `x = y = z = 0`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::determinant;
use crate::poly::{Alphabet, Monomial, Poly};
use crate::scalar::Domain;

/// Entry labels in file and report order.
pub const ENTRY_LABELS: [&str; 6] = ["l1", "l2", "l3", "q1", "q2", "f"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricMatrixRep {
    pub l1: Poly,
    pub l2: Poly,
    pub l3: Poly,
    pub q1: Poly,
    pub q2: Poly,
    pub f: Poly,
}

impl SymmetricMatrixRep {
    /// Validates alphabet `(x, y, z)`, a common domain and the degree pattern (1,1,1,2,2,3).
    pub fn new(l1: Poly, l2: Poly, l3: Poly, q1: Poly, q2: Poly, f: Poly) -> Result<Self> {
        let rep = SymmetricMatrixRep { l1, l2, l3, q1, q2, f };
        let plane = Alphabet::plane();
        let domain = rep.l1.domain().clone();
        for (label, entry, deg) in rep.labeled_entries() {
            if *entry.alphabet() != plane {
                return Err(Error::AlphabetMismatch(entry.alphabet().to_string(), plane.to_string()));
            }
            if *entry.domain() != domain {
                return Err(Error::DomainMismatch(entry.domain().to_string(), domain.to_string()));
            }
            if !entry.is_homogeneous_of(deg) {
                return Err(Error::WrongDegree { what: format!("{label} = {entry}"), expected: deg });
            }
        }
        Ok(rep)
    }

    /// Entries with their labels and required degrees.
    pub fn labeled_entries(&self) -> [(&'static str, &Poly, u32); 6] {
        [
            ("l1", &self.l1, 1),
            ("l2", &self.l2, 1),
            ("l3", &self.l3, 1),
            ("q1", &self.q1, 2),
            ("q2", &self.q2, 2),
            ("f", &self.f, 3),
        ]
    }

    pub fn domain(&self) -> &Domain {
        self.l1.domain()
    }

    /// The full 3x3 matrix.
    pub fn matrix(&self) -> Vec<Vec<Poly>> {
        vec![
            vec![self.l1.clone(), self.l2.clone(), self.q1.clone()],
            vec![self.l2.clone(), self.l3.clone(), self.q2.clone()],
            vec![self.q1.clone(), self.q2.clone(), self.f.clone()],
        ]
    }

    /// Reads the entries back from a symmetric 3x3 matrix, checking symmetry and degrees.
    pub fn from_matrix(m: &[Vec<Poly>]) -> Result<Self> {
        if m.len() != 3 || m.iter().any(|r| r.len() != 3) {
            return Err(Error::DimensionMismatch { expected: 3, found: m.len() });
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if m[i][j] != m[j][i] {
                return Err(Error::InvalidArgument(format!("matrix is not symmetric at ({i},{j})")));
            }
        }
        Self::new(
            m[0][0].clone(),
            m[0][1].clone(),
            m[1][1].clone(),
            m[0][2].clone(),
            m[1][2].clone(),
            m[2][2].clone(),
        )
    }

    /// `T^t A T` for a 3x3 matrix of forms `T`; fails if the result leaves the degree pattern.
    pub fn congruent(&self, t: &[Vec<Poly>]) -> Result<Self> {
        let a = self.matrix();
        let zero = Poly::zero(self.l1.alphabet(), self.domain());
        let mut out = vec![vec![zero.clone(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = zero.clone();
                for k in 0..3 {
                    for l in 0..3 {
                        acc = &acc + &(&(&t[k][i] * &a[k][l]) * &t[l][j]);
                    }
                }
                out[i][j] = acc;
            }
        }
        Self::from_matrix(&out)
    }
}

/// A cubic form in `x, y, z, w, t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicThreefold {
    form: Poly,
}

impl CubicThreefold {
    pub fn new(form: Poly) -> Result<Self> {
        if *form.alphabet() != Alphabet::p4() {
            return Err(Error::AlphabetMismatch(form.alphabet().to_string(), Alphabet::p4().to_string()));
        }
        if form.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if form.homogeneous_degree() != Some(3) {
            return Err(Error::WrongDegree { what: form.to_string(), expected: 3 });
        }
        Ok(CubicThreefold { form })
    }

    pub fn form(&self) -> &Poly {
        &self.form
    }
}

/// Determinant of a [`SymmetricMatrixRep`]; zero marks a degenerate matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneQuintic {
    form: Poly,
}

impl PlaneQuintic {
    pub fn new(form: Poly) -> Result<Self> {
        if !form.is_homogeneous_of(5) || *form.alphabet() != Alphabet::plane() {
            return Err(Error::WrongDegree { what: form.to_string(), expected: 5 });
        }
        Ok(PlaneQuintic { form })
    }

    pub fn form(&self) -> &Poly {
        &self.form
    }

    pub fn is_degenerate(&self) -> bool {
        self.form.is_zero()
    }
}

/// The conic `l1 l3 - l2^2`; zero is flagged rather than rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conic {
    form: Poly,
}

impl Conic {
    pub fn new(form: Poly) -> Result<Self> {
        if !form.is_homogeneous_of(2) || *form.alphabet() != Alphabet::plane() {
            return Err(Error::WrongDegree { what: form.to_string(), expected: 2 });
        }
        Ok(Conic { form })
    }

    pub fn form(&self) -> &Poly {
        &self.form
    }

    pub fn is_degenerate(&self) -> bool {
        self.form.is_zero()
    }
}

fn reject_char_two(domain: &Domain) -> Result<()> {
    if domain.characteristic() == 2 {
        Err(Error::CharacteristicTwo)
    } else {
        Ok(())
    }
}

/// `F = l1 w^2 + 2 l2 w t + l3 t^2 + 2 q1 w + 2 q2 t + f`.
pub fn build_cubic(a: &SymmetricMatrixRep) -> Result<CubicThreefold> {
    reject_char_two(a.domain())?;
    let p4 = Alphabet::p4();
    let d = a.domain();
    let lift = |p: &Poly| p.with_alphabet(&p4);
    let w = Poly::var(&p4, d, "w")?;
    let t = Poly::var(&p4, d, "t")?;
    let parts = [
        &lift(&a.l1)? * &w.pow(2),
        (&lift(&a.l2)? * &(&w * &t)).scale_int(2),
        &lift(&a.l3)? * &t.pow(2),
        (&lift(&a.q1)? * &w).scale_int(2),
        (&lift(&a.q2)? * &t).scale_int(2),
        lift(&a.f)?,
    ];
    let form = parts.iter().skip(1).fold(parts[0].clone(), |acc, p| &acc + p);
    if form.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    CubicThreefold::new(form)
}

/// Inverse of [`build_cubic`] for cubics containing `x = y = z = 0`.
pub fn extract_matrix(x: &CubicThreefold) -> Result<SymmetricMatrixRep> {
    let form = x.form();
    let d = form.domain().clone();
    reject_char_two(&d)?;
    let plane = Alphabet::plane();
    // parts[a][b] collects the coefficient of w^a t^b as a plane form
    let mut parts: Vec<Vec<Vec<(Monomial, _)>>> = vec![vec![Vec::new(); 4]; 4];
    for (m, c) in form.terms() {
        let e = m.exponents();
        let (a, b) = (e[3] as usize, e[4] as usize);
        if a + b >= 3 {
            let name = match (a, b) {
                (3, 0) => "w^3".to_string(),
                (0, 3) => "t^3".to_string(),
                (2, 1) => "w^2*t".to_string(),
                _ => "w*t^2".to_string(),
            };
            return Err(Error::LineNotContained(name));
        }
        parts[a][b].push((Monomial::new(e[..3].to_vec()), c.clone()));
    }
    let half = d.from_i64(2).inv().expect("characteristic is not 2");
    let take = |a: usize, b: usize| Poly::from_terms(&plane, &d, parts[a][b].iter().cloned());
    SymmetricMatrixRep::new(
        take(2, 0)?,
        take(1, 1)?.scale(&half),
        take(0, 2)?,
        take(1, 0)?.scale(&half),
        take(0, 1)?.scale(&half),
        take(0, 0)?,
    )
}

/// `det A` through the generic determinant routine.
pub fn discriminant(a: &SymmetricMatrixRep) -> PlaneQuintic {
    let det = determinant(&a.matrix()).expect("3x3 matrix over one domain");
    PlaneQuintic::new(det).expect("determinant of the degree pattern is a quintic")
}

/// `h = l1 l3 - l2^2`.
pub fn associated_conic(a: &SymmetricMatrixRep) -> Conic {
    Conic::new(&(&a.l1 * &a.l3) - &a.l2.pow(2)).expect("product of linear forms is a conic")
}

/// Closed form `f h - (l3 q1^2 - 2 l2 q1 q2 + l1 q2^2)` of the determinant, expanded by hand.
pub fn det_closed_form(a: &SymmetricMatrixRep) -> Poly {
    let h = &(&a.l1 * &a.l3) - &a.l2.pow(2);
    let correction = &(&(&a.l3 * &a.q1.pow(2)) - &(&(&a.l2 * &a.q1) * &a.q2).scale_int(2))
        + &(&a.l1 * &a.q2.pow(2));
    &(&a.f * &h) - &correction
}

/// Checks `det A` from the cofactor routine against [`det_closed_form`].
pub fn verify_det_identity(a: &SymmetricMatrixRep) -> bool {
    *discriminant(a).form() == det_closed_form(a)
}

/// `h^i(P^2, O(d))`.
pub fn sheaf_cohomology_twist(d: i64, i: u8) -> Result<u64> {
    let choose2 = |n: i64| if n < 2 { 0 } else { (n * (n - 1) / 2) as u64 };
    match i {
        0 if d >= 0 => Ok(choose2(d + 2)),
        0 | 1 => Ok(0),
        2 if d <= -3 => Ok(choose2(-d - 1)),
        2 => Ok(0),
        _ => Err(Error::CohomologyIndex(i)),
    }
}

/// Euler characteristic `(d+1)(d+2)/2` of `O(d)` on the plane.
pub fn euler_characteristic(d: i64) -> i64 {
    (d + 1) * (d + 2) / 2
}

/// A direct sum of twists `O(d_1) + ... + O(d_r)` of the structure sheaf of the plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistSum {
    twists: Vec<i64>,
}

impl TwistSum {
    pub fn new(twists: Vec<i64>) -> Result<Self> {
        if twists.is_empty() {
            return Err(Error::InvalidArgument(
                "a twist sum needs at least one summand; use TwistSum::zero_sheaf".into(),
            ));
        }
        Ok(TwistSum { twists })
    }

    /// The zero sheaf (empty direct sum).
    pub fn zero_sheaf() -> Self {
        TwistSum { twists: Vec::new() }
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn h0(&self) -> i64 {
        self.twists
            .iter()
            .map(|&d| sheaf_cohomology_twist(d, 0).expect("index 0") as i64)
            .sum()
    }

    pub fn chi(&self) -> i64 {
        self.twists.iter().map(|&d| euler_characteristic(d)).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CokernelNumbers {
    pub h0: i64,
    pub chi: i64,
}

/// `h^0` and `chi` of the cokernel of an injective map `left -> right` of twist sums.
///
/// Every twist has `h^1 = 0` on the plane, so global sections of the cokernel are the
/// difference of the global sections of the two sides.
pub fn cokernel_h0_and_chi(left: &TwistSum, right: &TwistSum) -> CokernelNumbers {
    CokernelNumbers { h0: right.h0() - left.h0(), chi: right.chi() - left.chi() }
}

/// Twists of the resolution `0 -> O(-2)^2 + O(-3) -> O(-1)^2 + O -> M -> 0`.
pub fn theta_resolution() -> (TwistSum, TwistSum) {
    (
        TwistSum::new(vec![-2, -2, -3]).expect("nonempty"),
        TwistSum::new(vec![-1, -1, 0]).expect("nonempty"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Domain;

    struct Ctx {
        d: Domain,
        a: Alphabet,
    }

    impl Ctx {
        fn rational() -> Self {
            Ctx { d: Domain::Rational, a: Alphabet::plane() }
        }
        fn v(&self, n: &str) -> Poly {
            Poly::var(&self.a, &self.d, n).unwrap()
        }
        fn zero(&self) -> Poly {
            Poly::zero(&self.a, &self.d)
        }
        fn rep(&self, e: [Poly; 6]) -> SymmetricMatrixRep {
            let [l1, l2, l3, q1, q2, f] = e;
            SymmetricMatrixRep::new(l1, l2, l3, q1, q2, f).unwrap()
        }
    }

    fn p4(name: &str) -> Poly {
        Poly::var(&Alphabet::p4(), &Domain::Rational, name).unwrap()
    }

    #[test]
    fn build_cubic_examples() {
        let c = Ctx::rational();
        let z = c.zero();
        let a = c.rep([c.v("x"), z.clone(), z.clone(), z.clone(), z.clone(), z.clone()]);
        assert_eq!(*build_cubic(&a).unwrap().form(), &p4("x") * &p4("w").pow(2));

        let a = c.rep([z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), c.v("x").pow(3)]);
        assert_eq!(*build_cubic(&a).unwrap().form(), p4("x").pow(3));

        let a = c.rep([
            c.v("x"),
            c.v("y"),
            c.v("z"),
            c.v("z").pow(2),
            c.v("x").pow(2),
            c.v("y").pow(3),
        ]);
        let (x, y, zz, w, t) = (p4("x"), p4("y"), p4("z"), p4("w"), p4("t"));
        let expected = [
            &x * &w.pow(2),
            (&(&y * &w) * &t).scale_int(2),
            &zz * &t.pow(2),
            (&zz.pow(2) * &w).scale_int(2),
            (&x.pow(2) * &t).scale_int(2),
            y.pow(3),
        ]
        .iter()
        .fold(Poly::zero(&Alphabet::p4(), &Domain::Rational), |acc, p| &acc + p);
        assert_eq!(*build_cubic(&a).unwrap().form(), expected);
        assert_eq!(extract_matrix(&build_cubic(&a).unwrap()).unwrap(), a);

        let zero = c.rep([z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z]);
        assert_eq!(build_cubic(&zero), Err(Error::ZeroMatrix));
    }

    #[test]
    fn extract_rejects_cubics_off_the_line() {
        let f = CubicThreefold::new(p4("w").pow(3)).unwrap();
        assert_eq!(extract_matrix(&f), Err(Error::LineNotContained("w^3".into())));
        let f = CubicThreefold::new(&p4("x") * &p4("w").pow(2)).unwrap();
        let a = extract_matrix(&f).unwrap();
        assert_eq!(a.l1, Ctx::rational().v("x"));
        assert!(a.f.is_zero() && a.l2.is_zero());
    }

    #[test]
    fn characteristic_two_rejected() {
        let d = Domain::prime(2).unwrap();
        let a = Alphabet::plane();
        let x = Poly::var(&a, &d, "x").unwrap();
        let z = Poly::zero(&a, &d);
        let rep = SymmetricMatrixRep::new(x, z.clone(), z.clone(), z.clone(), z.clone(), z).unwrap();
        assert_eq!(build_cubic(&rep), Err(Error::CharacteristicTwo));
    }

    #[test]
    fn degree_pattern_enforced() {
        let c = Ctx::rational();
        let z = c.zero();
        let bad = SymmetricMatrixRep::new(c.v("x").pow(2), z.clone(), z.clone(), z.clone(), z.clone(), z);
        assert!(matches!(bad, Err(Error::WrongDegree { expected: 1, .. })));
    }

    #[test]
    fn discriminant_examples() {
        let c = Ctx::rational();
        let z = c.zero();
        let a = c.rep([c.v("x"), z.clone(), c.v("z"), z.clone(), z.clone(), c.v("y").pow(3)]);
        let delta = discriminant(&a);
        assert_eq!(*delta.form(), &(&c.v("x") * &c.v("z")) * &c.v("y").pow(3));
        assert!(!delta.is_degenerate());

        // rows 1 and 2 proportional: (x, x, x^2) and (x, x, x^2)
        let x = c.v("x");
        let a = c.rep([x.clone(), x.clone(), x.clone(), x.pow(2), x.pow(2), c.v("y").pow(3)]);
        assert!(discriminant(&a).is_degenerate());
    }

    #[test]
    fn det_identity_examples() {
        let c = Ctx::rational();
        let z = c.zero();
        let diag = c.rep([c.v("x"), z.clone(), c.v("z"), z.clone(), z.clone(), c.v("y").pow(3)]);
        assert!(verify_det_identity(&diag));

        // hand cofactor expansion: det = x * (z*0 - y^4) = -x y^4
        let a = c.rep([c.v("x"), z.clone(), c.v("z"), z.clone(), c.v("y").pow(2), z]);
        assert_eq!(*discriminant(&a).form(), (&c.v("x") * &c.v("y").pow(4)).scale_int(-1));
        assert!(verify_det_identity(&a));
    }

    #[test]
    fn conic_examples() {
        let c = Ctx::rational();
        let z = c.zero();
        let a = c.rep([c.v("x"), z.clone(), c.v("z"), z.clone(), z.clone(), z.clone()]);
        assert_eq!(*associated_conic(&a).form(), &c.v("x") * &c.v("z"));
        let a = c.rep([z.clone(), c.v("y"), z.clone(), z.clone(), z.clone(), z.clone()]);
        assert_eq!(*associated_conic(&a).form(), c.v("y").pow(2).scale_int(-1));
        let a = c.rep([c.v("x"), c.v("y"), c.v("z"), z.clone(), z.clone(), z.clone()]);
        assert_eq!(*associated_conic(&a).form(), &(&c.v("x") * &c.v("z")) - &c.v("y").pow(2));
        let a = c.rep([z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), c.v("x").pow(3)]);
        assert!(associated_conic(&a).is_degenerate());
    }

    #[test]
    fn cohomology_of_twists() {
        assert_eq!(sheaf_cohomology_twist(0, 0).unwrap(), 1);
        for i in 0..3 {
            assert_eq!(sheaf_cohomology_twist(-1, i).unwrap(), 0);
            assert_eq!(sheaf_cohomology_twist(-2, i).unwrap(), 0);
        }
        assert_eq!(sheaf_cohomology_twist(-3, 2).unwrap(), 1);
        assert_eq!(sheaf_cohomology_twist(2, 0).unwrap(), 6);
        assert_eq!(sheaf_cohomology_twist(-5, 2).unwrap(), 6);
        assert_eq!(sheaf_cohomology_twist(0, 3), Err(Error::CohomologyIndex(3)));
        // chi = h0 - h1 + h2 for a range of twists
        for d in -8..8 {
            let alt = sheaf_cohomology_twist(d, 0).unwrap() as i64
                + sheaf_cohomology_twist(d, 2).unwrap() as i64;
            assert_eq!(alt, euler_characteristic(d));
        }
    }

    #[test]
    fn cokernel_bookkeeping() {
        let (left, right) = theta_resolution();
        assert_eq!(cokernel_h0_and_chi(&left, &right), CokernelNumbers { h0: 1, chi: 0 });
        assert_eq!(cokernel_h0_and_chi(&right, &right), CokernelNumbers { h0: 0, chi: 0 });
        let o = TwistSum::new(vec![0]).unwrap();
        assert_eq!(cokernel_h0_and_chi(&TwistSum::zero_sheaf(), &o), CokernelNumbers { h0: 1, chi: 1 });
        assert!(TwistSum::new(vec![]).is_err());
    }
}
