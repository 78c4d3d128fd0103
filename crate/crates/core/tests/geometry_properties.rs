use proptest::prelude::*;

use thetaline::geometry::{
    contains_line, even_contact_check, intersection_multiplicity, move_line_to_standard, smoothness_search,
    ProjLine, ProjPoint, ProjTransform,
};
use thetaline::random::{random_form, random_matrix, random_scalar, seeded_rng};
use thetaline::text::parse_poly;
use thetaline::{build_cubic, Alphabet, Domain, Poly, Scalar};

fn f7() -> Domain {
    Domain::prime(7).unwrap()
}

fn random_transform(d: &Domain, seed: u64) -> Option<ProjTransform> {
    let mut rng = seeded_rng(seed);
    let m: Vec<Vec<Scalar>> = (0..5).map(|_| (0..5).map(|_| random_scalar(d, &mut rng)).collect()).collect();
    ProjTransform::new(m).ok()
}

fn random_point(d: &Domain, seed: u64) -> Option<ProjPoint> {
    let mut rng = seeded_rng(seed);
    ProjPoint::new((0..5).map(|_| random_scalar(d, &mut rng)).collect()).ok()
}

fn line_through(d: &Domain, seed: u64) -> Option<ProjLine> {
    ProjLine::new(random_point(d, seed)?, random_point(d, seed.wrapping_add(7919))?).ok()
}

fn linear(d: &Domain, coeffs: [i64; 3]) -> Poly {
    let [a, b, c] = coeffs;
    parse_poly(&format!("{a}*x + {b}*y + {c}*z"), &Alphabet::plane(), d).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn line_containment_is_projectively_invariant(seed in any::<u64>()) {
        let d = f7();
        let a = random_matrix(&d, &mut seeded_rng(seed));
        let x = build_cubic(&a);
        prop_assume!(x.is_ok());
        let f = x.unwrap().form().clone();
        let lambda = ProjLine::standard(&d);
        prop_assert!(contains_line(&f, &lambda).unwrap());
        let t = random_transform(&d, seed ^ 0x5555);
        prop_assume!(t.is_some());
        let t = t.unwrap();
        let moved = t.push_forward_form(&f).unwrap();
        prop_assert!(contains_line(&moved, &t.apply_line(&lambda).unwrap()).unwrap());
    }

    /// A random line over GF(7) lies on a random cubic exactly when the moved cubic has no
    /// `w^3, w^2 t, w t^2, t^3` terms.
    #[test]
    fn random_lines_over_f7(seed in any::<u64>()) {
        let d = f7();
        let f = random_form(&Alphabet::p4(), &d, 3, &mut seeded_rng(seed));
        let line = line_through(&d, seed ^ 0xabc);
        prop_assume!(line.is_some());
        let line = line.unwrap();
        let t = move_line_to_standard(&line).unwrap();
        prop_assert!(t.apply_line(&line).unwrap().same_as(&ProjLine::standard(&d)));
        let moved = t.push_forward_form(&f).unwrap();
        let w = Alphabet::p4().index_of("w").unwrap();
        let tt = Alphabet::p4().index_of("t").unwrap();
        let tail_free = moved.terms().all(|(m, _)| m.exponents()[w] + m.exponents()[tt] < 3);
        prop_assert_eq!(contains_line(&f, &line).unwrap(), tail_free);
    }

    /// Cubic cones in at most four variables are singular at a point where all partials and
    /// the form vanish.
    #[test]
    fn cones_are_singular(seed in any::<u64>(), nvars in 1usize..=4) {
        let d = f7();
        let names = ["x", "y", "z", "w"];
        let small = Alphabet::new(&names[..nvars]);
        let g = random_form(&small, &d, 3, &mut seeded_rng(seed));
        prop_assume!(!g.is_zero());
        let f = g.with_alphabet(&Alphabet::p4()).unwrap();
        let cert = smoothness_search(&f, 4, 7, 1).unwrap();
        let point = cert.singular_point().expect("a cone is singular").clone();
        let coords = point.coords();
        prop_assert!(f.evaluate(coords).unwrap().is_zero());
        for i in 0..5 {
            prop_assert!(f.derivative(i).evaluate(coords).unwrap().is_zero());
        }
    }

    /// Five rational lines against two rational lines with no common component meet in 10
    /// points counted with multiplicity.
    #[test]
    fn bezout_total_on_split_curves(
        lines in prop::collection::vec((0i64..11, 0i64..11, 0i64..11), 7),
    ) {
        let d = Domain::prime(11).unwrap();
        let ls: Vec<Poly> = lines.iter().map(|&(a, b, c)| linear(&d, [a, b, c])).collect();
        prop_assume!(ls.iter().all(|l| !l.is_zero()));
        let delta = ls[..5].iter().skip(1).fold(ls[0].clone(), |acc, l| &acc * l);
        let h = &ls[5] * &ls[6];
        // proportional lines are the same component
        let proportional = |a: &Poly, b: &Poly| {
            let c = a.terms().next().unwrap();
            let inv = c.1.inv().unwrap();
            let bc = b.coeff(c.0);
            !bc.is_zero() && &a.scale(&bc.mul(&inv)) == b
        };
        prop_assume!(ls[..5].iter().all(|l| !proportional(l, &ls[5]) && !proportional(l, &ls[6])));
        let report = even_contact_check(&delta, &h, 11, 1, 12).unwrap();
        prop_assert_eq!(report.total, 10);
        prop_assert!(report.complete);
        for c in &report.points {
            let swapped = intersection_multiplicity(&h, &delta, &c.point, 12).unwrap();
            prop_assert_eq!(swapped, c.multiplicity);
        }
    }
}
