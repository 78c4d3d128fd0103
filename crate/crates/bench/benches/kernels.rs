use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use thetaline::geometry::{even_contact_check, intersection_multiplicity, smoothness_search, ProjPoint};
use thetaline::random::{random_matrix, seeded_rng};
use thetaline::text::{parse_matrix_file, parse_poly};
use thetaline::{associated_conic, build_cubic, discriminant, extract_matrix, Alphabet, Domain};

const SMOOTH_F11: &str = "\
l1: 2*x + 6*y + 4*z
l2: x + 5*y + 3*z
l3: 6*x + 5*y + 9*z
q1: 5*x^2 + x*y + 10*x*z + 10*y^2 + 3*y*z + z^2
q2: 7*x^2 + x*y + 2*x*z + 4*z^2
f: 10*x^3 + 5*x^2*y + 4*x^2*z + 6*x*y^2 + x*y*z + 10*x*z^2 + 2*y^3 + 8*y^2*z + 6*y*z^2 + z^3
";

fn determinantal(c: &mut Criterion) {
    let rational = random_matrix(&Domain::Rational, &mut seeded_rng(3));
    c.bench_function("discriminant/rational", |b| b.iter(|| discriminant(black_box(&rational))));
    let f101 = random_matrix(&Domain::prime(101).unwrap(), &mut seeded_rng(3));
    c.bench_function("discriminant/f101", |b| b.iter(|| discriminant(black_box(&f101))));
    let cubic = build_cubic(&f101).unwrap();
    c.bench_function("build_cubic/f101", |b| b.iter(|| build_cubic(black_box(&f101)).unwrap()));
    c.bench_function("extract_matrix/f101", |b| b.iter(|| extract_matrix(black_box(&cubic)).unwrap()));
}

fn geometry(c: &mut Criterion) {
    let f7 = Domain::prime(7).unwrap();
    let fermat = parse_poly("x^3 + y^3 + z^3 + w^3 + t^3", &Alphabet::p4(), &f7).unwrap();
    c.bench_function("smoothness_search/p4_f7", |b| {
        b.iter(|| smoothness_search(black_box(&fermat), 4, 7, 1).unwrap())
    });

    let plane = Alphabet::plane();
    let q = Domain::Rational;
    let cusp = parse_poly("y^2*z^3 - x^5", &plane, &q).unwrap();
    let tangent = parse_poly("y*z - x^2", &plane, &q).unwrap();
    let origin = ProjPoint::from_ints(&q, &[0, 0, 1]).unwrap();
    c.bench_function("intersection_multiplicity/quintic_cusp", |b| {
        b.iter(|| intersection_multiplicity(black_box(&cusp), black_box(&tangent), &origin, 12).unwrap())
    });

    let f11 = Domain::prime(11).unwrap();
    let a = parse_matrix_file(SMOOTH_F11, &f11).unwrap();
    let delta = discriminant(&a).form().clone();
    let h = associated_conic(&a).form().clone();
    let mut group = c.benchmark_group("even_contact");
    group.sample_size(10);
    for k in [1, 2, 3] {
        group.bench_function(format!("f11_depth{k}"), |b| {
            b.iter(|| even_contact_check(black_box(&delta), black_box(&h), 11, k, 12).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, determinantal, geometry);
criterion_main!(benches);
