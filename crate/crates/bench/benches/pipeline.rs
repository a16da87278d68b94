use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dessin_core::affine::AffinePermutation;
use dessin_core::f2gp::{compare, enumerate_words};
use dessin_core::grassmann::{lattice_equal, standard_lattice};
use dessin_core::lusztig::phi_nilpotent;
use dessin_core::order::build_surface_order;
use dessin_core::permgroup::Constellation;
use dessin_core::quiver::{check_surface_axioms, medial_quiver};
use dessin_core::rational::QMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn constellation_to_quiver(c: &mut Criterion) {
    let mut group = c.benchmark_group("medial_quiver");
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for degree in [8, 32, 128] {
        let con = Constellation::random(degree, &mut rng).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(degree), &con, |b, con| {
            b.iter(|| {
                let (q, ideal) = medial_quiver(con).unwrap();
                black_box(check_surface_axioms(&q, &ideal));
                black_box(build_surface_order(con).unwrap());
            })
        });
    }
    group.finish();
}

fn lattices(c: &mut Criterion) {
    let mut group = c.benchmark_group("lattice_equal");
    for n in [2, 4, 6] {
        let a = standard_lattice(n, 0, 1, 16);
        let g = AffinePermutation::identity(n).to_matrix(16);
        let b = a.act(&g).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &(a, b), |bch, (a, b)| {
            bch.iter(|| lattice_equal(black_box(a), black_box(b)).unwrap())
        });
    }
    group.finish();
}

fn phi(c: &mut Criterion) {
    let mut group = c.benchmark_group("phi_nilpotent");
    for n in [2, 4, 6] {
        let mut shift = QMatrix::zeros(n, n);
        for i in 0..n - 1 {
            shift.set(i, i + 1, dessin_core::rational::rat(1));
        }
        group.bench_with_input(BenchmarkId::from_parameter(n), &shift, |b, m| {
            b.iter(|| phi_nilpotent(black_box(m), 16).unwrap())
        });
    }
    group.finish();
}

fn words(c: &mut Criterion) {
    let ws = enumerate_words(5);
    c.bench_function("word_compare_sort", |b| {
        b.iter(|| {
            let mut v = ws.clone();
            v.sort_by(compare);
            black_box(v)
        })
    });
}

criterion_group!(benches, constellation_to_quiver, lattices, phi, words);
criterion_main!(benches);
