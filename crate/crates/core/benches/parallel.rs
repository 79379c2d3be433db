// SPDX-License-Identifier: Apache-2.0

//! Sequential against rayon execution on the three data-parallel kernels.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gk3::exactmath::{IntMatrix, QuadComplex, QuadScalar, Rational};
use gk3::lattice::{find_hyperbolic_split, IntegralLattice, SplitSearch, Sublattice};
use gk3::mukai::{l_psi_batch, CohClass, MUKAI_RANK};
use gk3::rigidity::{kahler_rigid_survey, SurveyConfig};
use gk3::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn survey(c: &mut Criterion) {
    let config = SurveyConfig { max_det: 12, ..SurveyConfig::default() };
    let mut g = c.benchmark_group("kahler_rigid_survey");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| kahler_rigid_survey(black_box(&config), exec)));
    }
    g.finish();
}

/// The complement of a degree-2n vector in H², in the basis the kernel
/// computation returns.
fn degree_complement(n: i64) -> IntegralLattice {
    let mut row = vec![0i64; 22];
    row[0] = 1;
    row[1] = n;
    let v = IntMatrix::from_rows(vec![row.into_iter().map(Into::into).collect()], 22).unwrap();
    Sublattice::new(Arc::new(IntegralLattice::k3()), v).unwrap().ortho_complement().unwrap().lattice()
}

fn split(c: &mut Criterion) {
    let search = SplitSearch { radius: 2, max_weight: 4 };
    let mut g = c.benchmark_group("find_hyperbolic_split");
    g.sample_size(10);
    for n in [1, 3] {
        let l = degree_complement(n);
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, n), &l, |b, l| {
                b.iter(|| find_hyperbolic_split(black_box(l), &search, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn classes(count: usize) -> Vec<CohClass> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let q = |rng: &mut ChaCha8Rng| {
        QuadScalar::from_rational(Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=3).into()))
    };
    (0..count)
        .map(|_| {
            let coords = (0..MUKAI_RANK).map(|_| QuadComplex::new(q(&mut rng), q(&mut rng))).collect();
            CohClass::from_coords(coords).unwrap()
        })
        .collect()
}

fn lpsi(c: &mut Criterion) {
    let xs = classes(64);
    let mut g = c.benchmark_group("l_psi_batch");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| l_psi_batch(black_box(&xs), exec)));
    }
    g.finish();
}

criterion_group!(benches, survey, split, lpsi);
criterion_main!(benches);
