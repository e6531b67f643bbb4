use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use mdeg_core::determinantal::{build_determinantal, det_sweep, DetSpec};
use mdeg_core::gin::{gin_trials, GinOptions};
use mdeg_core::hilbert::k_polynomials_batch;
use mdeg_core::monomial::simplicial::reisner_cm_check_with;
use mdeg_core::standardization::{standardize, standardize_ideal};
use mdeg_core::text::parse_polynomial;
use mdeg_core::{Execution, FieldSpec, GradedRing, Ideal, Monomial, MonomialIdeal, MonomialOrder, PrimeField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn fp() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn segre_like() -> Ideal<PrimeField> {
    let blocks: Vec<Vec<String>> = [["x0", "x1", "x2", "x3"], ["y0", "y1", "y2", "y3"]]
        .iter()
        .map(|b| b.iter().map(|s| s.to_string()).collect())
        .collect();
    let ring = Arc::new(GradedRing::standard(&blocks, FieldSpec::PrimeField(32003)).unwrap());
    let gens = ["x0*y1 - x1*y0", "x1*y2 - x2*y1", "x2*y3 - x3*y2", "x0*x2 - x1^2", "y1*y3 - y2^2"]
        .iter()
        .map(|g| parse_polynomial(g, &ring, fp()).unwrap())
        .collect();
    Ideal::new(ring, fp(), gens).unwrap()
}

fn random_ideals(count: usize) -> Vec<MonomialIdeal> {
    let blocks: Vec<Vec<String>> = (0..2).map(|b| (0..4).map(|i| format!("v{b}_{i}")).collect()).collect();
    let ring = Arc::new(GradedRing::standard(&blocks, FieldSpec::default_prime()).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    (0..count)
        .map(|_| {
            let gens = (0..6)
                .map(|_| Monomial::new((0..8).map(|_| rng.gen_range(0..=2)).collect()))
                .filter(|m| !m.is_one())
                .collect();
            MonomialIdeal::new(ring.clone(), gens)
        })
        .collect()
}

fn gin_radical() -> MonomialIdeal {
    let ideal = build_determinantal(DetSpec::new(3, 3, 3).unwrap(), fp()).unwrap();
    let map = standardize(ideal.ring()).unwrap();
    let j = standardize_ideal(&ideal, &map).unwrap();
    let opts = GinOptions { trials: 1, ..GinOptions::default() };
    gin_trials(&j, &MonomialOrder::grevlex(map.target().nvars()), &opts).unwrap().ideal.radical()
}

fn bench(c: &mut Criterion) {
    let segre = segre_like();
    let order = MonomialOrder::grevlex(8);
    let mut group = c.benchmark_group("gin_trials");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = GinOptions { exec, ..GinOptions::default() };
        group.bench_function(name, |b| b.iter(|| gin_trials(black_box(&segre), &order, &opts).unwrap()));
    }
    group.finish();

    let ideals = random_ideals(64);
    let mut group = c.benchmark_group("k_polynomials_batch");
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| k_polynomials_batch(black_box(&ideals), exec)));
    }
    group.finish();

    let radical = gin_radical();
    let mut group = c.benchmark_group("reisner");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| reisner_cm_check_with(black_box(&radical), 2, exec).unwrap()));
    }
    group.finish();

    let specs: Vec<DetSpec> = [(2, 2), (2, 3), (3, 3), (2, 4), (3, 4)]
        .iter()
        .map(|&(m, n)| DetSpec::new(m, n, m).unwrap())
        .collect();
    let mut group = c.benchmark_group("det_sweep");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| det_sweep(black_box(&specs), fp(), exec)));
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
