#![allow(dead_code)]

use std::sync::Arc;

use mdeg_core::determinantal::{build_determinantal, DetSpec};
use mdeg_core::text::parse_polynomial;
use mdeg_core::{Field, FieldSpec, GradedRing, Ideal, MonomialIdeal, Monomial, PrimeField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TRIPROJECTIVE: [&str; 14] = [
    "x1 - x2",
    "y3*z0 - y0*z1 - y2*z2",
    "y2*z0 - y0*z2",
    "x2*z0 - x0*z1",
    "y1^2 + y2^2 - y0*y3",
    "x3*y0 - x0*y1",
    "x2*y0 - x3*y1",
    "x0*x2 - x3^2",
    "y0*y2*z1 + y2^2*z2 - y0*y3*z2",
    "x3*y2*z1 - x2*y1*z2",
    "x0*y2*z1 - x3*y1*z2",
    "x3*y1*z1 - x0*y3*z1 + x2*y2*z2",
    "x3*y1*z0 - x0*y0*z1",
    "x3^2*z0 - x0^2*z1",
];

pub fn blocks_ring(names: &[&[&str]], field: FieldSpec) -> Arc<GradedRing> {
    let blocks: Vec<Vec<String>> = names
        .iter()
        .map(|b| b.iter().map(|s| s.to_string()).collect())
        .collect();
    Arc::new(GradedRing::standard(&blocks, field).unwrap())
}

pub fn triprojective_ring(field: FieldSpec) -> Arc<GradedRing> {
    blocks_ring(
        &[
            &["x0", "x1", "x2", "x3"],
            &["y0", "y1", "y2", "y3"],
            &["z0", "z1", "z2", "z3"],
        ],
        field,
    )
}

pub fn ideal<F: Field>(ring: &Arc<GradedRing>, field: F, gens: &[&str]) -> Ideal<F> {
    let polys = gens
        .iter()
        .map(|g| parse_polynomial(g, ring, field.clone()).unwrap())
        .collect();
    Ideal::new(ring.clone(), field, polys).unwrap()
}

pub fn triprojective<F: Field>(field: F) -> Ideal<F> {
    let ring = triprojective_ring(field.spec());
    ideal(&ring, field, &TRIPROJECTIVE)
}

/// `J = (x0^2, x0*x1, x1*y0, y0^a)` in `k[x0,x1,x2][y0,y1,y2]`.
pub fn growth(a: u32) -> MonomialIdeal {
    let ring = blocks_ring(&[&["x0", "x1", "x2"], &["y0", "y1", "y2"]], FieldSpec::default_prime());
    let m = |e: [u32; 6]| Monomial::new(e.to_vec());
    MonomialIdeal::new(
        ring,
        vec![
            m([2, 0, 0, 0, 0, 0]),
            m([1, 1, 0, 0, 0, 0]),
            m([0, 1, 0, 1, 0, 0]),
            m([0, 0, 0, a, 0, 0]),
        ],
    )
}

pub fn names(prefix: &str, k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("{prefix}{i}")).collect()
}

/// Five variables of mixed `ℕ²` degrees.
pub fn mixed_ring(field: FieldSpec) -> Arc<GradedRing> {
    Arc::new(
        GradedRing::new(
            ["a", "b", "c", "d", "e"].iter().map(|s| s.to_string()).collect(),
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1], vec![1, 2]],
            2,
            field,
        )
        .unwrap(),
    )
}

pub fn monomial_ideal(ring: &Arc<GradedRing>, gens: &[Vec<u32>]) -> MonomialIdeal {
    MonomialIdeal::new(ring.clone(), gens.iter().map(|g| Monomial::new(g.clone())).collect())
}

/// Pairs of distinct monomials with exponents at most `max` sharing a
/// multidegree.
pub fn homogeneous_pairs(ring: &GradedRing, max: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut by_degree: std::collections::BTreeMap<Vec<u32>, Vec<Vec<u32>>> = Default::default();
    let bound = vec![max; ring.nvars()];
    for e in mdeg_core::hilbert::box_points(&bound) {
        if e.iter().all(|&x| x == 0) {
            continue;
        }
        let d = ring.monomial_degree(&Monomial::new(e.clone())).unwrap();
        by_degree.entry(d).or_default().push(e);
    }
    let mut out = Vec::new();
    for group in by_degree.values() {
        for i in 0..group.len() {
            for j in i + 1..group.len() {
                let (u, v) = (&group[i], &group[j]);
                if u.iter().zip(v).all(|(a, b)| a.min(b) == &0) {
                    out.push((u.clone(), v.clone()));
                }
            }
        }
    }
    out
}

pub fn binomial_ideal<F: Field>(ring: &Arc<GradedRing>, field: F, pairs: &[(Vec<u32>, Vec<u32>)]) -> Ideal<F> {
    let gens = pairs
        .iter()
        .map(|(u, v)| {
            mdeg_core::Polynomial::from_terms(
                ring.clone(),
                field.clone(),
                [
                    (Monomial::new(u.clone()), field.one()),
                    (Monomial::new(v.clone()), field.neg(&field.one())),
                ],
            )
        })
        .collect();
    Ideal::new(ring.clone(), field, gens).unwrap()
}

pub fn fp() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

/// Prime ideals whose multidegree supports are polymatroids.
pub fn prime_fixtures() -> Vec<(String, Ideal<PrimeField>)> {
    let mut out = vec![("triprojective prime".to_string(), triprojective(fp()))];
    for n in 1..=4 {
        for m in 1..=n {
            out.push((format!("I_{m} of {m}x{n}"), build_determinantal(DetSpec::new(m, n, m).unwrap(), fp()).unwrap()));
        }
    }
    let segre = blocks_ring(&[&["x0", "x1", "x2"], &["y0", "y1", "y2"]], FieldSpec::PrimeField(32003));
    out.push((
        "segre".into(),
        ideal(&segre, fp(), &["x0*y1 - x1*y0", "x0*y2 - x2*y0", "x1*y2 - x2*y1"]),
    ));
    let three = blocks_ring(&[&["x0", "x1"], &["y0", "y1"], &["z0", "z1"]], FieldSpec::PrimeField(32003));
    out.push(("toric hypersurface".into(), ideal(&three, fp(), &["x0*y0*z1 - x1*y1*z0"])));
    let cubic = blocks_ring(&[&["a", "b", "c", "d"]], FieldSpec::PrimeField(32003));
    out.push((
        "twisted cubic".into(),
        ideal(&cubic, fp(), &["a*c - b^2", "b*d - c^2", "a*d - b*c"]),
    ));
    out
}

/// Fine-graded determinantal ideals plus random monomial and binomial
/// ideals in [`mixed_ring`].
pub fn standardization_suite() -> Vec<(String, Ideal<PrimeField>)> {
    let mut out = Vec::new();
    for (m, n, r) in [(2, 2, 2), (2, 3, 2), (3, 3, 2), (3, 3, 3), (2, 4, 2)] {
        out.push((format!("I_{r} of {m}x{n}"), build_determinantal(DetSpec::new(m, n, r).unwrap(), fp()).unwrap()));
    }
    let ring = mixed_ring(FieldSpec::PrimeField(32003));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..4 {
        let gens: Vec<Vec<u32>> = (0..rng.gen_range(1..=4))
            .map(|_| (0..5).map(|_| rng.gen_range(0..=2)).collect())
            .filter(|g: &Vec<u32>| g.iter().any(|&x| x > 0))
            .collect();
        let m = monomial_ideal(&ring, &gens);
        out.push((format!("monomial {k}: {m}"), Ideal::from_monomial_ideal(&m, fp())));
    }
    let pairs = homogeneous_pairs(&ring, 2);
    for k in 0..4 {
        let chosen: Vec<_> = (0..rng.gen_range(1..=3))
            .map(|_| pairs[rng.gen_range(0..pairs.len())].clone())
            .collect();
        out.push((format!("binomial {k}"), binomial_ideal(&ring, fp(), &chosen)));
    }
    out
}

/// Random monomial ideals in standard gradings with at most `max_vars`
/// variables.
pub fn random_monomial_ideals(seed: u64, count: usize, max_vars: usize) -> Vec<MonomialIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(2..=max_vars);
        let p = rng.gen_range(1..=3.min(n));
        let mut blocks: Vec<Vec<String>> = vec![Vec::new(); p];
        for i in 0..n {
            let b = if i < p { i } else { rng.gen_range(0..p) };
            blocks[b].push(format!("x{i}"));
        }
        let ring = Arc::new(GradedRing::standard(&blocks, FieldSpec::default_prime()).unwrap());
        let gens: Vec<Vec<u32>> = (0..rng.gen_range(1..=5))
            .map(|_| (0..n).map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(1..=3) }).collect())
            .filter(|g: &Vec<u32>| g.iter().any(|&x| x > 0))
            .collect();
        if !gens.is_empty() {
            out.push(monomial_ideal(&ring, &gens));
        }
    }
    out
}
