mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use common::*;
use mdeg_core::gin::{gin_trials, GinOptions};
use mdeg_core::hilbert::{
    arithmetic_multidegree, arithmetic_multidegree_via_filtration, hilbert_function_oracle,
    hilbert_series_coefficients, k_polynomial_monomial, k_polynomials_batch, multidegree_c_monomial,
    prime_multidegree,
};
use mdeg_core::monomial::simplicial::reisner_cm_check_with;
use mdeg_core::polymatroid::{exchange_check, exchange_check_with, polymatroid_bases, snp_check, LatticePointSet};
use mdeg_core::standardization::{standardize, verify_standardization};
use mdeg_core::text::parse_polynomial;
use mdeg_core::{
    Execution, FieldSpec, GradedRing, Ideal, IntegerPolynomial, Monomial, MonomialIdeal, MonomialOrder, Polynomial,
    PrimeField, Rationals,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn ring_with(degrees: Vec<Vec<u32>>) -> Arc<GradedRing> {
    let n = degrees.len();
    let p = degrees[0].len();
    Arc::new(
        GradedRing::new(
            (0..n).map(|i| format!("x{i}")).collect(),
            degrees,
            p,
            FieldSpec::default_prime(),
        )
        .unwrap(),
    )
}

/// A positive `ℕ^p` grading on `n` variables.
fn grading(max_vars: usize, p: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0u32..=2, p), 1..=max_vars)
        .prop_map(|ds| ds.into_iter().map(|mut d| {
            if d.iter().all(|&x| x == 0) {
                d[0] = 1;
            }
            d
        }).collect())
}

fn monomial_gens(n: usize, max_exp: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0..=max_exp, n), 1..=5)
        .prop_filter("a nonconstant generator", |gs| gs.iter().any(|g| g.iter().any(|&x| x > 0)))
        .prop_map(|gs| gs.into_iter().filter(|g| g.iter().any(|&x| x > 0)).collect())
}

fn graded_ideal(max_vars: usize, p: usize) -> impl Strategy<Value = MonomialIdeal> {
    grading(max_vars, p).prop_flat_map(|ds| {
        let n = ds.len();
        (Just(ds), monomial_gens(n, 3)).prop_map(|(ds, gens)| monomial_ideal(&ring_with(ds), &gens))
    })
}

fn standard_ideal() -> impl Strategy<Value = MonomialIdeal> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(a, b)| {
        let mut degrees = vec![vec![1, 0]; a];
        degrees.extend(vec![vec![0, 1]; b]);
        monomial_gens(a + b, 3).prop_map(move |gens| monomial_ideal(&ring_with(degrees.clone()), &gens))
    })
}

/// Rank function `J ↦ max_{u∈B} Σ_{j∈J} u_j`.
fn max_rank(set: &LatticePointSet) -> BTreeMap<u32, i64> {
    let p = set.dim();
    (0u32..(1 << p))
        .map(|j| {
            let r = set
                .points()
                .iter()
                .map(|u| (0..p).filter(|k| j & (1 << k) != 0).map(|k| u[k] as i64).sum::<i64>())
                .max()
                .unwrap_or(0);
            (j, r)
        })
        .collect()
}

fn is_submodular(r: &BTreeMap<u32, i64>) -> bool {
    r.keys().all(|&a| r.keys().all(|&b| r[&a] + r[&b] >= r[&(a | b)] + r[&(a & b)]))
}

/// Polymatroid base sets are exactly the bases of their own submodular rank
/// function.
fn is_polymatroid_oracle(set: &LatticePointSet) -> bool {
    let r = max_rank(set);
    is_submodular(&r) && polymatroid_bases(&r, set.dim()) == *set
}

fn same_degree_points(p: usize) -> impl Strategy<Value = LatticePointSet> {
    (1u32..=3).prop_flat_map(move |d| {
        let all: Vec<Vec<u32>> = mdeg_core::hilbert::box_points(&vec![d; p])
            .into_iter()
            .filter(|u| u.iter().sum::<u32>() == d)
            .collect();
        let k = all.len();
        prop::collection::vec(any::<bool>(), k).prop_map(move |mask| {
            let pts: Vec<Vec<u32>> = all.iter().zip(&mask).filter(|(_, &m)| m).map(|(u, _)| u.clone()).collect();
            let pts = if pts.is_empty() { vec![all[0].clone()] } else { pts };
            LatticePointSet::new(p, pts).unwrap()
        })
    })
}

/// Bases of `r(J) = Σ_k min(c_k, Σ_{j∈J∩S_k} w_j)`, a sum of concave
/// functions of modular ones.
fn random_polymatroid(p: usize) -> impl Strategy<Value = LatticePointSet> {
    prop::collection::vec((1u32..(1 << p), 1i64..=3, prop::collection::vec(1i64..=2, p)), 1..=3).prop_map(move |parts| {
        let rank: BTreeMap<u32, i64> = (0u32..(1 << p))
            .map(|j| {
                let r = parts
                    .iter()
                    .map(|(s, c, w)| (*c).min((0..p).filter(|k| j & s & (1 << k) != 0).map(|k| w[k]).sum()))
                    .sum();
                (j, r)
            })
            .collect();
        polymatroid_bases(&rank, p)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hilbert_function_matches_series(i in graded_ideal(5, 2)) {
        let bound = vec![4, 4];
        let counted = hilbert_function_oracle(&i, &bound).unwrap();
        let series = hilbert_series_coefficients(&k_polynomial_monomial(&i), i.ring(), &bound);
        for (nu, h) in counted {
            prop_assert_eq!(BigInt::from(h), series[&nu].clone(), "at {:?}", nu);
        }
    }

    #[test]
    fn k_polynomial_is_additive_on_exact_sequences(i in graded_ideal(5, 2), v in 0usize..5) {
        // 0 → S/(I:x)(-deg x) → S/I → S/(I+x) → 0
        let n = i.nvars();
        let v = v % n;
        let x = Monomial::var(n, v);
        let colon = i.colon_monomial(&x);
        let sum = i.sum(&MonomialIdeal::new(i.ring().clone(), vec![x]));
        let shifted = k_polynomial_monomial(&colon).shift(i.ring().degree(v));
        prop_assert_eq!(k_polynomial_monomial(&i), k_polynomial_monomial(&sum).add(&shifted));
    }

    #[test]
    fn cee_is_a_sum_over_top_dimensional_components(i in graded_ideal(5, 2)) {
        let codim = i.codim().unwrap();
        let mut expect = IntegerPolynomial::zero(i.ring().rank());
        for c in i.primary_decomposition().unwrap() {
            if c.is_minimal && c.prime.len() == codim {
                let l = BigInt::from(c.length.unwrap());
                expect = expect.add(&prime_multidegree(i.ring(), &c.prime).scale(&l));
            }
        }
        prop_assert_eq!(multidegree_c_monomial(&i).unwrap(), expect);
    }

    #[test]
    fn arithmetic_truncation_identity(i in standard_ideal()) {
        prop_assert_eq!(arithmetic_multidegree(&i).unwrap(), arithmetic_multidegree_via_filtration(&i).unwrap());
    }

    #[test]
    fn arithmetic_dominates_cee(i in graded_ideal(5, 2)) {
        let a = arithmetic_multidegree(&i).unwrap();
        prop_assert!(a.geq_coefficientwise(&multidegree_c_monomial(&i).unwrap()));
    }

    #[test]
    fn standardization_invariants(i in graded_ideal(4, 2)) {
        let ideal = Ideal::from_monomial_ideal(&i, PrimeField::new(32003).unwrap());
        let map = standardize(i.ring()).unwrap();
        let r = verify_standardization(&ideal, &map, &MonomialOrder::grevlex(i.nvars())).unwrap();
        prop_assert!(r.pass, "{:?}", r);
    }

    #[test]
    fn exchange_agrees_with_rank_oracle(set in same_degree_points(3)) {
        let r = exchange_check(&set);
        prop_assert_eq!(r.ok, is_polymatroid_oracle(&set));
        if let Some(w) = r.counterexample {
            let i = w.i - 1;
            prop_assert!(set.contains(&w.u) && set.contains(&w.v) && w.u[i] > w.v[i]);
        }
    }

    #[test]
    fn exchange_is_invariant_under_coordinate_reversal(set in same_degree_points(3)) {
        let reversed = LatticePointSet::new(3, set.points().iter().map(|u| u.iter().rev().cloned().collect())).unwrap();
        prop_assert_eq!(exchange_check(&set).ok, exchange_check(&reversed).ok);
        prop_assert_eq!(
            exchange_check_with(&set, Execution::Sequential),
            exchange_check_with(&set, Execution::Parallel)
        );
    }

    #[test]
    fn polymatroids_have_saturated_newton_polytopes(set in same_degree_points(3)) {
        if exchange_check(&set).ok {
            prop_assert!(snp_check(&set.indicator()).unwrap());
        }
    }

    #[test]
    fn minkowski_sums_of_polymatroids(a in random_polymatroid(3), b in random_polymatroid(3)) {
        prop_assert!(exchange_check(&a).ok);
        prop_assert!(exchange_check(&b).ok);
        prop_assert!(exchange_check(&a.minkowski_sum(&b).unwrap()).ok);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gin_is_borel_fixed_and_keeps_k(seed in 0u64..1000, pairs in prop::collection::vec(0usize..1000, 1..=3)) {
        let ring = blocks_ring(&[&["x0", "x1", "x2"], &["y0", "y1"]], FieldSpec::PrimeField(32003));
        let all = homogeneous_pairs(&ring, 2);
        let chosen: Vec<_> = pairs.iter().map(|k| all[k % all.len()].clone()).collect();
        let ideal = binomial_ideal(&ring, PrimeField::new(32003).unwrap(), &chosen);
        let opts = GinOptions { seed, trials: 1, ..GinOptions::default() };
        let g = gin_trials(&ideal, &MonomialOrder::grevlex(5), &opts).unwrap();
        prop_assert!(g.ideal.is_borel_fixed().unwrap());
        prop_assert_eq!(
            k_polynomial_monomial(&g.ideal),
            k_polynomial_monomial(&ideal.initial_ideal(&MonomialOrder::grevlex(5)))
        );
    }

    #[test]
    fn parallel_and_sequential_agree(ideals in prop::collection::vec(standard_ideal(), 1..6)) {
        prop_assert_eq!(
            k_polynomials_batch(&ideals, Execution::Sequential),
            k_polynomials_batch(&ideals, Execution::Parallel)
        );
        for i in ideals.iter().map(|i| i.radical()) {
            if i.is_unit() || i.is_zero() {
                continue;
            }
            prop_assert_eq!(
                reisner_cm_check_with(&i, 2, Execution::Sequential).ok(),
                reisner_cm_check_with(&i, 2, Execution::Parallel).ok()
            );
        }
    }

    #[test]
    fn printed_polynomials_parse_back(terms in prop::collection::vec((prop::collection::vec(0u32..=3, 3), -20i64..=20, 1i64..=5), 0..6)) {
        let ring = blocks_ring(&[&["x", "y"], &["z"]], FieldSpec::Rationals);
        let f = Polynomial::from_terms(
            ring.clone(),
            Rationals,
            terms.into_iter().map(|(e, n, d)| (Monomial::new(e), BigRational::new(n.into(), d.into()))),
        );
        let g = parse_polynomial(&f.to_string(), &ring, Rationals).unwrap();
        prop_assert_eq!(f, g);
    }
}

#[test]
fn rank_oracle_sanity() {
    let b = LatticePointSet::new(2, [vec![2, 0], vec![0, 2]]).unwrap();
    assert!(!is_polymatroid_oracle(&b));
    let full = LatticePointSet::new(2, [vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
    assert!(is_polymatroid_oracle(&full));
    let _: BTreeSet<Vec<u32>> = full.points().clone();
}
