use std::time::Instant;

use mdeg_core::determinantal::{
    build_determinantal, closed_formulas, det_check, diagonal_initial, grading_names, h_recursion_holds,
    k_recursion_holds, DetSpec,
};
use mdeg_core::gin::{gin, GinOptions};
use mdeg_core::hilbert::{k_polynomial_monomial, multidegree_c_monomial};
use mdeg_core::monomial::simplicial::reisner_cm_check;
use mdeg_core::standardization::{cs_check, standardize, standardize_ideal, CsOptions};
use mdeg_core::{IntegerPolynomial, MonomialOrder, PrimeField};

fn fp() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

/// Pipeline `(𝒞, K)` of `I_m`, with `𝒞_{0,·} = 0`, `𝒞_{m,m-1} = 1` and
/// likewise for `K`.
fn pipeline(m: usize, n: usize) -> (IntegerPolynomial, IntegerPolynomial) {
    if m == 0 {
        return (IntegerPolynomial::zero(n), IntegerPolynomial::zero(n));
    }
    if n + 1 == m {
        return (IntegerPolynomial::one(m + n), IntegerPolynomial::one(m + n));
    }
    let ideal = build_determinantal(DetSpec::new(m, n, m).unwrap(), fp()).unwrap();
    let init = ideal.initial_ideal(&MonomialOrder::diagonal(m * n));
    (multidegree_c_monomial(&init).unwrap(), k_polynomial_monomial(&init))
}

fn cells() -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = (1..=4).flat_map(|n| (1..=n).map(move |m| (m, n))).collect();
    v.push((2, 5));
    v
}

#[test]
fn pipeline_matches_closed_formulas_and_recursions() {
    for (m, n) in cells() {
        let start = Instant::now();
        let (c, k) = pipeline(m, n);
        let closed = closed_formulas(m, n).unwrap();
        assert_eq!(c, closed.h, "C at ({m}, {n})");
        assert_eq!(k, closed.k, "K at ({m}, {n})");
        assert!(c.terms().all(|(_, x)| *x == 1.into()));
        let (c_prev, k_prev) = pipeline(m, n - 1);
        let (c_diag, k_diag) = pipeline(m - 1, n - 1);
        assert!(h_recursion_holds(m, n, &c, &c_prev, &c_diag), "C recursion ({m}, {n})");
        assert!(k_recursion_holds(m, n, &k, &k_prev, &k_diag), "K recursion ({m}, {n})");
        assert!(start.elapsed().as_secs() < 60);
    }
}

#[test]
fn diagonal_initial_is_groebner_degeneration() {
    for n in 1..=4 {
        for m in 1..=n {
            let ideal = build_determinantal(DetSpec::new(m, n, m).unwrap(), fp()).unwrap();
            let init = ideal.initial_ideal(&MonomialOrder::diagonal(m * n));
            assert_eq!(init.gens(), diagonal_initial(m, n).unwrap().gens(), "({m}, {n})");
        }
    }
}

#[test]
fn non_maximal_minors_have_multiplicities() {
    let check = det_check(DetSpec::new(3, 3, 2).unwrap(), fp()).unwrap();
    let names = grading_names(3, 3);
    let ideal = build_determinantal(DetSpec::new(3, 3, 2).unwrap(), fp()).unwrap();
    let init = ideal.initial_ideal(&MonomialOrder::diagonal(9));
    let c = multidegree_c_monomial(&init).unwrap();
    assert_eq!(c.display_with(&names), check.c_pipeline);
    let coeff = |e: [u32; 6]| c.coefficient(&e).to_string();
    assert_eq!(coeff([1, 1, 1, 1, 0, 0]), "2");
    assert_eq!(coeff([1, 1, 0, 1, 1, 0]), "2");
    assert_eq!(coeff([1, 0, 0, 1, 1, 1]), "2");
    assert_eq!(coeff([2, 2, 0, 0, 0, 0]), "1");
    assert_eq!(coeff([2, 1, 1, 0, 0, 0]), "1");
}

#[test]
fn maximal_minors_are_cartwright_sturmfels() {
    for n in 1..=4 {
        for m in 1..=n {
            let start = Instant::now();
            let ideal = build_determinantal(DetSpec::new(m, n, m).unwrap(), fp()).unwrap();
            let opts = CsOptions {
                sample_orders: 3,
                ..CsOptions::default()
            };
            let v = cs_check(&ideal, &opts).unwrap();
            assert!(v.is_cs, "({m}, {n})");
            assert_eq!(v.squarefree_initials, Some(true));
            println!("cs ({m},{n}) {:?}", start.elapsed());
        }
    }
    let two = build_determinantal(DetSpec::new(3, 3, 2).unwrap(), fp()).unwrap();
    assert!(!cs_check(&two, &CsOptions::default()).unwrap().is_cs);
}

#[test]
fn radical_of_gin_is_cohen_macaulay() {
    for n in 1..=3 {
        for m in 1..=n {
            let start = Instant::now();
            let ideal = build_determinantal(DetSpec::new(m, n, m).unwrap(), fp()).unwrap();
            let map = standardize(ideal.ring()).unwrap();
            let j = standardize_ideal(&ideal, &map).unwrap();
            let g = gin(&j, &MonomialOrder::grevlex(map.target().nvars()), &GinOptions::default()).unwrap();
            let rad = g.ideal.radical();
            assert!(reisner_cm_check(&rad, 2).unwrap(), "({m}, {n})");
            assert!(reisner_cm_check(&rad, 32003).unwrap(), "({m}, {n})");
            println!("reisner ({m},{n}) {:?}", start.elapsed());
        }
    }
}
