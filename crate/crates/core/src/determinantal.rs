//! Generic determinantal ideals in the fine `ℕ^m ⊕ ℕ^n` grading.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::hilbert::{k_polynomial, multidegree_c_from_k};
use crate::intpoly::IntegerPolynomial;
use crate::monomial::MonomialIdeal;
use crate::order::MonomialOrder;
use crate::par::{self, Execution};
use crate::ring::{GradedRing, Monomial, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DetSpec {
    pub m: usize,
    pub n: usize,
    pub r: usize,
}

impl DetSpec {
    pub fn new(m: usize, n: usize, r: usize) -> Result<Self> {
        if r == 0 || r > m || m > n {
            return Err(Error::BadShape(format!("need 1 <= r <= m <= n, got r={r} m={m} n={n}")));
        }
        Ok(DetSpec { m, n, r })
    }
}

/// Index of `x_{i,j}` (one-based) in the row-major `m × n` ring.
fn var_index(n: usize, i: usize, j: usize) -> usize {
    (i - 1) * n + (j - 1)
}

/// Grading variable names `t1..tm, s1..sn`.
pub fn grading_names(m: usize, n: usize) -> Vec<String> {
    (1..=m).map(|i| format!("t{i}")).chain((1..=n).map(|j| format!("s{j}"))).collect()
}

/// `k[x_{ij}]` with `deg x_{ij} = e_i ⊕ f_j`.
pub fn det_ring(m: usize, n: usize, field: crate::field::FieldSpec) -> Result<GradedRing> {
    let mut vars = Vec::with_capacity(m * n);
    let mut degrees = Vec::with_capacity(m * n);
    for i in 1..=m {
        for j in 1..=n {
            vars.push(format!("x{i}_{j}"));
            let mut d = vec![0u32; m + n];
            d[i - 1] = 1;
            d[m + j - 1] = 1;
            degrees.push(d);
        }
    }
    GradedRing::new(vars, degrees, m + n, field)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(1, n, k, &mut cur, &mut out);
    out
}

fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..k).collect();
    fn go(pos: usize, perm: &mut Vec<usize>, even: bool, out: &mut Vec<(Vec<usize>, bool)>) {
        if pos == perm.len() {
            out.push((perm.clone(), even));
            return;
        }
        for i in pos..perm.len() {
            perm.swap(pos, i);
            go(pos + 1, perm, if i == pos { even } else { !even }, out);
            perm.swap(pos, i);
        }
    }
    go(0, &mut perm, true, &mut out);
    out
}

/// The ideal of `r`-minors of the generic `m × n` matrix.
pub fn build_determinantal<F: Field>(spec: DetSpec, field: F) -> Result<Ideal<F>> {
    let DetSpec { m, n, r } = DetSpec::new(spec.m, spec.n, spec.r)?;
    let ring = Arc::new(det_ring(m, n, field.spec())?);
    let perms = permutations(r);
    let mut gens = Vec::new();
    for rows in subsets(m, r) {
        for cols in subsets(n, r) {
            let terms = perms.iter().map(|(p, even)| {
                let mut e = vec![0u32; m * n];
                for (a, &b) in p.iter().enumerate() {
                    e[var_index(n, rows[a], cols[b])] += 1;
                }
                let c = if *even { field.one() } else { field.neg(&field.one()) };
                (Monomial::new(e), c)
            });
            gens.push(Polynomial::from_terms(ring.clone(), field.clone(), terms));
        }
    }
    Ideal::new(ring, field, gens)
}

fn elementary(vars: &[usize], nvars: usize, deg: usize) -> IntegerPolynomial {
    // e_k over the first i variables, by the recurrence e_k = e_k' + x e_{k-1}'
    let mut table: Vec<IntegerPolynomial> = vec![IntegerPolynomial::zero(nvars); deg + 1];
    table[0] = IntegerPolynomial::one(nvars);
    for &v in vars {
        let x = IntegerPolynomial::var(nvars, v);
        for k in (1..=deg).rev() {
            table[k] = table[k].add(&table[k - 1].mul(&x));
        }
    }
    table.swap_remove(deg)
}

fn complete(vars: &[usize], nvars: usize, deg: usize) -> IntegerPolynomial {
    // h_k over the first i variables, by h_k = h_k' + x h_{k-1}
    let mut table: Vec<IntegerPolynomial> = vec![IntegerPolynomial::zero(nvars); deg + 1];
    table[0] = IntegerPolynomial::one(nvars);
    for &v in vars {
        let x = IntegerPolynomial::var(nvars, v);
        for k in 1..=deg {
            table[k] = table[k].add(&table[k - 1].mul(&x));
        }
    }
    table.swap_remove(deg)
}

/// `H_{m,n} = Σ t^a s^b` over `a ∈ ℕ^m`, `b ∈ {0,1}^n`, `|a| + |b| = n - m + 1`.
fn h_enumerated(m: usize, n: usize) -> IntegerPolynomial {
    let nv = m + n;
    let d = n + 1 - m;
    let t: Vec<usize> = (0..m).collect();
    let s: Vec<usize> = (m..m + n).collect();
    let mut out = IntegerPolynomial::zero(nv);
    for k in 0..=d.min(n) {
        out = out.add(&complete(&t, nv, d - k).mul(&elementary(&s, nv, k)));
    }
    out
}

/// `1 - t_1⋯t_m Σ_j (-1)^j h_j(t) e_{m+j}(s)`.
fn k_closed(m: usize, n: usize) -> IntegerPolynomial {
    let nv = m + n;
    let t: Vec<usize> = (0..m).collect();
    let s: Vec<usize> = (m..m + n).collect();
    let mut sum = IntegerPolynomial::zero(nv);
    for j in 0..=n - m {
        let term = complete(&t, nv, j).mul(&elementary(&s, nv, m + j));
        sum = if j % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
    }
    let mut lead = vec![0u32; nv];
    lead[..m].fill(1);
    IntegerPolynomial::one(nv).sub(&sum.shift(&lead))
}

/// Re-index a polynomial in `t1..ta, s1..sb` into `t1..tm, s1..sn`.
fn lift(f: &IntegerPolynomial, a: usize, m: usize, n: usize) -> IntegerPolynomial {
    let b = f.nvars() - a;
    let positions: Vec<usize> = (0..a).chain((0..b).map(|j| m + j)).collect();
    f.embed(m + n, &positions)
}

fn grading_var(m: usize, n: usize, v: usize) -> IntegerPolynomial {
    IntegerPolynomial::var(m + n, v)
}

/// Closed `H` with the conventions `H_{0,·} = 0`, `H_{m,m-1} = 1`.
fn h_cell(m: usize, n: usize) -> IntegerPolynomial {
    if m == 0 {
        IntegerPolynomial::zero(n)
    } else if n + 1 == m {
        IntegerPolynomial::one(m + n)
    } else {
        h_enumerated(m, n)
    }
}

/// Closed `K` with the conventions `K_{0,·} = 0`, `K_{m,m-1} = 1`.
fn k_cell(m: usize, n: usize) -> IntegerPolynomial {
    if m == 0 {
        IntegerPolynomial::zero(n)
    } else if n + 1 == m {
        IntegerPolynomial::one(m + n)
    } else {
        k_closed(m, n)
    }
}

/// `H_{m,n} = (s_n + t_m) H_{m,n-1} + H_{m-1,n-1}`.
pub fn h_recursion_holds(m: usize, n: usize, h: &IntegerPolynomial, prev: &IntegerPolynomial, diag: &IntegerPolynomial) -> bool {
    let ts = grading_var(m, n, m - 1).add(&grading_var(m, n, m + n - 1));
    let rhs = ts.mul(&lift(prev, m, m, n)).add(&lift(diag, m - 1, m, n));
    *h == rhs
}

/// `K_{m,n} = (1 - t_m s_n) K_{m,n-1} + t_m s_n K_{m-1,n-1}`.
pub fn k_recursion_holds(m: usize, n: usize, k: &IntegerPolynomial, prev: &IntegerPolynomial, diag: &IntegerPolynomial) -> bool {
    let ts = grading_var(m, n, m - 1).mul(&grading_var(m, n, m + n - 1));
    let rhs = IntegerPolynomial::one(m + n)
        .sub(&ts)
        .mul(&lift(prev, m, m, n))
        .add(&ts.mul(&lift(diag, m - 1, m, n)));
    *k == rhs
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormulas {
    pub h: IntegerPolynomial,
    pub k: IntegerPolynomial,
}

/// `H_{m,n}` and `K_{m,n}` for maximal minors, checked against both
/// recursions.
pub fn closed_formulas(m: usize, n: usize) -> Result<ClosedFormulas> {
    DetSpec::new(m, n, m)?;
    let h = h_cell(m, n);
    let k = k_cell(m, n);
    assert!(
        h_recursion_holds(m, n, &h, &h_cell(m, n - 1), &h_cell(m - 1, n - 1)),
        "H recursion fails at ({m}, {n})"
    );
    assert!(
        k_recursion_holds(m, n, &k, &k_cell(m, n - 1), &k_cell(m - 1, n - 1)),
        "K recursion fails at ({m}, {n})"
    );
    Ok(ClosedFormulas { h, k })
}

fn diagonals(ring: &Arc<GradedRing>, n: usize, rows: usize, cols: usize, size: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for rs in subsets(rows, size) {
        for cs in subsets(cols, size) {
            let mut e = vec![0u32; ring.nvars()];
            for (&i, &j) in rs.iter().zip(&cs) {
                e[var_index(n, i, j)] = 1;
            }
            out.push(Monomial::new(e));
        }
    }
    out
}

/// `J_{a,b}` inside the `m × n` ring, using rows `1..a` and columns `1..b`.
fn diagonal_in(ring: &Arc<GradedRing>, n: usize, a: usize, b: usize) -> MonomialIdeal {
    if a == 0 {
        return MonomialIdeal::unit(ring.clone());
    }
    if a > b {
        return MonomialIdeal::zero(ring.clone());
    }
    MonomialIdeal::new(ring.clone(), diagonals(ring, n, a, b, a))
}

/// Main diagonals of the maximal minors, the initial ideal of `I_m` under
/// the diagonal order.
pub fn diagonal_initial(m: usize, n: usize) -> Result<MonomialIdeal> {
    DetSpec::new(m, n, m)?;
    let ring = Arc::new(det_ring(m, n, crate::field::FieldSpec::default_prime())?);
    let j = diagonal_in(&ring, n, m, n);
    let x = Monomial::var(m * n, var_index(n, m, n));
    let prev = diagonal_in(&ring, n, m, n - 1);
    let diag = diagonal_in(&ring, n, m - 1, n - 1);
    let split = MonomialIdeal::new(
        ring.clone(),
        diag.gens().iter().map(|g| g.checked_mul(&x).expect("squarefree")).collect(),
    )
    .sum(&prev);
    assert_eq!(j, split, "diagonal decomposition fails at ({m}, {n})");
    assert_eq!(j.colon_monomial(&x), diag, "colon identity fails at ({m}, {n})");
    let xi = MonomialIdeal::new(ring.clone(), vec![x]);
    assert_eq!(j.sum(&xi), prev.sum(&xi));
    Ok(j)
}

#[derive(Clone, Debug, Serialize)]
pub struct DetCheck {
    pub spec: DetSpec,
    pub k_pipeline: String,
    pub c_pipeline: String,
    pub k_closed: Option<String>,
    pub h_closed: Option<String>,
    pub k_match: Option<bool>,
    pub c_match: Option<bool>,
    pub initial_match: Option<bool>,
}

impl DetCheck {
    pub fn pass(&self) -> bool {
        self.k_match != Some(false) && self.c_match != Some(false) && self.initial_match != Some(false)
    }
}

/// Run the Gröbner pipeline on `I_r` and compare with the closed formulas
/// when `r = m`.
pub fn det_check<F: Field>(spec: DetSpec, field: F) -> Result<DetCheck> {
    let ideal = build_determinantal(spec, field)?;
    let order = MonomialOrder::diagonal(spec.m * spec.n);
    let init = ideal.initial_ideal(&order);
    let k = crate::hilbert::k_polynomial_monomial(&init);
    let codim = init.codim().ok_or(Error::UnitIdeal)?;
    let c = multidegree_c_from_k(&k, codim)?;
    let names = grading_names(spec.m, spec.n);
    let mut out = DetCheck {
        spec,
        k_pipeline: k.display_with(&names),
        c_pipeline: c.display_with(&names),
        k_closed: None,
        h_closed: None,
        k_match: None,
        c_match: None,
        initial_match: None,
    };
    if spec.r == spec.m {
        let closed = closed_formulas(spec.m, spec.n)?;
        out.k_match = Some(closed.k == k);
        out.c_match = Some(closed.h == c);
        out.initial_match = Some(diagonal_initial(spec.m, spec.n)?.gens() == init.gens());
        out.k_closed = Some(closed.k.display_with(&names));
        out.h_closed = Some(closed.h.display_with(&names));
    }
    Ok(out)
}

/// `det_check` over independent cells.
pub fn det_sweep<F: Field + Sync>(specs: &[DetSpec], field: F, exec: Execution) -> Vec<Result<DetCheck>>
where
    F::Elem: Send + Sync,
{
    par::map(exec, specs, |s| det_check(*s, field.clone()))
}

/// `K` of `I_m` straight from the pipeline, without the monomial shortcut.
pub fn pipeline_k<F: Field>(spec: DetSpec, field: F) -> Result<IntegerPolynomial> {
    let ideal = build_determinantal(spec, field)?;
    Ok(k_polynomial(&ideal, &MonomialOrder::diagonal(spec.m * spec.n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use num_traits::One;

    fn fp() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn shapes() {
        assert!(matches!(DetSpec::new(3, 2, 2), Err(Error::BadShape(_))));
        assert!(matches!(DetSpec::new(2, 3, 3), Err(Error::BadShape(_))));
        let i = build_determinantal(DetSpec::new(2, 2, 2).unwrap(), fp()).unwrap();
        assert_eq!(i.gens().len(), 1);
        assert_eq!(i.gens()[0].to_string(), "x1_1*x2_2 - x1_2*x2_1");
        assert_eq!(i.gens()[0].multidegree().unwrap(), vec![1, 1, 1, 1]);
        let i = build_determinantal(DetSpec::new(2, 3, 2).unwrap(), fp()).unwrap();
        assert_eq!(i.gens().len(), 3);
    }

    #[test]
    fn closed_h_small_cases() {
        let f = closed_formulas(2, 3).unwrap();
        assert_eq!(f.h.len(), 12);
        assert!(f.h.terms().all(|(_, c)| c.is_one()));
        let f = closed_formulas(3, 3).unwrap();
        assert_eq!(f.h.display_with(&grading_names(3, 3)), "t1 + t2 + t3 + s1 + s2 + s3");
        // product of (t1 + s_j)
        let f = closed_formulas(1, 3).unwrap();
        let mut prod = IntegerPolynomial::one(4);
        for j in 1..=3 {
            prod = prod.mul(&IntegerPolynomial::var(4, 0).add(&IntegerPolynomial::var(4, j)));
        }
        assert_eq!(f.h, prod);
        assert_eq!(closed_formulas(2, 2).unwrap().k.display_with(&grading_names(2, 2)), "-t1*t2*s1*s2 + 1");
    }

    #[test]
    fn diagonal_ideal_small() {
        let j = diagonal_initial(2, 3).unwrap();
        assert_eq!(j.to_string(), "(x1_1*x2_2, x1_1*x2_3, x1_2*x2_3)");
        for n in 1..=4 {
            for m in 1..=n {
                diagonal_initial(m, n).unwrap();
            }
        }
    }

    #[test]
    fn pipeline_matches_closed_forms() {
        let specs: Vec<DetSpec> = (1..=3)
            .flat_map(|n| (1..=n).map(move |m| DetSpec::new(m, n, m).unwrap()))
            .collect();
        for r in det_sweep(&specs, fp(), Execution::default()) {
            let r = r.unwrap();
            assert!(r.pass(), "{r:?}");
        }
    }

    #[test]
    fn pipeline_k_agrees_with_initial() {
        let spec = DetSpec::new(2, 3, 2).unwrap();
        assert_eq!(pipeline_k(spec, fp()).unwrap(), closed_formulas(2, 3).unwrap().k);
    }
}
