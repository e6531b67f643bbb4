//! K-polynomials and the multidegree family `𝒞`, `𝒢`, `𝒜`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{saturate_irrelevant, Ideal};
use crate::intpoly::IntegerPolynomial;
use crate::monomial::{minimalize, varset, varset_members, MonomialIdeal, VarSet};
use crate::order::MonomialOrder;
use crate::par::{self, Execution};
use crate::ring::{GradedRing, Monomial};

struct KContext<'a> {
    ring: &'a GradedRing,
    memo: HashMap<Vec<Monomial>, IntegerPolynomial>,
}

impl KContext<'_> {
    fn one_minus(&self, m: &Monomial) -> IntegerPolynomial {
        let p = self.ring.rank();
        let deg = self.ring.monomial_degree(m).expect("degree fits");
        IntegerPolynomial::one(p).sub(&IntegerPolynomial::monomial(p, deg, BigInt::one()))
    }

    fn k(&mut self, gens: Vec<Monomial>) -> IntegerPolynomial {
        let p = self.ring.rank();
        if gens.is_empty() {
            return IntegerPolynomial::one(p);
        }
        if gens.iter().any(|g| g.is_one()) {
            return IntegerPolynomial::zero(p);
        }
        if gens.len() == 1 {
            return self.one_minus(&gens[0]);
        }
        if let Some(hit) = self.memo.get(&gens) {
            return hit.clone();
        }
        let result = self.k_uncached(&gens);
        self.memo.insert(gens, result.clone());
        result
    }

    fn k_uncached(&mut self, gens: &[Monomial]) -> IntegerPolynomial {
        let n = self.ring.nvars();
        // a variable generator splits off as a factor
        if let Some(x) = gens.iter().find(|g| g.total_degree() == 1) {
            let rest: Vec<Monomial> = gens.iter().filter(|g| *g != x).cloned().collect();
            return self.one_minus(x).mul(&self.k(rest));
        }
        // generators with disjoint supports give a product
        let supports: Vec<VarSet> = gens.iter().map(|g| varset(&g.support())).collect();
        let mut comp = supports[0];
        loop {
            let grown = supports
                .iter()
                .filter(|&&s| s & comp != 0)
                .fold(comp, |a, &s| a | s);
            if grown == comp {
                break;
            }
            comp = grown;
        }
        if supports.iter().any(|&s| s & comp == 0) {
            let (inside, outside): (Vec<Monomial>, Vec<Monomial>) = gens
                .iter()
                .cloned()
                .partition(|g| varset(&g.support()) & comp != 0);
            return self.k(inside).mul(&self.k(outside));
        }
        // pivot on the most frequent variable
        let mut freq = vec![0usize; n];
        for g in gens {
            for v in g.support() {
                freq[v] += 1;
            }
        }
        let pivot = (0..n).max_by(|&a, &b| freq[a].cmp(&freq[b]).then(b.cmp(&a))).unwrap();
        let x = Monomial::var(n, pivot);
        let mut plus: Vec<Monomial> = gens.iter().filter(|g| g.exponents()[pivot] == 0).cloned().collect();
        plus.push(x.clone());
        let colon: Vec<Monomial> = gens
            .iter()
            .map(|g| x.gcd(g).quotient_of(g).unwrap())
            .collect();
        let plus = minimalize(plus);
        let colon = minimalize(colon);
        let deg = self.ring.degree(pivot).to_vec();
        let a = self.k(plus);
        let b = self.k(colon);
        a.add(&b.shift(&deg))
    }
}

/// `K(S/I)` of a monomial ideal by the recursion
/// `K(S/I) = K(S/(I + x)) + t^{deg x} K(S/(I : x))`.
pub fn k_polynomial_monomial(ideal: &MonomialIdeal) -> IntegerPolynomial {
    let mut ctx = KContext {
        ring: ideal.ring(),
        memo: HashMap::new(),
    };
    ctx.k(ideal.gens().to_vec())
}

/// `K(S/I) = K(S/in_>(I))`.
pub fn k_polynomial<F: Field>(ideal: &Ideal<F>, order: &MonomialOrder) -> IntegerPolynomial {
    k_polynomial_monomial(&ideal.initial_ideal(order))
}

pub fn k_polynomials_batch(ideals: &[MonomialIdeal], exec: Execution) -> Vec<IntegerPolynomial> {
    par::map(exec, ideals, k_polynomial_monomial)
}

/// The total degree `codim` part of `K(1 - t)`.
pub fn multidegree_c_from_k(k: &IntegerPolynomial, codim: usize) -> Result<IntegerPolynomial> {
    let k1 = k.substitute_one_minus();
    if let Some(d) = k1.min_total_degree() {
        if d < codim as u64 {
            return Err(Error::LowerDegreeTermsPresent);
        }
    }
    Ok(k1.homogeneous_part(codim as u64))
}

pub fn multidegree_c_monomial(ideal: &MonomialIdeal) -> Result<IntegerPolynomial> {
    let codim = ideal.codim().ok_or(Error::UnitIdeal)?;
    multidegree_c_from_k(&k_polynomial_monomial(ideal), codim)
}

/// `𝒞(S/I; t)`.
pub fn multidegree_c<F: Field>(ideal: &Ideal<F>, order: &MonomialOrder) -> Result<IntegerPolynomial> {
    multidegree_c_monomial(&ideal.initial_ideal(order))
}

/// `𝒢(S/I; t)`: the terms of `K(1 - t)` with divisibility-minimal monomials.
pub fn multidegree_g_from_k(k: &IntegerPolynomial) -> IntegerPolynomial {
    k.substitute_one_minus().divisibility_minimal_part()
}

pub fn multidegree_g<F: Field>(ideal: &Ideal<F>, order: &MonomialOrder) -> IntegerPolynomial {
    multidegree_g_from_k(&k_polynomial(ideal, order))
}

/// `𝒞(S/P)` of the monomial prime on `vars`: `∏ ⟨deg x, t⟩`.
pub fn prime_multidegree(ring: &GradedRing, vars: &[usize]) -> IntegerPolynomial {
    let p = ring.rank();
    vars.iter().fold(IntegerPolynomial::one(p), |acc, &v| {
        let lin = IntegerPolynomial::from_terms(
            p,
            ring.degree(v).iter().enumerate().filter(|(_, &d)| d > 0).map(|(k, &d)| {
                let mut e = vec![0; p];
                e[k] = 1;
                (e, BigInt::from(d))
            }),
        );
        acc.mul(&lin)
    })
}

/// `𝒜(S/I) = Σ_P length(H^0_P(S_P/I_P)) 𝒞(S/P)` over associated primes.
pub fn arithmetic_multidegree(ideal: &MonomialIdeal) -> Result<IntegerPolynomial> {
    let p = ideal.ring().rank();
    if ideal.is_unit() {
        return Ok(IntegerPolynomial::zero(p));
    }
    if ideal.is_zero() {
        return Ok(IntegerPolynomial::one(p));
    }
    let mut acc = IntegerPolynomial::zero(p);
    for prime in ideal.associated_primes() {
        let len = ideal.local_cohomology_length(&prime);
        acc = acc.add(&prime_multidegree(ideal.ring(), &prime).scale(&BigInt::from(len)));
    }
    Ok(acc)
}

pub fn arithmetic_multidegree_of<F: Field>(ideal: &Ideal<F>) -> Result<IntegerPolynomial> {
    arithmetic_multidegree(&ideal.to_monomial_ideal().ok_or(Error::NotMonomial)?)
}

/// `𝒜` through the dimension filtration:
/// `Σ_i [K(S/I; 1-t) - K(S/Q_i; 1-t)]_i`.
pub fn arithmetic_multidegree_via_filtration(ideal: &MonomialIdeal) -> Result<IntegerPolynomial> {
    let p = ideal.ring().rank();
    let n = ideal.nvars();
    let ki = k_polynomial_monomial(ideal).substitute_one_minus();
    let mut acc = IntegerPolynomial::zero(p);
    for i in 0..=n {
        let q = ideal.dimension_filtration(i)?;
        let kq = k_polynomial_monomial(&q).substitute_one_minus();
        acc = acc.add(&ki.sub(&kq).homogeneous_part(i as u64));
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixedEntry {
    pub n: Vec<u32>,
    pub degree: String,
}

/// Mixed multiplicities of `X ⊂ P^{m_1} × ... × P^{m_p}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixedMultiplicityTable {
    /// `r = dim X`.
    pub dim: usize,
    /// Nonzero `deg^n(X)`, sorted by `n`.
    pub entries: Vec<MixedEntry>,
    pub msupp: Vec<Vec<u32>>,
    pub mdeg: String,
}

/// Saturates by the irrelevant ideal, then reads `deg^n` off the coefficient
/// of `t^{m-n}` in `𝒞`.
pub fn geometric_multidegrees<F: Field>(ideal: &Ideal<F>, order: &MonomialOrder) -> Result<MixedMultiplicityTable> {
    let ring = ideal.ring().clone();
    let blocks = ring.blocks()?;
    let sat = saturate_irrelevant(ideal)?;
    if sat.is_unit() {
        return Err(Error::EmptyScheme);
    }
    let c = multidegree_c(&sat, order)?;
    let m: Vec<u32> = blocks.iter().map(|b| b.len() as u32 - 1).collect();
    let codim = c.min_total_degree().unwrap_or(0) as usize;
    let total: usize = m.iter().map(|&x| x as usize).sum();
    let dim = total.checked_sub(codim).ok_or(Error::EmptyScheme)?;
    let mut entries = BTreeMap::new();
    let mut mdeg = BigInt::zero();
    for (a, coeff) in c.terms() {
        let n: Vec<u32> = m.iter().zip(a).map(|(mi, ai)| mi - ai).collect();
        if *coeff > mdeg {
            mdeg = coeff.clone();
        }
        entries.insert(n, coeff.to_string());
    }
    Ok(MixedMultiplicityTable {
        dim,
        msupp: entries.keys().cloned().collect(),
        entries: entries.into_iter().map(|(n, degree)| MixedEntry { n, degree }).collect(),
        mdeg: mdeg.to_string(),
    })
}

const MAX_BOUND: u32 = 8;

/// `dim_k [S/I]_ν` for all `ν ≤ bound`, by counting standard monomials.
pub fn hilbert_function_oracle(ideal: &MonomialIdeal, bound: &[u32]) -> Result<BTreeMap<Vec<u32>, u64>> {
    let ring = ideal.ring();
    if bound.len() != ring.rank() {
        return Err(Error::DimensionMismatch);
    }
    if let Some(&b) = bound.iter().find(|&&b| b > MAX_BOUND) {
        return Err(Error::BoundTooLarge(b));
    }
    let mut table: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for nu in box_points(bound) {
        table.insert(nu, 0);
    }
    let n = ring.nvars();
    let mut e = vec![0u32; n];
    let mut deg = vec![0u32; bound.len()];
    fn rec(
        k: usize,
        ring: &GradedRing,
        bound: &[u32],
        e: &mut Vec<u32>,
        deg: &mut Vec<u32>,
        ideal: &MonomialIdeal,
        table: &mut BTreeMap<Vec<u32>, u64>,
    ) {
        if k == ring.nvars() {
            if !ideal.contains(&Monomial::new(e.clone())) {
                *table.get_mut(deg.as_slice()).expect("degree inside box") += 1;
            }
            return;
        }
        let d = ring.degree(k);
        loop {
            rec(k + 1, ring, bound, e, deg, ideal, table);
            if deg.iter().zip(d).zip(bound).any(|((x, dk), b)| x + dk > *b) {
                break;
            }
            e[k] += 1;
            for (x, dk) in deg.iter_mut().zip(d) {
                *x += dk;
            }
        }
        for (x, dk) in deg.iter_mut().zip(d) {
            *x -= dk * e[k];
        }
        e[k] = 0;
    }
    rec(0, ring, bound, &mut e, &mut deg, ideal, &mut table);
    Ok(table)
}

/// Coefficients of `K(t) / ∏ (1 - t^{deg x_i})` for all `ν ≤ bound`.
pub fn hilbert_series_coefficients(k: &IntegerPolynomial, ring: &GradedRing, bound: &[u32]) -> BTreeMap<Vec<u32>, BigInt> {
    let points = box_points(bound);
    let mut table: BTreeMap<Vec<u32>, BigInt> = points.iter().map(|p| (p.clone(), BigInt::zero())).collect();
    for (e, c) in k.terms() {
        if let Some(v) = table.get_mut(e) {
            *v += c;
        }
    }
    for i in 0..ring.nvars() {
        let d = ring.degree(i);
        for nu in &points {
            if nu.iter().zip(d).all(|(a, b)| a >= b) {
                let prev: Vec<u32> = nu.iter().zip(d).map(|(a, b)| a - b).collect();
                let add = table[&prev].clone();
                *table.get_mut(nu).unwrap() += add;
            }
        }
    }
    table
}

/// Lattice points of `[0, bound]` in increasing lex order.
pub fn box_points(bound: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in bound {
        let mut next = Vec::with_capacity(out.len() * (b as usize + 1));
        for p in &out {
            for v in 0..=b {
                let mut q = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Variables of the monomial prime with the given cover mask.
pub fn prime_vars(cover: VarSet) -> Vec<usize> {
    varset_members(cover)
}
