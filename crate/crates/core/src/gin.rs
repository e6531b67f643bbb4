//! Multigraded generic initial ideals.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::groebner::{contract, leading_ideal, Ideal};
use crate::monomial::{reisner_cm_check_with, MonomialIdeal};
use crate::order::MonomialOrder;
use crate::par::{self, Execution};
use crate::ring::{GradedRing, Monomial, Polynomial};

const MIN_PRIME: u32 = 10007;

/// One invertible matrix per block; variable `b[j]` of block `b` maps to
/// `Σ_k M[j][k] x_{b[k]}`.
#[derive(Clone, Debug)]
pub struct BlockChange<F: Field> {
    pub seed: u64,
    pub blocks: Vec<Vec<usize>>,
    pub matrices: Vec<Vec<Vec<F::Elem>>>,
    field: F,
}

fn is_invertible<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<F::Elem>> = m.to_vec();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !field.is_zero(&a[r][col])) else {
            return false;
        };
        a.swap(col, p);
        let inv = field.inv(&a[col][col]);
        for r in col + 1..n {
            if field.is_zero(&a[r][col]) {
                continue;
            }
            let f = field.mul(&a[r][col], &inv);
            for c in col..n {
                let v = field.mul(&f, &a[col][c]);
                a[r][c] = field.sub(&a[r][c], &v);
            }
        }
    }
    true
}

fn check_field<F: Field>(field: &F) -> Result<()> {
    match field.spec() {
        FieldSpec::PrimeField(p) if p < MIN_PRIME => Err(Error::FieldTooSmall(p)),
        _ => Ok(()),
    }
}

/// Random invertible block matrices, deterministic in `seed`.
pub fn random_block_change<F: Field>(ring: &GradedRing, field: &F, seed: u64) -> Result<BlockChange<F>> {
    check_field(field)?;
    let blocks = ring.blocks()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let matrices = blocks
        .iter()
        .map(|b| loop {
            let m: Vec<Vec<F::Elem>> = (0..b.len())
                .map(|_| (0..b.len()).map(|_| field.random(&mut rng)).collect())
                .collect();
            if is_invertible(field, &m) {
                break m;
            }
        })
        .collect();
    Ok(BlockChange {
        seed,
        blocks,
        matrices,
        field: field.clone(),
    })
}

impl<F: Field> BlockChange<F> {
    fn images(&self, n: usize) -> Vec<Vec<(usize, F::Elem)>> {
        let mut images = vec![Vec::new(); n];
        for (b, m) in self.blocks.iter().zip(&self.matrices) {
            for (j, &v) in b.iter().enumerate() {
                images[v] = b
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| !self.field.is_zero(&m[j][*k]))
                    .map(|(k, &w)| (w, m[j][k].clone()))
                    .collect();
            }
        }
        images
    }

    pub fn apply(&self, f: &Polynomial<F>) -> Polynomial<F> {
        let n = f.ring().nvars();
        let images = self.images(n);
        let field = &self.field;
        let mut total: HashMap<Vec<u32>, F::Elem> = HashMap::new();
        for (m, c) in f.terms() {
            let mut cur: HashMap<Vec<u32>, F::Elem> = HashMap::new();
            cur.insert(vec![0; n], c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    let mut next: HashMap<Vec<u32>, F::Elem> = HashMap::with_capacity(cur.len() * images[v].len());
                    for (exp, coeff) in &cur {
                        for (w, a) in &images[v] {
                            let mut ne = exp.clone();
                            ne[*w] += 1;
                            let add = field.mul(coeff, a);
                            let slot = next.entry(ne).or_insert_with(|| field.zero());
                            *slot = field.add(slot, &add);
                        }
                    }
                    cur = next;
                }
            }
            for (exp, coeff) in cur {
                let slot = total.entry(exp).or_insert_with(|| field.zero());
                *slot = field.add(slot, &coeff);
            }
        }
        Polynomial::from_terms(
            f.ring().clone(),
            field.clone(),
            total.into_iter().map(|(e, c)| (Monomial::new(e), c)),
        )
    }

    pub fn apply_ideal(&self, ideal: &Ideal<F>) -> Result<Ideal<F>> {
        let gens = ideal.gens().iter().map(|g| self.apply(g)).collect();
        Ideal::new(ideal.ring().clone(), ideal.field().clone(), gens)
    }
}

#[derive(Clone, Debug)]
pub struct GinOptions {
    pub trials: usize,
    pub seed: u64,
    /// Compute only up to this multidegree.
    pub bound: Option<Vec<u32>>,
    pub exec: Execution,
}

impl Default for GinOptions {
    fn default() -> Self {
        GinOptions {
            trials: 3,
            seed: 1,
            bound: None,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GinResult {
    pub ideal: MonomialIdeal,
    pub trials: usize,
    pub stable: bool,
    pub borel: bool,
    pub seeds: Vec<u64>,
    pub truncated_at: Option<Vec<u32>>,
}

/// Runs every trial and reports whether they agree.
pub fn gin_trials<F: Field>(ideal: &Ideal<F>, order: &MonomialOrder, opts: &GinOptions) -> Result<GinResult> {
    let ring = ideal.ring().clone();
    order.check_block_descending(&ring)?;
    check_field(ideal.field())?;
    let seeds: Vec<u64> = (0..opts.trials.max(1) as u64).map(|k| opts.seed.wrapping_add(k)).collect();
    let results = par::map(opts.exec, &seeds, |&seed| -> Result<MonomialIdeal> {
        let change = random_block_change(&ring, ideal.field(), seed)?;
        let moved = change.apply_ideal(ideal)?;
        Ok(match &opts.bound {
            None => moved.initial_ideal(order),
            Some(b) => leading_ideal(&ring, &moved.groebner_basis_truncated(order, b), order),
        })
    });
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;
    let stable = results.windows(2).all(|w| w[0] == w[1]);
    let consensus = results[0].clone();
    let borel = consensus.is_borel_fixed()?;
    Ok(GinResult {
        ideal: consensus,
        trials: seeds.len(),
        stable,
        borel,
        seeds,
        truncated_at: opts.bound.clone(),
    })
}

/// `gin_>(I)`; errors with `Unstable` when the trials disagree.
pub fn gin<F: Field>(ideal: &Ideal<F>, order: &MonomialOrder, opts: &GinOptions) -> Result<GinResult> {
    let r = gin_trials(ideal, order, opts)?;
    if !r.stable {
        return Err(Error::Unstable);
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub prime: Vec<String>,
    pub component: String,
    pub length: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub component: String,
    pub length: u64,
    /// Index into the minimal components of `gin(I)` whose length is a
    /// multiple; `None` when there is none.
    pub target: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionCheck {
    /// One-based block indices.
    pub blocks: Vec<usize>,
    pub gin: String,
    pub mlength: u64,
    pub mlength_ok: bool,
    pub witnesses: Vec<Witness>,
    pub divisibility_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GinReport {
    pub gin: String,
    pub mlength: u64,
    pub minimal_components: Vec<ComponentSummary>,
    pub associated_primes: usize,
    pub radical_cm: bool,
    pub primes_borel: bool,
    pub equidimensional: bool,
    pub projections: Vec<ProjectionCheck>,
    pub pass: bool,
}

fn minimal_components(g: &MonomialIdeal) -> Result<Vec<ComponentSummary>> {
    let names = g.ring().vars();
    Ok(g.primary_decomposition()?
        .into_iter()
        .filter(|c| c.is_minimal)
        .map(|c| ComponentSummary {
            prime: c.prime.iter().map(|&v| names[v].clone()).collect(),
            component: c.component.to_string(),
            length: c.length.unwrap_or(0),
        })
        .collect())
}

/// Checks the structural consequences of primality on `gin(I)` and on the
/// gins of all contractions `I_(J)`.
pub fn gin_structure_report<F: Field>(ideal: &Ideal<F>, order: &MonomialOrder, opts: &GinOptions) -> Result<GinReport> {
    let ring = ideal.ring().clone();
    let g = gin(ideal, order, opts)?.ideal;
    let comps = minimal_components(&g)?;
    let mlength = g.mlength()?;
    let p = match ideal.field().spec() {
        FieldSpec::PrimeField(p) => p,
        FieldSpec::Rationals => 32003,
    };
    let radical_cm = if g.is_unit() {
        true
    } else {
        reisner_cm_check_with(&g.radical(), p, opts.exec)?
    };
    let primes_borel = g.primes_are_borel_type()?;
    let minimal = g.minimal_primes()?;
    let equidimensional = minimal.windows(2).all(|w| w[0].len() == w[1].len());
    let rank = ring.rank();
    let subsets: Vec<Vec<usize>> = (1u32..(1 << rank))
        .map(|mask| (0..rank).filter(|k| mask & (1 << k) != 0).collect())
        .collect();
    let projections = subsets
        .iter()
        .map(|blocks| -> Result<ProjectionCheck> {
            let contracted = contract(ideal, blocks, &MonomialOrder::grevlex(ring.nvars()))?;
            let kept = crate::groebner::block_variables(&ring, blocks)?;
            let sub_order = order.restrict(&kept);
            let gj = gin(&contracted, &sub_order, opts)?.ideal;
            let ml = gj.mlength()?;
            let witnesses: Vec<Witness> = minimal_components(&gj)?
                .into_iter()
                .map(|c| Witness {
                    target: comps
                        .iter()
                        .position(|t| c.length > 0 && t.length % c.length == 0),
                    component: c.component,
                    length: c.length,
                })
                .collect();
            Ok(ProjectionCheck {
                blocks: blocks.iter().map(|b| b + 1).collect(),
                gin: gj.to_string(),
                mlength: ml,
                mlength_ok: ml <= mlength,
                divisibility_ok: witnesses.iter().all(|w| w.target.is_some()),
                witnesses,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pass = radical_cm
        && primes_borel
        && equidimensional
        && projections.iter().all(|p| p.mlength_ok && p.divisibility_ok);
    Ok(GinReport {
        gin: g.to_string(),
        mlength,
        associated_primes: g.associated_primes().len(),
        minimal_components: comps,
        radical_cm,
        primes_borel,
        equidimensional,
        projections,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use std::sync::Arc;

    fn ring() -> Arc<GradedRing> {
        let b = vec![
            vec!["x0".to_string(), "x1".into(), "x2".into()],
            vec!["y0".to_string(), "y1".into()],
        ];
        Arc::new(GradedRing::standard(&b, FieldSpec::PrimeField(32003)).unwrap())
    }

    #[test]
    fn block_change_is_deterministic_and_invertible() {
        let r = ring();
        let f = PrimeField::new(32003).unwrap();
        let a = random_block_change(&r, &f, 7).unwrap();
        let b = random_block_change(&r, &f, 7).unwrap();
        assert_eq!(a.matrices, b.matrices);
        for m in &a.matrices {
            assert!(is_invertible(&f, m));
        }
        let small = PrimeField::new(101).unwrap();
        assert!(matches!(random_block_change(&r, &small, 1), Err(Error::FieldTooSmall(101))));
    }

    #[test]
    fn gin_of_borel_prime_is_itself() {
        let r = ring();
        let f = PrimeField::new(32003).unwrap();
        // P_a with a = (1, 1) written in non-initial variables
        let p = Ideal::new(
            r.clone(),
            f,
            vec![Polynomial::var(r.clone(), f, 2), Polynomial::var(r.clone(), f, 4)],
        )
        .unwrap();
        let g = gin(&p, &MonomialOrder::grevlex(5), &GinOptions::default()).unwrap();
        assert_eq!(g.ideal.to_string(), "(x0, y0)");
        assert!(g.borel && g.stable);
    }

    #[test]
    fn order_must_respect_blocks() {
        let r = ring();
        let f = PrimeField::new(32003).unwrap();
        let p = Ideal::new(r.clone(), f, vec![Polynomial::var(r.clone(), f, 2)]).unwrap();
        let rev = MonomialOrder::parse("weights:0,0,1,0,0", 5).unwrap();
        assert!(matches!(
            gin(&p, &rev, &GinOptions::default()),
            Err(Error::OrderNotBlockDescending(0))
        ));
    }
}
