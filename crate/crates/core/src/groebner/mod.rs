//! Ideals, Gröbner bases and the ideal operations built on them.

mod engine;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::MonomialIdeal;
use crate::order::MonomialOrder;
use crate::ring::{GradedRing, Monomial, Polynomial};

pub(crate) use engine::{Engine, Poly};

type BasisCache<F> = Arc<RwLock<HashMap<MonomialOrder, Arc<Vec<Polynomial<F>>>>>>;

/// A homogeneous ideal given by generators.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    ring: Arc<GradedRing>,
    field: F,
    gens: Vec<Polynomial<F>>,
    cache: BasisCache<F>,
}

fn weights(ring: &GradedRing) -> Vec<u32> {
    (0..ring.nvars()).map(|i| ring.weight(i)).collect()
}

pub(crate) fn to_engine<F: Field>(engine: &Engine<'_, F>, p: &Polynomial<F>) -> Poly<F::Elem> {
    engine.from_terms(
        p.terms()
            .map(|(m, c)| (m.exponents().to_vec(), c.clone()))
            .collect(),
    )
}

pub(crate) fn from_engine<F: Field>(ring: &Arc<GradedRing>, field: &F, p: &Poly<F::Elem>) -> Polynomial<F> {
    let n = ring.nvars();
    Polynomial::from_terms(
        ring.clone(),
        field.clone(),
        p.terms(n).map(|(e, c)| (Monomial::new(e.to_vec()), c.clone())),
    )
}

/// Reduced Gröbner basis of arbitrary (not necessarily homogeneous)
/// polynomials, monic and sorted by ascending leading monomial.
pub fn groebner_basis<F: Field>(polys: &[Polynomial<F>], order: &MonomialOrder) -> Vec<Polynomial<F>> {
    let Some(first) = polys.first() else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    let field = first.field().clone();
    let engine = Engine::new(&field, order, weights(&ring));
    let input = polys.iter().map(|p| to_engine(&engine, p)).collect();
    engine
        .groebner(input)
        .iter()
        .map(|p| from_engine(&ring, &field, p))
        .collect()
}

/// Normal form of `f` modulo a Gröbner basis.
pub fn normal_form<F: Field>(f: &Polynomial<F>, basis: &[Polynomial<F>], order: &MonomialOrder) -> Polynomial<F> {
    let ring = f.ring().clone();
    let field = f.field().clone();
    let engine = Engine::new(&field, order, weights(&ring));
    let elems: Vec<_> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| engine_element(&engine, g))
        .collect();
    let refs: Vec<_> = elems.iter().collect();
    let r = engine.reduce(to_engine(&engine, f), &refs, false, None);
    from_engine(&ring, &field, &r)
}

fn engine_element<F: Field>(engine: &Engine<'_, F>, g: &Polynomial<F>) -> engine::Element<F::Elem> {
    let poly = to_engine(engine, g);
    let lead = poly.exp(0, engine.n).to_vec();
    let mut mask = 0u64;
    for (i, &a) in lead.iter().enumerate() {
        if a > 0 {
            mask |= 1 << (i % 64);
        }
    }
    engine::Element {
        poly,
        lead,
        mask,
        sugar: 0,
    }
}

/// `f / d` when `d` divides `f`.
pub fn divide_exact<F: Field>(f: &Polynomial<F>, d: &Polynomial<F>) -> Option<Polynomial<F>> {
    let ring = f.ring().clone();
    let field = f.field().clone();
    let order = MonomialOrder::grevlex(ring.nvars());
    let engine = Engine::new(&field, &order, weights(&ring));
    let q = engine.divide_exact(&to_engine(&engine, f), &to_engine(&engine, d))?;
    Some(from_engine(&ring, &field, &q))
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped; the rest must be homogeneous elements of
    /// `ring`.
    pub fn new(ring: Arc<GradedRing>, field: F, gens: Vec<Polynomial<F>>) -> Result<Self> {
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            if !(Arc::ptr_eq(g.ring(), &ring) || **g.ring() == *ring) {
                return Err(Error::RingMismatch);
            }
            if g.is_zero() {
                continue;
            }
            g.multidegree()?;
            kept.push(g.with_ring(ring.clone())?);
        }
        Ok(Ideal {
            ring,
            field,
            gens: kept,
            cache: Arc::default(),
        })
    }

    pub fn from_monomial_ideal(ideal: &MonomialIdeal, field: F) -> Self {
        let ring = ideal.ring().clone();
        let gens = ideal
            .gens()
            .iter()
            .map(|m| Polynomial::monomial(ring.clone(), field.clone(), m.clone()))
            .collect();
        Ideal {
            ring,
            field,
            gens,
            cache: Arc::default(),
        }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn default_order(&self) -> MonomialOrder {
        MonomialOrder::grevlex(self.ring.nvars())
    }

    /// Reduced Gröbner basis, computed once per order.
    pub fn groebner_basis(&self, order: &MonomialOrder) -> Arc<Vec<Polynomial<F>>> {
        if let Some(gb) = self.cache.read().expect("cache lock").get(order) {
            return gb.clone();
        }
        let gb = Arc::new(groebner_basis(&self.gens, order));
        self.cache
            .write()
            .expect("cache lock")
            .entry(order.clone())
            .or_insert(gb)
            .clone()
    }

    /// Gröbner basis truncated to multidegrees `≤ bound`: correct in every
    /// degree of the downset, not beyond.
    pub fn groebner_basis_truncated(&self, order: &MonomialOrder, bound: &[u32]) -> Vec<Polynomial<F>> {
        let mut engine = Engine::new(&self.field, order, weights(&self.ring));
        engine.bound = Some((self.ring.degrees().to_vec(), bound.to_vec()));
        let input = self.gens.iter().map(|p| to_engine(&engine, p)).collect();
        engine
            .groebner(input)
            .iter()
            .map(|p| from_engine(&self.ring, &self.field, p))
            .collect()
    }

    pub fn initial_ideal(&self, order: &MonomialOrder) -> MonomialIdeal {
        let gb = self.groebner_basis(order);
        leading_ideal(&self.ring, &gb, order)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        let order = self.default_order();
        let gb = self.groebner_basis(&order);
        normal_form(f, &gb, &order).is_zero()
    }

    pub fn is_subset(&self, other: &Ideal<F>) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// Equality via reduced Gröbner bases for grevlex.
    pub fn equals(&self, other: &Ideal<F>) -> bool {
        let order = self.default_order();
        *self.groebner_basis(&order) == *other.groebner_basis(&order)
    }

    pub fn is_unit(&self) -> bool {
        let order = self.default_order();
        self.groebner_basis(&order)
            .iter()
            .any(|g| g.leading_monomial(&order).is_some_and(|m| m.is_one()))
    }

    /// The monomial ideal itself when every generator is a monomial.
    pub fn to_monomial_ideal(&self) -> Option<MonomialIdeal> {
        if !self.gens.iter().all(|g| g.is_monomial()) {
            return None;
        }
        let gens = self.gens.iter().map(|g| g.terms().next().unwrap().0.clone()).collect();
        Some(MonomialIdeal::new(self.ring.clone(), gens))
    }

    pub fn codim(&self) -> Option<usize> {
        self.initial_ideal(&self.default_order()).codim()
    }

    /// The same generators in another ring with identical variables.
    pub fn with_ring(&self, ring: Arc<GradedRing>) -> Result<Self> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.with_ring(ring.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, self.field.clone(), gens)
    }
}

pub(crate) fn leading_ideal<F: Field>(ring: &Arc<GradedRing>, basis: &[Polynomial<F>], order: &MonomialOrder) -> MonomialIdeal {
    MonomialIdeal::new(
        ring.clone(),
        basis
            .iter()
            .filter_map(|g| g.leading_monomial(order).cloned())
            .collect(),
    )
}

/// Variables whose degree support lies in `blocks`; errors when some degree
/// straddles the blocks.
pub fn block_variables(ring: &GradedRing, blocks: &[usize]) -> Result<Vec<usize>> {
    if let Some(&b) = blocks.iter().find(|&&b| b >= ring.rank()) {
        return Err(Error::BadBlock(b));
    }
    let mut kept = Vec::new();
    for i in 0..ring.nvars() {
        let d = ring.degree(i);
        let inside = (0..ring.rank()).filter(|k| d[*k] > 0).all(|k| blocks.contains(&k));
        let outside = (0..ring.rank()).filter(|k| d[*k] > 0).all(|k| !blocks.contains(&k));
        match (inside, outside) {
            (true, _) => kept.push(i),
            (false, true) => {}
            (false, false) => return Err(Error::BlocksNotSeparable),
        }
    }
    Ok(kept)
}

/// The subring `S_(J)`: the variables of the blocks `J`, graded by the
/// coordinates in `J`.
pub fn subring(ring: &GradedRing, blocks: &[usize]) -> Result<(Arc<GradedRing>, Vec<usize>)> {
    let mut blocks = blocks.to_vec();
    blocks.sort_unstable();
    blocks.dedup();
    let kept = block_variables(ring, &blocks)?;
    let vars = kept.iter().map(|&i| ring.var_name(i).to_string()).collect();
    let degrees = kept
        .iter()
        .map(|&i| blocks.iter().map(|&k| ring.degree(i)[k]).collect())
        .collect();
    let sub = GradedRing::new(vars, degrees, blocks.len(), ring.field())?;
    Ok((Arc::new(sub), kept))
}

/// The contraction `I_(J) = I ∩ S_(J)` by elimination.
pub fn contract<F: Field>(ideal: &Ideal<F>, blocks: &[usize], order: &MonomialOrder) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    let (sub, kept) = subring(ring, blocks)?;
    let eliminated: Vec<usize> = (0..ring.nvars()).filter(|i| !kept.contains(i)).collect();
    let elim = order.eliminating(&eliminated);
    let gb = ideal.groebner_basis(&elim);
    let mut gens = Vec::new();
    for g in gb.iter() {
        if g.variables().iter().any(|v| eliminated.contains(v)) {
            continue;
        }
        gens.push(g.map_monomials(sub.clone(), |m| {
            Ok(Monomial::new(kept.iter().map(|&i| m.exponents()[i]).collect()))
        })?);
    }
    Ideal::new(sub, ideal.field().clone(), gens)
}

/// `I ∩ J` via `t·I + (1-t)·J` and elimination of `t`.
pub fn intersect<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>> {
    if *a.ring() != *b.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = a.ring().clone();
    let field = a.field().clone();
    if a.is_zero() || b.is_zero() {
        return Ideal::new(ring, field, Vec::new());
    }
    let n = ring.nvars();
    let base = MonomialOrder::grevlex(n);
    let order = base.with_leading_eliminated(1);
    let mut w = vec![1];
    w.extend(weights(&ring));
    let engine = Engine::new(&field, &order, w);
    let lift = |p: &Polynomial<F>, t: u32, neg: bool| -> Vec<(Vec<u32>, F::Elem)> {
        p.terms()
            .map(|(m, c)| {
                let mut e = vec![t];
                e.extend_from_slice(m.exponents());
                (e, if neg { field.neg(c) } else { c.clone() })
            })
            .collect()
    };
    let mut input = Vec::new();
    for f in a.gens() {
        input.push(engine.from_terms(lift(f, 1, false)));
    }
    for g in b.gens() {
        let mut terms = lift(g, 0, false);
        terms.extend(lift(g, 1, true));
        input.push(engine.from_terms(terms));
    }
    let gb = engine.groebner(input);
    let gens = gb
        .iter()
        .filter(|p| p.exp(0, n + 1)[0] == 0)
        .map(|p| {
            Polynomial::from_terms(
                ring.clone(),
                field.clone(),
                p.terms(n + 1).map(|(e, c)| (Monomial::new(e[1..].to_vec()), c.clone())),
            )
        })
        .collect();
    Ideal::new(ring, field, gens)
}

/// `I : f`.
pub fn colon_poly<F: Field>(ideal: &Ideal<F>, f: &Polynomial<F>) -> Result<Ideal<F>> {
    if f.is_zero() {
        let one = Polynomial::constant(ideal.ring().clone(), ideal.field().clone(), ideal.field().one());
        return Ideal::new(ideal.ring().clone(), ideal.field().clone(), vec![one]);
    }
    let principal = Ideal::new(ideal.ring().clone(), ideal.field().clone(), vec![f.clone()])?;
    let inter = intersect(ideal, &principal)?;
    let gens = inter
        .gens()
        .iter()
        .map(|g| divide_exact(g, f).expect("elements of (f) are divisible by f"))
        .collect();
    Ideal::new(ideal.ring().clone(), ideal.field().clone(), gens)
}

/// `I : J`.
pub fn colon<F: Field>(ideal: &Ideal<F>, other: &Ideal<F>) -> Result<Ideal<F>> {
    let mut acc: Option<Ideal<F>> = None;
    for g in other.gens() {
        let c = colon_poly(ideal, g)?;
        acc = Some(match acc {
            None => c,
            Some(a) => intersect(&a, &c)?,
        });
    }
    match acc {
        Some(a) => Ok(a),
        None => {
            let one = Polynomial::constant(ideal.ring().clone(), ideal.field().clone(), ideal.field().one());
            Ideal::new(ideal.ring().clone(), ideal.field().clone(), vec![one])
        }
    }
}

/// `I : f^∞` by iterated colons.
pub fn saturate_poly<F: Field>(ideal: &Ideal<F>, f: &Polynomial<F>) -> Result<Ideal<F>> {
    let mut cur = ideal.clone();
    loop {
        let next = colon_poly(&cur, f)?;
        if next.is_subset(&cur) {
            return Ok(cur);
        }
        cur = next;
    }
}

/// `I : (x_j : j ∈ vars)^∞ = ∩_j I : x_j^∞`.
pub fn saturate_vars<F: Field>(ideal: &Ideal<F>, vars: &[usize]) -> Result<Ideal<F>> {
    let mut acc: Option<Ideal<F>> = None;
    for &v in vars {
        let x = Polynomial::var(ideal.ring().clone(), ideal.field().clone(), v);
        let s = saturate_poly(ideal, &x)?;
        acc = Some(match acc {
            None => s,
            Some(a) => intersect(&a, &s)?,
        });
    }
    Ok(acc.unwrap_or_else(|| ideal.clone()))
}

/// Saturation by the irrelevant ideal `∏ (block_i)` of a standard ring.
pub fn saturate_irrelevant<F: Field>(ideal: &Ideal<F>) -> Result<Ideal<F>> {
    let blocks = ideal.ring().blocks()?;
    let mut cur = ideal.clone();
    for block in &blocks {
        cur = saturate_vars(&cur, block)?;
    }
    Ok(cur)
}
