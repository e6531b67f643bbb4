//! Monomial ideals: decompositions, lengths, duality, Borel and
//! Cohen–Macaulay checks.

pub mod simplicial;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::subring;
use crate::ring::{GradedRing, Monomial};

pub use simplicial::{reisner_cm_check, reisner_cm_check_with, SimplicialComplex};

/// A set of variables as a bit mask.
pub type VarSet = u64;

pub fn varset(vars: &[usize]) -> VarSet {
    vars.iter().fold(0, |m, &v| m | (1 << v))
}

pub fn varset_members(s: VarSet) -> Vec<usize> {
    (0..64).filter(|&i| s & (1 << i) != 0).collect()
}

/// Ideal generated by monomials, stored by its sorted minimal generators.
#[derive(Clone, Debug)]
pub struct MonomialIdeal {
    ring: Arc<GradedRing>,
    gens: Vec<Monomial>,
}

impl PartialEq for MonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens && (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
    }
}

impl Eq for MonomialIdeal {}

/// Primary component of a monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub prime: Vec<usize>,
    pub component: MonomialIdeal,
    pub is_minimal: bool,
    /// `length(S_P / I_P)`, only for minimal primes.
    pub length: Option<u64>,
}

/// `I` with `x^a` replaced by `∏_k x_(i,k)`; `provenance[j] = (i, k)`.
#[derive(Clone, Debug)]
pub struct Polarization {
    pub ideal: MonomialIdeal,
    pub provenance: Vec<(usize, u32)>,
}

pub(crate) fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.total_degree().cmp(&b.total_degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort();
    kept
}

fn pure_power(n: usize, i: usize, a: u32) -> Monomial {
    let mut e = vec![0; n];
    e[i] = a;
    Monomial::new(e)
}

/// Irreducible monomial ideal `(x_i^{a_i})`, as sorted `(i, a_i)` pairs.
type Irreducible = Vec<(usize, u32)>;

fn irreducible_contains(c: &Irreducible, m: &Monomial) -> bool {
    c.iter().any(|&(i, a)| m.exponents()[i] >= a)
}

/// `c ⊆ d` for irreducible ideals.
fn irreducible_subset(c: &Irreducible, d: &Irreducible) -> bool {
    c.iter()
        .all(|&(i, a)| d.iter().any(|&(j, b)| j == i && b <= a))
}

impl MonomialIdeal {
    pub fn new(ring: Arc<GradedRing>, gens: Vec<Monomial>) -> Self {
        for g in &gens {
            assert_eq!(g.nvars(), ring.nvars(), "monomial length mismatch");
        }
        MonomialIdeal {
            ring,
            gens: minimalize(gens),
        }
    }

    pub fn zero(ring: Arc<GradedRing>) -> Self {
        MonomialIdeal { ring, gens: Vec::new() }
    }

    pub fn unit(ring: Arc<GradedRing>) -> Self {
        let n = ring.nvars();
        MonomialIdeal {
            ring,
            gens: vec![Monomial::one(n)],
        }
    }

    /// The prime generated by the variables in `vars`.
    pub fn prime(ring: Arc<GradedRing>, vars: &[usize]) -> Self {
        let n = ring.nvars();
        Self::new(ring, vars.iter().map(|&v| Monomial::var(n, v)).collect())
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn is_subset(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.is_squarefree())
    }

    /// Every generator is a variable.
    pub fn is_prime(&self) -> bool {
        self.gens.iter().all(|g| g.total_degree() == 1)
    }

    pub fn with_ring(&self, ring: Arc<GradedRing>) -> Self {
        assert_eq!(ring.nvars(), self.nvars());
        MonomialIdeal {
            ring,
            gens: self.gens.clone(),
        }
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        MonomialIdeal::new(self.ring.clone(), g)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.checked_mul(b)?);
            }
        }
        Ok(MonomialIdeal::new(self.ring.clone(), g))
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.lcm(b));
            }
        }
        MonomialIdeal::new(self.ring.clone(), g)
    }

    /// `I : m`.
    pub fn colon_monomial(&self, m: &Monomial) -> MonomialIdeal {
        let g = self
            .gens
            .iter()
            .map(|g| m.gcd(g).quotient_of(g).expect("gcd divides"))
            .collect();
        MonomialIdeal::new(self.ring.clone(), g)
    }

    /// `I : x_i^∞`: set `x_i = 1` in every generator.
    pub fn saturate_var(&self, i: usize) -> MonomialIdeal {
        let g = self
            .gens
            .iter()
            .map(|g| {
                let mut e = g.exponents().to_vec();
                e[i] = 0;
                Monomial::new(e)
            })
            .collect();
        MonomialIdeal::new(self.ring.clone(), g)
    }

    /// `I : (x_j : j ∈ vars)^∞`.
    pub fn saturate_vars(&self, vars: &[usize]) -> MonomialIdeal {
        let mut it = vars.iter();
        let Some(&first) = it.next() else {
            return self.clone();
        };
        it.fold(self.saturate_var(first), |acc, &v| acc.intersect(&self.saturate_var(v)))
    }

    pub fn radical(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.ring.clone(), self.gens.iter().map(|g| g.radical()).collect())
    }

    fn check_vars(&self) -> Result<()> {
        if self.nvars() > 64 {
            return Err(Error::TooManyVariables(self.nvars()));
        }
        Ok(())
    }

    /// Minimal primes as minimal vertex covers of the generator supports;
    /// empty for the zero and the unit ideal.
    pub fn minimal_primes(&self) -> Result<Vec<Vec<usize>>> {
        if self.is_zero() || self.is_unit() {
            return Ok(Vec::new());
        }
        Ok(self.minimal_covers()?.into_iter().map(varset_members).collect())
    }

    /// Minimal vertex covers; `[∅]` for the zero ideal, `[]` for the unit.
    pub(crate) fn minimal_covers(&self) -> Result<Vec<VarSet>> {
        self.check_vars()?;
        if self.is_unit() {
            return Ok(Vec::new());
        }
        let supports: Vec<VarSet> = minimal_sets(self.gens.iter().map(|g| varset(&g.support())).collect());
        let mut found: Vec<VarSet> = Vec::new();
        fn rec(chosen: VarSet, supports: &[VarSet], found: &mut Vec<VarSet>) {
            if found.iter().any(|&f| f & chosen == f) {
                return;
            }
            match supports.iter().find(|&&s| s & chosen == 0) {
                None => {
                    found.retain(|&f| f & chosen != chosen);
                    found.push(chosen);
                }
                Some(&s) => {
                    for v in varset_members(s) {
                        rec(chosen | (1 << v), supports, found);
                    }
                }
            }
        }
        rec(0, &supports, &mut found);
        found.sort_by_key(|&s| (s.count_ones(), s));
        Ok(found)
    }

    /// `codim = min |P|` over minimal primes; `None` for the unit ideal.
    pub fn codim(&self) -> Option<usize> {
        if self.is_unit() {
            return None;
        }
        self.minimal_covers()
            .ok()?
            .iter()
            .map(|c| c.count_ones() as usize)
            .min()
    }

    /// Krull dimension of `S/I`; `None` for the unit ideal.
    pub fn dimension(&self) -> Option<usize> {
        self.codim().map(|c| self.nvars() - c)
    }

    /// Irredundant irreducible decomposition by adding generators one at a
    /// time; empty for the unit ideal.
    pub fn irreducible_decomposition(&self) -> Vec<MonomialIdeal> {
        self.irreducible_components()
            .into_iter()
            .map(|c| self.irreducible_to_ideal(&c))
            .collect()
    }

    fn irreducible_to_ideal(&self, c: &Irreducible) -> MonomialIdeal {
        let n = self.nvars();
        MonomialIdeal::new(self.ring.clone(), c.iter().map(|&(i, a)| pure_power(n, i, a)).collect())
    }

    fn irreducible_components(&self) -> Vec<Irreducible> {
        if self.is_unit() {
            return Vec::new();
        }
        let mut comps: Vec<Irreducible> = vec![Vec::new()];
        let mut gens = self.gens.clone();
        gens.sort_by_key(|g| g.total_degree());
        for m in &gens {
            let mut next: Vec<Irreducible> = Vec::new();
            for c in comps {
                if irreducible_contains(&c, m) {
                    next.push(c);
                    continue;
                }
                for i in m.support() {
                    let a = m.exponents()[i];
                    let mut d: Irreducible = c.iter().copied().filter(|&(j, _)| j != i).collect();
                    d.push((i, a));
                    d.sort_unstable();
                    next.push(d);
                }
            }
            let set: BTreeSet<Irreducible> = next.into_iter().collect();
            let all: Vec<Irreducible> = set.into_iter().collect();
            comps = all
                .iter()
                .filter(|c| !all.iter().any(|d| d != *c && irreducible_subset(d, c)))
                .cloned()
                .collect();
        }
        comps
    }

    /// Associated primes, as sorted variable lists.
    pub fn associated_primes(&self) -> Vec<Vec<usize>> {
        let set: BTreeSet<Vec<usize>> = self
            .irreducible_components()
            .iter()
            .map(|c| c.iter().map(|&(i, _)| i).collect())
            .collect();
        let mut v: Vec<Vec<usize>> = set.into_iter().collect();
        v.sort_by_key(|p| (p.len(), p.clone()));
        v
    }

    /// Irredundant primary decomposition: irreducible components grouped
    /// by radical.
    pub fn primary_decomposition(&self) -> Result<Vec<PrimaryComponent>> {
        self.check_vars()?;
        let comps = self.irreducible_components();
        let minimal: Vec<VarSet> = self.minimal_covers()?;
        let mut primes: Vec<Vec<usize>> = comps
            .iter()
            .map(|c| c.iter().map(|&(i, _)| i).collect::<Vec<_>>())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        primes.sort_by_key(|p| (p.len(), p.clone()));
        let mut out = Vec::with_capacity(primes.len());
        for p in primes {
            let mut q: Option<MonomialIdeal> = None;
            for c in comps.iter().filter(|c| c.iter().map(|&(i, _)| i).eq(p.iter().copied())) {
                let ci = self.irreducible_to_ideal(c);
                q = Some(match q {
                    None => ci,
                    Some(acc) => acc.intersect(&ci),
                });
            }
            let is_minimal = minimal.contains(&varset(&p));
            let length = if is_minimal {
                Some(self.length_at_minimal_prime(&p)?)
            } else {
                None
            };
            out.push(PrimaryComponent {
                prime: p,
                component: q.expect("nonempty group"),
                is_minimal,
                length,
            });
        }
        Ok(out)
    }

    /// `I` localized at the monomial prime `vars`: other variables set to 1.
    fn localize(&self, vars: &[usize]) -> Vec<Monomial> {
        let n = self.nvars();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut e = vec![0; n];
                for &v in vars {
                    e[v] = g.exponents()[v];
                }
                Monomial::new(e)
            })
            .collect();
        minimalize(gens)
    }

    /// `length(S_P / I_P)` for a minimal prime `P`.
    pub fn length_at_minimal_prime(&self, prime: &[usize]) -> Result<u64> {
        if !self.minimal_covers()?.contains(&varset(prime)) {
            return Err(Error::NotMinimalPrime);
        }
        let local = MonomialIdeal::new(self.ring.clone(), self.localize(prime));
        Ok(count_box(&local, prime, &|m| !local.contains(m)))
    }

    /// `length H^0_P(S_P / I_P)` for an associated (or any monomial) prime.
    pub fn local_cohomology_length(&self, prime: &[usize]) -> u64 {
        let local = MonomialIdeal::new(self.ring.clone(), self.localize(prime));
        let sat = local.saturate_vars(prime);
        count_box(&local, prime, &|m| sat.contains(m) && !local.contains(m))
    }

    /// Largest length at a minimal prime; 1 for the zero ideal, 0 for the
    /// unit ideal.
    pub fn mlength(&self) -> Result<u64> {
        if self.is_unit() {
            return Ok(0);
        }
        if self.is_zero() {
            return Ok(1);
        }
        let mut best = 0;
        for p in self.minimal_primes()? {
            best = best.max(self.length_at_minimal_prime(&p)?);
        }
        Ok(best)
    }

    /// Strong stability in every block: for every generator `m` and
    /// `x_(i,j) | m`, `x_(i,j-1) m / x_(i,j) ∈ I`. In characteristic zero
    /// this is Borel-fixedness.
    pub fn is_borel_fixed(&self) -> Result<bool> {
        let blocks = self.ring.blocks()?;
        for g in &self.gens {
            for block in &blocks {
                for w in block.windows(2) {
                    let (prev, cur) = (w[0], w[1]);
                    if g.exponents()[cur] == 0 {
                        continue;
                    }
                    let mut e = g.exponents().to_vec();
                    e[cur] -= 1;
                    e[prev] += 1;
                    if !self.contains(&Monomial::new(e)) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Every associated prime is `P_a`: in each block an initial segment of
    /// the variables.
    pub fn primes_are_borel_type(&self) -> Result<bool> {
        let blocks = self.ring.blocks()?;
        Ok(self.associated_primes().iter().all(|p| {
            blocks.iter().all(|b| {
                let k = b.iter().filter(|v| p.contains(v)).count();
                b[..k].iter().all(|v| p.contains(v))
            })
        }))
    }

    /// The Alexander dual: generated by `∏_{x ∈ P} x` over minimal primes.
    pub fn alexander_dual(&self) -> Result<MonomialIdeal> {
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let n = self.nvars();
        let gens = self
            .minimal_covers()?
            .into_iter()
            .map(|c| {
                let mut e = vec![0; n];
                for v in varset_members(c) {
                    e[v] = 1;
                }
                Monomial::new(e)
            })
            .collect();
        Ok(MonomialIdeal::new(self.ring.clone(), gens))
    }

    /// Squarefree polarization; variables `x_k` with `k` the power.
    pub fn polarize(&self) -> Result<Polarization> {
        let n = self.nvars();
        let mut maxe = vec![1u32; n];
        for g in &self.gens {
            for (i, &e) in g.exponents().iter().enumerate() {
                maxe[i] = maxe[i].max(e);
            }
        }
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        let mut provenance = Vec::new();
        let mut offset = Vec::with_capacity(n);
        for i in 0..n {
            offset.push(names.len());
            for k in 1..=maxe[i] {
                names.push(format!("{}_{}", self.ring.var_name(i), k));
                degrees.push(self.ring.degree(i).to_vec());
                provenance.push((i, k));
            }
        }
        let ring = Arc::new(GradedRing::new(names, degrees, self.ring.rank(), self.ring.field())?);
        let total = provenance.len();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut e = vec![0; total];
                for (i, &a) in g.exponents().iter().enumerate() {
                    for k in 0..a as usize {
                        e[offset[i] + k] = 1;
                    }
                }
                Monomial::new(e)
            })
            .collect();
        Ok(Polarization {
            ideal: MonomialIdeal::new(ring, gens),
            provenance,
        })
    }

    /// `Q_i`: intersection of the primary components of codimension `< i`;
    /// the unit ideal when there are none.
    pub fn dimension_filtration(&self, i: usize) -> Result<MonomialIdeal> {
        let mut acc: Option<MonomialIdeal> = None;
        for c in self.primary_decomposition()? {
            if c.prime.len() < i {
                acc = Some(match acc {
                    None => c.component,
                    Some(a) => a.intersect(&c.component),
                });
            }
        }
        Ok(acc.unwrap_or_else(|| MonomialIdeal::unit(self.ring.clone())))
    }

    /// `I ∩ S_(J)`: the generators living in the subring of the blocks `J`.
    pub fn contract(&self, blocks: &[usize]) -> Result<MonomialIdeal> {
        let (sub, kept) = subring(&self.ring, blocks)?;
        let gens = self
            .gens
            .iter()
            .filter(|g| g.support().iter().all(|v| kept.contains(v)))
            .map(|g| Monomial::new(kept.iter().map(|&i| g.exponents()[i]).collect()))
            .collect();
        Ok(MonomialIdeal::new(sub, gens))
    }

    pub fn display(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ring.vars();
        let parts: Vec<String> = self.gens.iter().rev().map(|g| g.fmt_with(names)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn minimal_sets(mut sets: Vec<VarSet>) -> Vec<VarSet> {
    sets.sort_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut kept: Vec<VarSet> = Vec::new();
    for s in sets {
        if !kept.iter().any(|&k| k & s == k) {
            kept.push(s);
        }
    }
    kept
}

/// Counts monomials in `vars` with every exponent below the largest one of
/// the generators that satisfy `pred`; `pred` must be closed downward in
/// the sense that it fails for members of `ideal`.
fn count_box(ideal: &MonomialIdeal, vars: &[usize], pred: &dyn Fn(&Monomial) -> bool) -> u64 {
    let n = ideal.nvars();
    let mut bound = vec![0u32; n];
    for g in ideal.gens() {
        for &v in vars {
            bound[v] = bound[v].max(g.exponents()[v]);
        }
    }
    let mut count = 0u64;
    let mut e = vec![0u32; n];
    fn rec(
        k: usize,
        vars: &[usize],
        bound: &[u32],
        e: &mut Vec<u32>,
        ideal: &MonomialIdeal,
        pred: &dyn Fn(&Monomial) -> bool,
        count: &mut u64,
    ) {
        if k == vars.len() {
            if pred(&Monomial::new(e.clone())) {
                *count += 1;
            }
            return;
        }
        let v = vars[k];
        for a in 0..bound[v] {
            e[v] = a;
            if ideal.contains(&Monomial::new(e.clone())) {
                break;
            }
            rec(k + 1, vars, bound, e, ideal, pred, count);
        }
        e[v] = 0;
    }
    rec(0, vars, &bound, &mut e, ideal, pred, &mut count);
    count
}

/// Deduplicated sorted list of monomials.
pub fn unique_monomials(ms: impl IntoIterator<Item = Monomial>) -> Vec<Monomial> {
    let set: HashSet<Monomial> = ms.into_iter().collect();
    let mut v: Vec<Monomial> = set.into_iter().collect();
    v.sort();
    v
}
