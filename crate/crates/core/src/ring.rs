//! Positively `ℕ^p`-graded polynomial rings and their polynomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::field::{format_rational, Field, FieldSpec};
use crate::order::MonomialOrder;

/// A polynomial ring `k[x_1..x_n]` with a positive `ℕ^p` grading.
#[derive(Clone, Debug)]
pub struct GradedRing {
    vars: Vec<String>,
    degrees: Vec<Vec<u32>>,
    rank: usize,
    field: FieldSpec,
    index: HashMap<String, usize>,
}

impl PartialEq for GradedRing {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
            && self.degrees == other.degrees
            && self.rank == other.rank
            && self.field == other.field
    }
}

impl Eq for GradedRing {}

impl GradedRing {
    pub fn new(vars: Vec<String>, degrees: Vec<Vec<u32>>, rank: usize, field: FieldSpec) -> Result<Self> {
        if let FieldSpec::PrimeField(p) = field {
            FieldSpec::prime(p as u64)?;
        }
        if degrees.len() != vars.len() {
            return Err(Error::BadShape(format!(
                "{} variables but {} degrees",
                vars.len(),
                degrees.len()
            )));
        }
        let mut index = HashMap::new();
        for (i, (name, deg)) in vars.iter().zip(&degrees).enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVariableName(name.clone()));
            }
            if deg.len() != rank {
                return Err(Error::DegreeLength {
                    name: name.clone(),
                    got: deg.len(),
                    expected: rank,
                });
            }
            if deg.iter().all(|&d| d == 0) {
                return Err(Error::ZeroDegreeVariable(name.clone()));
            }
        }
        Ok(GradedRing {
            vars,
            degrees,
            rank,
            field,
            index,
        })
    }

    /// Standard `ℕ^p`-graded ring; block `i` gets degree `e_i`.
    pub fn standard(blocks: &[Vec<String>], field: FieldSpec) -> Result<Self> {
        let p = blocks.len();
        let mut vars = Vec::new();
        let mut degrees = Vec::new();
        for (i, block) in blocks.iter().enumerate() {
            for name in block {
                vars.push(name.clone());
                let mut d = vec![0; p];
                d[i] = 1;
                degrees.push(d);
            }
        }
        GradedRing::new(vars, degrees, p, field)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Length `p` of the degree vectors.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn degrees(&self) -> &[Vec<u32>] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> &[u32] {
        &self.degrees[i]
    }

    /// Total degree `|deg x_i|`, always positive.
    pub fn weight(&self, i: usize) -> u32 {
        self.degrees[i].iter().sum()
    }

    pub fn with_field(&self, field: FieldSpec) -> Result<Self> {
        GradedRing::new(self.vars.clone(), self.degrees.clone(), self.rank, field)
    }

    /// Every degree is an elementary vector.
    pub fn is_standard(&self) -> bool {
        self.degrees
            .iter()
            .all(|d| d.iter().sum::<u32>() == 1)
    }

    /// Block index of a variable in a standard ring.
    pub fn block_of(&self, i: usize) -> Option<usize> {
        let d = &self.degrees[i];
        if d.iter().sum::<u32>() != 1 {
            return None;
        }
        d.iter().position(|&v| v == 1)
    }

    /// Variables grouped by block in declaration order; requires a standard ring.
    pub fn blocks(&self) -> Result<Vec<Vec<usize>>> {
        let mut out = vec![Vec::new(); self.rank];
        for i in 0..self.nvars() {
            let b = self.block_of(i).ok_or(Error::NotStandardGraded)?;
            out[b].push(i);
        }
        Ok(out)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> Result<Vec<u32>> {
        let mut d = vec![0u32; self.rank];
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            for (k, &dk) in self.degrees[i].iter().enumerate() {
                let add = dk.checked_mul(e).ok_or(Error::ExponentOverflow)?;
                d[k] = d[k].checked_add(add).ok_or(Error::ExponentOverflow)?;
            }
        }
        Ok(d)
    }
}

/// An exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn into_exponents(self) -> Vec<u32> {
        self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Squarefree part.
    pub fn radical(&self) -> Monomial {
        Monomial(self.0.iter().map(|&e| e.min(1)).collect())
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// A polynomial over `F` in a graded ring; terms keyed by exponent vector.
#[derive(Clone, Debug)]
pub struct Polynomial<F: Field> {
    ring: Arc<GradedRing>,
    field: F,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: Arc<GradedRing>, field: F) -> Self {
        Polynomial {
            ring,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: Arc<GradedRing>, field: F, c: F::Elem) -> Self {
        let n = ring.nvars();
        Self::from_terms(ring, field, [(Monomial::one(n), c)])
    }

    pub fn var(ring: Arc<GradedRing>, field: F, i: usize) -> Self {
        let n = ring.nvars();
        let one = field.one();
        Self::from_terms(ring, field, [(Monomial::var(n, i), one)])
    }

    pub fn monomial(ring: Arc<GradedRing>, field: F, m: Monomial) -> Self {
        let one = field.one();
        Self::from_terms(ring, field, [(m, one)])
    }

    /// Sums like terms and drops zero coefficients.
    pub fn from_terms<I>(ring: Arc<GradedRing>, field: F, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, F::Elem)>,
    {
        let mut map: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial length mismatch");
            match map.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        map.retain(|_, c| !field.is_zero(c));
        Polynomial {
            ring,
            field,
            terms: map,
        }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let terms = self
            .terms
            .iter()
            .chain(other.terms.iter())
            .map(|(m, c)| (m.clone(), c.clone()));
        Ok(Self::from_terms(self.ring.clone(), self.field.clone(), terms))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb)?;
                let c = self.field.mul(ca, cb);
                match out.get_mut(&m) {
                    Some(v) => *v = self.field.add(v, &c),
                    None => {
                        out.insert(m, c);
                    }
                }
            }
        }
        out.retain(|_, c| !self.field.is_zero(c));
        Ok(Polynomial {
            ring: self.ring.clone(),
            field: self.field.clone(),
            terms: out,
        })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), self.field.mul(v, c)));
        Self::from_terms(self.ring.clone(), self.field.clone(), terms)
    }

    fn neg_ref(&self) -> Self {
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), self.field.neg(v)));
        Self::from_terms(self.ring.clone(), self.field.clone(), terms)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::constant(self.ring.clone(), self.field.clone(), self.field.one());
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Multidegree of a nonzero homogeneous polynomial.
    pub fn multidegree(&self) -> Result<Vec<u32>> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroPolynomial)?;
        let d = self.ring.monomial_degree(first)?;
        for m in it {
            if self.ring.monomial_degree(m)? != d {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.multidegree().is_ok()
    }

    /// Leading monomial and coefficient for `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &F::Elem)> {
        self.terms
            .iter()
            .max_by(|a, b| order.compare(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Scales to leading coefficient one.
    pub fn monic(&self, order: &MonomialOrder) -> Self {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c);
                self.scale(&inv)
            }
        }
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for m in self.terms.keys() {
            for i in m.support() {
                used[i] = true;
            }
        }
        (0..used.len()).filter(|&i| used[i]).collect()
    }

    /// Moves the polynomial into another ring with the same number of
    /// variables.
    pub fn with_ring(&self, ring: Arc<GradedRing>) -> Result<Self> {
        if ring.nvars() != self.ring.nvars() {
            return Err(Error::RingMismatch);
        }
        Ok(Polynomial {
            ring,
            field: self.field.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Maps exponent vectors through `f` into `ring`.
    pub fn map_monomials<G>(&self, ring: Arc<GradedRing>, mut f: G) -> Result<Self>
    where
        G: FnMut(&Monomial) -> Result<Monomial>,
    {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((f(m)?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_terms(ring, self.field.clone(), terms))
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ring.vars();
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let q = self.field.to_rational(c);
            let neg = q.is_negative();
            let abs = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coeff = format_rational(&abs);
            if m.is_one() {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "{}", m.fmt_with(names))?;
            } else {
                write!(f, "{}*{}", coeff, m.fmt_with(names))?;
            }
        }
        Ok(())
    }
}

macro_rules! panicking_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, F: Field> $tr<&'a Polynomial<F>> for &'a Polynomial<F> {
            type Output = Polynomial<F>;
            /// Panics when the operands live in different rings.
            fn $method(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
                self.$checked(rhs).expect("polynomial arithmetic")
            }
        }
    };
}

panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn ring() -> Arc<GradedRing> {
        Arc::new(
            GradedRing::new(
                vec!["x".into(), "y".into(), "z".into()],
                vec![vec![1, 0], vec![0, 1], vec![1, 1]],
                2,
                FieldSpec::Rationals,
            )
            .unwrap(),
        )
    }

    #[test]
    fn rejects_zero_degree_and_duplicates() {
        let e = GradedRing::new(vec!["x".into()], vec![vec![0, 0]], 2, FieldSpec::Rationals);
        assert_eq!(e.unwrap_err(), Error::ZeroDegreeVariable("x".into()));
        let e = GradedRing::new(
            vec!["x".into(), "x".into()],
            vec![vec![1], vec![1]],
            1,
            FieldSpec::Rationals,
        );
        assert_eq!(e.unwrap_err(), Error::DuplicateVariableName("x".into()));
        let e = GradedRing::new(vec!["x".into()], vec![vec![1]], 1, FieldSpec::PrimeField(91));
        assert_eq!(e.unwrap_err(), Error::NonPrimeModulus(91));
    }

    #[test]
    fn multidegree_of_homogeneous_polynomial() {
        let r = ring();
        let x = Polynomial::var(r.clone(), Rationals, 0);
        let y = Polynomial::var(r.clone(), Rationals, 1);
        let z = Polynomial::var(r.clone(), Rationals, 2);
        let f = &(&x * &y) - &z;
        assert_eq!(f.multidegree().unwrap(), vec![1, 1]);
        let g = &x + &y;
        assert_eq!(g.multidegree(), Err(Error::NotHomogeneous));
        assert_eq!(Polynomial::zero(r, Rationals).multidegree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn display_uses_descending_lex() {
        let r = ring();
        let f = PrimeField::new(7).unwrap();
        let x = Polynomial::var(r.clone(), f, 0);
        let z = Polynomial::var(r.clone(), f, 2);
        let p = &(&x * &x) - &z.scale(&3);
        assert_eq!(p.to_string(), "x^2 - 3*z");
    }
}
