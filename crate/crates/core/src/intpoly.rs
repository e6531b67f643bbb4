//! Integer polynomials in the grading variables `t_1..t_p`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Sparse `ℤ[t_1..t_p]` with terms keyed by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntegerPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

/// One term of a serialized polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermRecord {
    pub exp: Vec<u32>,
    pub coeff: String,
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl IntegerPolynomial {
    pub fn zero(nvars: usize) -> Self {
        IntegerPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, BigInt::one())
    }

    pub fn monomial(nvars: usize, exp: Vec<u32>, c: BigInt) -> Self {
        assert_eq!(exp.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        IntegerPolynomial { nvars, terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, BigInt)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[u32]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> Vec<Vec<u32>> {
        self.terms.keys().cloned().collect()
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: BigInt) {
        assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        IntegerPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Multiplies by the monomial `t^exp`.
    pub fn shift(&self, exp: &[u32]) -> Self {
        IntegerPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exp).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// `f(1 - t_1, ..., 1 - t_p)`.
    pub fn substitute_one_minus(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (exp, c) in &self.terms {
            let mut partial: Vec<(Vec<u32>, BigInt)> = vec![(Vec::new(), c.clone())];
            for &a in exp {
                let mut next = Vec::with_capacity(partial.len() * (a as usize + 1));
                for (e, v) in &partial {
                    for b in 0..=a {
                        let mut coef = v * binomial(a, b);
                        if b % 2 == 1 {
                            coef = -coef;
                        }
                        let mut ne = e.clone();
                        ne.push(b);
                        next.push((ne, coef));
                    }
                }
                partial = next;
            }
            for (e, v) in partial {
                out.add_term(e, v);
            }
        }
        out
    }

    pub fn min_total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| e.iter().map(|&a| a as u64).sum()).min()
    }

    pub fn max_total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| e.iter().map(|&a| a as u64).sum()).max()
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u64) -> Self {
        IntegerPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().map(|&a| a as u64).sum::<u64>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms whose monomial is minimal under divisibility among the support.
    pub fn divisibility_minimal_part(&self) -> Self {
        let keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        let divides = |a: &Vec<u32>, b: &Vec<u32>| a.iter().zip(b).all(|(x, y)| x <= y);
        IntegerPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| !keys.iter().any(|k| *k != *e && divides(k, e)))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient-wise `self ≥ other`.
    pub fn geq_coefficientwise(&self, other: &Self) -> bool {
        self.sub(other).terms.values().all(|c| c.is_positive())
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Evaluates at an integer point.
    pub fn evaluate(&self, point: &[i64]) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (x, &a) in point.iter().zip(e) {
                v *= BigInt::from(*x).pow(a);
            }
            acc += v;
        }
        acc
    }

    /// Reinterprets the exponents in a larger or permuted set of variables:
    /// variable `i` becomes `positions[i]` of `nvars`.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Self {
        Self::from_terms(
            nvars,
            self.terms.iter().map(|(e, c)| {
                let mut ne = vec![0; nvars];
                for (i, &a) in e.iter().enumerate() {
                    ne[positions[i]] += a;
                }
                (ne, c.clone())
            }),
        )
    }

    pub fn records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .map(|(e, c)| TermRecord {
                exp: e.clone(),
                coeff: c.to_string(),
            })
            .collect()
    }

    /// Default names `t1..tp`.
    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("t{i}")).collect()
    }

    /// Descending lex rendering, e.g. `2*t1^3*t2 - t3`.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(k, &a)| {
                    if a == 1 {
                        names[k].clone()
                    } else {
                        format!("{}^{}", names[k], a)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", abs, mono.join("*")));
            }
        }
        out
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&Self::default_names(self.nvars)))
    }
}
