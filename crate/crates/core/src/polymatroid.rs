//! Supports of multidegree polynomials: discrete polymatroid bases and the
//! saturated Newton polytope property.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::box_points;
use crate::intpoly::IntegerPolynomial;
use crate::par::{self, Execution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePointSet {
    dim: usize,
    points: BTreeSet<Vec<u32>>,
}

impl LatticePointSet {
    pub fn new(dim: usize, points: impl IntoIterator<Item = Vec<u32>>) -> Result<Self> {
        let points: BTreeSet<Vec<u32>> = points.into_iter().collect();
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch);
        }
        Ok(LatticePointSet { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &BTreeSet<Vec<u32>> {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[u32]) -> bool {
        self.points.contains(p)
    }

    /// `{u + v}`.
    pub fn minkowski_sum(&self, other: &LatticePointSet) -> Result<LatticePointSet> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch);
        }
        let pts = self
            .points
            .iter()
            .flat_map(|u| other.points.iter().map(move |v| u.iter().zip(v).map(|(a, b)| a + b).collect()));
        LatticePointSet::new(self.dim, pts)
    }

    /// The polynomial with coefficient one on every point.
    pub fn indicator(&self) -> IntegerPolynomial {
        IntegerPolynomial::from_terms(self.dim, self.points.iter().map(|p| (p.clone(), BigInt::one())))
    }
}

/// `supp(f)`.
pub fn support_points(f: &IntegerPolynomial) -> LatticePointSet {
    LatticePointSet {
        dim: f.nvars(),
        points: f.support().into_iter().collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeViolation {
    pub u: Vec<u32>,
    pub v: Vec<u32>,
    /// One-based coordinate with `u_i > v_i` admitting no exchange.
    pub i: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeResult {
    pub ok: bool,
    pub counterexample: Option<ExchangeViolation>,
    pub reason: Option<String>,
}

/// M-convex exchange: for all `u, v ∈ B` and `u_i > v_i` there is `j` with
/// `u_j < v_j` and `u - e_i + e_j ∈ B`.
pub fn exchange_check(set: &LatticePointSet) -> ExchangeResult {
    exchange_check_with(set, Execution::default())
}

pub fn exchange_check_with(set: &LatticePointSet, exec: Execution) -> ExchangeResult {
    let pts: Vec<&Vec<u32>> = set.points.iter().rev().collect();
    let degrees: BTreeSet<u64> = pts.iter().map(|p| p.iter().map(|&a| a as u64).sum()).collect();
    if degrees.len() > 1 {
        return ExchangeResult {
            ok: false,
            counterexample: None,
            reason: Some("points have different total degrees".into()),
        };
    }
    let violation = par::find_map_first(exec, &pts, |u| {
        for v in &pts {
            for i in 0..set.dim {
                if u[i] <= v[i] {
                    continue;
                }
                let found = (0..set.dim).any(|j| {
                    if u[j] >= v[j] {
                        return false;
                    }
                    let mut w = (*u).clone();
                    w[i] -= 1;
                    w[j] += 1;
                    set.points.contains(&w)
                });
                if !found {
                    return Some(ExchangeViolation {
                        u: (*u).clone(),
                        v: (*v).clone(),
                        i: i + 1,
                    });
                }
            }
        }
        None
    });
    ExchangeResult {
        ok: violation.is_none(),
        reason: violation.as_ref().map(|_| "exchange axiom fails".into()),
        counterexample: violation,
    }
}

/// Dual rank `s(J) = Σ_{j∈J} m_j + r([p]∖J) - r([p])` of a rank table
/// indexed by subset bit masks.
pub fn dual_rank(rank: &BTreeMap<u32, i64>, m: &[i64]) -> BTreeMap<u32, i64> {
    let p = m.len();
    let full = (1u32 << p) - 1;
    (0..=full)
        .map(|j| {
            let sum: i64 = (0..p).filter(|k| j & (1 << k) != 0).map(|k| m[k]).sum();
            (j, sum + rank[&(full & !j)] - rank[&full])
        })
        .collect()
}

/// Base set `{u : |u| = r([p]), Σ_{i∈J} u_i ≤ r(J)}` of a polymatroid rank
/// table.
pub fn polymatroid_bases(rank: &BTreeMap<u32, i64>, p: usize) -> LatticePointSet {
    let full = (1u32 << p) - 1;
    let total = rank[&full];
    let bound: Vec<u32> = (0..p).map(|k| rank[&(1 << k)].max(0) as u32).collect();
    let pts = box_points(&bound).into_iter().filter(|u| {
        u.iter().map(|&a| a as i64).sum::<i64>() == total
            && (1..=full).all(|j| {
                (0..p).filter(|k| j & (1 << k) != 0).map(|k| u[k] as i64).sum::<i64>() <= rank[&j]
            })
    });
    LatticePointSet::new(p, pts).expect("uniform dimension")
}

const MAX_SUPPORT: usize = 200;
const MAX_DIM: usize = 8;
const MAX_BOX: usize = 200_000;

/// `supp(f) = Newton(f) ∩ ℕ^p`, with hull membership decided exactly.
pub fn snp_check(f: &IntegerPolynomial) -> Result<bool> {
    let supp = support_points(f);
    if supp.len() > MAX_SUPPORT || supp.dim > MAX_DIM {
        return Err(Error::TooLarge(format!(
            "{} support points in dimension {}",
            supp.len(),
            supp.dim
        )));
    }
    if supp.is_empty() {
        return Ok(true);
    }
    let pts: Vec<&Vec<u32>> = supp.points.iter().collect();
    let bound: Vec<u32> = (0..supp.dim)
        .map(|k| pts.iter().map(|p| p[k]).max().unwrap_or(0))
        .collect();
    let lower: Vec<u32> = (0..supp.dim)
        .map(|k| pts.iter().map(|p| p[k]).min().unwrap_or(0))
        .collect();
    let size: usize = bound.iter().zip(&lower).map(|(b, l)| (b - l + 1) as usize).product();
    if size > MAX_BOX {
        return Err(Error::TooLarge(format!("bounding box has {size} points")));
    }
    let degrees: BTreeSet<u64> = pts.iter().map(|p| p.iter().map(|&a| a as u64).sum()).collect();
    let homogeneous = degrees.len() == 1;
    let deg = *degrees.iter().next().unwrap();
    let span: Vec<u32> = bound.iter().zip(&lower).map(|(b, l)| b - l).collect();
    for offset in box_points(&span) {
        let x: Vec<u32> = offset.iter().zip(&lower).map(|(o, l)| o + l).collect();
        if homogeneous && x.iter().map(|&a| a as u64).sum::<u64>() != deg {
            continue;
        }
        if supp.contains(&x) {
            continue;
        }
        if in_convex_hull(&pts, &x) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Phase-one simplex with Bland's rule on
/// `Σ λ_k v_k = x, Σ λ_k = 1, λ ≥ 0`.
pub fn in_convex_hull(points: &[&Vec<u32>], x: &[u32]) -> bool {
    let k = points.len();
    let p = x.len();
    let rows = p + 1;
    let q = |v: i64| BigRational::from_integer(BigInt::from(v));
    // columns: k lambdas, rows artificials, then rhs
    let cols = k + rows;
    let mut t: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row = vec![BigRational::zero(); cols + 1];
            for (c, pt) in points.iter().enumerate() {
                row[c] = if r < p { q(pt[r] as i64) } else { q(1) };
            }
            row[k + r] = q(1);
            row[cols] = if r < p { q(x[r] as i64) } else { q(1) };
            row
        })
        .collect();
    let mut basis: Vec<usize> = (0..rows).map(|r| k + r).collect();
    // objective: minimize the sum of artificials, kept as reduced costs
    let mut obj = vec![BigRational::zero(); cols + 1];
    for row in &t {
        for c in 0..=cols {
            if c < k || c == cols {
                obj[c] = &obj[c] - &row[c];
            }
        }
    }
    loop {
        let Some(enter) = (0..cols).find(|&c| obj[c].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..rows {
            if t[r][enter].is_positive() {
                let ratio = &t[r][cols] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((lr, _)) = leave else {
            break;
        };
        let piv = t[lr][enter].clone();
        for c in 0..=cols {
            t[lr][c] = &t[lr][c] / &piv;
        }
        let prow = t[lr].clone();
        for (r, row) in t.iter_mut().enumerate() {
            if r == lr || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for c in 0..=cols {
                row[c] = &row[c] - &f * &prow[c];
            }
        }
        let f = obj[enter].clone();
        for c in 0..=cols {
            obj[c] = &obj[c] - &f * &prow[c];
        }
        basis[lr] = enter;
    }
    obj[cols].is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(dim: usize, pts: &[&[u32]]) -> LatticePointSet {
        LatticePointSet::new(dim, pts.iter().map(|p| p.to_vec())).unwrap()
    }

    #[test]
    fn missing_midpoint_fails_exchange_and_snp() {
        let b = set(2, &[&[2, 0], &[0, 2]]);
        let r = exchange_check(&b);
        assert!(!r.ok);
        assert_eq!(
            r.counterexample,
            Some(ExchangeViolation {
                u: vec![2, 0],
                v: vec![0, 2],
                i: 1
            })
        );
        assert!(!snp_check(&b.indicator()).unwrap());
        let full = set(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        assert!(exchange_check(&full).ok);
        assert!(snp_check(&full.indicator()).unwrap());
    }

    #[test]
    fn singleton_and_mixed_degree() {
        assert!(exchange_check(&set(3, &[&[1, 2, 3]])).ok);
        let r = exchange_check(&set(2, &[&[1, 0], &[1, 1]]));
        assert!(!r.ok && r.counterexample.is_none());
    }

    #[test]
    fn hull_membership() {
        let a = vec![0u32, 0];
        let b = vec![4u32, 0];
        let c = vec![0u32, 4];
        let pts = vec![&a, &b, &c];
        assert!(in_convex_hull(&pts, &[1, 1]));
        assert!(in_convex_hull(&pts, &[2, 2]));
        assert!(!in_convex_hull(&pts, &[3, 2]));
    }

    #[test]
    fn uniform_rank_and_dual() {
        // r(J) = min(|J|, 2) on [3]
        let rank: BTreeMap<u32, i64> = (0u32..8).map(|j| (j, (j.count_ones() as i64).min(2))).collect();
        let b = polymatroid_bases(&rank, 3);
        assert_eq!(b.len(), 3);
        assert!(exchange_check(&b).ok);
        let s = dual_rank(&rank, &[1, 1, 1]);
        assert_eq!(s[&7], 1);
        assert_eq!(s[&1], 1);
        assert_eq!(polymatroid_bases(&s, 3).len(), 3);
    }
}
