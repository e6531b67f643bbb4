//! Stanley–Reisner complexes and Reisner's Cohen–Macaulay criterion.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::monomial::{varset_members, MonomialIdeal, VarSet};
use crate::par::{self, Execution};

const MAX_VERTICES: usize = 25;

/// A simplicial complex given by its facets over vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub nvertices: usize,
    pub facets: Vec<VarSet>,
}

impl SimplicialComplex {
    pub fn new(nvertices: usize, facets: Vec<VarSet>) -> Self {
        let mut f = facets;
        f.sort_unstable();
        f.dedup();
        let maximal: Vec<VarSet> = f
            .iter()
            .copied()
            .filter(|&a| !f.iter().any(|&b| b != a && b & a == a))
            .collect();
        SimplicialComplex {
            nvertices,
            facets: maximal,
        }
    }

    /// Dimension; `-1` for `{∅}`.
    pub fn dim(&self) -> i64 {
        self.facets.iter().map(|f| f.count_ones() as i64 - 1).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.count_ones() as i64 - 1 == d)
    }

    pub fn faces(&self) -> Vec<VarSet> {
        let mut seen: HashSet<VarSet> = HashSet::new();
        for &f in &self.facets {
            let mut sub = f;
            loop {
                seen.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        let mut v: Vec<VarSet> = seen.into_iter().collect();
        v.sort_by_key(|s| (s.count_ones(), *s));
        v
    }

    pub fn link(&self, face: VarSet) -> SimplicialComplex {
        SimplicialComplex::new(
            self.nvertices,
            self.facets
                .iter()
                .filter(|&&f| f & face == face)
                .map(|&f| f & !face)
                .collect(),
        )
    }

    /// Ranks of reduced homology `H̃_i` over `𝔽_p`, for `i = -1..=dim`.
    pub fn reduced_homology(&self, p: u32) -> Vec<usize> {
        let d = self.dim();
        if d < 0 {
            return vec![1];
        }
        let mut by_size: BTreeMap<u32, Vec<VarSet>> = BTreeMap::new();
        for f in self.faces() {
            by_size.entry(f.count_ones()).or_default().push(f);
        }
        let top = (d + 1) as u32;
        let chains = |k: u32| by_size.get(&k).map(|v| v.len()).unwrap_or(0);
        // rank of the boundary from faces of size k to faces of size k - 1
        let mut ranks = vec![0usize; top as usize + 2];
        for k in 1..=top {
            ranks[k as usize] = boundary_rank(
                by_size.get(&k).map(|v| v.as_slice()).unwrap_or(&[]),
                by_size.get(&(k - 1)).map(|v| v.as_slice()).unwrap_or(&[]),
                p,
            );
        }
        (0..=top)
            .map(|k| chains(k) - ranks[k as usize] - ranks.get(k as usize + 1).copied().unwrap_or(0))
            .collect()
    }

    /// Every link `lk F` has vanishing `H̃_i` for `i < dim lk F`.
    pub fn is_cohen_macaulay(&self, p: u32, exec: Execution) -> bool {
        if !self.is_pure() {
            return false;
        }
        let faces = self.faces();
        par::all(exec, &faces, |&f| {
            let lk = self.link(f);
            let h = lk.reduced_homology(p);
            let dim = lk.dim();
            // h[k] is H̃_(k-1)
            (0..h.len()).all(|k| (k as i64 - 1) >= dim || h[k] == 0)
        })
    }
}

fn boundary_rank(faces: &[VarSet], lower: &[VarSet], p: u32) -> usize {
    if faces.is_empty() || lower.is_empty() {
        return 0;
    }
    let index: std::collections::HashMap<VarSet, usize> =
        lower.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let p64 = p as u64;
    let mut rows: Vec<Vec<u64>> = faces
        .iter()
        .map(|&f| {
            let mut row = vec![0u64; lower.len()];
            for (pos, v) in varset_members(f).into_iter().enumerate() {
                let g = f & !(1 << v);
                let sign = if pos % 2 == 0 { 1 } else { p64 - 1 };
                row[index[&g]] = sign % p64;
            }
            row
        })
        .collect();
    rank_mod_p(&mut rows, p64)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut acc, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn rank_mod_p(rows: &mut [Vec<u64>], p: u64) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col], p);
        for c in col..ncols {
            rows[rank][c] = rows[rank][c] * inv % p;
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            for c in col..ncols {
                row[c] = (row[c] + (p - factor) * prow[c]) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Reisner's criterion for `S/I`, `I` squarefree, over `𝔽_p`.
///
/// Variables dividing no generator are cone points and are removed first;
/// the limit of 25 applies to the remaining vertices.
pub fn reisner_cm_check(ideal: &MonomialIdeal, p: u32) -> Result<bool> {
    reisner_cm_check_with(ideal, p, Execution::default())
}

pub fn reisner_cm_check_with(ideal: &MonomialIdeal, p: u32, exec: Execution) -> Result<bool> {
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    crate::field::FieldSpec::prime(p as u64)?;
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let n = ideal.nvars();
    let mut used = vec![false; n];
    for g in ideal.gens() {
        for v in g.support() {
            used[v] = true;
        }
    }
    let core: Vec<usize> = (0..n).filter(|&v| used[v]).collect();
    if core.len() > MAX_VERTICES {
        return Err(Error::TooManyVertices(core.len()));
    }
    if core.is_empty() {
        return Ok(true);
    }
    let pos: Vec<Option<usize>> = (0..n).map(|v| core.iter().position(|&c| c == v)).collect();
    let all: VarSet = (1u64 << core.len()) - 1;
    let facets = ideal
        .minimal_covers()?
        .into_iter()
        .map(|cover| {
            let local = varset_members(cover)
                .into_iter()
                .fold(0u64, |m, v| m | (1 << pos[v].expect("cover inside core")));
            all & !local
        })
        .collect();
    Ok(SimplicialComplex::new(core.len(), facets).is_cohen_macaulay(p, exec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::ring::{GradedRing, Monomial};
    use std::sync::Arc;

    fn ring(n: usize) -> Arc<GradedRing> {
        let names = (0..n).map(|i| format!("x{i}")).collect::<Vec<_>>();
        Arc::new(GradedRing::standard(&[names], FieldSpec::Rationals).unwrap())
    }

    fn sqfree(r: &Arc<GradedRing>, faces: &[&[usize]]) -> MonomialIdeal {
        let n = r.nvars();
        MonomialIdeal::new(
            r.clone(),
            faces
                .iter()
                .map(|f| {
                    let mut e = vec![0; n];
                    for &v in *f {
                        e[v] = 1;
                    }
                    Monomial::new(e)
                })
                .collect(),
        )
    }

    #[test]
    fn homology_of_circle() {
        // boundary of a triangle
        let c = SimplicialComplex::new(3, vec![0b011, 0b110, 0b101]);
        assert_eq!(c.reduced_homology(2), vec![0, 0, 1]);
    }

    #[test]
    fn two_disjoint_edges_are_not_cm() {
        // (x0 x2, x0 x3, x1 x2, x1 x3): two skew lines
        let r = ring(4);
        let i = sqfree(&r, &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]]);
        assert!(!reisner_cm_check(&i, 2).unwrap());
        // path of length three is CM
        let j = sqfree(&r, &[&[0, 2], &[0, 3], &[1, 3]]);
        assert!(reisner_cm_check(&j, 32003).unwrap());
    }

    #[test]
    fn mixed_dimension_is_not_cm() {
        let r = ring(3);
        let i = sqfree(&r, &[&[0, 1], &[0, 2]]);
        assert!(!reisner_cm_check(&i, 2).unwrap());
    }

    #[test]
    fn cone_points_do_not_count() {
        let r = ring(30);
        let i = sqfree(&r, &[&[0, 1]]);
        assert!(reisner_cm_check(&i, 2).unwrap());
    }
}
