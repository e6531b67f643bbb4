//! Monomial orders given by weight rows and a tie-break.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::ring::{GradedRing, Monomial};
use crate::standardization::StandardizationMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TieBreak {
    Lex,
    GrevLex,
}

/// Compare weight rows in turn, then fall back to the tie-break.
/// Variables compare in declaration order: `x_0 > x_1 > ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    nvars: usize,
    rows: Vec<Vec<i64>>,
    tiebreak: TieBreak,
}

impl MonomialOrder {
    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder {
            nvars,
            rows: Vec::new(),
            tiebreak: TieBreak::GrevLex,
        }
    }

    pub fn lex(nvars: usize) -> Self {
        MonomialOrder {
            nvars,
            rows: Vec::new(),
            tiebreak: TieBreak::Lex,
        }
    }

    /// Lex in declaration order; on a row-major matrix of variables the
    /// leading term of every minor is its main diagonal.
    pub fn diagonal(nvars: usize) -> Self {
        Self::lex(nvars)
    }

    pub fn weights(rows: Vec<Vec<i64>>, tiebreak: TieBreak) -> Result<Self> {
        let nvars = rows.first().map(|r| r.len()).unwrap_or(0);
        Self::with_rows(nvars, rows, tiebreak)
    }

    pub fn with_rows(nvars: usize, rows: Vec<Vec<i64>>, tiebreak: TieBreak) -> Result<Self> {
        if rows.iter().any(|r| r.len() != nvars) {
            return Err(Error::InvalidOrder("weight rows have unequal lengths".into()));
        }
        for j in 0..nvars {
            if let Some(first) = rows.iter().map(|r| r[j]).find(|&w| w != 0) {
                if first < 0 {
                    return Err(Error::InvalidOrder(format!(
                        "column {j} starts with a negative weight"
                    )));
                }
            }
        }
        Ok(MonomialOrder {
            nvars,
            rows,
            tiebreak,
        })
    }

    /// Parses `grevlex`, `lex`, `diag` or `weights:<r1>;<r2>;...` with
    /// comma-separated entries (grevlex tie-break).
    pub fn parse(spec: &str, nvars: usize) -> Result<Self> {
        match spec.trim() {
            "grevlex" => Ok(Self::grevlex(nvars)),
            "lex" => Ok(Self::lex(nvars)),
            "diag" => Ok(Self::diagonal(nvars)),
            s => {
                let body = s
                    .strip_prefix("weights:")
                    .ok_or_else(|| Error::InvalidOrder(format!("unknown order `{s}`")))?;
                let rows = body
                    .split(';')
                    .map(|row| {
                        row.split(',')
                            .map(|v| {
                                v.trim()
                                    .parse::<i64>()
                                    .map_err(|_| Error::InvalidOrder(format!("bad weight `{v}`")))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                if rows.iter().any(|r| r.len() != nvars) {
                    return Err(Error::InvalidOrder(format!(
                        "weight rows must have {nvars} entries"
                    )));
                }
                Self::with_rows(nvars, rows, TieBreak::GrevLex)
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn tiebreak(&self) -> TieBreak {
        self.tiebreak
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.compare_exps(a.exponents(), b.exponents())
    }

    #[inline]
    pub fn compare_exps(&self, a: &[u32], b: &[u32]) -> Ordering {
        for row in &self.rows {
            let mut d = 0i64;
            for i in 0..a.len() {
                d += row[i] * (a[i] as i64 - b[i] as i64);
            }
            if d != 0 {
                return d.cmp(&0);
            }
        }
        match self.tiebreak {
            TieBreak::Lex => {
                for i in 0..a.len() {
                    if a[i] != b[i] {
                        return a[i].cmp(&b[i]);
                    }
                }
                Ordering::Equal
            }
            TieBreak::GrevLex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                if da != db {
                    return da.cmp(&db);
                }
                for i in (0..a.len()).rev() {
                    if a[i] != b[i] {
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// A square matrix whose rows, compared lexicographically, define the
    /// same order.
    pub fn to_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.nvars;
        let mut m = self.rows.clone();
        match self.tiebreak {
            TieBreak::Lex => {
                for i in 0..n {
                    let mut r = vec![0; n];
                    r[i] = 1;
                    m.push(r);
                }
            }
            TieBreak::GrevLex => {
                m.push(vec![1; n]);
                for i in (1..n).rev() {
                    let mut r = vec![0; n];
                    r[i] = -1;
                    m.push(r);
                }
            }
        }
        m
    }

    /// Prepends a row making every variable in `vars` larger than all
    /// monomials in the others.
    pub fn eliminating(&self, vars: &[usize]) -> Self {
        let mut row = vec![0; self.nvars];
        for &v in vars {
            row[v] = 1;
        }
        let mut rows = vec![row];
        rows.extend(self.rows.iter().cloned());
        MonomialOrder {
            nvars: self.nvars,
            rows,
            tiebreak: self.tiebreak,
        }
    }

    /// Order on `k + n` variables where the `k` new leading variables are
    /// eliminated and the rest is ordered as before.
    pub fn with_leading_eliminated(&self, k: usize) -> Self {
        let n = self.nvars + k;
        let mut head = vec![0; n];
        head[..k].iter_mut().for_each(|w| *w = 1);
        let mut rows = vec![head];
        for r in &self.rows {
            let mut nr = vec![0; k];
            nr.extend(r.iter().copied());
            rows.push(nr);
        }
        MonomialOrder {
            nvars: n,
            rows,
            tiebreak: self.tiebreak,
        }
    }

    /// Induced order on the subring in the variables `keep` (in order).
    pub fn restrict(&self, keep: &[usize]) -> Self {
        MonomialOrder {
            nvars: keep.len(),
            rows: self
                .rows
                .iter()
                .map(|r| keep.iter().map(|&j| r[j]).collect())
                .collect(),
            tiebreak: self.tiebreak,
        }
    }

    /// Checks `x_(i,0) > x_(i,1) > ...` inside every block of a standard ring.
    pub fn check_block_descending(&self, ring: &GradedRing) -> Result<()> {
        let n = ring.nvars();
        for (b, block) in ring.blocks()?.iter().enumerate() {
            for w in block.windows(2) {
                let (u, v) = (Monomial::var(n, w[0]), Monomial::var(n, w[1]));
                if self.compare(&u, &v) != Ordering::Greater {
                    return Err(Error::OrderNotBlockDescending(b));
                }
            }
        }
        Ok(())
    }
}

/// The order `>'` on the standardized ring: each matrix row of `order` puts
/// the weight of `x_i` on `y_(i,1)`, and lex on the `y` breaks ties, so that
/// `φ(u) >' φ(v)` exactly when `u > v`.
pub fn lift_order_phi(order: &MonomialOrder, map: &StandardizationMap) -> MonomialOrder {
    let target_n = map.target().nvars();
    let rows = order
        .to_matrix()
        .into_iter()
        .map(|row| {
            let mut lifted = vec![0; target_n];
            for (i, w) in row.into_iter().enumerate() {
                lifted[map.images()[i][0]] = w;
            }
            lifted
        })
        .collect();
    MonomialOrder::with_rows(target_n, rows, TieBreak::Lex)
        .unwrap_or_else(|_| unreachable!("lifted rows of a monomial order are valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_prefers_smaller_last_variable() {
        let o = MonomialOrder::grevlex(3);
        assert_eq!(o.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.compare(&m(&[2, 0, 0]), &m(&[0, 1, 1])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_and_weights() {
        let o = MonomialOrder::lex(3);
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        let w = MonomialOrder::parse("weights:0,0,1", 3).unwrap();
        assert_eq!(w.compare(&m(&[0, 0, 1]), &m(&[5, 0, 0])), Ordering::Greater);
        assert!(MonomialOrder::parse("weights:-1,0,0", 3).is_err());
        assert!(MonomialOrder::parse("weights:1,0", 3).is_err());
    }

    #[test]
    fn matrix_form_agrees_with_comparison() {
        for o in [MonomialOrder::grevlex(3), MonomialOrder::lex(3)] {
            let mat = MonomialOrder::with_rows(3, o.to_matrix(), TieBreak::Lex).unwrap();
            let ms: Vec<Monomial> = (0..27)
                .map(|k| m(&[k % 3, (k / 3) % 3, k / 9]))
                .collect();
            for a in &ms {
                for b in &ms {
                    assert_eq!(o.compare(a, b), mat.compare(a, b));
                }
            }
        }
    }
}
