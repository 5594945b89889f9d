//! Sparse exact elimination for large, very sparse consistent systems.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rat::Rat;

/// One equation `Σ coeffs[j] x_j = rhs`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseRow {
    pub coeffs: BTreeMap<usize, Rat>,
    pub rhs: Rat,
}

impl SparseRow {
    pub fn new(rhs: Rat) -> Self {
        SparseRow {
            coeffs: BTreeMap::new(),
            rhs,
        }
    }

    pub fn add(&mut self, col: usize, v: &Rat) {
        let e = self.coeffs.entry(col).or_insert_with(Rat::zero);
        *e += v;
        if e.is_zero() {
            self.coeffs.remove(&col);
        }
    }

    fn axpy(&mut self, f: &Rat, other: &SparseRow) {
        for (c, v) in &other.coeffs {
            self.add(*c, &(f * v));
        }
        self.rhs += f * &other.rhs;
    }
}

/// Result of [`solve_sparse`]: the solution with free variables set to zero, and the rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseSolution {
    pub x: Vec<Rat>,
    pub rank: usize,
}

/// Solves a sparse system over `n` unknowns.
///
/// Rows are processed in order; each new row is reduced against the pivots found so far
/// (oldest first, which guarantees termination) and, if nonzero, pivots on its smallest
/// remaining column. Free variables are zero.
/// Returns `None` when the system is inconsistent.
pub fn solve_sparse(rows: &[SparseRow], n: usize) -> Option<SparseSolution> {
    let mut pivots: Vec<(usize, SparseRow)> = Vec::new();
    let mut by_col: BTreeMap<usize, usize> = BTreeMap::new();
    for row in rows {
        let mut r = row.clone();
        loop {
            let hit = r
                .coeffs
                .iter()
                .filter_map(|(c, v)| by_col.get(c).map(|&p| (p, v)))
                .min_by_key(|(p, _)| *p);
            let Some((p, v)) = hit.map(|(p, v)| (p, v.clone())) else {
                break;
            };
            let f = -v;
            r.axpy(&f, &pivots[p].1);
        }
        let Some((&c, lead)) = r.coeffs.iter().next() else {
            if !r.rhs.is_zero() {
                return None;
            }
            continue;
        };
        let inv = lead.recip();
        let mut normed = SparseRow::new(&r.rhs * &inv);
        for (cc, v) in &r.coeffs {
            normed.coeffs.insert(*cc, v * &inv);
        }
        by_col.insert(c, pivots.len());
        pivots.push((c, normed));
    }
    let mut x = vec![Rat::zero(); n];
    for (c, r) in pivots.iter().rev() {
        let mut v = r.rhs.clone();
        for (cc, a) in &r.coeffs {
            if cc != c {
                v -= a * &x[*cc];
            }
        }
        x[*c] = v;
    }
    Some(SparseSolution {
        x,
        rank: pivots.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn row(entries: &[(usize, i64)], rhs: i64) -> SparseRow {
        let mut r = SparseRow::new(rat(rhs));
        for &(c, v) in entries {
            r.add(c, &rat(v));
        }
        r
    }

    #[test]
    fn solves_triangular_chain() {
        let rows = vec![
            row(&[(0, 1), (1, 1)], 3),
            row(&[(1, 1), (2, 1)], 5),
            row(&[(2, 1)], 4),
        ];
        let s = solve_sparse(&rows, 3).unwrap();
        assert_eq!(s.x, vec![rat(2), rat(1), rat(4)]);
        assert_eq!(s.rank, 3);
    }

    #[test]
    fn detects_inconsistency() {
        let rows = vec![row(&[(0, 1), (1, 1)], 1), row(&[(0, 2), (1, 2)], 3)];
        assert!(solve_sparse(&rows, 2).is_none());
    }

    #[test]
    fn free_variables_are_zero() {
        let rows = vec![row(&[(0, 1), (2, 1)], 2), row(&[(0, 2), (2, 2)], 4)];
        let s = solve_sparse(&rows, 3).unwrap();
        assert_eq!(s.x, vec![rat(2), rat(0), rat(0)]);
        assert_eq!(s.rank, 1);
    }
}
