//! Exact sparse Gaussian elimination over the Gaussian rationals.
//!
//! Rows are sparse maps from column index to coefficient. Pivoting is by
//! fixed column order (the smallest column of each row), so results are
//! deterministic and independent of insertion batching.

use std::collections::BTreeMap;

use crate::scalar::GaussRat;

/// A sparse vector with exact entries; zero entries are never stored.
pub type SparseVec = BTreeMap<usize, GaussRat>;

pub fn sparse_is_zero(v: &SparseVec) -> bool {
    v.is_empty()
}

/// `v -= c * row`, dropping entries that cancel.
fn axpy_sub(v: &mut SparseVec, c: &GaussRat, row: &SparseVec) {
    for (col, rc) in row {
        let delta = c * rc;
        match v.get_mut(col) {
            Some(entry) => {
                let next = &*entry - &delta;
                if next.is_zero() {
                    v.remove(col);
                } else {
                    *entry = next;
                }
            }
            None => {
                if !delta.is_zero() {
                    v.insert(*col, -&delta);
                }
            }
        }
    }
}

/// A fully inter-reduced row-echelon accumulator (Gauss-Jordan form).
/// Each stored row is normalized so its pivot coefficient is 1, and no
/// stored row has support on another row's pivot column.
#[derive(Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_cols(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot)
    }

    /// Remainder of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        loop {
            let hit = v.keys().find(|col| self.rows.contains_key(col)).copied();
            match hit {
                None => return v,
                Some(col) => {
                    let c = v[&col].clone();
                    let row = self.rows[&col].clone();
                    axpy_sub(&mut v, &c, &row);
                    v.remove(&col);
                }
            }
        }
    }

    /// True iff `v` lies in the row span.
    pub fn contains(&self, v: &SparseVec) -> bool {
        sparse_is_zero(&self.reduce(v))
    }

    /// Insert a vector, keeping the set inter-reduced. Returns whether the
    /// rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(&v);
        let Some((&pivot, coeff)) = v.iter().next() else {
            return false;
        };
        let inv = coeff.inv().expect("pivot coefficient is nonzero");
        let normalized: SparseVec = v.iter().map(|(c, x)| (*c, x * &inv)).collect();
        // eliminate the new pivot column from older rows
        let affected: Vec<usize> = self
            .rows
            .iter()
            .filter(|(_, row)| row.contains_key(&pivot))
            .map(|(p, _)| *p)
            .collect();
        for p in affected {
            let row = self.rows.get_mut(&p).expect("row exists");
            let c = row[&pivot].clone();
            axpy_sub(row, &c, &normalized);
            row.remove(&pivot);
        }
        self.rows.insert(pivot, normalized);
        true
    }
}

/// Null-space basis of the linear map whose matrix has the given sparse
/// rows over columns `0..ncols`. Basis vectors correspond to the free
/// columns in ascending order; each is exact.
pub fn kernel_basis(rows: impl IntoIterator<Item = SparseVec>, ncols: usize) -> Vec<SparseVec> {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    let pivots: Vec<usize> = ech.pivot_cols().collect();
    let mut basis = Vec::new();
    for f in 0..ncols {
        if pivots.binary_search(&f).is_ok() {
            continue;
        }
        let mut v = SparseVec::new();
        v.insert(f, GaussRat::one());
        for &p in &pivots {
            if let Some(c) = ech.row(p).and_then(|row| row.get(&f)) {
                if !c.is_zero() {
                    v.insert(p, -c);
                }
            }
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries
            .iter()
            .map(|(c, x)| (*c, GaussRat::from_int(*x)))
            .collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(v(&[(0, 1), (1, 2)])));
        assert!(e.insert(v(&[(1, 1), (2, 1)])));
        // dependent on the first two
        assert!(!e.insert(v(&[(0, 1), (1, 4), (2, 2)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&[(0, 2), (1, 4)])));
        assert!(!e.contains(&v(&[(2, 1)])));
    }

    #[test]
    fn kernel_of_small_map() {
        // x0 + x1 = 0, over 3 columns: kernel = {(-1,1,0), (0,0,1)}
        let rows = vec![v(&[(0, 1), (1, 1)])];
        let basis = kernel_basis(rows, 3);
        assert_eq!(basis.len(), 2);
        for k in &basis {
            // check A k = 0
            let dot = k.get(&0).cloned().unwrap_or_else(GaussRat::zero);
            let dot2 = k.get(&1).cloned().unwrap_or_else(GaussRat::zero);
            assert!((&dot + &dot2).is_zero());
        }
    }

    #[test]
    fn complex_pivots_invert_exactly() {
        let mut e = Echelon::new();
        let mut row = SparseVec::new();
        row.insert(0, GaussRat::complex_ratio(3, 4, 5));
        row.insert(1, GaussRat::one());
        e.insert(row);
        let mut probe = SparseVec::new();
        probe.insert(0, GaussRat::one());
        let rem = e.reduce(&probe);
        // remainder is supported on column 1 only
        assert!(rem.contains_key(&1) && !rem.contains_key(&0));
    }
}
