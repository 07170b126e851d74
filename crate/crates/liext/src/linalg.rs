use num::{One, Zero};

use crate::expr::Rat;

/// Dense matrix over the rationals with exact elimination. Pivoting is
/// deterministic: leftmost nonzero column, lowest row index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> QMatrix {
        QMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> QMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    /// Append `other`'s columns to the right; row counts must match.
    pub fn hstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = QMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.at(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.at(r, c).clone());
            }
        }
        out
    }

    /// Reduce in place to reduced row echelon form; returns the pivot columns
    /// in ascending order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..self.cols {
            let Some(pr) = (lead..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(lead, pr);
            let inv = Rat::one() / self.at(lead, col).clone();
            for c in col..self.cols {
                let v = self.at(lead, c).clone() * inv.clone();
                self.set(lead, c, v);
            }
            for r in 0..self.rows {
                if r != lead && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for c in col..self.cols {
                        let v = self.at(r, c).clone() - factor.clone() * self.at(lead, c).clone();
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            lead += 1;
            if lead == self.rows {
                break;
            }
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right nullspace in the standard reduced echelon
    /// parameterisation: one vector per free column, free columns ascending,
    /// the free coordinate set to one.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = vec![Rat::zero(); self.cols];
            vec[free] = Rat::one();
            for (i, &pc) in pivots.iter().enumerate() {
                vec[pc] = -m.at(i, free).clone();
            }
            basis.push(vec);
        }
        basis
    }

    /// Unique-style solution of `self * x = rhs`: `None` when inconsistent,
    /// otherwise the particular solution with free coordinates zero.
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(rhs.len(), self.rows);
        let b = QMatrix::from_rows(rhs.iter().map(|v| vec![v.clone()]).collect());
        let mut aug = self.hstack(&b);
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(i, self.cols).clone();
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn rref_rank_and_pivots() {
        let m = QMatrix::from_rows(vec![
            vec![r(0), r(2), r(4)],
            vec![r(1), r(1), r(1)],
            vec![r(1), r(3), r(5)],
        ]);
        let pivots = m.clone().rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn nullspace_vectors_annihilate() {
        let m = QMatrix::from_rows(vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in 0..m.rows {
                let dot: Rat = (0..m.cols).map(|c| m.at(row, c).clone() * v[c].clone()).sum();
                assert!(dot.is_zero());
            }
        }
        // Deterministic parameterisation: free columns 1 and 2.
        assert_eq!(ns[0], vec![r(-2), r(1), r(0)]);
        assert_eq!(ns[1], vec![r(-3), r(0), r(1)]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = QMatrix::from_rows(vec![vec![r(1), r(1)], vec![r(1), r(-1)]]);
        let x = m.solve(&[r(3), r(1)]).unwrap();
        assert_eq!(x, vec![r(2), r(1)]);
        let s = QMatrix::from_rows(vec![vec![r(1), r(1)], vec![r(2), r(2)]]);
        assert!(s.solve(&[r(1), r(3)]).is_none());
        assert!(s.solve(&[r(1), r(2)]).is_some());
    }

    #[test]
    fn full_rank_square_nullspace_is_trivial() {
        let m = QMatrix::from_rows(vec![vec![r(2), r(1)], vec![r(1), r(1)]]);
        assert_eq!(m.rank(), 2);
        assert!(m.nullspace().is_empty());
    }
}
