//! Dense exact linear algebra over Q.
//!
//! Everything is deterministic: pivots are always the first nonzero entry in
//! column order, so echelon forms, ranks, and kernel bases depend only on the
//! input matrix, never on iteration luck. Sizes here stay small (tens of
//! rows), so plain rational elimination is the right tool.

use std::fmt;

use super::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>, // row-major
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> QMat {
        QMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> QMat {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds a matrix from equal-length rows. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> QMat {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        QMat { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &QMat) -> QMat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = QMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.at(i, j) + &(a * rhs.at(k, j));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut s = Rat::zero();
                for j in 0..self.cols {
                    s = s + &(self.at(i, j) * &v[j]);
                }
                s
            })
            .collect()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = m.at(row, col).recip();
            for j in col..m.cols {
                let v = m.at(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for j in col..m.cols {
                        let v = m.at(r, j) - &(&factor * m.at(row, j));
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel {v : Mv = 0}, one vector per free column,
    /// in ascending free-column order. The basis vector for free column j
    /// has a 1 in position j, so the output is canonical.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -r.at(prow, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Determinant of a square matrix by fraction elimination.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rat::one();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return Rat::zero();
            };
            if pr != col {
                m.swap_rows(col, pr);
                det = -&det;
            }
            let pivot = m.at(col, col).clone();
            det = det * &pivot;
            let inv = pivot.recip();
            for r in col + 1..n {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col) * &inv;
                for j in col..n {
                    let v = m.at(r, j) - &(&factor * m.at(col, j));
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    /// Solves Mx = b for square M; `None` when M is singular.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, self.cols, "solve needs a square matrix");
        assert_eq!(self.rows, b.len(), "dimension mismatch");
        let mut aug = QMat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != self.cols || pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        Some((0..self.cols).map(|i| r.at(i, self.cols).clone()).collect())
    }

    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = QMat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = QMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.at(i, n + j).clone());
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl fmt::Display for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(f, "[ {} ]", cells.join("  "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> QMat {
        QMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rat::from_int(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        assert_eq!(a.rank(), 2);
        let (r, pivots) = a.rref();
        assert_eq!(pivots, vec![0, 1]);
        // all entries below the pivot rows vanish
        assert!(r.row(2).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = m(&[&[1, 2, 3, 4], &[0, 1, 1, 1]]);
        let basis = a.kernel_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(a.apply(v).iter().all(|c| c.is_zero()));
        }
        // canonical: each vector has a 1 in its free coordinate
        assert!(basis[0][2].is_one());
        assert!(basis[1][3].is_one());
    }

    #[test]
    fn determinant_values() {
        assert_eq!(m(&[&[1, 2], &[3, 4]]).det(), Rat::from_int(-2));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), Rat::zero());
        assert_eq!(QMat::identity(4).det(), Rat::one());
        // swap two rows of the identity: determinant flips sign
        let mut s = QMat::identity(3);
        s.set(0, 0, Rat::zero());
        s.set(1, 1, Rat::zero());
        s.set(0, 1, Rat::one());
        s.set(1, 0, Rat::one());
        assert_eq!(s.det(), Rat::from_int(-1));
    }

    #[test]
    fn solve_and_inverse_agree() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let b = vec![Rat::from_int(5), Rat::from_int(10)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.apply(&x), b);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.apply(&b), x);
        assert_eq!(a.matmul(&inv), QMat::identity(2));
    }

    #[test]
    fn singular_systems_report_none() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert!(a.solve(&[Rat::one(), Rat::one()]).is_none());
        assert!(a.inverse().is_none());
    }

    #[test]
    fn matmul_transpose() {
        let a = m(&[&[1, 2], &[3, 4], &[5, 6]]);
        let at = a.transpose();
        assert_eq!(at.rows(), 2);
        let g = at.matmul(&a);
        assert_eq!(g.at(0, 0), &Rat::from_int(35));
        assert_eq!(g.at(1, 1), &Rat::from_int(56));
    }
}
