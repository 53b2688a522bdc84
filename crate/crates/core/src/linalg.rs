//! Dense exact linear algebra over the rationals.

use num_traits::{One, Signed, Zero};

use crate::rat::{denominator_lcm, numerator_gcd, Rat};

/// Rectangular matrix of rational scalars, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rat) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions disagree");
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum()
        })
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "vector length disagrees");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|k| self.get(i, k) * &v[k]).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    /// Reduced row echelon form and the pivot column indices.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pivot_row) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if pivot_row != row {
                for c in 0..m.cols {
                    m.data.swap(pivot_row * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let scaled = m.get(row, c) * &inv;
                m.set(row, c, scaled);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for c in col..m.cols {
                        let updated = m.get(r, c) - &factor * m.get(row, c);
                        m.set(r, c, updated);
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

    /// Basis of the right kernel, one vector per free column in ascending
    /// column order; each vector has entry 1 at its free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (rref, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rref.get(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Exact inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = QMatrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Rat::one()
            } else {
                Rat::zero()
            }
        });
        let (reduced, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        aug = reduced;
        Some(QMatrix::from_fn(n, n, |i, j| aug.get(i, j + n).clone()))
    }
}

/// Scales a rational vector to coprime integers, preserving direction;
/// the zero vector is returned unchanged.
pub fn to_coprime_integers(v: &[Rat]) -> Vec<Rat> {
    if v.iter().all(|x| x.is_zero()) {
        return v.to_vec();
    }
    let lcm = denominator_lcm(v);
    let gcd = numerator_gcd(v, &lcm);
    let factor = Rat::new(lcm, gcd);
    assert!(factor.is_positive());
    v.iter().map(|x| x * &factor).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect())
    }

    #[test]
    fn rref_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        let (r, pivots) = a.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(a.rank(), 2);
        assert!(r.get(1, 0).is_zero());
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        let kernel = a.kernel_basis();
        assert_eq!(kernel.len(), 1);
        for v in &kernel {
            assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(kernel[0][2], rat_int(1));
    }

    #[test]
    fn kernel_of_sum_constraint() {
        let a = m(&[&[1, 1]]);
        let kernel = a.kernel_basis();
        assert_eq!(kernel, vec![vec![rat_int(-1), rat_int(1)]]);
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1, 0], &[1, 1, 1], &[0, 3, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());
        let singular = m(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn coprime_scaling_preserves_direction() {
        let v = vec![rat(1, 2), rat(-3, 4), rat_int(0)];
        let scaled = to_coprime_integers(&v);
        assert_eq!(scaled, vec![rat_int(2), rat_int(-3), rat_int(0)]);
        let zeros = vec![rat_int(0), rat_int(0)];
        assert_eq!(to_coprime_integers(&zeros), zeros);
    }
}
