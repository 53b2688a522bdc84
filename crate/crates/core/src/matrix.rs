//! Matrices of polynomials: products, fraction-free determinants, and rank
//! over the rational function field.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{internal_check, Error, Result};
use crate::gcd::try_div_exact;
use crate::linalg::QMatrix;
use crate::poly::Poly;
use crate::polymap::PolyMap;
use crate::rat::Rat;

/// Rectangular matrix of polynomials of a common arity, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    arity: usize,
    entries: Vec<Poly>,
}

/// How `PolyMatrix::rank` establishes its answer.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RankMode {
    /// Evaluate at random integer points and take the best observed rank.
    Randomized,
    /// Symbolic elimination plus explicit minor certificates.
    Certified,
}

/// Rank result together with its evidence.
#[derive(Clone, Debug)]
pub struct RankReport {
    pub rank: usize,
    pub mode: RankMode,
    /// Randomized mode: Schwartz-Zippel bound on the probability that the
    /// reported rank is too small.
    pub failure_bound: Option<Rat>,
    /// Certified mode: row and column indices of a nonzero `rank x rank`
    /// minor (absent when the rank is zero).
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

impl RankReport {
    /// Human-readable failure bound, if any.
    pub fn failure_bound_text(&self) -> Option<String> {
        self.failure_bound.as_ref().map(|b| format!("{:.3e}", b.to_f64().unwrap_or(0.0)))
    }
}

impl PolyMatrix {
    pub fn from_fn(
        rows: usize,
        cols: usize,
        arity: usize,
        f: impl Fn(usize, usize) -> Poly,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.arity(), arity, "entry arity mismatch");
                entries.push(e);
            }
        }
        PolyMatrix { rows, cols, arity, entries }
    }

    pub fn zero(rows: usize, cols: usize, arity: usize) -> Self {
        Self::from_fn(rows, cols, arity, |_, _| Poly::zero(arity))
    }

    pub fn identity(n: usize, arity: usize) -> Self {
        Self::from_fn(n, n, arity, |i, j| {
            if i == j {
                Poly::one(arity)
            } else {
                Poly::zero(arity)
            }
        })
    }

    /// Constant polynomial matrix from a rational matrix.
    pub fn from_qmatrix(m: &QMatrix, arity: usize) -> Self {
        Self::from_fn(m.rows(), m.cols(), arity, |i, j| Poly::constant(arity, m.get(i, j).clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Poly) {
        assert_eq!(value.arity(), self.arity, "entry arity mismatch");
        self.entries[r * self.cols + c] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> PolyMatrix {
        Self::from_fn(self.cols, self.rows, self.arity, |i, j| self.get(j, i).clone())
    }

    /// Largest total degree over all entries; `None` for the zero matrix.
    pub fn max_degree(&self) -> Option<u32> {
        self.entries.iter().filter_map(|e| e.degree()).max()
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self::from_fn(self.rows, self.cols, self.arity, |i, j| self.get(i, j).add(other.get(i, j)))
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self::from_fn(self.rows, self.cols, self.arity, |i, j| self.get(i, j).sub(other.get(i, j)))
    }

    /// Multiplies every entry by a polynomial.
    pub fn scale_poly(&self, factor: &Poly) -> PolyMatrix {
        Self::from_fn(self.rows, self.cols, self.arity, |i, j| self.get(i, j).mul(factor))
    }

    /// Applies a substitution to every entry.
    pub fn substitute(&self, replacements: &[Poly]) -> PolyMatrix {
        let arity = replacements.first().map_or(0, |p| p.arity());
        Self::from_fn(self.rows, self.cols, arity, |i, j| self.get(i, j).substitute(replacements))
    }

    pub fn matmul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, self.arity, |i, j| {
            (0..self.cols).fold(Poly::zero(self.arity), |acc, k| {
                acc.add(&self.get(i, k).mul(other.get(k, j)))
            })
        }))
    }

    /// Matrix times column vector of map components.
    pub fn mul_map(&self, map: &PolyMap) -> Result<PolyMap> {
        if self.cols != map.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times a map with {} components",
                self.rows,
                self.cols,
                map.len()
            )));
        }
        Ok(PolyMap::new(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols).fold(Poly::zero(self.arity), |acc, k| {
                        acc.add(&self.get(i, k).mul(map.component(k)))
                    })
                })
                .collect(),
        ))
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> PolyMatrix {
        Self::from_fn(row_idx.len(), col_idx.len(), self.arity, |i, j| {
            self.get(row_idx[i], col_idx[j]).clone()
        })
    }

    /// Evaluates every entry at a rational point.
    pub fn eval(&self, point: &[Rat]) -> QMatrix {
        QMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval(point))
    }

    /// Exact determinant: cofactor expansion up to 3x3, fraction-free
    /// elimination beyond.
    pub fn det(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let arity = self.arity;
        let e = |i: usize, j: usize| self.get(i, j);
        match n {
            0 => return Ok(Poly::one(arity)),
            1 => return Ok(e(0, 0).clone()),
            2 => return Ok(e(0, 0).mul(e(1, 1)).sub(&e(0, 1).mul(e(1, 0)))),
            3 => {
                let mut acc = Poly::zero(arity);
                acc = acc.add(&e(0, 0).mul(&e(1, 1).mul(e(2, 2)).sub(&e(1, 2).mul(e(2, 1)))));
                acc = acc.sub(&e(0, 1).mul(&e(1, 0).mul(e(2, 2)).sub(&e(1, 2).mul(e(2, 0)))));
                acc = acc.add(&e(0, 2).mul(&e(1, 0).mul(e(2, 1)).sub(&e(1, 1).mul(e(2, 0)))));
                return Ok(acc);
            }
            _ => {}
        }
        let mut m: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = false;
        let mut prev = Poly::one(arity);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Ok(Poly::zero(arity));
                };
                m.swap(k, swap);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let numerator = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = try_div_exact(&numerator, &prev)
                        .ok_or_else(|| Error::Internal("fraction-free step not exact".into()))?;
                }
                m[i][k] = Poly::zero(arity);
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if sign { det.neg() } else { det })
    }

    /// Rank over the rational function field.
    pub fn rank(&self, mode: RankMode, seed: u64) -> Result<RankReport> {
        match mode {
            RankMode::Randomized => Ok(self.rank_randomized(seed)),
            RankMode::Certified => self.rank_certified(),
        }
    }

    /// Evaluates at integer points drawn uniformly from `[-B, B]^n` with
    /// `B = 10^6`, three trials, and reports the best observed rank. The
    /// failure bound is the Schwartz-Zippel probability that all three
    /// evaluations underestimate the rank.
    pub fn rank_randomized(&self, seed: u64) -> RankReport {
        const BOUND: i64 = 1_000_000;
        const TRIALS: usize = 3;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = 0;
        for _ in 0..TRIALS {
            let point: Vec<Rat> = (0..self.arity)
                .map(|_| Rat::from_integer(BigInt::from(rng.gen_range(-BOUND..=BOUND))))
                .collect();
            best = best.max(self.eval(&point).rank());
        }
        let minor_degree = Rat::from_integer(BigInt::from(
            self.rows as u64 * u64::from(self.max_degree().unwrap_or(0)),
        ));
        let sample_size = Rat::from_integer(BigInt::from(2 * BOUND + 1));
        let per_trial = (minor_degree / sample_size).min(Rat::one());
        let bound = (&per_trial * &per_trial) * &per_trial;
        RankReport {
            rank: best,
            mode: RankMode::Randomized,
            failure_bound: Some(bound),
            witness: None,
        }
    }

    /// Symbolic rank: fraction-free elimination with full pivoting finds
    /// `r`, then a nonzero `r x r` minor is exhibited and every
    /// `(r+1) x (r+1)` minor is checked to vanish.
    pub fn rank_certified(&self) -> Result<RankReport> {
        let (rank, pivot_rows, pivot_cols) = self.eliminate();
        let witness = if rank > 0 {
            let mut rows = pivot_rows;
            let mut cols = pivot_cols;
            rows.sort_unstable();
            cols.sort_unstable();
            let minor = self.submatrix(&rows, &cols).det()?;
            internal_check(!minor.is_zero(), "witness minor of the claimed rank vanished")?;
            Some((rows, cols))
        } else {
            internal_check(self.is_zero(), "zero rank claimed for a nonzero matrix")?;
            None
        };
        if rank < self.rows.min(self.cols) {
            for rows in combinations(self.rows, rank + 1) {
                for cols in combinations(self.cols, rank + 1) {
                    let minor = self.submatrix(&rows, &cols).det()?;
                    internal_check(
                        minor.is_zero(),
                        "a minor above the claimed rank is nonzero",
                    )?;
                }
            }
        }
        Ok(RankReport { rank, mode: RankMode::Certified, failure_bound: None, witness })
    }

    /// Fraction-free Gaussian elimination with full pivoting; returns the
    /// rank and the original indices of the pivot rows and columns.
    fn eliminate(&self) -> (usize, Vec<usize>, Vec<usize>) {
        let mut m: Vec<Vec<Poly>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut row_index: Vec<usize> = (0..self.rows).collect();
        let mut col_index: Vec<usize> = (0..self.cols).collect();
        let mut prev = Poly::one(self.arity);
        let steps = self.rows.min(self.cols);
        let mut rank = 0;
        for k in 0..steps {
            let pivot = (k..self.rows)
                .flat_map(|i| (k..self.cols).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].is_zero());
            let Some((pi, pj)) = pivot else { break };
            m.swap(k, pi);
            row_index.swap(k, pi);
            if pj != k {
                for row in m.iter_mut() {
                    row.swap(k, pj);
                }
                col_index.swap(k, pj);
            }
            for i in k + 1..self.rows {
                for j in k + 1..self.cols {
                    let numerator = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = try_div_exact(&numerator, &prev)
                        .expect("fraction-free elimination step is exact");
                }
                m[i][k] = Poly::zero(self.arity);
            }
            prev = m[k][k].clone();
            rank = k + 1;
        }
        (rank, row_index[..rank].to_vec(), col_index[..rank].to_vec())
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let needed = k - current.len();
        for i in start..=n.saturating_sub(needed) {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut current, &mut out);
    }
    out
}
