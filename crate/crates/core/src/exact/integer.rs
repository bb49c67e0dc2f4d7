use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExactError, Rational, RationalMatrix};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self, ExactError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(ExactError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(IntMatrix { rows: n, cols, data })
    }

    /// Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged integer rows");
        Self::from_fn(rows.len(), cols, |i, j| BigInt::from(rows[i][j]))
    }

    /// Converts a rational matrix with integral entries.
    pub fn from_rational(m: &RationalMatrix) -> Option<Self> {
        let rows = m.to_integers()?;
        Some(Self::from_rows(rows, m.cols()).expect("rectangular"))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn try_mul(&self, rhs: &IntMatrix) -> Result<Self, ExactError> {
        if self.cols != rhs.rows {
            return Err(ExactError::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, ExactError> {
        if v.len() != self.cols {
            return Err(ExactError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.rows, self.cols, |i, j| {
            Rational::from_integer(self[(i, j)].clone())
        })
    }

    /// Rows as machine integers, if every entry fits.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub(crate) fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Replaces columns (a, b) by (s·a + t·b, u·a + v·b).
    fn combine_columns(&mut self, a: usize, b: usize, [s, t, u, v]: [&BigInt; 4]) {
        for i in 0..self.rows {
            let x = self[(i, a)].clone();
            let y = self[(i, b)].clone();
            self[(i, a)] = s * &x + t * &y;
            self[(i, b)] = u * &x + v * &y;
        }
    }

    fn negate_column(&mut self, a: usize) {
        for i in 0..self.rows {
            let x = -&self[(i, a)];
            self[(i, a)] = x;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Panics on a shape mismatch.
impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.try_mul(rhs).expect("matrix shape mismatch")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of unimodular column reduction: `a · unimodular = reduced`, where
/// the first `rank` columns of `reduced` are in column echelon form with
/// positive pivots and the remaining columns are zero.
#[derive(Clone, Debug)]
pub struct ColumnReduction {
    pub reduced: IntMatrix,
    pub unimodular: IntMatrix,
    pub rank: usize,
    /// Pivot row of each of the first `rank` columns.
    pub pivot_rows: Vec<usize>,
}

impl ColumnReduction {
    /// A ℤ-basis of the integer kernel {x ∈ ℤⁿ : a·x = 0}. The kernel lattice
    /// is saturated, and this basis extends to a basis of ℤⁿ.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank..self.unimodular.cols())
            .map(|j| self.unimodular.column(j))
            .collect()
    }
}

/// Column-style Hermite reduction by extended-gcd column operations.
pub fn column_reduce(a: &IntMatrix) -> ColumnReduction {
    let mut h = a.clone();
    let n = a.cols();
    let mut u = IntMatrix::identity(n);
    let mut k = 0;
    let mut pivot_rows = Vec::new();
    for r in 0..a.rows() {
        if k == n {
            break;
        }
        for j in k + 1..n {
            if h[(r, j)].is_zero() {
                continue;
            }
            if h[(r, k)].is_zero() {
                h.swap_columns(k, j);
                u.swap_columns(k, j);
                continue;
            }
            let x = h[(r, k)].clone();
            let y = h[(r, j)].clone();
            let e = x.extended_gcd(&y);
            // [s t; -y/g x/g] has determinant 1.
            let (s, t) = (e.x, e.y);
            let yg = -(&y / &e.gcd);
            let xg = &x / &e.gcd;
            h.combine_columns(k, j, [&s, &t, &yg, &xg]);
            u.combine_columns(k, j, [&s, &t, &yg, &xg]);
        }
        if h[(r, k)].is_zero() {
            continue;
        }
        if h[(r, k)].is_negative() {
            h.negate_column(k);
            u.negate_column(k);
        }
        pivot_rows.push(r);
        k += 1;
    }
    ColumnReduction {
        reduced: h,
        unimodular: u,
        rank: k,
        pivot_rows,
    }
}
