use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Dense matrix over the rationals, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    /// Builds a matrix from a list of rows. All rows must have length `cols`;
    /// `cols` is needed to describe matrices with zero rows.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self, ExactError> {
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
        Ok(RationalMatrix { rows: n, cols, data })
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(columns: &[Vec<Rational>], rows: usize) -> Result<Self, ExactError> {
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(ExactError::DimensionMismatch {
                expected: rows,
                found: bad.len(),
            });
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    /// Convenience constructor from small integer rows. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged integer rows");
        Self::from_fn(rows.len(), cols, |i, j| rat(rows[i][j]))
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn try_mul(&self, rhs: &RationalMatrix) -> Result<Self, ExactError> {
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

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, ExactError> {
        if v.len() != self.cols {
            return Err(ExactError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn try_add(&self, rhs: &RationalMatrix) -> Result<Self, ExactError> {
        self.check_same_shape(rhs)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &rhs[(i, j)]))
    }

    pub fn try_sub(&self, rhs: &RationalMatrix) -> Result<Self, ExactError> {
        self.check_same_shape(rhs)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &rhs[(i, j)]))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    /// (S + Sᵀ)/2.
    pub fn symmetrized(&self) -> Result<Self, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            (&self[(i, j)] + &self[(j, i)]) * &half
        }))
    }

    /// Concatenates matrices side by side.
    pub fn hstack(blocks: &[&RationalMatrix]) -> Result<Self, ExactError> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if let Some(bad) = blocks.iter().find(|b| b.rows != rows) {
            return Err(ExactError::DimensionMismatch {
                expected: rows,
                found: bad.rows,
            });
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    out[(i, offset + j)] = b[(i, j)].clone();
                }
            }
            offset += b.cols;
        }
        Ok(out)
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    /// Inverse by Gauss–Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Result<Option<Self>, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let aug = Self::hstack(&[self, &Self::identity(n)])?;
        let (r, pivots) = super::rref(&aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        Ok(Some(Self::from_fn(n, n, |i, j| r[(i, n + j)].clone())))
    }

    /// Entries as integers, if every entry is integral.
    pub fn to_integers(&self) -> Option<Vec<Vec<BigInt>>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.is_integer().then(|| x.to_integer()))
                    .collect()
            })
            .collect()
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn check_same_shape(&self, rhs: &RationalMatrix) -> Result<(), ExactError> {
        if self.rows != rhs.rows {
            return Err(ExactError::DimensionMismatch {
                expected: self.rows,
                found: rhs.rows,
            });
        }
        if self.cols != rhs.cols {
            return Err(ExactError::DimensionMismatch {
                expected: self.cols,
                found: rhs.cols,
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Panics on a shape mismatch; use [`RationalMatrix::try_mul`] for checked
/// multiplication.
impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.try_mul(rhs).expect("matrix shape mismatch")
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Dot product of two rational vectors of equal length.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction (the first nonzero entry keeps its sign).
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g.abs()).collect()
}
