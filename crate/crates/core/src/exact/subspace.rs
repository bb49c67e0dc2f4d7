use num_traits::{One, Zero};

use super::{rref, ExactError, Rational, RationalMatrix};

/// A linear subspace of ℚⁿ.
///
/// The basis is kept in reduced column echelon form (pivot rows chosen top
/// down), so two equal subspaces always have identical representations and
/// `==` is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: RationalMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: RationalMatrix::zeros(ambient_dim, 0),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: RationalMatrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self, ExactError> {
        let as_rows = RationalMatrix::from_rows(vectors.to_vec(), ambient_dim)?;
        let (r, pivots) = rref(&as_rows);
        let k = pivots.len();
        let basis = RationalMatrix::from_fn(ambient_dim, k, |i, j| r[(j, i)].clone());
        Ok(Subspace {
            ambient_dim,
            basis,
            pivots,
        })
    }

    /// Span of the columns of a matrix.
    pub fn column_span(m: &RationalMatrix) -> Self {
        Self::span(m.rows(), &m.columns()).expect("columns have the matrix row count")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    /// Canonical basis, one basis vector per column.
    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.columns()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, ExactError> {
        self.check_ambient(other)?;
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::span(self.ambient_dim, &vs)
    }

    /// U ∩ V, computed from the kernel of the stacked system [U | −V].
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, ExactError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        let neg = other.basis.scale(&-Rational::one());
        let stacked = RationalMatrix::hstack(&[&self.basis, &neg])?;
        let k = self.dim();
        let vectors: Vec<Vec<Rational>> = kernel(&stacked)
            .basis_vectors()
            .into_iter()
            .map(|coeffs| self.basis.mul_vec(&coeffs[..k]).expect("coefficient length"))
            .collect();
        Subspace::span(self.ambient_dim, &vectors)
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v ∉ U`.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>, ExactError> {
        if v.len() != self.ambient_dim {
            return Err(ExactError::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        // Column echelon form: the coordinate on basis vector j is read off
        // at its pivot row.
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let recombined = self.basis.mul_vec(&coords)?;
        Ok((recombined.as_slice() == v).then_some(coords))
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool, ExactError> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, ExactError> {
        self.check_ambient(other)?;
        for v in self.basis_vectors() {
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Image M(U) of the subspace under a square or rectangular matrix.
    pub fn image_under(&self, m: &RationalMatrix) -> Result<Subspace, ExactError> {
        let vectors = self
            .basis_vectors()
            .iter()
            .map(|v| m.mul_vec(v))
            .collect::<Result<Vec<_>, _>>()?;
        Subspace::span(m.rows(), &vectors)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), ExactError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(ExactError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }
}

/// Kernel {x : Mx = 0}.
pub fn kernel(m: &RationalMatrix) -> Subspace {
    let (r, pivots) = rref(m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vec<Rational>> = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![Rational::zero(); n];
            x[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = -r[(row, f)].clone();
            }
            x
        })
        .collect();
    Subspace::span(n, &vectors).expect("kernel vectors have length cols")
}

/// Column space of M.
pub fn image(m: &RationalMatrix) -> Subspace {
    Subspace::column_span(m)
}

/// A particular solution of M x = b (free variables set to zero), or `None`
/// when the system is inconsistent.
pub fn solve(m: &RationalMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>, ExactError> {
    if b.len() != m.rows() {
        return Err(ExactError::DimensionMismatch {
            expected: m.rows(),
            found: b.len(),
        });
    }
    let rhs = RationalMatrix::from_columns(&[b.to_vec()], m.rows())?;
    let aug = RationalMatrix::hstack(&[m, &rhs])?;
    let (r, pivots) = rref(&aug);
    let n = m.cols();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[(row, n)].clone();
    }
    Ok(Some(x))
}
