//! The symplectic space H₁(Σ_g; ℚ) with basis (m₁..m_g, ℓ₁..ℓ_g), its
//! lagrangians, and the Maslov index of lagrangian triples.

mod adapt;
mod maslov;
pub mod random;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{ExactError, IntMatrix, Rational, RationalMatrix, Subspace};

pub use adapt::adapt_lagrangian;
pub use maslov::{maslov, MaslovForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("genus must be positive")]
    ZeroGenus,
    #[error("genus mismatch: expected {expected}, found {found}")]
    GenusMismatch { expected: usize, found: usize },
    #[error("subspace is not a lagrangian")]
    NotLagrangian,
    #[error("matrix does not preserve the intersection form")]
    NotSymplectic,
    #[error("shift vector is not in λ₁ ∩ λ₂")]
    OutsideOverlap,
}

/// H₁(Σ_g; ℚ) with the intersection form J = [[0, I], [−I, 0]], so that
/// m_i · ℓ_i = +1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticSpace {
    genus: usize,
}

impl SymplecticSpace {
    pub fn new(genus: usize) -> Result<Self, SymplecticError> {
        if genus == 0 {
            return Err(SymplecticError::ZeroGenus);
        }
        Ok(SymplecticSpace { genus })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    pub fn j_matrix(&self) -> IntMatrix {
        let g = self.genus;
        IntMatrix::from_fn(2 * g, 2 * g, |i, j| {
            if j == i + g {
                BigInt::one()
            } else if i == j + g {
                -BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    /// Intersection pairing x · y.
    pub fn form(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let g = self.genus;
        (0..g).fold(Rational::zero(), |acc, i| acc + &x[i] * &y[g + i] - &x[g + i] * &y[i])
    }

    pub fn form_int(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let g = self.genus;
        (0..g).fold(BigInt::zero(), |acc, i| acc + &x[i] * &y[g + i] - &x[g + i] * &y[i])
    }

    /// Mᵀ J M = J.
    pub fn is_symplectic(&self, m: &IntMatrix) -> bool {
        if m.rows() != self.dim() || m.cols() != self.dim() {
            return false;
        }
        let j = self.j_matrix();
        &(&m.transpose() * &j) * m == j
    }

    /// Inverse of a symplectic matrix, M⁻¹ = −J Mᵀ J.
    pub fn symplectic_inverse(&self, m: &IntMatrix) -> IntMatrix {
        let j = self.j_matrix();
        let p = &(&j * &m.transpose()) * &j;
        IntMatrix::from_fn(p.rows(), p.cols(), |i, k| -&p[(i, k)])
    }

    /// Homology action of the (right-handed) Dehn twist along a curve with
    /// class `alpha`: x ↦ x − (x·α)α. The inverse twist is x ↦ x + (x·α)α.
    pub fn transvection(&self, alpha: &[BigInt], inverse: bool) -> IntMatrix {
        let n = self.dim();
        let sign = if inverse { BigInt::one() } else { -BigInt::one() };
        IntMatrix::from_fn(n, n, |i, j| {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            let pairing = self.form_int(&e, alpha);
            let delta = if i == j { BigInt::one() } else { BigInt::zero() };
            delta + &sign * pairing * &alpha[i]
        })
    }

    pub fn standard_lagrangian(&self) -> Lagrangian {
        let g = self.genus;
        let vectors: Vec<Vec<Rational>> = (0..g)
            .map(|i| {
                let mut v = vec![Rational::zero(); 2 * g];
                v[i] = Rational::one();
                v
            })
            .collect();
        Lagrangian {
            space: *self,
            subspace: Subspace::span(2 * g, &vectors).expect("vector length"),
        }
    }

    fn check_dim(&self, found: usize) -> Result<(), SymplecticError> {
        if found != self.dim() {
            return Err(ExactError::DimensionMismatch {
                expected: self.dim(),
                found,
            }
            .into());
        }
        Ok(())
    }
}

/// True iff `u` is isotropic of dimension g.
pub fn is_lagrangian(space: &SymplecticSpace, u: &Subspace) -> Result<bool, SymplecticError> {
    space.check_dim(u.ambient_dim())?;
    if u.dim() != space.genus() {
        return Ok(false);
    }
    let basis = u.basis_vectors();
    for (i, x) in basis.iter().enumerate() {
        for y in &basis[i + 1..] {
            if !space.form(x, y).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A lagrangian subspace of H₁(Σ_g; ℚ).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lagrangian {
    space: SymplecticSpace,
    subspace: Subspace,
}

impl Lagrangian {
    pub fn new(space: SymplecticSpace, subspace: Subspace) -> Result<Self, SymplecticError> {
        if !is_lagrangian(&space, &subspace)? {
            return Err(SymplecticError::NotLagrangian);
        }
        Ok(Lagrangian { space, subspace })
    }

    pub fn from_integer_vectors(space: SymplecticSpace, vectors: &[Vec<BigInt>]) -> Result<Self, SymplecticError> {
        let rational: Vec<Vec<Rational>> = vectors
            .iter()
            .map(|v| v.iter().cloned().map(Rational::from_integer).collect())
            .collect();
        let subspace = Subspace::span(space.dim(), &rational)?;
        Self::new(space, subspace)
    }

    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }

    pub fn genus(&self) -> usize {
        self.space.genus()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn is_standard(&self) -> bool {
        *self == self.space.standard_lagrangian()
    }

    /// Image M(λ) under a symplectic matrix.
    pub fn transform(&self, m: &IntMatrix) -> Result<Lagrangian, SymplecticError> {
        if !self.space.is_symplectic(m) {
            return Err(SymplecticError::NotSymplectic);
        }
        let subspace = self.subspace.image_under(&m.to_rational())?;
        Ok(Lagrangian {
            space: self.space,
            subspace,
        })
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool, SymplecticError> {
        Ok(self.subspace.contains(v)?)
    }

    pub fn basis_matrix(&self) -> &RationalMatrix {
        self.subspace.basis()
    }

    pub(crate) fn check_same_space(&self, other: &Lagrangian) -> Result<(), SymplecticError> {
        if self.space != other.space {
            return Err(SymplecticError::GenusMismatch {
                expected: self.genus(),
                found: other.genus(),
            });
        }
        Ok(())
    }
}
