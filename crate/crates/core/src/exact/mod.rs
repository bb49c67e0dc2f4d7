//! Exact linear algebra over ℚ: echelon forms, subspace lattice operations,
//! integer column reduction, and inertia of symmetric forms.
//!
//! Everything here is arbitrary precision. Signatures are computed by
//! congruence diagonalization, never from floating-point eigenvalues.

mod integer;
mod matrix;
mod signature;
mod subspace;

use num_traits::{One, Zero};
use thiserror::Error;

pub use integer::{column_reduce, ColumnReduction, IntMatrix};
pub use matrix::{dot, is_zero_vector, primitive_integer_vector, rat, Rational, RationalMatrix};
pub use signature::{det_sign, signature, Inertia};
pub use subspace::{image, kernel, solve, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
}

/// Reduced row echelon form together with the pivot columns, in order.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let mut r = m.clone();
    let (rows, cols) = (r.rows(), r.cols());
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..cols {
        if lead == rows {
            break;
        }
        let Some(p) = (lead..rows).find(|&i| !r[(i, col)].is_zero()) else {
            continue;
        };
        r.swap_rows(lead, p);
        let inv = Rational::one() / &r[(lead, col)];
        for j in col..cols {
            if !r[(lead, j)].is_zero() {
                r[(lead, j)] *= &inv;
            }
        }
        for i in 0..rows {
            if i == lead || r[(i, col)].is_zero() {
                continue;
            }
            let factor = r[(i, col)].clone();
            for j in col..cols {
                if !r[(lead, j)].is_zero() {
                    let delta = &factor * &r[(lead, j)];
                    r[(i, j)] -= delta;
                }
            }
        }
        pivots.push(col);
        lead += 1;
    }
    (r, pivots)
}

pub fn rank(m: &RationalMatrix) -> usize {
    rref(m).1.len()
}
