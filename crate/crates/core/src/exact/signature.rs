use num_traits::{Signed, Zero};

use super::{ExactError, Rational, RationalMatrix};

/// Inertia (b₊, b₋, b₀) of a symmetric rational matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }
}

/// Inertia of a symmetric matrix by exact congruence diagonalization.
///
/// Zero diagonal pivots are repaired with the substitution
/// row_i += row_j, col_i += col_j for some S[i][j] ≠ 0, which puts
/// 2·S[i][j] on the diagonal.
pub fn signature(s: &RationalMatrix) -> Result<Inertia, ExactError> {
    if !s.is_square() {
        return Err(ExactError::NotSquare {
            rows: s.rows(),
            cols: s.cols(),
        });
    }
    if !s.is_symmetric() {
        return Err(ExactError::NotSymmetric);
    }
    let n = s.rows();
    let mut a = s.clone();
    let mut inertia = Inertia::default();
    for k in 0..n {
        if a[(k, k)].is_zero() && !bring_pivot(&mut a, k) {
            // remaining block is identically zero
            inertia.zero += n - k;
            return Ok(inertia);
        }
        let pivot = a[(k, k)].clone();
        if pivot.is_positive() {
            inertia.positive += 1;
        } else {
            inertia.negative += 1;
        }
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let factor: Rational = &a[(i, k)] / &pivot;
            // Schur complement update of the trailing block: the row and
            // column operations together only touch entries (i, j), j > k.
            for j in k + 1..n {
                if !a[(k, j)].is_zero() {
                    let delta = &factor * &a[(k, j)];
                    a[(i, j)] -= delta;
                }
            }
            a[(i, k)] = Rational::zero();
        }
        for i in k + 1..n {
            a[(k, i)] = Rational::zero();
        }
    }
    Ok(inertia)
}

/// Makes a[k][k] nonzero by a congruence on the trailing block. Returns
/// false if the trailing block is zero.
fn bring_pivot(a: &mut RationalMatrix, k: usize) -> bool {
    let n = a.rows();
    if let Some(i) = (k + 1..n).find(|&i| !a[(i, i)].is_zero()) {
        symmetric_swap(a, k, i);
        return true;
    }
    for i in k..n {
        if let Some(j) = (i + 1..n).find(|&j| !a[(i, j)].is_zero()) {
            // row_i += row_j; col_i += col_j
            for c in 0..n {
                let v = a[(j, c)].clone();
                a[(i, c)] += v;
            }
            for r in 0..n {
                let v = a[(r, j)].clone();
                a[(r, i)] += v;
            }
            symmetric_swap(a, k, i);
            return true;
        }
    }
    false
}

fn symmetric_swap(a: &mut RationalMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap_rows(i, j);
    for r in 0..a.rows() {
        let tmp = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = tmp;
    }
}

/// Sign of the determinant (−1, 0 or +1). The 0×0 determinant is +1.
pub fn det_sign(m: &RationalMatrix) -> Result<i8, ExactError> {
    if !m.is_square() {
        return Err(ExactError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut sign: i8 = 1;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
            return Ok(0);
        };
        if p != k {
            a.swap_rows(p, k);
            sign = -sign;
        }
        let pivot = a[(k, k)].clone();
        if pivot.is_negative() {
            sign = -sign;
        }
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let factor: Rational = &a[(i, k)] / &pivot;
            for j in k..n {
                if !a[(k, j)].is_zero() {
                    let delta = &factor * &a[(k, j)];
                    a[(i, j)] -= delta;
                }
            }
        }
    }
    Ok(sign)
}
