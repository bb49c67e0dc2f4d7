use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Lagrangian, SymplecticError};
use crate::exact::{column_reduce, primitive_integer_vector, IntMatrix};

/// An integral symplectic matrix M (Mᵀ J M = J) whose first g columns span λ.
///
/// In the basis given by the columns of M, λ becomes the span of the
/// meridians, which is how a lagrangian is placed relative to a standard
/// Heegaard splitting of S³. The completion is not unique; for λ = ⟨m₁..m_g⟩
/// the identity is returned.
///
/// The first g columns are a ℤ-basis of λ ∩ ℤ^{2g} (the saturation), the
/// remaining g columns a dual isotropic family.
pub fn adapt_lagrangian(lambda: &Lagrangian) -> Result<IntMatrix, SymplecticError> {
    let space = *lambda.space();
    let g = space.genus();
    let n = space.dim();
    if lambda.is_standard() {
        return Ok(IntMatrix::identity(n));
    }
    let j = space.j_matrix();

    // λ ∩ ℤ^{2g} = λ^⊥ ∩ ℤ^{2g} = integer kernel of rows (J b)ᵀ.
    let generators: Vec<Vec<BigInt>> = lambda
        .subspace()
        .basis_vectors()
        .iter()
        .map(|b| primitive_integer_vector(b))
        .collect();
    let annihilator = IntMatrix::from_fn(g, n, |r, c| {
        let jb = j.mul_vec(&generators[r]).expect("length 2g");
        jb[c].clone()
    });
    let saturated = column_reduce(&annihilator).kernel_basis();
    debug_assert_eq!(saturated.len(), g);

    // Solve e_i · x_k = δ_ik over ℤ. The pairing map x ↦ (e_i · x)_i is
    // onto ℤ^g because the e_i span a direct summand and J is unimodular.
    let pairing = IntMatrix::from_fn(g, n, |r, c| {
        let mut unit = vec![BigInt::zero(); n];
        unit[c] = BigInt::one();
        space.form_int(&saturated[r], &unit)
    });
    let red = column_reduce(&pairing);
    if red.rank != g {
        return Err(SymplecticError::NotLagrangian);
    }
    let h = &red.reduced;
    let mut y = IntMatrix::zeros(g, g);
    for t in 0..g {
        for k in 0..g {
            let mut acc = if k == t { BigInt::one() } else { BigInt::zero() };
            for i in 0..k {
                acc -= &h[(k, i)] * &y[(i, t)];
            }
            let (q, r) = acc.div_rem(&h[(k, k)]);
            if !r.is_zero() {
                return Err(SymplecticError::NotLagrangian);
            }
            y[(k, t)] = q;
        }
    }
    let preimage_basis = IntMatrix::from_fn(n, g, |r, c| red.unimodular[(r, c)].clone());
    let x = &preimage_basis * &y;
    let mut duals: Vec<Vec<BigInt>> = (0..g).map(|c| x.column(c)).collect();

    // Make the duals mutually isotropic: f_i ← f_i − Σ_{k>i} (f_i·f_k) e_k.
    let original = duals.clone();
    for i in 0..g {
        for k in i + 1..g {
            let c = space.form_int(&original[i], &original[k]);
            if c.is_zero() {
                continue;
            }
            for (d, e) in duals[i].iter_mut().zip(&saturated[k]) {
                *d -= &c * e;
            }
        }
    }

    let m = IntMatrix::from_fn(n, n, |r, c| {
        if c < g {
            saturated[c][r].clone()
        } else {
            duals[c - g][r].clone()
        }
    });
    if !space.is_symplectic(&m) {
        return Err(SymplecticError::NotSymplectic);
    }
    Ok(m)
}
