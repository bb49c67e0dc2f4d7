use super::{Lagrangian, SymplecticError, SymplecticSpace};
use crate::exact::{signature, solve, Rational, RationalMatrix, Subspace};

/// The symmetric form ⊙ on (λ₁ + λ₂) ∩ λ₃ given by
/// (a₁ + a₂) ⊙ (b₁ + b₂) = a₂ · b₁, with aᵢ, bᵢ ∈ λᵢ.
///
/// Each domain basis vector w carries one chosen decomposition w = a₁ + a₂.
/// The decomposition is unique only up to λ₁ ∩ λ₂; [`MaslovForm::shift`]
/// moves along that ambiguity.
#[derive(Clone, Debug)]
pub struct MaslovForm {
    space: SymplecticSpace,
    domain: Subspace,
    overlap: Subspace,
    parts: Vec<(Vec<Rational>, Vec<Rational>)>,
}

impl MaslovForm {
    pub fn new(l1: &Lagrangian, l2: &Lagrangian, l3: &Lagrangian) -> Result<Self, SymplecticError> {
        l1.check_same_space(l2)?;
        l1.check_same_space(l3)?;
        let space = *l1.space();
        let b1 = l1.basis_matrix();
        let b2 = l2.basis_matrix();
        let sum = l1.subspace().sum(l2.subspace())?;
        let domain = sum.intersection(l3.subspace())?;
        let overlap = l1.subspace().intersection(l2.subspace())?;
        let stacked = RationalMatrix::hstack(&[b1, b2])?;
        let k1 = b1.cols();
        let parts = domain
            .basis_vectors()
            .iter()
            .map(|w| {
                let c = solve(&stacked, w)?.expect("w lies in λ₁ + λ₂");
                let a1 = b1.mul_vec(&c[..k1])?;
                let a2 = b2.mul_vec(&c[k1..])?;
                Ok((a1, a2))
            })
            .collect::<Result<Vec<_>, SymplecticError>>()?;
        Ok(MaslovForm {
            space,
            domain,
            overlap,
            parts,
        })
    }

    pub fn domain(&self) -> &Subspace {
        &self.domain
    }

    /// λ₁ ∩ λ₂, the ambiguity in each decomposition.
    pub fn overlap(&self) -> &Subspace {
        &self.overlap
    }

    /// Replaces the decomposition of basis vector `index` by
    /// (a₁ + z, a₂ − z) for z ∈ λ₁ ∩ λ₂.
    pub fn shift(&mut self, index: usize, z: &[Rational]) -> Result<(), SymplecticError> {
        if !self.overlap.contains(z)? {
            return Err(SymplecticError::OutsideOverlap);
        }
        let (a1, a2) = &mut self.parts[index];
        for (i, zi) in z.iter().enumerate() {
            a1[i] += zi;
            a2[i] -= zi;
        }
        Ok(())
    }

    /// Gram matrix G[v][w] = a₂(v) · a₁(w) as computed, before symmetrizing.
    pub fn raw_gram(&self) -> RationalMatrix {
        let k = self.parts.len();
        RationalMatrix::from_fn(k, k, |i, j| self.space.form(&self.parts[i].1, &self.parts[j].0))
    }

    pub fn gram(&self) -> RationalMatrix {
        self.raw_gram().symmetrized().expect("square")
    }

    pub fn signature(&self) -> i64 {
        if self.parts.is_empty() {
            return 0;
        }
        signature(&self.gram()).expect("symmetric").signature()
    }

    /// True if the raw Gram matrix is already symmetric.
    pub fn raw_is_symmetric(&self) -> bool {
        let g = self.raw_gram();
        g.is_symmetric() || g.is_zero()
    }
}

/// Maslov index μ(λ₁, λ₂, λ₃).
pub fn maslov(l1: &Lagrangian, l2: &Lagrangian, l3: &Lagrangian) -> Result<i64, SymplecticError> {
    Ok(MaslovForm::new(l1, l2, l3)?.signature())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use num_bigint::BigInt;

    fn lag(space: SymplecticSpace, vs: &[&[i64]]) -> Lagrangian {
        let vs: Vec<Vec<BigInt>> = vs
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Lagrangian::from_integer_vectors(space, &vs).unwrap()
    }

    #[test]
    fn genus_one_examples() {
        let s = SymplecticSpace::new(1).unwrap();
        let m = lag(s, &[&[1, 0]]);
        let ml = lag(s, &[&[1, 1]]);
        let l = lag(s, &[&[0, 1]]);
        // ℓ = −m + (m+ℓ), ⊙(ℓ,ℓ) = (m+ℓ)·(−m) = 1
        assert_eq!(maslov(&m, &ml, &l).unwrap(), 1);
        assert_eq!(maslov(&ml, &m, &l).unwrap(), -1);
        assert_eq!(maslov(&m, &m, &l).unwrap(), 0);
        assert_eq!(maslov(&l, &ml, &l).unwrap(), 0);
    }

    #[test]
    fn repeated_argument_vanishes() {
        let s = SymplecticSpace::new(2).unwrap();
        let a = s.standard_lagrangian();
        let b = lag(s, &[&[1, 0, 0, 1], &[0, 1, 1, 0]]);
        for (x, y, z) in [(&a, &a, &b), (&a, &b, &a), (&b, &a, &a), (&b, &b, &b)] {
            assert_eq!(maslov(x, y, z).unwrap(), 0);
        }
    }

    #[test]
    fn genus_mismatch_is_an_error() {
        let a = SymplecticSpace::new(1).unwrap().standard_lagrangian();
        let b = SymplecticSpace::new(2).unwrap().standard_lagrangian();
        assert!(matches!(maslov(&a, &a, &b), Err(SymplecticError::GenusMismatch { .. })));
    }

    #[test]
    fn shift_rejects_vectors_outside_overlap() {
        let s = SymplecticSpace::new(1).unwrap();
        let m = lag(s, &[&[1, 0]]);
        let l = lag(s, &[&[0, 1]]);
        let mut form = MaslovForm::new(&m, &m, &l).unwrap();
        assert_eq!(form.overlap().dim(), 1);
        assert!(form.shift(0, &[rat(0), rat(1)]).is_err());
    }
}
