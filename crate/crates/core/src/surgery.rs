//! Linking matrices of the framed links built from a twist word.
//!
//! Σ sits in S³ as a Heegaard surface with λ the kernel of the inclusion
//! into the inner handlebody. Twisting along αᵢ^{εᵢ} is realized by surgery
//! on a copy of αᵢ pushed into a collar layer of Σ, framed −εᵢ relative to
//! the surface framing; letter 1 lies in the outermost layer. L⁰_λ(𝔴) adds
//! a zero-framed unlink of meridian curves outside all layers.
//!
//! Classes are first written in a symplectic basis adapted to λ. For classes
//! x = Σ aᵢmᵢ + bᵢℓᵢ, y in layers with x outside y, Lk(x, y) = Σ aᵢ(x)bᵢ(y).

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::exact::{signature, Inertia, IntMatrix};
use crate::extension::{n_lambda, ExtensionError};
use crate::mcg::{CurveClass, MappingClass, McgError, TwistWord};
use crate::symplectic::{adapt_lagrangian, Lagrangian, SymplecticError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error(transparent)]
    Mcg(#[from] McgError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error("genus mismatch: word has genus {word}, lagrangian has genus {lagrangian}")]
    GenusMismatch { word: usize, lagrangian: usize },
    #[error("adaptation matrix does not carry the standard lagrangian onto λ")]
    BadAdaptation,
}

/// Lk of an outer curve with an inner one: Σ aᵢ(outer)·bᵢ(inner).
///
/// P(x, y) − P(y, x) = x·y and P(x, x) = Σ aᵢbᵢ.
pub fn seifert_pairing(outer: &CurveClass, inner: &CurveClass) -> BigInt {
    outer.a().iter().zip(inner.b()).map(|(a, b)| a * b).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentLabel {
    /// 1-based letter index.
    Letter(usize),
    /// 1-based unlink component, the pushed-off meridian m_k.
    Unlink(usize),
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentLabel::Letter(i) => write!(f, "a{i}"),
            ComponentLabel::Unlink(k) => write!(f, "u{k}"),
        }
    }
}

/// Symmetric linking matrix; rows are letters 1..n, then unlink 1..g.
#[derive(Clone, Debug)]
pub struct FramedLinkMatrix {
    matrix: IntMatrix,
    labels: Vec<ComponentLabel>,
    adaptation: IntMatrix,
    word: TwistWord,
    lambda: Lagrangian,
}

impl FramedLinkMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[ComponentLabel] {
        &self.labels
    }

    /// M with λ spanned by its first g columns.
    pub fn adaptation(&self) -> &IntMatrix {
        &self.adaptation
    }

    pub fn word(&self) -> &TwistWord {
        &self.word
    }

    pub fn lambda(&self) -> &Lagrangian {
        &self.lambda
    }

    pub fn has_unlink(&self) -> bool {
        self.labels.iter().any(|l| matches!(l, ComponentLabel::Unlink(_)))
    }

    pub fn inertia(&self) -> Inertia {
        signature(&self.matrix.to_rational()).expect("linking matrices are symmetric")
    }

    pub fn signature(&self) -> i64 {
        self.inertia().signature()
    }
}

/// Whitespace-separated rows, one per line, labelled.
impl fmt::Display for FramedLinkMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.matrix.rows())
            .map(|i| self.matrix.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let labels: Vec<String> = self.labels.iter().map(ToString::to_string).collect();
        let label_width = labels.iter().map(String::len).max().unwrap_or(0) + 1;
        for (label, row) in labels.iter().zip(&cells) {
            let row: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "{label:<label_width$}{}", row.join(" "))?;
        }
        Ok(())
    }
}

fn check_genus(word: &TwistWord, lambda: &Lagrangian) -> Result<(), SurgeryError> {
    if word.genus() != lambda.genus() {
        return Err(SurgeryError::GenusMismatch {
            word: word.genus(),
            lagrangian: lambda.genus(),
        });
    }
    Ok(())
}

/// L_λ(𝔴) or, with the unlink, L⁰_λ(𝔴), using [`adapt_lagrangian`].
pub fn linking_matrix(
    word: &TwistWord,
    lambda: &Lagrangian,
    with_unlink: bool,
) -> Result<FramedLinkMatrix, SurgeryError> {
    check_genus(word, lambda)?;
    let m = adapt_lagrangian(lambda)?;
    linking_matrix_with_adaptation(word, lambda, &m, with_unlink)
}

/// As [`linking_matrix`] with a caller-supplied adaptation M, which must be
/// symplectic with M(λ_std) = λ.
pub fn linking_matrix_with_adaptation(
    word: &TwistWord,
    lambda: &Lagrangian,
    adaptation: &IntMatrix,
    with_unlink: bool,
) -> Result<FramedLinkMatrix, SurgeryError> {
    check_genus(word, lambda)?;
    let space = *lambda.space();
    if space.standard_lagrangian().transform(adaptation)? != *lambda {
        return Err(SurgeryError::BadAdaptation);
    }
    let g = space.genus();
    let to_adapted = space.symplectic_inverse(adaptation);
    let classes: Vec<CurveClass> = word.letters().iter().map(|l| l.class.apply(&to_adapted)).collect();
    let n = classes.len();
    let size = if with_unlink { n + g } else { n };
    let mut matrix = IntMatrix::zeros(size, size);
    for (i, letter) in word.letters().iter().enumerate() {
        let framing = seifert_pairing(&classes[i], &classes[i]) - BigInt::from(letter.exponent.value());
        matrix[(i, i)] = framing;
        for j in i + 1..n {
            let lk = seifert_pairing(&classes[i], &classes[j]);
            matrix[(i, j)] = lk.clone();
            matrix[(j, i)] = lk;
        }
    }
    if with_unlink {
        for k in 0..g {
            for (j, class) in classes.iter().enumerate() {
                let lk = class.b()[k].clone();
                matrix[(n + k, j)] = lk.clone();
                matrix[(j, n + k)] = lk;
            }
        }
    }
    let mut labels: Vec<ComponentLabel> = (1..=n).map(ComponentLabel::Letter).collect();
    if with_unlink {
        labels.extend((1..=g).map(ComponentLabel::Unlink));
    }
    Ok(FramedLinkMatrix {
        matrix,
        labels,
        adaptation: adaptation.clone(),
        word: word.clone(),
        lambda: lambda.clone(),
    })
}

/// σ(L_λ(𝔴)) or σ(L⁰_λ(𝔴)).
pub fn sigma_word(word: &TwistWord, lambda: &Lagrangian, with_unlink: bool) -> Result<i64, SurgeryError> {
    Ok(linking_matrix(word, lambda, with_unlink)?.signature())
}

/// n⁰_λ(𝔴) = σ(L⁰_λ(𝔴)).
pub fn n0_lambda(word: &TwistWord, lambda: &Lagrangian) -> Result<i64, SurgeryError> {
    sigma_word(word, lambda, true)
}

/// n_λ(𝔴) = e(𝔴) + σ(L⁰_λ(𝔴)).
pub fn n_lambda_word(word: &TwistWord, lambda: &Lagrangian) -> Result<i64, SurgeryError> {
    Ok(word.exponent_sum() + n0_lambda(word, lambda)?)
}

/// n − n⁰_λ(𝔴), the power of κ relating the weighted and unweighted
/// surgery descriptions.
pub fn kappa_exponent(word: &TwistWord, lambda: &Lagrangian, n: i64) -> Result<i64, SurgeryError> {
    Ok(n - n0_lambda(word, lambda)?)
}

/// e(𝔴) + σ(L⁰_λ(𝔴)) ≡ n_λ(D(𝔴)) mod 4.
pub fn verify_surgery_congruence(word: &TwistWord, lambda: &Lagrangian) -> Result<bool, SurgeryError> {
    let topological = n_lambda_word(word, lambda)?;
    let algebraic = n_lambda(lambda, &MappingClass::word_action(word))?;
    Ok((topological - algebraic).rem_euclid(4) == 0)
}

/// Unlink-unlink block is zero and the matrix is symmetric.
pub fn is_well_formed(link: &FramedLinkMatrix) -> bool {
    let n = link.word.len();
    let m = &link.matrix;
    m.is_symmetric() && (n..m.rows()).all(|i| (n..m.cols()).all(|j| m[(i, j)].is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcg::Exponent;
    use crate::symplectic::SymplecticSpace;

    fn g1() -> SymplecticSpace {
        SymplecticSpace::new(1).unwrap()
    }

    fn word(s: SymplecticSpace, text: &[(&[i64], i64)]) -> TwistWord {
        let mut w = TwistWord::empty(s);
        for (v, e) in text {
            w.push(CurveClass::from_i64(s, v).unwrap(), Exponent::from_i64(*e).unwrap())
                .unwrap();
        }
        w
    }

    #[test]
    fn seifert_pairing_examples() {
        let s = SymplecticSpace::new(2).unwrap();
        let alpha = CurveClass::from_i64(s, &[1, 1, 1, 2]).unwrap();
        assert_eq!(seifert_pairing(&alpha, &alpha), BigInt::from(3));
        let m2 = CurveClass::meridian(s, 2);
        assert_eq!(seifert_pairing(&m2, &alpha), BigInt::from(2));
        assert_eq!(seifert_pairing(&CurveClass::zero(s), &alpha), BigInt::zero());
        let beta = CurveClass::from_i64(s, &[2, -1, 3, 1]).unwrap();
        let defect = seifert_pairing(&alpha, &beta) - seifert_pairing(&beta, &alpha);
        assert_eq!(defect, alpha.dot(&beta));
    }

    #[test]
    fn single_letter_matrix() {
        let s = SymplecticSpace::new(2).unwrap();
        let w = word(s, &[(&[1, 1, 1, 2], 1)]);
        let link = linking_matrix(&w, &s.standard_lagrangian(), true).unwrap();
        assert_eq!(
            link.matrix(),
            &IntMatrix::from_i64(&[&[2, 1, 2], &[1, 0, 0], &[2, 0, 0]])
        );
        assert_eq!(link.signature(), 0);
        assert!(is_well_formed(&link));
    }

    #[test]
    fn zero_class_letter() {
        let s = g1();
        let w = word(s, &[(&[0, 0], 1)]);
        let link = linking_matrix(&w, &s.standard_lagrangian(), false).unwrap();
        assert_eq!(link.matrix(), &IntMatrix::from_i64(&[&[-1]]));
    }

    #[test]
    fn kappa_exponents() {
        let s = g1();
        let lam = s.standard_lagrangian();
        assert_eq!(kappa_exponent(&word(s, &[(&[1, 0], 1)]), &lam, 0).unwrap(), 1);
        assert_eq!(kappa_exponent(&word(s, &[(&[0, 1], 1)]), &lam, 1).unwrap(), 1);
        let w = word(s, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let n0 = n0_lambda(&w, &lam).unwrap();
        assert_eq!(kappa_exponent(&w, &lam, n0).unwrap(), 0);
    }

    #[test]
    fn adaptation_is_validated() {
        let s = g1();
        let lam = s.standard_lagrangian();
        let w = word(s, &[(&[1, 0], 1)]);
        let swap = IntMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        assert_eq!(
            linking_matrix_with_adaptation(&w, &lam, &swap, true).unwrap_err(),
            SurgeryError::BadAdaptation
        );
    }

    #[test]
    fn congruence_for_a_meridian() {
        let s = g1();
        let lam = s.standard_lagrangian();
        let w = word(s, &[(&[1, 0], 1)]);
        assert_eq!(n0_lambda(&w, &lam).unwrap(), -1);
        assert!(verify_surgery_congruence(&w, &lam).unwrap());
    }
}
