//! The extended mapping class group attached to a lagrangian λ, its
//! cocycles, and Turaev's forms ⋆_f, ⋆_{f,λ} and ⋆_{f,g}.
//!
//! Elements are pairs (f, n) with f ∈ Sp(2g, ℤ) and n ∈ ℤ, multiplied by
//! (g, n)(f, m) = (gf, n + m + m_λ(g, f)) where m_λ(g, f) = μ(λ, gλ, gfλ).
//!
//! For f ∈ Sp(2g, ℤ) put V_f = (f − 1)H₁. The form a ⋆_f b = (f − 1)⁻¹(a)·b
//! on V_f is well defined and nonsingular, and its restriction ⋆_{f,λ} to
//! λ ∩ V_f is symmetric. From these
//!
//! * k(f) = dim V_f + sgn det ⋆_f − 1,
//! * j_λ(f) = −Sig ⋆_{f,λ},
//! * n_λ(f) = Sig ⋆_{f,λ} − dim V_f − sgn det ⋆_f + 1 = −j_λ(f) − k(f).
//!
//! The index-four subgroup Γ̃⁺⁺ is {(f, n) : n ≡ n_λ(f) mod 4}.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::exact::{det_sign, kernel, signature, solve, ExactError, Rational, RationalMatrix, Subspace};
use crate::mcg::{Exponent, Letter, MappingClass, McgError, TwistWord};
use crate::symplectic::{maslov, Lagrangian, SymplecticError, SymplecticSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error(transparent)]
    Mcg(#[from] McgError),
    #[error("genus mismatch: expected {expected}, found {found}")]
    GenusMismatch { expected: usize, found: usize },
    #[error("elements belong to different extension contexts")]
    ContextMismatch,
    #[error("the form ⋆_f is singular")]
    SingularStar,
    #[error("{0} gram matrix is not symmetric")]
    NotSymmetric(&'static str),
    #[error("vector {0} is not a preimage of its domain basis vector")]
    BadPreimage(usize),
    #[error("mod 2 membership criteria disagree")]
    CriteriaDisagree,
}

fn check_genus(space: &SymplecticSpace, other: &SymplecticSpace) -> Result<(), ExtensionError> {
    if space != other {
        return Err(ExtensionError::GenusMismatch {
            expected: space.genus(),
            found: other.genus(),
        });
    }
    Ok(())
}

fn minus_one(f: &MappingClass) -> RationalMatrix {
    let m = f.matrix().to_rational();
    m.try_sub(&RationalMatrix::identity(m.rows())).expect("square")
}

/// V_f = (f − 1)H₁.
pub fn moved_subspace(f: &MappingClass) -> Subspace {
    Subspace::column_span(&minus_one(f))
}

/// ker(f − 1), the ambiguity in solving (f − 1)x = a.
pub fn fixed_subspace(f: &MappingClass) -> Subspace {
    kernel(&minus_one(f))
}

/// m_λ(g, f) = μ(λ, gλ, gfλ).
pub fn maslov_cocycle(lambda: &Lagrangian, g: &MappingClass, f: &MappingClass) -> Result<i64, ExtensionError> {
    check_genus(lambda.space(), g.space())?;
    check_genus(lambda.space(), f.space())?;
    let gl = lambda.transform(g.matrix())?;
    let gfl = lambda.transform(g.compose(f)?.matrix())?;
    Ok(maslov(lambda, &gl, &gfl)?)
}

/// A form a ⋆ b = x(a)·b on a subspace of V_f, with the chosen preimages
/// x(a) of the domain basis vectors under f − 1.
#[derive(Clone, Debug)]
pub struct StarFormData {
    space: SymplecticSpace,
    domain: Subspace,
    preimages: Vec<Vec<Rational>>,
    gram: RationalMatrix,
}

impl StarFormData {
    fn on(f: &MappingClass, domain: Subspace) -> Result<Self, ExtensionError> {
        let space = *f.space();
        let fm1 = minus_one(f);
        let basis = domain.basis_vectors();
        let preimages = basis
            .iter()
            .map(|a| Ok(solve(&fm1, a)?.expect("domain lies in (f-1)H")))
            .collect::<Result<Vec<_>, ExtensionError>>()?;
        let gram = Self::pair(&space, &preimages, &basis);
        Ok(StarFormData {
            space,
            domain,
            preimages,
            gram,
        })
    }

    fn pair(space: &SymplecticSpace, xs: &[Vec<Rational>], basis: &[Vec<Rational>]) -> RationalMatrix {
        let k = basis.len();
        RationalMatrix::from_fn(k, k, |i, j| space.form(&xs[i], &basis[j]))
    }

    pub fn domain(&self) -> &Subspace {
        &self.domain
    }

    pub fn dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn preimages(&self) -> &[Vec<Rational>] {
        &self.preimages
    }

    /// G[i][j] = aᵢ ⋆ aⱼ in the canonical domain basis.
    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    /// The gram matrix recomputed from other preimages, which are checked to
    /// satisfy (f − 1)xᵢ = aᵢ.
    pub fn gram_with_preimages(
        &self,
        f: &MappingClass,
        preimages: &[Vec<Rational>],
    ) -> Result<RationalMatrix, ExtensionError> {
        let fm1 = minus_one(f);
        let basis = self.domain.basis_vectors();
        if preimages.len() != basis.len() {
            return Err(ExactError::DimensionMismatch {
                expected: basis.len(),
                found: preimages.len(),
            }
            .into());
        }
        for (i, (x, a)) in preimages.iter().zip(&basis).enumerate() {
            if fm1.mul_vec(x)? != *a {
                return Err(ExtensionError::BadPreimage(i));
            }
        }
        Ok(Self::pair(&self.space, preimages, &basis))
    }

    pub fn det_sign(&self) -> i8 {
        det_sign(&self.gram).expect("square")
    }

    /// Signature of a symmetric gram matrix.
    pub fn signature(&self) -> Result<i64, ExtensionError> {
        if !self.gram.is_symmetric() {
            return Err(ExtensionError::NotSymmetric("⋆_{f,λ}"));
        }
        Ok(signature(&self.gram)?.signature())
    }

    /// {a ∈ domain : a ⋆ b = 0 for all b}, for a symmetric form.
    pub fn radical(&self) -> Result<Subspace, ExtensionError> {
        if !self.gram.is_symmetric() {
            return Err(ExtensionError::NotSymmetric("⋆_{f,λ}"));
        }
        let coefficients = kernel(&self.gram);
        Ok(coefficients.image_under(self.domain.basis())?)
    }
}

/// ⋆_f on V_f. Nonsingular; the identity gives the 0×0 form.
pub fn star_f(f: &MappingClass) -> Result<StarFormData, ExtensionError> {
    let data = StarFormData::on(f, moved_subspace(f))?;
    if data.det_sign() == 0 {
        return Err(ExtensionError::SingularStar);
    }
    Ok(data)
}

/// ⋆_{f,λ}, the restriction of ⋆_f to λ ∩ V_f.
pub fn star_f_lambda(f: &MappingClass, lambda: &Lagrangian) -> Result<StarFormData, ExtensionError> {
    check_genus(lambda.space(), f.space())?;
    let domain = lambda.subspace().intersection(&moved_subspace(f))?;
    StarFormData::on(f, domain)
}

pub fn star_f_lambda_signature(f: &MappingClass, lambda: &Lagrangian) -> Result<i64, ExtensionError> {
    star_f_lambda(f, lambda)?.signature()
}

/// Gram matrix of a ⋆_{f,g} b = ((f−1)⁻¹a + (g−1)⁻¹a + a)·b on V_f ∩ V_g.
pub fn star_fg_gram(f: &MappingClass, g: &MappingClass) -> Result<RationalMatrix, ExtensionError> {
    check_genus(f.space(), g.space())?;
    let space = *f.space();
    let domain = moved_subspace(f).intersection(&moved_subspace(g))?;
    let (ff, gg) = (minus_one(f), minus_one(g));
    let basis = domain.basis_vectors();
    let lefts = basis
        .iter()
        .map(|a| {
            let x = solve(&ff, a)?.expect("a ∈ (f-1)H");
            let y = solve(&gg, a)?.expect("a ∈ (g-1)H");
            Ok(x.iter().zip(&y).zip(a).map(|((x, y), a)| x + y + a).collect())
        })
        .collect::<Result<Vec<Vec<Rational>>, ExtensionError>>()?;
    let k = basis.len();
    Ok(RationalMatrix::from_fn(k, k, |i, j| space.form(&lefts[i], &basis[j])))
}

/// φ(f, g) = Sig ⋆_{f,g}.
pub fn turaev_phi(f: &MappingClass, g: &MappingClass) -> Result<i64, ExtensionError> {
    let gram = star_fg_gram(f, g)?;
    if !gram.is_symmetric() {
        return Err(ExtensionError::NotSymmetric("⋆_{f,g}"));
    }
    Ok(signature(&gram)?.signature())
}

/// Meyer's cocycle, τ(f, g) = −φ(f, g).
pub fn meyer_tau(f: &MappingClass, g: &MappingClass) -> Result<i64, ExtensionError> {
    Ok(-turaev_phi(f, g)?)
}

/// k(f) = dim V_f + sgn det ⋆_f − 1.
pub fn turaev_k(f: &MappingClass) -> Result<i64, ExtensionError> {
    let star = star_f(f)?;
    Ok(star.dim() as i64 + i64::from(star.det_sign()) - 1)
}

/// j_λ(f) = −Sig ⋆_{f,λ}.
pub fn walker_j(lambda: &Lagrangian, f: &MappingClass) -> Result<i64, ExtensionError> {
    Ok(-star_f_lambda_signature(f, lambda)?)
}

/// n_λ(f) = Sig ⋆_{f,λ} − dim V_f − sgn det ⋆_f + 1.
pub fn n_lambda(lambda: &Lagrangian, f: &MappingClass) -> Result<i64, ExtensionError> {
    let star = star_f(f)?;
    let sig = star_f_lambda_signature(f, lambda)?;
    let n = sig - star.dim() as i64 - i64::from(star.det_sign()) + 1;
    debug_assert_eq!(n, -walker_j(lambda, f)? - turaev_k(f)?);
    Ok(n)
}

/// Holds the lagrangian λ of an extended mapping class group. Elements refer
/// to their context by `Arc`, and only elements of the same context compose.
#[derive(Debug)]
pub struct ExtensionContext {
    lambda: Lagrangian,
}

impl ExtensionContext {
    pub fn new(lambda: Lagrangian) -> Arc<Self> {
        Arc::new(ExtensionContext { lambda })
    }

    pub fn lambda(&self) -> &Lagrangian {
        &self.lambda
    }

    pub fn space(&self) -> &SymplecticSpace {
        self.lambda.space()
    }

    pub fn element(self: &Arc<Self>, f: MappingClass, n: i64) -> Result<ExtendedElement, ExtensionError> {
        check_genus(self.space(), f.space())?;
        Ok(ExtendedElement {
            context: Arc::clone(self),
            f,
            n,
        })
    }

    pub fn identity(self: &Arc<Self>) -> ExtendedElement {
        ExtendedElement {
            context: Arc::clone(self),
            f: MappingClass::identity(*self.space()),
            n: 0,
        }
    }

    /// The central generator (Id, 1).
    pub fn central(self: &Arc<Self>) -> ExtendedElement {
        ExtendedElement {
            n: 1,
            ..self.identity()
        }
    }

    /// Lift of a single twist letter: D(α) gets weight 0 if [α] ∈ λ (the
    /// zero class included) and 1 otherwise; D(α)⁻¹ is the group inverse.
    pub fn letter_lift(self: &Arc<Self>, letter: &Letter) -> Result<ExtendedElement, ExtensionError> {
        let inside = self.lambda.contains(&letter.class.to_rational())?;
        let twist = self.element(MappingClass::transvection(&letter.class), if inside { 0 } else { 1 })?;
        match letter.exponent {
            Exponent::Plus => Ok(twist),
            Exponent::Minus => twist.inverse(),
        }
    }

    /// Product of the letter lifts, in word order.
    pub fn word_lift(self: &Arc<Self>, word: &TwistWord) -> Result<ExtendedElement, ExtensionError> {
        check_genus(self.space(), word.space())?;
        word.letters()
            .iter()
            .try_fold(self.identity(), |acc, l| acc.compose(&self.letter_lift(l)?))
    }
}

/// An element (f, n) of the extended group of its context.
#[derive(Clone, Debug)]
pub struct ExtendedElement {
    context: Arc<ExtensionContext>,
    f: MappingClass,
    n: i64,
}

impl PartialEq for ExtendedElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.context, &other.context) && self.f == other.f && self.n == other.n
    }
}

impl Eq for ExtendedElement {}

impl ExtendedElement {
    pub fn context(&self) -> &Arc<ExtensionContext> {
        &self.context
    }

    pub fn mapping_class(&self) -> &MappingClass {
        &self.f
    }

    pub fn weight(&self) -> i64 {
        self.n
    }

    /// self ∘ other.
    pub fn compose(&self, other: &ExtendedElement) -> Result<ExtendedElement, ExtensionError> {
        if !Arc::ptr_eq(&self.context, &other.context) {
            return Err(ExtensionError::ContextMismatch);
        }
        let m = maslov_cocycle(&self.context.lambda, &self.f, &other.f)?;
        Ok(ExtendedElement {
            context: Arc::clone(&self.context),
            f: self.f.compose(&other.f)?,
            n: self.n + other.n + m,
        })
    }

    /// (f, n)⁻¹ = (f⁻¹, −n − m_λ(f, f⁻¹)).
    pub fn inverse(&self) -> Result<ExtendedElement, ExtensionError> {
        let inv = self.f.inverse();
        let m = maslov_cocycle(&self.context.lambda, &self.f, &inv)?;
        Ok(ExtendedElement {
            context: Arc::clone(&self.context),
            f: inv,
            n: -self.n - m,
        })
    }

    pub fn membership(&self) -> Result<Membership, ExtensionError> {
        membership(&self.context.lambda, &self.f, self.n)
    }
}

impl fmt::Display for ExtendedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.f.matrix().rows())
            .map(|i| {
                let r: Vec<String> = self.f.matrix().row(i).iter().map(|x| x.to_string()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "([{}], {})", rows.join(", "), self.n)
    }
}

/// Smallest of the nested subgroups Γ̃ ⊃ Γ̃⁺ ⊃ Γ̃⁺⁺ containing an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    Full,
    Plus,
    PlusPlus,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Membership::Full => "full",
            Membership::Plus => "plus",
            Membership::PlusPlus => "plusplus",
        })
    }
}

/// g + dim(λ ∩ fλ) mod 2, the direct criterion for Γ̃⁺.
pub fn plus_parity(lambda: &Lagrangian, f: &MappingClass) -> Result<i64, ExtensionError> {
    check_genus(lambda.space(), f.space())?;
    let fl = lambda.transform(f.matrix())?;
    let d = lambda.subspace().intersection(fl.subspace())?.dim();
    Ok(((lambda.genus() + d) % 2) as i64)
}

/// Γ̃⁺⁺ iff n ≡ n_λ(f) mod 4, Γ̃⁺ iff n ≡ n_λ(f) mod 2. The mod 2 test is
/// cross-checked against [`plus_parity`].
pub fn membership(lambda: &Lagrangian, f: &MappingClass, n: i64) -> Result<Membership, ExtensionError> {
    let d = n - n_lambda(lambda, f)?;
    let via_n = d.rem_euclid(2) == 0;
    let via_parity = (n - plus_parity(lambda, f)?).rem_euclid(2) == 0;
    if via_n != via_parity {
        return Err(ExtensionError::CriteriaDisagree);
    }
    Ok(if d.rem_euclid(4) == 0 {
        Membership::PlusPlus
    } else if via_n {
        Membership::Plus
    } else {
        Membership::Full
    })
}
