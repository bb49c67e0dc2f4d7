//! Curves as homology classes, Dehn twists as transvections, and words in
//! Dehn twists.
//!
//! Mapping classes are represented by their action on H₁ only.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{IntMatrix, Rational};
use crate::symplectic::{SymplecticError, SymplecticSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McgError {
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error("class vector has length {found}, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("class {0} is neither zero nor primitive")]
    NonPrimitive(String),
    #[error("genus mismatch: expected {expected}, found {found}")]
    GenusMismatch { expected: usize, found: usize },
    #[error("exponent must be +1 or -1, found {0}")]
    BadExponent(i64),
}

/// Homology class of an oriented simple closed curve, in the basis
/// (m₁..m_g, ℓ₁..ℓ_g). Zero or primitive unless built permissively.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveClass {
    space: SymplecticSpace,
    coords: Vec<BigInt>,
}

impl CurveClass {
    pub fn new(space: SymplecticSpace, coords: Vec<BigInt>, permissive: bool) -> Result<Self, McgError> {
        if coords.len() != space.dim() {
            return Err(McgError::WrongLength {
                expected: space.dim(),
                found: coords.len(),
            });
        }
        let class = CurveClass { space, coords };
        if !permissive && !class.is_zero() && !class.is_primitive() {
            return Err(McgError::NonPrimitive(class.bracket_form()));
        }
        Ok(class)
    }

    pub fn from_i64(space: SymplecticSpace, coords: &[i64]) -> Result<Self, McgError> {
        Self::new(space, coords.iter().map(|&x| BigInt::from(x)).collect(), false)
    }

    pub fn zero(space: SymplecticSpace) -> Self {
        CurveClass {
            space,
            coords: vec![BigInt::zero(); space.dim()],
        }
    }

    fn unit(space: SymplecticSpace, index: usize) -> Self {
        let mut c = Self::zero(space);
        c.coords[index] = BigInt::one();
        c
    }

    /// m_i, 1-based as in the usual notation.
    pub fn meridian(space: SymplecticSpace, i: usize) -> Self {
        assert!(i >= 1 && i <= space.genus(), "meridian index out of range");
        Self::unit(space, i - 1)
    }

    /// ℓ_i, 1-based.
    pub fn longitude(space: SymplecticSpace, i: usize) -> Self {
        assert!(i >= 1 && i <= space.genus(), "longitude index out of range");
        Self::unit(space, space.genus() + i - 1)
    }

    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }

    pub fn genus(&self) -> usize {
        self.space.genus()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    /// Meridian coefficients a_i.
    pub fn a(&self) -> &[BigInt] {
        &self.coords[..self.genus()]
    }

    /// Longitude coefficients b_i.
    pub fn b(&self) -> &[BigInt] {
        &self.coords[self.genus()..]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_primitive(&self) -> bool {
        self.coords.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x)).is_one()
    }

    pub fn negate(&self) -> Self {
        CurveClass {
            space: self.space,
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.coords.iter().cloned().map(Rational::from_integer).collect()
    }

    /// Intersection number self · other.
    pub fn dot(&self, other: &CurveClass) -> BigInt {
        self.space.form_int(&self.coords, &other.coords)
    }

    /// Image under a matrix acting on H₁; stays primitive when the matrix is
    /// unimodular.
    pub fn apply(&self, m: &IntMatrix) -> Self {
        CurveClass {
            space: self.space,
            coords: m.mul_vec(&self.coords).expect("matrix of size 2g"),
        }
    }

    fn bracket_form(&self) -> String {
        let join = |xs: &[BigInt]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        format!("[{};{}]", join(self.a()), join(self.b()))
    }
}

/// m1..mg, l1..lg for basis vectors, `0` for the zero class, otherwise
/// `[a1,..,ag;b1,..,bg]`.
impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let g = self.genus();
        let mut nonzero = self.coords.iter().enumerate().filter(|(_, x)| !x.is_zero());
        if let (Some((i, x)), None) = (nonzero.next(), nonzero.next()) {
            if x.is_one() {
                return if i < g {
                    write!(f, "m{}", i + 1)
                } else {
                    write!(f, "l{}", i - g + 1)
                };
            }
        }
        write!(f, "{}", self.bracket_form())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    Plus,
    Minus,
}

impl Exponent {
    pub fn from_i64(e: i64) -> Result<Self, McgError> {
        match e {
            1 => Ok(Exponent::Plus),
            -1 => Ok(Exponent::Minus),
            other => Err(McgError::BadExponent(other)),
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Exponent::Plus => 1,
            Exponent::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Exponent::Plus => Exponent::Minus,
            Exponent::Minus => Exponent::Plus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub class: CurveClass,
    pub exponent: Exponent,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            Exponent::Plus => write!(f, "{}", self.class),
            Exponent::Minus => write!(f, "{}^-1", self.class),
        }
    }
}

/// 𝔴 = α₁^{ε₁} ⋯ α_n^{ε_n}, acting as D(α₁)^{ε₁} ∘ ⋯ ∘ D(α_n)^{ε_n}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistWord {
    space: SymplecticSpace,
    letters: Vec<Letter>,
}

impl TwistWord {
    pub fn empty(space: SymplecticSpace) -> Self {
        TwistWord {
            space,
            letters: Vec::new(),
        }
    }

    pub fn new(space: SymplecticSpace, letters: Vec<Letter>) -> Result<Self, McgError> {
        for l in &letters {
            if l.class.genus() != space.genus() {
                return Err(McgError::GenusMismatch {
                    expected: space.genus(),
                    found: l.class.genus(),
                });
            }
        }
        Ok(TwistWord { space, letters })
    }

    /// All exponents +1.
    pub fn positive(space: SymplecticSpace, classes: &[CurveClass]) -> Result<Self, McgError> {
        let letters = classes
            .iter()
            .map(|c| Letter {
                class: c.clone(),
                exponent: Exponent::Plus,
            })
            .collect();
        Self::new(space, letters)
    }

    pub fn push(&mut self, class: CurveClass, exponent: Exponent) -> Result<(), McgError> {
        if class.genus() != self.space.genus() {
            return Err(McgError::GenusMismatch {
                expected: self.space.genus(),
                found: class.genus(),
            });
        }
        self.letters.push(Letter { class, exponent });
        Ok(())
    }

    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }

    pub fn genus(&self) -> usize {
        self.space.genus()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// e(𝔴) = Σ εᵢ.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.exponent.value()).sum()
    }

    /// Reversed order, negated exponents.
    pub fn inverse(&self) -> Self {
        TwistWord {
            space: self.space,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    class: l.class.clone(),
                    exponent: l.exponent.flip(),
                })
                .collect(),
        }
    }

    pub fn concat(&self, other: &TwistWord) -> Result<Self, McgError> {
        if self.space != other.space {
            return Err(McgError::GenusMismatch {
                expected: self.genus(),
                found: other.genus(),
            });
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Ok(TwistWord {
            space: self.space,
            letters,
        })
    }

    /// 𝔴ᵏ for k ≥ 0; negative k uses the inverse word.
    pub fn power(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend(base.letters.iter().cloned());
        }
        TwistWord {
            space: self.space,
            letters,
        }
    }

    /// Same word with the class of letter `index` replaced by its negative.
    pub fn with_flipped_orientation(&self, index: usize) -> Self {
        let mut w = self.clone();
        w.letters[index].class = w.letters[index].class.negate();
        w
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Image of a mapping class in Sp(2g, ℤ).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MappingClass {
    space: SymplecticSpace,
    matrix: IntMatrix,
}

impl MappingClass {
    pub fn new(space: SymplecticSpace, matrix: IntMatrix) -> Result<Self, McgError> {
        if !space.is_symplectic(&matrix) {
            return Err(SymplecticError::NotSymplectic.into());
        }
        Ok(MappingClass { space, matrix })
    }

    pub fn identity(space: SymplecticSpace) -> Self {
        MappingClass {
            space,
            matrix: IntMatrix::identity(space.dim()),
        }
    }

    /// Homology action of D(α): x ↦ x − (x·α)α.
    pub fn transvection(alpha: &CurveClass) -> Self {
        MappingClass {
            space: alpha.space,
            matrix: alpha.space.transvection(&alpha.coords, false),
        }
    }

    /// D(α)^ε.
    pub fn twist(alpha: &CurveClass, exponent: Exponent) -> Self {
        MappingClass {
            space: alpha.space,
            matrix: alpha.space.transvection(&alpha.coords, exponent == Exponent::Minus),
        }
    }

    /// D(𝔴); the first letter is applied last.
    pub fn word_action(word: &TwistWord) -> Self {
        let mut m = IntMatrix::identity(word.space.dim());
        for l in &word.letters {
            m = &m * &Self::twist(&l.class, l.exponent).matrix;
        }
        MappingClass {
            space: word.space,
            matrix: m,
        }
    }

    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }

    pub fn genus(&self) -> usize {
        self.space.genus()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == IntMatrix::identity(self.space.dim())
    }

    /// self ∘ other.
    pub fn compose(&self, other: &MappingClass) -> Result<Self, McgError> {
        if self.space != other.space {
            return Err(McgError::GenusMismatch {
                expected: self.genus(),
                found: other.genus(),
            });
        }
        Ok(MappingClass {
            space: self.space,
            matrix: &self.matrix * &other.matrix,
        })
    }

    pub fn inverse(&self) -> Self {
        MappingClass {
            space: self.space,
            matrix: self.space.symplectic_inverse(&self.matrix),
        }
    }

    /// Largest absolute matrix entry.
    pub fn height(&self) -> BigInt {
        (0..self.matrix.rows())
            .flat_map(|i| self.matrix.row(i).iter().map(|x| x.abs()))
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

/// Random word of the given length. Letters are random primitive classes
/// with entries in [−bound, bound], occasionally the zero class.
pub fn random_word<R: rand::Rng + ?Sized>(rng: &mut R, space: SymplecticSpace, length: usize, bound: i64) -> TwistWord {
    let mut w = TwistWord::empty(space);
    for _ in 0..length {
        let class = if rng.random_ratio(1, 12) {
            CurveClass::zero(space)
        } else {
            let v = crate::symplectic::random::primitive_vector(rng, space.dim(), bound);
            CurveClass::new(space, v, false).expect("primitive")
        };
        let exponent = if rng.random_bool(0.5) {
            Exponent::Plus
        } else {
            Exponent::Minus
        };
        w.push(class, exponent).expect("same genus");
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g1() -> SymplecticSpace {
        SymplecticSpace::new(1).unwrap()
    }

    fn relator(space: SymplecticSpace) -> TwistWord {
        let m = CurveClass::meridian(space, 1);
        let l = CurveClass::longitude(space, 1);
        let mut w = TwistWord::positive(space, &[m, l]).unwrap().power(6);
        w.push(CurveClass::zero(space), Exponent::Minus).unwrap();
        w
    }

    #[test]
    fn transvection_examples() {
        let s = g1();
        assert!(MappingClass::transvection(&CurveClass::zero(s)).is_identity());
        let tm = MappingClass::transvection(&CurveClass::meridian(s, 1));
        assert_eq!(tm.matrix(), &IntMatrix::from_i64(&[&[1, 1], &[0, 1]]));
        let tl = MappingClass::transvection(&CurveClass::longitude(s, 1));
        assert_eq!(tl.matrix(), &IntMatrix::from_i64(&[&[1, 0], &[-1, 1]]));
    }

    #[test]
    fn non_primitive_rejected_unless_permissive() {
        let s = SymplecticSpace::new(2).unwrap();
        let v: Vec<BigInt> = [2, 0, 4, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert!(matches!(
            CurveClass::new(s, v.clone(), false),
            Err(McgError::NonPrimitive(_))
        ));
        assert!(CurveClass::new(s, v, true).is_ok());
        assert!(matches!(
            CurveClass::from_i64(s, &[1, 0]),
            Err(McgError::WrongLength { .. })
        ));
    }

    #[test]
    fn braid_relation() {
        let s = g1();
        let m = CurveClass::meridian(s, 1);
        let l = CurveClass::longitude(s, 1);
        let mlm = TwistWord::positive(s, &[m.clone(), l.clone(), m.clone()]).unwrap();
        let lml = TwistWord::positive(s, &[l.clone(), m, l]).unwrap();
        assert_eq!(MappingClass::word_action(&mlm), MappingClass::word_action(&lml));
    }

    #[test]
    fn relator_and_exponent_sums() {
        let s = g1();
        let u = relator(s);
        assert!(MappingClass::word_action(&u).is_identity());
        assert_eq!(u.exponent_sum(), 11);
        let m = CurveClass::meridian(s, 1);
        let l = CurveClass::longitude(s, 1);
        assert_eq!(TwistWord::positive(s, &[m, l]).unwrap().power(3).exponent_sum(), 6);
        assert_eq!(TwistWord::empty(s).exponent_sum(), 0);
        assert!(MappingClass::word_action(&TwistWord::empty(s)).is_identity());
    }

    #[test]
    fn display_forms() {
        let s = SymplecticSpace::new(2).unwrap();
        let a = CurveClass::from_i64(s, &[1, 1, 1, 2]).unwrap();
        let mut w = TwistWord::positive(s, &[CurveClass::longitude(s, 2), a]).unwrap();
        w.push(CurveClass::zero(s), Exponent::Minus).unwrap();
        w.push(CurveClass::meridian(s, 1).negate(), Exponent::Plus).unwrap();
        assert_eq!(w.to_string(), "l2 [1,1;1,2] 0^-1 [-1,0;0,0]");
    }

    fn arb_word(genus: usize, max_len: usize) -> impl Strategy<Value = TwistWord> {
        let s = SymplecticSpace::new(genus).unwrap();
        prop::collection::vec((prop::collection::vec(-2i64..=2, 2 * genus), any::<bool>()), 0..max_len).prop_map(
            move |letters| {
                let mut w = TwistWord::empty(s);
                for (v, neg) in letters {
                    let c = CurveClass::new(s, v.into_iter().map(BigInt::from).collect(), true).unwrap();
                    let exp = if neg { Exponent::Minus } else { Exponent::Plus };
                    w.push(c, exp).unwrap();
                }
                w
            },
        )
    }

    proptest! {
        #[test]
        fn transvections_are_symplectic_and_even(v in prop::collection::vec(-5i64..=5, 4)) {
            let s = SymplecticSpace::new(2).unwrap();
            let c = CurveClass::new(s, v.into_iter().map(BigInt::from).collect(), true).unwrap();
            let t = MappingClass::transvection(&c);
            prop_assert!(s.is_symplectic(t.matrix()));
            prop_assert_eq!(&t, &MappingClass::transvection(&c.negate()));
            prop_assert_eq!(t.is_identity(), c.is_zero());
        }

        #[test]
        fn word_times_inverse_is_identity(w in arb_word(3, 12)) {
            let ww = w.concat(&w.inverse()).unwrap();
            prop_assert!(MappingClass::word_action(&ww).is_identity());
            let f = MappingClass::word_action(&w);
            prop_assert_eq!(MappingClass::word_action(&w.inverse()), f.inverse());
        }

        #[test]
        fn braid_relation_for_dual_pairs(genus in 1usize..=3, seed in any::<u64>()) {
            // β = M(ℓ₁), α = M(m₁) for random symplectic M satisfy α·β = 1
            let s = SymplecticSpace::new(genus).unwrap();
            let m = crate::symplectic::random::random_symplectic(&s, seed, 5);
            let a = CurveClass::meridian(s, 1).apply(&m);
            let b = CurveClass::longitude(s, 1).apply(&m);
            prop_assert_eq!(a.dot(&b), BigInt::one());
            let aba = TwistWord::positive(s, &[a.clone(), b.clone(), a.clone()]).unwrap();
            let bab = TwistWord::positive(s, &[b.clone(), a, b]).unwrap();
            prop_assert_eq!(MappingClass::word_action(&aba), MappingClass::word_action(&bab));
        }
    }
}
