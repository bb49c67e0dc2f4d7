//! Exact arithmetic in k_p = ℤ[1/p][q]/Φ_p(q) ⊕ κ·(same), for an odd prime
//! p ≥ 5, with A = −q^{(p+1)/2} (so q = A²) and κ² = A^{−6−p(p+1)/2}.
//!
//! Elements are stored as two coefficient vectors of length p − 1 in the
//! basis 1, q, …, q^{p−2}; q^{p−1} is rewritten as −(1 + q + ⋯ + q^{p−2}).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::{solve, Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("p = {0} is not an odd prime ≥ 5")]
    UnsupportedPrime(u64),
    #[error("elements over different primes {0} and {1}")]
    PrimeMismatch(u64, u64),
    #[error("color {color} is outside the palette 0..={max}")]
    ColorOutOfPalette { color: u64, max: u64 },
    #[error("element is not invertible in ℤ[1/p][q]/Φ_p")]
    NotInvertible,
    #[error("a denominator divisible by p survives reduction mod h")]
    PDenominator,
    #[error("scalar relation {0} failed")]
    RelationFailed(&'static str),
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn check_prime(p: u64) -> Result<(), CycloError> {
    if p < 5 || !is_prime(p) {
        return Err(CycloError::UnsupportedPrime(p));
    }
    Ok(())
}

/// Base-ring polynomial of length p − 1.
type Poly = Vec<Rational>;

fn zero_poly(p: u64) -> Poly {
    vec![Rational::zero(); p as usize - 1]
}

/// Folds a length-p vector (exponents mod p) into the Φ_p-reduced basis.
fn reduce_cyclic(p: u64, v: Vec<Rational>) -> Poly {
    let n = p as usize;
    debug_assert_eq!(v.len(), n);
    let top = v[n - 1].clone();
    v.into_iter().take(n - 1).map(|c| c - &top).collect()
}

fn q_pow_poly(p: u64, k: i64) -> Poly {
    let mut v = vec![Rational::zero(); p as usize];
    v[k.rem_euclid(p as i64) as usize] = Rational::one();
    reduce_cyclic(p, v)
}

fn poly_mul(p: u64, x: &Poly, y: &Poly) -> Poly {
    let n = p as usize;
    let mut v = vec![Rational::zero(); n];
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if !b.is_zero() {
                v[(i + j) % n] += a * b;
            }
        }
    }
    reduce_cyclic(p, v)
}

fn poly_add(x: &Poly, y: &Poly) -> Poly {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn poly_neg(x: &Poly) -> Poly {
    x.iter().map(|a| -a).collect()
}

fn is_zero_poly(x: &Poly) -> bool {
    x.iter().all(Zero::is_zero)
}

/// Denominator is a power of p.
fn in_z_localized(p: u64, c: &Rational) -> bool {
    let mut d = c.denom().clone();
    let bp = BigInt::from(p);
    while d.is_multiple_of(&bp) {
        d /= &bp;
    }
    d.is_one()
}

/// q^{e(p+1)/2}·(−1)^e, i.e. A^e.
fn a_pow_poly(p: u64, e: i64) -> Poly {
    let half = (p as i64 + 1) / 2;
    let exponent = (e.rem_euclid(2 * p as i64) * half).rem_euclid(p as i64);
    let poly = q_pow_poly(p, exponent);
    if e.rem_euclid(2) == 1 {
        poly_neg(&poly)
    } else {
        poly
    }
}

/// −6 − p(p+1)/2, the A-exponent of κ².
pub fn kappa_square_a_exponent(p: u64) -> i64 {
    -6 - (p * (p + 1) / 2) as i64
}

/// base + κ·kappa.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloElement {
    p: u64,
    base: Poly,
    kappa: Poly,
}

impl CycloElement {
    fn from_parts(p: u64, base: Poly, kappa: Poly) -> Self {
        CycloElement { p, base, kappa }
    }

    pub fn zero(p: u64) -> Result<Self, CycloError> {
        check_prime(p)?;
        Ok(Self::from_parts(p, zero_poly(p), zero_poly(p)))
    }

    pub fn one(p: u64) -> Result<Self, CycloError> {
        Self::q_power(p, 0)
    }

    pub fn from_integer(p: u64, n: i64) -> Result<Self, CycloError> {
        Ok(Self::one(p)?.scale(&Rational::from_integer(n.into())))
    }

    /// Σ coeffs[i]·q^i for any number of coefficients (exponents mod p).
    pub fn from_q_coefficients(p: u64, coeffs: &[Rational]) -> Result<Self, CycloError> {
        check_prime(p)?;
        let mut v = vec![Rational::zero(); p as usize];
        for (i, c) in coeffs.iter().enumerate() {
            v[i % p as usize] += c;
        }
        Ok(Self::from_parts(p, reduce_cyclic(p, v), zero_poly(p)))
    }

    pub fn q(p: u64) -> Result<Self, CycloError> {
        Self::q_power(p, 1)
    }

    pub fn q_power(p: u64, k: i64) -> Result<Self, CycloError> {
        check_prime(p)?;
        Ok(Self::from_parts(p, q_pow_poly(p, k), zero_poly(p)))
    }

    /// A = −q^{(p+1)/2}.
    pub fn a(p: u64) -> Result<Self, CycloError> {
        Self::a_power(p, 1)
    }

    pub fn a_power(p: u64, e: i64) -> Result<Self, CycloError> {
        check_prime(p)?;
        Ok(Self::from_parts(p, a_pow_poly(p, e), zero_poly(p)))
    }

    pub fn kappa(p: u64) -> Result<Self, CycloError> {
        check_prime(p)?;
        Ok(Self::from_parts(p, zero_poly(p), q_pow_poly(p, 0)))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Coefficients of 1, q, …, q^{p−2} in the base part.
    pub fn base(&self) -> &[Rational] {
        &self.base
    }

    /// Coefficients of κ, κq, …, κq^{p−2}.
    pub fn kappa_part(&self) -> &[Rational] {
        &self.kappa
    }

    pub fn is_zero(&self) -> bool {
        is_zero_poly(&self.base) && is_zero_poly(&self.kappa)
    }

    fn check_same(&self, other: &Self) -> Result<(), CycloError> {
        if self.p != other.p {
            return Err(CycloError::PrimeMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let s = |x: &Poly| x.iter().map(|a| a * c).collect();
        Self::from_parts(self.p, s(&self.base), s(&self.kappa))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_same(other)?;
        Ok(Self::from_parts(
            self.p,
            poly_add(&self.base, &other.base),
            poly_add(&self.kappa, &other.kappa),
        ))
    }

    /// (a + κb)(c + κd) = ac + κ²bd + κ(ad + bc).
    pub fn try_mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_same(other)?;
        let p = self.p;
        let k2 = a_pow_poly(p, kappa_square_a_exponent(p));
        let bd = poly_mul(p, &self.kappa, &other.kappa);
        let base = poly_add(&poly_mul(p, &self.base, &other.base), &poly_mul(p, &k2, &bd));
        let kappa = poly_add(
            &poly_mul(p, &self.base, &other.kappa),
            &poly_mul(p, &self.kappa, &other.base),
        );
        Ok(Self::from_parts(p, base, kappa))
    }

    /// Inverse in the ring, if it exists there.
    pub fn inverse(&self) -> Result<Self, CycloError> {
        let p = self.p;
        let conj = Self::from_parts(p, self.base.clone(), poly_neg(&self.kappa));
        // (a + κb)(a − κb) = a² − κ²b² has no κ part
        let norm = self.try_mul(&conj)?;
        debug_assert!(is_zero_poly(&norm.kappa));
        let inv_norm = base_inverse(p, &norm.base)?;
        conj.try_mul(&Self::from_parts(p, inv_norm, zero_poly(p)))
    }

    pub fn pow(&self, k: i64) -> Result<Self, CycloError> {
        let mut base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.p)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            base = base.try_mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Coefficients all lie in ℤ[1/p].
    pub fn is_integral(&self) -> bool {
        self.base.iter().chain(&self.kappa).all(|c| in_z_localized(self.p, c))
    }
}

/// Solves x·y = 1 in ℚ[q]/Φ_p by linear algebra and checks y ∈ ℤ[1/p][q].
fn base_inverse(p: u64, x: &Poly) -> Result<Poly, CycloError> {
    let n = p as usize - 1;
    let columns: Vec<Vec<Rational>> = (0..n).map(|j| poly_mul(p, x, &q_pow_poly(p, j as i64))).collect();
    let m = RationalMatrix::from_columns(&columns, n).expect("square");
    let y = solve(&m, &q_pow_poly(p, 0))
        .expect("dimensions")
        .ok_or(CycloError::NotInvertible)?;
    if !y.iter().all(|c| in_z_localized(p, c)) {
        return Err(CycloError::NotInvertible);
    }
    Ok(y)
}

/// Panics on mismatched primes.
impl Add for &CycloElement {
    type Output = CycloElement;

    fn add(self, rhs: &CycloElement) -> CycloElement {
        self.try_add(rhs).expect("same prime")
    }
}

impl Sub for &CycloElement {
    type Output = CycloElement;

    fn sub(self, rhs: &CycloElement) -> CycloElement {
        self.try_add(&-rhs).expect("same prime")
    }
}

impl Neg for &CycloElement {
    type Output = CycloElement;

    fn neg(self) -> CycloElement {
        CycloElement::from_parts(self.p, poly_neg(&self.base), poly_neg(&self.kappa))
    }
}

/// Panics on mismatched primes.
impl Mul for &CycloElement {
    type Output = CycloElement;

    fn mul(self, rhs: &CycloElement) -> CycloElement {
        self.try_mul(rhs).expect("same prime")
    }
}

fn fmt_poly(x: &Poly) -> String {
    let mut out = String::new();
    for (i, c) in x.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        let mag = c.abs();
        let var = match i {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{i}"),
        };
        let coeff = if mag.is_one() && i > 0 {
            String::new()
        } else {
            mag.to_string()
        };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        out.push_str(&coeff);
        out.push_str(&var);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Normalized polynomial in q, highest degree first; κ part in parentheses.
impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = fmt_poly(&self.base);
        if is_zero_poly(&self.kappa) {
            return write!(f, "{base}");
        }
        let kappa = fmt_poly(&self.kappa);
        if is_zero_poly(&self.base) {
            write!(f, "κ·({kappa})")
        } else {
            write!(f, "{base} + κ·({kappa})")
        }
    }
}

/// μ_c = (−A)^{c(c+2)}, for colors 0 ≤ c ≤ p − 2.
pub fn mu_twist(p: u64, c: u64) -> Result<CycloElement, CycloError> {
    check_prime(p)?;
    if c > p - 2 {
        return Err(CycloError::ColorOutOfPalette { color: c, max: p - 2 });
    }
    let minus_a = -&CycloElement::a(p)?;
    minus_a.pow((c * (c + 2)) as i64)
}

/// Largest c with 2c ≤ p − 2, so that μ_{2c} is defined.
pub fn max_scalar_color(p: u64) -> u64 {
    (p - 2) / 2
}

/// The phase scalars attached to a color c.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarRelations {
    pub p: u64,
    pub c: u64,
    /// q^{−6+2c(c+1)−p(p+1)/2}
    pub tt6: CycloElement,
    /// A^{−6−p(p+1)/2}·(−1)^c q^{c(c+1)}
    pub tt3: CycloElement,
    /// (−1)^c q^{c(c+1)}
    pub half: CycloElement,
}

/// Builds the three scalars from their closed forms and checks
/// tt6 = κ⁴·μ_{2c} and tt3 = κ²·half in the ring.
pub fn scalar_relations(p: u64, c: u64) -> Result<ScalarRelations, CycloError> {
    check_prime(p)?;
    let max = max_scalar_color(p);
    if c > max {
        return Err(CycloError::ColorOutOfPalette { color: c, max });
    }
    let (ci, pi) = (c as i64, p as i64);
    let tt6 = CycloElement::q_power(p, -6 + 2 * ci * (ci + 1) - pi * (pi + 1) / 2)?;
    let sign = if c.is_multiple_of(2) { 1 } else { -1 };
    let half = CycloElement::q_power(p, ci * (ci + 1))?.scale(&Rational::from_integer(sign.into()));
    let tt3 = &CycloElement::a_power(p, kappa_square_a_exponent(p))? * &half;
    let kappa = CycloElement::kappa(p)?;
    if tt6 != &kappa.pow(4)? * &mu_twist(p, 2 * c)? {
        return Err(CycloError::RelationFailed("tt6 = κ⁴·μ_{2c}"));
    }
    if tt3 != &(&kappa * &kappa) * &half {
        return Err(CycloError::RelationFailed("tt3 = κ²·half"));
    }
    Ok(ScalarRelations { p, c, tt6, tt3, half })
}

/// Image in 𝔽_p ⊕ κ·𝔽_p under q ↦ 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModH {
    pub p: u64,
    pub base: u64,
    pub kappa: u64,
}

impl fmt::Display for ModH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·κ (mod h, p = {})", self.base, self.kappa, self.p)
    }
}

fn to_fp(p: u64, x: &Rational) -> Result<u64, CycloError> {
    let bp = BigInt::from(p);
    let d = x.denom().mod_floor(&bp);
    if d.is_zero() {
        return Err(CycloError::PDenominator);
    }
    let inv = d.modpow(&BigInt::from(p - 2), &bp);
    let v = (x.numer().mod_floor(&bp) * inv).mod_floor(&bp);
    Ok(v.to_u64().expect("below p"))
}

/// Reduction modulo h = 1 − q: q ↦ 1, then coefficients mod p.
pub fn reduce_mod_h(x: &CycloElement) -> Result<ModH, CycloError> {
    let sum = |v: &Poly| v.iter().fold(Rational::zero(), |acc, c| acc + c);
    Ok(ModH {
        p: x.p,
        base: to_fp(x.p, &sum(&x.base))?,
        kappa: to_fp(x.p, &sum(&x.kappa))?,
    })
}
