//! Seeded generators for test data: primitive classes, symplectic matrices
//! and lagrangians. All generators are deterministic for a fixed seed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Lagrangian, SymplecticSpace};
use crate::exact::IntMatrix;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A nonzero primitive integer vector with entries in [−bound, bound].
pub fn primitive_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize, bound: i64) -> Vec<BigInt> {
    loop {
        let v: Vec<i64> = (0..dim).map(|_| rng.random_range(-bound..=bound)).collect();
        let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        if g == 0 {
            continue;
        }
        return v.into_iter().map(|x| BigInt::from(x / g)).collect();
    }
}

/// Product of `length` random transvections T_v^{±1}; these generate
/// Sp(2g, ℤ).
pub fn symplectic_with<R: Rng + ?Sized>(rng: &mut R, space: &SymplecticSpace, length: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(space.dim());
    for _ in 0..length {
        let v = primitive_vector(rng, space.dim(), 1);
        let t = space.transvection(&v, rng.random_bool(0.5));
        m = &m * &t;
    }
    m
}

pub fn random_symplectic(space: &SymplecticSpace, seed: u64, length: usize) -> IntMatrix {
    symplectic_with(&mut seeded_rng(seed), space, length)
}

/// M(λ_std) for a random symplectic M.
pub fn lagrangian_with<R: Rng + ?Sized>(rng: &mut R, space: &SymplecticSpace) -> Lagrangian {
    let length = rng.random_range(0..=2 * space.genus() + 2);
    let m = symplectic_with(rng, space, length);
    space
        .standard_lagrangian()
        .transform(&m)
        .expect("transvection products are symplectic")
}

pub fn random_lagrangian(space: &SymplecticSpace, seed: u64) -> Lagrangian {
    lagrangian_with(&mut seeded_rng(seed), space)
}

/// A random element of the stabilizer of λ_std in Sp(2g, ℤ): products of
/// twists along classes in λ_std and block matrices diag(A, A⁻ᵀ).
pub fn standard_stabilizer_with<R: Rng + ?Sized>(rng: &mut R, space: &SymplecticSpace, length: usize) -> IntMatrix {
    let g = space.genus();
    let n = space.dim();
    let mut m = IntMatrix::identity(n);
    for _ in 0..length {
        let step = if g > 1 && rng.random_bool(0.5) {
            // A = I + c·E_ij, A⁻ᵀ = I − c·E_ji
            let i = rng.random_range(0..g);
            let j = (i + rng.random_range(1..g)) % g;
            let c = BigInt::from(if rng.random_bool(0.5) { 1 } else { -1 });
            let mut b = IntMatrix::identity(n);
            b[(i, j)] = c.clone();
            b[(g + j, g + i)] = -c;
            b
        } else if rng.random_bool(0.2) {
            // A = diag(…, −1, …)
            let i = rng.random_range(0..g);
            let mut b = IntMatrix::identity(n);
            b[(i, i)] = -BigInt::one();
            b[(g + i, g + i)] = -BigInt::one();
            b
        } else {
            let mut v = vec![BigInt::zero(); n];
            let head = primitive_vector(rng, g, 1);
            v[..g].clone_from_slice(&head);
            space.transvection(&v, rng.random_bool(0.5))
        };
        m = &m * &step;
    }
    m
}

/// Largest absolute entry, used to keep random data small.
pub fn max_abs_entry(m: &IntMatrix) -> BigInt {
    (0..m.rows())
        .flat_map(|i| m.row(i).iter().map(|x| x.abs()))
        .max()
        .unwrap_or_else(BigInt::zero)
}
