use extmcg::exact::{signature, Rational, RationalMatrix};
use extmcg::symplectic::random::{lagrangian_with, seeded_rng, symplectic_with};
use extmcg::symplectic::{adapt_lagrangian, maslov, Lagrangian, MaslovForm, SymplecticSpace};
use num_traits::Zero;
use proptest::prelude::*;

fn triple(genus: usize, seed: u64) -> (SymplecticSpace, [Lagrangian; 3]) {
    let s = SymplecticSpace::new(genus).unwrap();
    let mut rng = seeded_rng(seed);
    let ls = [
        lagrangian_with(&mut rng, &s),
        lagrangian_with(&mut rng, &s),
        lagrangian_with(&mut rng, &s),
    ];
    (s, ls)
}

/// Kashiwara's form Q(x₁, x₂, x₃) = x₁·x₂ + x₂·x₃ + x₃·x₁ on λ₁ ⊕ λ₂ ⊕ λ₃.
/// Its signature is an independent route to the Maslov index.
fn kashiwara(s: &SymplecticSpace, ls: [&Lagrangian; 3]) -> i64 {
    let bases: Vec<Vec<Vec<Rational>>> = ls.iter().map(|l| l.subspace().basis_vectors()).collect();
    let mut vecs = Vec::new();
    for (block, basis) in bases.iter().enumerate() {
        for v in basis {
            vecs.push((block, v.clone()));
        }
    }
    let n = vecs.len();
    let two = Rational::from_integer(2.into());
    let q = RationalMatrix::from_fn(n, n, |i, j| {
        let (bi, vi) = &vecs[i];
        let (bj, vj) = &vecs[j];
        // Q pairs block k with block k+1 (mod 3)
        if (bi + 1) % 3 == *bj {
            s.form(vi, vj) / &two
        } else if (bj + 1) % 3 == *bi {
            s.form(vj, vi) / &two
        } else {
            Rational::zero()
        }
    });
    signature(&q).unwrap().signature()
}

fn perm_sign(p: [usize; 3]) -> i64 {
    let inversions = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn agrees_with_kashiwara(genus in 1usize..=3, seed in any::<u64>()) {
        let (s, [a, b, c]) = triple(genus, seed);
        prop_assert_eq!(maslov(&a, &b, &c).unwrap(), kashiwara(&s, [&a, &b, &c]));
    }

    #[test]
    fn alternating_under_permutations(genus in 1usize..=3, seed in any::<u64>()) {
        let (_, ls) = triple(genus, seed);
        let base = maslov(&ls[0], &ls[1], &ls[2]).unwrap();
        for p in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let v = maslov(&ls[p[0]], &ls[p[1]], &ls[p[2]]).unwrap();
            prop_assert_eq!(v, perm_sign(p) * base);
        }
    }

    #[test]
    fn vanishes_on_repeats(genus in 1usize..=3, seed in any::<u64>()) {
        let (_, [a, b, _]) = triple(genus, seed);
        prop_assert_eq!(maslov(&a, &a, &b).unwrap(), 0);
        prop_assert_eq!(maslov(&a, &b, &a).unwrap(), 0);
        prop_assert_eq!(maslov(&b, &a, &a).unwrap(), 0);
    }

    #[test]
    fn cocycle_on_four(genus in 1usize..=3, seed in any::<u64>()) {
        let s = SymplecticSpace::new(genus).unwrap();
        let mut rng = seeded_rng(seed);
        let l: Vec<Lagrangian> = (0..4).map(|_| lagrangian_with(&mut rng, &s)).collect();
        let m = |i: usize, j: usize, k: usize| maslov(&l[i], &l[j], &l[k]).unwrap();
        prop_assert_eq!(m(1, 2, 3) - m(0, 2, 3) + m(0, 1, 3) - m(0, 1, 2), 0);
    }

    #[test]
    fn natural_under_symplectic_maps(genus in 1usize..=3, seed in any::<u64>()) {
        let (s, [a, b, c]) = triple(genus, seed);
        let mut rng = seeded_rng(seed ^ 0x5eed);
        let m = symplectic_with(&mut rng, &s, 6);
        let t = |l: &Lagrangian| l.transform(&m).unwrap();
        prop_assert_eq!(maslov(&t(&a), &t(&b), &t(&c)).unwrap(), maslov(&a, &b, &c).unwrap());
    }

    #[test]
    fn independent_of_decomposition(genus in 1usize..=3, seed in any::<u64>()) {
        let (_, [a, b, c]) = triple(genus, seed);
        let mut form = MaslovForm::new(&a, &b, &c).unwrap();
        let before = form.gram();
        prop_assert!(form.raw_is_symmetric());
        let overlap = form.overlap().basis_vectors();
        let k = form.domain().dim();
        for (i, z) in overlap.iter().enumerate() {
            if k > 0 {
                form.shift(i % k, z).unwrap();
            }
        }
        prop_assert_eq!(form.gram(), before);
    }

    #[test]
    fn adaptation_is_symplectic_and_spans(genus in 1usize..=4, seed in any::<u64>()) {
        let s = SymplecticSpace::new(genus).unwrap();
        let l = lagrangian_with(&mut seeded_rng(seed), &s);
        let m = adapt_lagrangian(&l).unwrap();
        prop_assert!(s.is_symplectic(&m));
        prop_assert_eq!(s.standard_lagrangian().transform(&m).unwrap(), l);
    }
}
