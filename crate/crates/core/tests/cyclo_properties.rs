use extmcg::cyclo::{max_scalar_color, mu_twist, reduce_mod_h, scalar_relations, CycloElement};
use extmcg::exact::Rational;
use proptest::prelude::*;

const PRIMES: [u64; 4] = [5, 7, 11, 13];

fn element(p: u64) -> impl Strategy<Value = CycloElement> {
    let coeffs = prop::collection::vec((-4i64..=4, 0u32..=1), 2 * (p as usize - 1));
    coeffs.prop_map(move |cs| {
        let r: Vec<Rational> = cs
            .iter()
            .map(|&(n, e)| Rational::new(n.into(), 5i64.pow(e).into()))
            .collect();
        let (b, k) = r.split_at(p as usize - 1);
        let base = CycloElement::from_q_coefficients(p, b).unwrap();
        let kappa = &CycloElement::kappa(p).unwrap() * &CycloElement::from_q_coefficients(p, k).unwrap();
        &base + &kappa
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms((x, y, z) in (element(5), element(5), element(5))) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x * &CycloElement::one(5).unwrap(), x.clone());
    }

    #[test]
    fn ring_axioms_p7((x, y, z) in (element(7), element(7), element(7))) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn powers_add(k in -40i64..40, l in -40i64..40) {
        for p in PRIMES {
            let kappa = CycloElement::kappa(p).unwrap();
            let lhs = kappa.pow(k + l).unwrap();
            let rhs = &kappa.pow(k).unwrap() * &kappa.pow(l).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn kappa_square_mod_h() {
    for p in PRIMES {
        let k = CycloElement::kappa(p).unwrap();
        let r = reduce_mod_h(&(&k * &k)).unwrap();
        let expected = if (p * (p + 1) / 2).is_multiple_of(2) { 1 } else { p - 1 };
        assert_eq!((r.base, r.kappa), (expected, 0), "p = {p}");
    }
}

#[test]
fn tt3_squares_to_tt6() {
    for p in PRIMES {
        for c in 0..=max_scalar_color(p) {
            let r = scalar_relations(p, c).unwrap();
            assert_eq!(&r.tt3 * &r.tt3, r.tt6, "p = {p}, c = {c}");
        }
    }
}

#[test]
fn even_twists_are_q_powers() {
    for p in PRIMES {
        for c in 0..=max_scalar_color(p) {
            let expected = CycloElement::q_power(p, (2 * c * (c + 1)) as i64).unwrap();
            assert_eq!(mu_twist(p, 2 * c).unwrap(), expected);
        }
    }
}
