//! Acceptance suite. Prints one line per criterion and exits non-zero if any
//! fails. Every comparison is exact: integer or ring equality, tolerance 0.

use std::process::ExitCode;
use std::time::Instant;

use extmcg::cyclo::{max_scalar_color, mu_twist, reduce_mod_h, scalar_relations, CycloElement};
use extmcg::exact::IntMatrix;
use extmcg::extension::ExtensionContext;
use extmcg::mcg::{CurveClass, Exponent, MappingClass, TwistWord};
use extmcg::surgery::{linking_matrix, n0_lambda, sigma_word};
use extmcg::symplectic::random::{lagrangian_with, primitive_vector, seeded_rng};
use extmcg::symplectic::{adapt_lagrangian, SymplecticSpace};
use extmcg::verify::{run_suite, Suite, VerifyConfig};
use rand::Rng;

const SEED: u64 = 20_240_601;

type Check = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Check>);

fn ensure(ok: bool, pass: String, fail: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(pass)
    } else {
        Err(fail())
    }
}

fn g1() -> SymplecticSpace {
    SymplecticSpace::new(1).unwrap()
}

fn ml() -> (CurveClass, CurveClass) {
    (CurveClass::meridian(g1(), 1), CurveClass::longitude(g1(), 1))
}

fn single_genus_two_twist() -> Check {
    let s = SymplecticSpace::new(2).unwrap();
    let alpha = CurveClass::from_i64(s, &[1, 1, 1, 2]).map_err(|e| e.to_string())?;
    let w = TwistWord::positive(s, &[alpha]).unwrap();
    let link = linking_matrix(&w, &s.standard_lagrangian(), true).map_err(|e| e.to_string())?;
    let m = link.matrix();
    let expected = IntMatrix::from_i64(&[&[2, 1, 2], &[1, 0, 0], &[2, 0, 0]]);
    ensure(
        *m == expected && link.signature() == 0,
        format!(
            "framing {}, unlink entries ({}, {}), σ(L⁰) = {}",
            m[(0, 0)],
            m[(0, 1)],
            m[(0, 2)],
            link.signature()
        ),
        || format!("matrix {m} σ = {}", link.signature()),
    )
}

fn single_twist_weights() -> Check {
    let mut rng = seeded_rng(SEED);
    let (mut inside, mut outside) = (0, 0);
    for trial in 0..200 {
        let genus = trial % 4 + 1;
        let s = SymplecticSpace::new(genus).unwrap();
        let lam = lagrangian_with(&mut rng, &s);
        let class = if rng.random_bool(0.5) {
            CurveClass::new(s, primitive_vector(&mut rng, s.dim(), 3), false).unwrap()
        } else {
            // a primitive class of λ: image of a primitive meridian combination
            let m = adapt_lagrangian(&lam).unwrap();
            let mut v = primitive_vector(&mut rng, genus, 3);
            v.extend(std::iter::repeat_n(0.into(), genus));
            CurveClass::new(s, v, false).unwrap().apply(&m)
        };
        let in_lambda = lam.contains(&class.to_rational()).unwrap();
        let w = TwistWord::positive(s, std::slice::from_ref(&class)).unwrap();
        let sigma = n0_lambda(&w, &lam).map_err(|e| e.to_string())?;
        let expected = if in_lambda { -1 } else { 0 };
        if sigma != expected {
            return Err(format!("trial {trial}: class {class} σ = {sigma}, expected {expected}"));
        }
        if in_lambda {
            inside += 1;
        } else {
            outside += 1;
        }
    }
    ensure(
        inside > 0 && outside > 0,
        format!("200 classes, {inside} in λ (σ = −1), {outside} not (σ = 0)"),
        || "sample missed a case".into(),
    )
}

fn relator() -> Check {
    let s = g1();
    let (m, l) = ml();
    let mut u = TwistWord::positive(s, &[m, l]).unwrap().power(6);
    u.push(CurveClass::zero(s), Exponent::Minus).unwrap();
    let lam = s.standard_lagrangian();
    let e = u.exponent_sum();
    let sl = sigma_word(&u, &lam, false).map_err(|e| e.to_string())?;
    let s0 = sigma_word(&u, &lam, true).map_err(|e| e.to_string())?;
    let n = e + s0;
    let trivial = MappingClass::word_action(&u).is_identity();
    ensure(
        e == 11 && sl == -7 && s0 == -7 && n == 4 && trivial,
        format!("e = {e}, σ(L) = {sl}, σ(L⁰) = {s0}, n_λ = {n}"),
        || format!("e = {e}, σ(L) = {sl}, σ(L⁰) = {s0}, n_λ = {n}, acts trivially: {trivial}"),
    )
}

fn braid_words() -> Check {
    let s = g1();
    let (m, l) = ml();
    let lam = s.standard_lagrangian();
    let ctx = ExtensionContext::new(lam.clone());
    let mlm = TwistWord::positive(s, &[m.clone(), l.clone(), m.clone()]).unwrap();
    let lml = TwistWord::positive(s, &[l.clone(), m, l]).unwrap();
    let a = n0_lambda(&mlm, &lam).map_err(|e| e.to_string())?;
    let b = n0_lambda(&lml, &lam).map_err(|e| e.to_string())?;
    let ea = ctx.word_lift(&mlm).map_err(|e| e.to_string())?;
    let eb = ctx.word_lift(&lml).map_err(|e| e.to_string())?;
    let target = ctx.element(MappingClass::word_action(&mlm), 1).unwrap();
    let top = mlm.exponent_sum() + a;
    ensure(
        a == -2 && b == -2 && ea == target && eb == target && top == 1,
        format!("σ(L⁰(mℓm)) = {a}, σ(L⁰(ℓmℓ)) = {b}, both lift to (D(mℓm), 1)"),
        || format!("σ = {a}, {b}; lifts {ea} and {eb}"),
    )
}

fn half_twist() -> Check {
    let s = g1();
    let (m, l) = ml();
    let lam = s.standard_lagrangian();
    let ctx = ExtensionContext::new(lam.clone());
    let w = TwistWord::positive(s, &[m, l]).unwrap().power(3);
    let e = w.exponent_sum();
    let sigma = n0_lambda(&w, &lam).map_err(|e| e.to_string())?;
    let lift = ctx.word_lift(&w).map_err(|e| e.to_string())?;
    let theta = ctx.element(MappingClass::word_action(&w), 2).unwrap();
    ensure(
        e == 6 && sigma == -4 && lift == theta && e + sigma == 2,
        format!("e = {e}, σ(L⁰) = {sigma}, element (θ, {})", lift.weight()),
        || format!("e = {e}, σ(L⁰) = {sigma}, element {lift}"),
    )
}

/// Runs a suite over genus 1..=4 with `per_genus` trials each.
fn suite_over_genera(suite: Suite, per_genus: usize, max_word_length: usize) -> Check {
    let mut lines = Vec::new();
    for genus in 1..=4 {
        let mut cfg = VerifyConfig::new(genus, per_genus, SEED + genus as u64);
        cfg.max_word_length = max_word_length;
        let report = run_suite(suite, &cfg).map_err(|e| e.to_string())?;
        if !report.passed() {
            return Err(report.to_string());
        }
        lines.push(format!("g{genus}:{per_genus}"));
    }
    Ok(format!("{suite} [{}] all pass", lines.join(" ")))
}

fn combine(parts: Vec<Check>) -> Check {
    let mut oks = Vec::new();
    for p in parts {
        oks.push(p?);
    }
    Ok(oks.join("; "))
}

fn cyclotomic() -> Check {
    let mut checked = 0;
    for p in [5u64, 7, 11, 13] {
        let kappa = CycloElement::kappa(p).unwrap();
        for c in 0..=max_scalar_color(p) {
            let r = scalar_relations(p, c).map_err(|e| e.to_string())?;
            let closed = CycloElement::q_power(p, -6 + 2 * (c * (c + 1)) as i64 - (p * (p + 1) / 2) as i64).unwrap();
            let via_twist = &kappa.pow(4).unwrap() * &mu_twist(p, 2 * c).unwrap();
            if r.tt6 != closed || r.tt6 != via_twist || &r.tt3 * &r.tt3 != r.tt6 {
                return Err(format!("p = {p}, c = {c}: tt6 = {}, tt3 = {}", r.tt6, r.tt3));
            }
            checked += 1;
        }
        let reduced = reduce_mod_h(&(&kappa * &kappa)).map_err(|e| e.to_string())?;
        let expected = if (p * (p + 1) / 2).is_multiple_of(2) { 1 } else { p - 1 };
        if (reduced.base, reduced.kappa) != (expected, 0) {
            return Err(format!("p = {p}: κ² ≡ {reduced}"));
        }
    }
    Ok(format!("{checked} (p, c) pairs; κ² mod h matches for p = 5, 7, 11, 13"))
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("linking matrix of a single genus-2 twist", Box::new(single_genus_two_twist)),
        ("single-twist weights", Box::new(single_twist_weights)),
        ("relator (mℓ)⁶δ⁻¹", Box::new(relator)),
        ("braid words", Box::new(braid_words)),
        ("half-twist word", Box::new(half_twist)),
        (
            "surgery-algebra congruence mod 4 (1000 words)",
            Box::new(|| suite_over_genera(Suite::SurgeryCongruence, 250, 24)),
        ),
        (
            "Walker identity, exact",
            Box::new(|| suite_over_genera(Suite::Walker, 500, 0)),
        ),
        (
            "Turaev congruence mod 4",
            Box::new(|| suite_over_genera(Suite::TuraevMod4, 500, 0)),
        ),
        (
            "closure mod 4 and mod 2 criteria",
            Box::new(|| {
                combine(vec![
                    suite_over_genera(Suite::ClosureMod4, 500, 0),
                    suite_over_genera(Suite::Mod2, 500, 0),
                ])
            }),
        ),
        (
            "Maslov index properties",
            Box::new(|| {
                combine(vec![
                    suite_over_genera(Suite::Maslov, 500, 0),
                    suite_over_genera(Suite::Completion, 100, 24),
                    suite_over_genera(Suite::Orientation, 100, 24),
                ])
            }),
        ),
        ("cyclotomic identities", Box::new(cyclotomic)),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [tolerance 0, {ms} ms]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} [tolerance 0, {ms} ms]: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
