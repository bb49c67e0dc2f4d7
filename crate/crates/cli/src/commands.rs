//! Subcommand implementations. Each returns a [`Report`] or a [`CliError`];
//! neither writes to stdout.

use std::fmt::Write as _;

use extmcg::cyclo::{max_scalar_color, reduce_mod_h, scalar_relations, CycloElement, CycloError, ModH};
use extmcg::exact::{primitive_integer_vector, IntMatrix};
use extmcg::extension::{
    membership, meyer_tau, n_lambda, plus_parity, star_f, turaev_k, turaev_phi, walker_j, ExtendedElement,
    ExtensionContext, ExtensionError,
};
use extmcg::mcg::{CurveClass, MappingClass, McgError};
use extmcg::surgery::{linking_matrix, n0_lambda, SurgeryError};
use extmcg::symplectic::{maslov, Lagrangian, SymplecticError, SymplecticSpace};
use extmcg::verify::{run_suite, VerifyConfig, VerifyError};
use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::parse::{parse_element, parse_lagrangian, parse_matrix, parse_word, ParseError};
use crate::{Cli, Command, MappingClassArg, Surface, WithLagrangian, SCHEMA_VERSION};

/// Output of a subcommand. `success` is false only for a failed `verify`.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub success: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse {argument}: {source}")]
    Parse { argument: String, source: ParseError },
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error(transparent)]
    Mcg(#[from] McgError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Symplectic(_) => "symplectic",
            CliError::Mcg(_) => "mapping-class",
            CliError::Extension(_) => "extension",
            CliError::Surgery(_) => "surgery",
            CliError::Cyclo(_) => "cyclo",
            CliError::Verify(_) => "verify",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut error = json!({ "kind": self.kind(), "message": self.to_string() });
        if let CliError::Parse { argument, source } = self {
            error["argument"] = json!(argument);
            error["position"] = json!(source.position);
        }
        json!({ "schema": SCHEMA_VERSION, "error": error })
    }
}

fn parsed<T>(argument: &str, r: Result<T, ParseError>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Parse {
        argument: argument.to_string(),
        source,
    })
}

fn int_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(int_json).collect()))
            .collect(),
    )
}

fn matrix_text(m: &IntMatrix) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells
        .iter()
        .map(|row| {
            let row: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            format!("  {}\n", row.join(" "))
        })
        .collect()
}

/// Primitive integer spanning vectors, printed as class atoms so the text
/// can be fed back to `--lambda`.
fn lagrangian_classes(l: &Lagrangian) -> Vec<CurveClass> {
    l.subspace()
        .basis_vectors()
        .iter()
        .map(|v| CurveClass::new(*l.space(), primitive_integer_vector(v), true).expect("2g coordinates"))
        .collect()
}

fn lagrangian_json(l: &Lagrangian) -> Value {
    let classes = lagrangian_classes(l);
    json!({
        "basis": classes.iter().map(|c| Value::Array(c.coords().iter().map(int_json).collect())).collect::<Vec<_>>(),
        "text": lagrangian_text(l),
    })
}

fn lagrangian_text(l: &Lagrangian) -> String {
    if l.is_standard() {
        return "std".into();
    }
    lagrangian_classes(l)
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn element_json(e: &ExtendedElement) -> Result<Value, CliError> {
    Ok(json!({
        "matrix": matrix_json(e.mapping_class().matrix()),
        "n": e.weight(),
        "membership": e.membership()?.to_string(),
    }))
}

fn cyclo_json(x: &CycloElement) -> Value {
    let strings = |v: &[extmcg::exact::Rational]| v.iter().map(|r| json!(r.to_string())).collect::<Vec<_>>();
    json!({ "q": strings(x.base()), "kappa": strings(x.kappa_part()), "text": x.to_string() })
}

fn space(surface: &Surface) -> Result<SymplecticSpace, CliError> {
    Ok(SymplecticSpace::new(surface.genus)?)
}

fn lagrangian(args: &WithLagrangian) -> Result<(SymplecticSpace, Lagrangian), CliError> {
    let s = space(&args.surface)?;
    let l = parsed("--lambda", parse_lagrangian(&args.lambda, s))?;
    Ok((s, l))
}

fn mapping_class(arg: &MappingClassArg, s: SymplecticSpace, permissive: bool) -> Result<MappingClass, CliError> {
    match (&arg.word, &arg.matrix) {
        (Some(w), _) => Ok(MappingClass::word_action(&parsed("--f", parse_word(w, s, permissive))?)),
        (None, Some(m)) => parsed("--matrix", parse_matrix(m, s)),
        (None, None) => unreachable!("clap requires one of --f and --matrix"),
    }
}

fn envelope(command: &str, genus: Option<usize>, body: Value) -> Value {
    let mut v = json!({ "schema": SCHEMA_VERSION, "command": command });
    if let Some(g) = genus {
        v["genus"] = json!(g);
    }
    v["result"] = body;
    v
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let permissive = cli.permissive;
    match &cli.command {
        Command::Maslov { surface, lagrangians } => {
            let s = space(surface)?;
            let ls = lagrangians
                .iter()
                .enumerate()
                .map(|(i, t)| parsed(&format!("lagrangian {}", i + 1), parse_lagrangian(t, s)))
                .collect::<Result<Vec<_>, _>>()?;
            let mu = maslov(&ls[0], &ls[1], &ls[2])?;
            let text = format!(
                "μ({}, {}, {}) = {mu}\n",
                lagrangian_text(&ls[0]),
                lagrangian_text(&ls[1]),
                lagrangian_text(&ls[2])
            );
            let body = json!({ "lagrangians": ls.iter().map(lagrangian_json).collect::<Vec<_>>(), "maslov": mu });
            Ok(ok(envelope("maslov", Some(s.genus()), body), text))
        }
        Command::Compose {
            lagrangian: la,
            elements,
        } => {
            let (s, l) = lagrangian(la)?;
            let ctx = ExtensionContext::new(l.clone());
            let mut product = ctx.identity();
            let mut factors = Vec::new();
            let mut text = format!("λ = {}\n", lagrangian_text(&l));
            for (i, e) in elements.iter().enumerate() {
                let x = parsed(&format!("element {}", i + 1), parse_element(e, &ctx, permissive))?;
                writeln!(text, "factor {}: {x}", i + 1).unwrap();
                factors.push(element_json(&x)?);
                product = product.compose(&x)?;
            }
            writeln!(text, "product: n = {}, {}", product.weight(), product.membership()?).unwrap();
            text.push_str(&matrix_text(product.mapping_class().matrix()));
            let body = json!({ "lambda": lagrangian_json(&l), "factors": factors, "product": element_json(&product)? });
            Ok(ok(envelope("compose", Some(s.genus()), body), text))
        }
        Command::Nlambda {
            lagrangian: la,
            f,
            others,
        } => {
            let (s, l) = lagrangian(la)?;
            let f = mapping_class(f, s, permissive)?;
            let star = star_f(&f)?;
            let (n, k, j) = (n_lambda(&l, &f)?, turaev_k(&f)?, walker_j(&l, &f)?);
            let gs = if others.is_empty() {
                vec![("f".to_string(), f.clone())]
            } else {
                others
                    .iter()
                    .map(|w| {
                        Ok((
                            w.clone(),
                            MappingClass::word_action(&parsed("--g", parse_word(w, s, permissive))?),
                        ))
                    })
                    .collect::<Result<Vec<_>, CliError>>()?
            };
            let mut table = Vec::new();
            let mut text = format!(
                "λ = {}\nn_λ = {n}\nk = {k}\nj_λ = {j}\ndim V_f = {}, sgn det ⋆_f = {}\n",
                lagrangian_text(&l),
                star.dim(),
                star.det_sign()
            );
            text.push_str("g\tφ(f,g)\tτ(f,g)\n");
            for (name, g) in &gs {
                let (phi, tau) = (turaev_phi(&f, g)?, meyer_tau(&f, g)?);
                writeln!(text, "{name}\t{phi}\t{tau}").unwrap();
                table.push(json!({ "g": name, "phi": phi, "tau": tau }));
            }
            let body = json!({
                "lambda": lagrangian_json(&l),
                "f": matrix_json(f.matrix()),
                "n_lambda": n,
                "k": k,
                "j_lambda": j,
                "star_dim": star.dim(),
                "star_det_sign": star.det_sign(),
                "phi_tau": table,
            });
            Ok(ok(envelope("nlambda", Some(s.genus()), body), text))
        }
        Command::Linking {
            lagrangian: la,
            word,
            omit_unlink,
        } => {
            let (s, l) = lagrangian(la)?;
            let w = parsed("--word", parse_word(word, s, permissive))?;
            let link = linking_matrix(&w, &l, !omit_unlink)?;
            let inertia = link.inertia();
            let n0 = n0_lambda(&w, &l)?;
            let e = w.exponent_sum();
            let algebraic = n_lambda(&l, &MappingClass::word_action(&w))?;
            let mut text = format!("word = {w}\nλ = {}\n{link}", lagrangian_text(&l));
            writeln!(
                text,
                "σ = {}, b+ = {}, b- = {}, b0 = {}\ne = {e}, n⁰_λ = {n0}, n_λ(word) = {}, n_λ(D(word)) = {algebraic}",
                link.signature(),
                inertia.positive,
                inertia.negative,
                inertia.zero,
                e + n0
            )
            .unwrap();
            let body = json!({
                "word": w.to_string(),
                "lambda": lagrangian_json(&l),
                "labels": link.labels().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "matrix": matrix_json(link.matrix()),
                "with_unlink": !omit_unlink,
                "signature": link.signature(),
                "b_plus": inertia.positive,
                "b_minus": inertia.negative,
                "b_zero": inertia.zero,
                "exponent_sum": e,
                "n0_lambda": n0,
                "n_lambda_word": e + n0,
                "n_lambda_algebraic": algebraic,
                "congruent_mod4": (e + n0 - algebraic).rem_euclid(4) == 0,
            });
            Ok(ok(envelope("linking", Some(s.genus()), body), text))
        }
        Command::Member { lagrangian: la, f, n } => {
            let (s, l) = lagrangian(la)?;
            let f = mapping_class(f, s, permissive)?;
            let m = membership(&l, &f, *n)?;
            let nl = n_lambda(&l, &f)?;
            let parity = plus_parity(&l, &f)?;
            let text = format!("n_λ(f) = {nl}, n = {n}: {m}\n");
            let body = json!({
                "lambda": lagrangian_json(&l),
                "f": matrix_json(f.matrix()),
                "n": n,
                "n_lambda": nl,
                "plus_parity": parity,
                "membership": m.to_string(),
            });
            Ok(ok(envelope("member", Some(s.genus()), body), text))
        }
        Command::Cyclo { p, c } => {
            let colors: Vec<u64> = match c {
                Some(c) => vec![*c],
                None => (0..=max_scalar_color(*p)).collect(),
            };
            let kappa = CycloElement::kappa(*p)?;
            let k2 = reduce_mod_h(&(&kappa * &kappa))?;
            let mod_h = |m: ModH| format!("{} + {}·κ", m.base, m.kappa);
            let mut text = format!("p = {p}\nκ² mod h = {}\n", mod_h(k2));
            let mut rows = Vec::new();
            for c in colors {
                let r = scalar_relations(*p, c)?;
                let (m6, m3) = (reduce_mod_h(&r.tt6)?, reduce_mod_h(&r.tt3)?);
                writeln!(
                    text,
                    "c = {c}\n  tt6 = {}  [mod h: {}]\n  tt3 = {}  [mod h: {}]\n  half = {}",
                    r.tt6,
                    mod_h(m6),
                    r.tt3,
                    mod_h(m3),
                    r.half
                )
                .unwrap();
                rows.push(json!({
                    "c": c,
                    "tt6": cyclo_json(&r.tt6),
                    "tt3": cyclo_json(&r.tt3),
                    "half": cyclo_json(&r.half),
                    "tt6_mod_h": [m6.base, m6.kappa],
                    "tt3_mod_h": [m3.base, m3.kappa],
                }));
            }
            let body = json!({
                "p": p,
                "kappa": cyclo_json(&kappa),
                "kappa_squared_mod_h": [k2.base, k2.kappa],
                "colors": rows,
            });
            Ok(ok(envelope("cyclo", None, body), text))
        }
        Command::Verify {
            suite,
            surface,
            trials,
            seed,
            max_word_length,
        } => {
            let mut config = VerifyConfig::new(surface.genus, *trials, *seed);
            config.max_word_length = *max_word_length;
            let report = run_suite(*suite, &config)?;
            let counterexample = report
                .counterexample
                .as_ref()
                .map(|c| json!({ "trial": c.trial, "description": c.description }));
            let body = json!({
                "suite": suite.name(),
                "trials": trials,
                "seed": seed,
                "max_word_length": max_word_length,
                "passed": report.passed(),
                "failures": report.failures,
                "counterexample": counterexample,
            });
            Ok(Report {
                json: envelope("verify", Some(surface.genus), body),
                text: format!("{report}\n"),
                success: report.passed(),
            })
        }
    }
}

fn ok(json: Value, text: String) -> Report {
    Report {
        json,
        text,
        success: true,
    }
}
