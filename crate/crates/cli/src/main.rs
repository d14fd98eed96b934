//! `nil53`: command-line front end with JSON output.
//!
//! Every invocation prints one line `{"schema":"nil53/1","ok":...}` to stdout.
//! Exit codes: 0 success, 1 domain error, 2 usage error.

use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Number, Value};

use nil53_core::canon::{canonicalize_with_witnesses, WitnessKind};
use nil53_core::embed;
use nil53_core::invariants::{self, AlgebraParams, Theta, ThetaMode};
use nil53_core::quotient::{self, BuildOptions, MatrixPresentation, Phase};
use nil53_core::rep::{self, OperatorFamily};
use nil53_core::{are_isomorphic, canonicalize, Element, Error, GroupParams};

const SCHEMA: &str = "nil53/1";

#[derive(Parser, Debug)]
#[command(name = "nil53", version, about = "Exact arithmetic for the lattices H_{5,3}(α,β,γ,δ,ε)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ParamsArg {
    /// Parameters `α,β,γ,δ,ε`.
    #[arg(short = 'p', long, allow_hyphen_values = true)]
    params: GroupParams,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[command(flatten)]
    params: ParamsArg,
    /// Second parameter tuple.
    #[arg(long, allow_hyphen_values = true)]
    p2: GroupParams,
}

#[derive(Args, Debug)]
struct OneElement {
    #[command(flatten)]
    params: ParamsArg,
    /// Element `h,j,k,m,n`.
    #[arg(short = 'x', allow_hyphen_values = true)]
    x: Element,
}

#[derive(Args, Debug)]
struct TwoElements {
    #[command(flatten)]
    params: ParamsArg,
    #[arg(short = 'x', allow_hyphen_values = true)]
    x: Element,
    #[arg(short = 'y', allow_hyphen_values = true)]
    y: Element,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Prime,
    General,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    NonQuartic,
    NonQuadratic,
}

impl From<ModeArg> for ThetaMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::NonQuartic => ThetaMode::SymbolicNonQuartic,
            ModeArg::NonQuadratic => ThetaMode::SymbolicNonQuadratic,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Product `x·y`.
    Mul(TwoElements),
    /// Inverse of `x`.
    Inv(OneElement),
    /// Power `x^n` for an arbitrary integer `n`.
    Pow {
        #[command(flatten)]
        el: OneElement,
        #[arg(short = 'n', long, allow_hyphen_values = true)]
        exp: BigInt,
    },
    /// Commutator `x y x⁻¹ y⁻¹`.
    Comm(TwoElements),
    /// Smallest coordinate subgroup `K1..K4` containing `x`.
    Level {
        #[arg(short = 'x', allow_hyphen_values = true)]
        x: Element,
    },
    /// Canonical representative of the isomorphism class.
    Canon(ParamsArg),
    /// Whether two parameter tuples give isomorphic groups.
    Iso(PairArgs),
    /// Chain of base changes from the parameters to their canonical form.
    Witness(ParamsArg),
    /// Image of `x` under the embedding into the lattice (or the reverse map with `--prime`).
    Embed {
        #[command(flatten)]
        el: OneElement,
        #[arg(long)]
        prime: bool,
    },
    /// Preimage of a lattice element, if it lies in the image.
    Preimage(OneElement),
    /// Coset representative of `x` in the fundamental box.
    ReduceCoset(OneElement),
    /// Index of the image in the lattice.
    Index {
        #[command(flatten)]
        params: ParamsArg,
        /// Also count cosets by enumeration, giving up past this many.
        #[arg(long)]
        enumerate: Option<usize>,
    },
    /// Whether the image is normal in the lattice.
    Normality(ParamsArg),
    /// Checks the defining relations and multiplicativity of π on random monomials.
    RepCheck {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long, value_enum, default_value = "general")]
        family: FamilyArg,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 200)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Adds `DELTA` to the λ exponent of a relation, e.g. `UX=1`.
        #[arg(long, allow_hyphen_values = true)]
        perturb: Option<String>,
    },
    /// Relations of `U^s V^b1 W^c1`, `V^s W^c2`, `W`, `X`.
    TransformCheck {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        b1: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        c1: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        c2: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sign: i64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Simple quotient at `λ = e^{2πi p/q}`: profile, structure and matrix models.
    Quotient {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long)]
        q: i64,
        #[arg(long = "p-num", default_value_t = 1, allow_hyphen_values = true)]
        p_num: i64,
        /// `μ` as a rational turn such as `1/4`.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "mu_irrational")]
        mu: Option<Phase>,
        /// Treat `μ` as not a root of unity; no matrices are built.
        #[arg(long)]
        mu_irrational: bool,
        /// Override `ξ` (rational turn) instead of `λ^β' μ^α`.
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<Phase>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Include the matrices as row-major `[re, im]` arrays.
        #[arg(long)]
        matrices: bool,
    },
    /// K-groups and trace range.
    Invariants(ParamsArg),
    /// Necessary-condition isomorphism screen for two algebras.
    Screen {
        #[command(flatten)]
        pair: PairArgs,
        /// `θ1` as a multiple of a fixed irrational `θ0`.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        theta: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        theta2: i64,
        #[arg(long, value_enum, default_value = "non-quartic")]
        mode: ModeArg,
    },
    /// Reduced form `A_{ρθ}(α,0,γ/ρ,δ/ρ,ε/ρ)`.
    ReduceParams {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        theta: i64,
        #[arg(long, value_enum, default_value = "non-quartic")]
        mode: ModeArg,
    },
}

fn big(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

fn elem(x: &Element) -> Value {
    Value::Array(x.coords().into_iter().map(big).collect())
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn presentation(m: &MatrixPresentation, with_matrices: bool) -> Value {
    let mut v = json!({
        "relation_set": m.relation_set,
        "dimension": m.dimension,
        "uv_scalar": m.uv_scalar,
        "residuals": m.residuals,
        "unitarity": m.unitarity,
    });
    if with_matrices {
        let mats: serde_json::Map<String, Value> = m
            .generators
            .iter()
            .map(|(name, mat)| (name.to_string(), to_value(&mat.to_rows())))
            .collect();
        v["matrices"] = Value::Object(mats);
    }
    v
}

fn run(cmd: Command) -> Result<Value, Error> {
    Ok(match cmd {
        Command::Mul(a) => elem(&a.params.params.multiply(&a.x, &a.y)),
        Command::Inv(a) => elem(&a.params.params.inverse(&a.x)),
        Command::Pow { el, exp } => elem(&el.params.params.power_big(&el.x, &exp)),
        Command::Comm(a) => elem(&a.params.params.commutator(&a.x, &a.y)),
        Command::Level { x } => to_value(&x.subgroup_level()),
        Command::Canon(a) => to_value(&canonicalize(&a.params)?),
        Command::Iso(a) => {
            let (p1, p2) = (a.params.params, a.p2);
            json!({
                "isomorphic": are_isomorphic(&p1, &p2)?,
                "canonical": [canonicalize(&p1)?, canonicalize(&p2)?],
            })
        }
        Command::Witness(a) => {
            let (canon, chain) = canonicalize_with_witnesses(&a.params)?;
            let steps: Vec<Value> = chain
                .iter()
                .map(|w| {
                    json!({
                        "move": to_value::<WitnessKind>(&w.kind),
                        "source": w.source,
                        "target": w.target,
                        "generator_images": w.generator_images.iter().map(elem).collect::<Vec<_>>(),
                        "valid": w.check().is_none(),
                    })
                })
                .collect();
            json!({ "canonical": canon, "chain": steps })
        }
        Command::Embed { el, prime } => {
            let p = &el.params.params;
            if prime {
                elem(&embed::phi_prime(p, &el.x))
            } else {
                elem(&embed::phi(p, &el.x)?)
            }
        }
        Command::Preimage(a) => {
            let pre = embed::preimage(&a.params.params, &a.x)?;
            json!({ "member": pre.is_some(), "preimage": pre.as_ref().map(elem) })
        }
        Command::ReduceCoset(a) => elem(&embed::coset_reduce(&a.params.params, &a.x)?),
        Command::Index { params, enumerate } => {
            let p = &params.params;
            let data = embed::EmbeddingData::new(p)?;
            let counted = match enumerate {
                Some(limit) => embed::enumerate_cosets(p, limit)?.map(|c| c.len()),
                None => None,
            };
            json!({
                "index": big(&data.index()),
                "pivots": data.pivots.iter().map(big).collect::<Vec<_>>(),
                "enumerated": counted,
            })
        }
        Command::Normality(a) => match embed::check_normal(&a.params)? {
            embed::Normality::Normal => json!({ "normal": true }),
            embed::Normality::Witness {
                image,
                conjugator,
                conjugate,
            } => json!({
                "normal": false,
                "image": image,
                "conjugator": conjugator,
                "conjugate": elem(&conjugate),
            }),
        },
        Command::RepCheck {
            params,
            family,
            samples,
            pairs,
            seed,
            perturb,
        } => rep_check(&params.params, family, samples, pairs, seed, perturb.as_deref())?,
        Command::TransformCheck {
            params,
            b1,
            c1,
            c2,
            sign,
            samples,
            seed,
        } => {
            let p = &params.params;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mono = rep::random_monomials(&mut rng, samples, 1000);
            let report = rep::canonical_transform(p, b1, c1, c2, sign, &mono)?;
            let expected = p.delta() * b1 + sign * p.epsilon();
            json!({
                "report": report,
                "expected_uw_exponent": expected,
                "uw_matches": report.uw_exponent == Some(expected),
            })
        }
        Command::Quotient {
            params,
            q,
            p_num,
            mu,
            mu_irrational,
            xi,
            tol,
            matrices,
        } => {
            let p = &params.params;
            let profile = quotient::derive_profile(q, p_num, p)?;
            let structure = quotient::analyze_quotient(q, p_num, p, !mu_irrational)?;
            let mut out = json!({ "profile": profile, "structure": structure });
            if !mu_irrational {
                let opts = BuildOptions {
                    tol,
                    ..BuildOptions::default()
                };
                let mu = Some(mu.unwrap_or_else(Phase::zero));
                let model = quotient::build_model(q, p_num, p, mu, xi, &opts)?;
                out["xi"] = to_value(&model.xi);
                out["xi_prime"] = to_value(&model.xi_prime);
                out["b1"] = presentation(&model.b1, matrices);
                out["block"] = presentation(&model.block, matrices);
            }
            out
        }
        Command::Invariants(a) => {
            let (k0, k1) = invariants::k_groups(&a.params);
            let t = invariants::trace_lattice(&a.params);
            json!({ "k0": k0, "k1": k1, "rho": t.rho, "gamma_delta": t.gd })
        }
        Command::Screen {
            pair,
            theta,
            theta2,
            mode,
        } => {
            let alg = |params, multiple| AlgebraParams {
                theta: Theta {
                    mode: mode.into(),
                    multiple,
                },
                params,
            };
            let a1 = alg(pair.params.params, theta);
            let a2 = alg(pair.p2, theta2);
            to_value(&invariants::iso_screen(&a1, &a2)?)
        }
        Command::ReduceParams {
            params,
            theta,
            mode,
        } => {
            let r = invariants::reduce_algebra(&AlgebraParams {
                theta: Theta {
                    mode: mode.into(),
                    multiple: theta,
                },
                params: params.params,
            })?;
            json!({ "theta_multiple": r.theta.multiple, "params": r.params })
        }
    })
}

fn rep_check(
    p: &GroupParams,
    family: FamilyArg,
    samples: usize,
    pairs: usize,
    seed: u64,
    perturb: Option<&str>,
) -> Result<Value, Error> {
    let fam = match family {
        FamilyArg::Prime => OperatorFamily::FPrime,
        FamilyArg::General => OperatorFamily::FGeneral,
    };
    let mut rels = rep::defining_relations(fam, p)?;
    if let Some(spec) = perturb {
        let bad = || Error::Parse(format!("expected NAME=DELTA for --perturb, got {spec:?}"));
        let (name, delta) = spec.split_once('=').ok_or_else(bad)?;
        let delta: i64 = delta.trim().parse().map_err(|_| bad())?;
        let r = rels
            .iter_mut()
            .find(|r| r.name == name.trim())
            .ok_or_else(|| Error::Parse(format!("no relation named {name:?}")))?;
        r.rhs.lambda_exp += delta;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mono = rep::random_monomials(&mut rng, samples, 1000);
    let mut all_hold = true;
    let mut results = Vec::new();
    for r in &rels {
        let cex = rep::find_counterexample(fam, p, &r.lhs, &r.rhs, &mono)?;
        all_hold &= cex.is_none();
        results.push(json!({
            "relation": r.name,
            "lhs": r.lhs.to_string(),
            "rhs": r.rhs.to_string(),
            "holds": cex.is_none(),
            "counterexample": cex,
        }));
    }
    // π only lands in the general family.
    let pi = if fam == OperatorFamily::FGeneral {
        let per_pair = mono.len().min(20);
        let mut failure = Value::Null;
        for _ in 0..pairs {
            let mut draw = || Element::from([(); 5].map(|_| rng.gen_range(-30i64..=30)));
            let (s, t) = (draw(), draw());
            let lhs = rep::group_rep(&s)?.concat(&rep::group_rep(&t)?);
            let rhs = rep::group_rep(&p.multiply(&s, &t))?;
            if let Some(x) = rep::find_counterexample(fam, p, &lhs, &rhs, &mono[..per_pair])? {
                failure = json!({ "s": elem(&s), "t": elem(&t), "monomial": x });
                break;
            }
        }
        all_hold &= failure.is_null();
        json!({ "pairs": pairs, "holds": failure.is_null(), "counterexample": failure })
    } else {
        Value::Null
    };
    Ok(json!({
        "family": fam,
        "samples": mono.len(),
        "relations": results,
        "pi": pi,
        "all_hold": all_hold,
    }))
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidParams(_) => "invalid_params",
        Error::FamilyMismatch(_) => "family_mismatch",
        Error::UnsupportedRegime(_) => "unsupported_regime",
        Error::DimensionTooLarge { .. } => "dimension_too_large",
        Error::Construction { .. } => "construction",
        Error::Internal(_) => "internal",
        Error::Parse(_) => "parse",
        Error::Overflow(_) => "overflow",
    }
}

fn emit(ok: bool, key: &str, payload: Value) {
    let mut doc = serde_json::Map::new();
    doc.insert("schema".into(), Value::String(SCHEMA.into()));
    doc.insert("ok".into(), Value::Bool(ok));
    doc.insert(key.into(), payload);
    // A closed pipe is not worth a panic.
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", Value::Object(doc));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or_default().trim_start_matches("error: ");
            emit(false, "error", json!({ "kind": "usage", "message": first }));
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(result) => {
            emit(true, "result", result);
            ExitCode::SUCCESS
        }
        Err(e) => {
            emit(false, "error", json!({ "kind": error_kind(&e), "message": e.to_string() }));
            ExitCode::from(1)
        }
    }
}
