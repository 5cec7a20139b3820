use std::path::Path;

use serde_json::{json, Value};
use thiserror::Error;

use rigiditylab::framework::{Framework, SpaceDescriptor, SpaceKind};
use rigiditylab::gram::{gmatrix_signature, gram};
use rigiditylab::hyperbolic::{
    cone_to_minkowski_seeded, hyperbolic_congruent, hyperbolic_ggr_verdict, is_lower_coned, is_spiky, is_upper_coned,
    is_upper_cylindrical, minkowski_to_hyperbolic, pogorelov_preserves_cylindrical, rotate_spiky_to_cylindrical,
    sheet_classification, HyperbolicWitness, Sheet,
};
use rigiditylab::io::{
    framework_to_json, gmatrix_to_json, hyperbolic_to_json, pair_to_json, parse_framework, parse_graph, parse_pair,
    verdict_to_json, AnyFramework, AnyPair, IoError,
};
use rigiditylab::oracle::{enumerate_1d, enumerate_2d_heuristic, parity_report, HeuristicOptions, Representatives};
use rigiditylab::pogorelov::{build_noncongruent_equivalent_pair, coordinate_swap, pogorelov};
use rigiditylab::random::GenericityPolicy;
use rigiditylab::rigidity::{ggr_test, pseudo_ggr_verdict, sample_framework, GgrVerdict, PseudoWitness};
use rigiditylab::scalar::{rational_to_f64, Field, Rational, Scalar};

use crate::{CommandName, ModeArg, Options, RunConfig, SpaceArg};

const ROTATION_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

struct Outcome {
    result: Value,
    summary: String,
    code: u8,
}

/// A report written by this tool stands in for the pair or framework it carries.
fn unwrap_report(text: String) -> String {
    let Ok(v) = serde_json::from_str::<Value>(&text) else { return text };
    if v.get("tool").and_then(Value::as_str) != Some("rigiditylab") {
        return text;
    }
    ["pair", "framework"]
        .iter()
        .find_map(|k| v["result"].get(*k))
        .map(Value::to_string)
        .unwrap_or(text)
}

pub fn run(name: CommandName, input: &Path, opts: &Options) -> Result<u8, CliError> {
    let text = std::fs::read_to_string(input).map_err(|e| CliError::Input(format!("{}: {e}", input.display())))?;
    let text = unwrap_report(text);
    let outcome = match name {
        CommandName::Analyze => analyze(&text, opts)?,
        CommandName::Pogorelov => pogorelov_cmd(&text, opts)?,
        CommandName::Gram => gram_cmd(&text)?,
        CommandName::Transfer => transfer(&text, opts)?,
        CommandName::Enumerate => enumerate(&text, opts)?,
        CommandName::BuildPair => build_pair(&text, opts)?,
    };
    let report = json!({
        "tool": "rigiditylab",
        "version": env!("CARGO_PKG_VERSION"),
        "run_config": RunConfig { command: name, input: input.display().to_string(), options: opts },
        "result": outcome.result,
    });
    let body = serde_json::to_string_pretty(&report).map_err(|e| CliError::Internal(e.to_string()))? + "\n";
    match &opts.out {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::Internal(format!("{}: {e}", path.display())))?,
        None => print!("{body}"),
    }
    eprintln!("{}", outcome.summary);
    Ok(outcome.code)
}

fn policy(opts: &Options) -> Result<GenericityPolicy, CliError> {
    if opts.bound < 2 {
        return Err(CliError::Input("--bound must be at least 2".into()));
    }
    Ok(GenericityPolicy { bound: opts.bound, retries: opts.retries })
}

fn need_d(opts: &Options) -> Result<usize, CliError> {
    opts.d.ok_or_else(|| CliError::Input("--d is required".into()))
}

fn verdict_outcome(v: &GgrVerdict, mut result: Value) -> Outcome {
    let code = if v.is_globally_rigid() { 0 } else { 1 };
    let summary = format!("{} (d = {}, {}, {})", v.verdict, v.d, v.space, v.field);
    result.as_object_mut().expect("object").extend(verdict_to_json(v).as_object().expect("object").clone());
    Outcome { result, summary, code }
}

fn pseudo_witness_json(w: &PseudoWitness) -> Value {
    json!({
        "euclidean": pair_to_json(&w.euclidean),
        "pseudo": pair_to_json(&w.pseudo),
        "equivalent": w.equivalent,
        "congruent": w.congruent,
    })
}

fn hyperbolic_witness_json(w: &HyperbolicWitness) -> Value {
    json!({
        "euclidean": pair_to_json(&w.euclidean),
        "minkowski": pair_to_json(&w.minkowski),
        "first": hyperbolic_to_json(&w.first),
        "second": hyperbolic_to_json(&w.second),
        "equivalent": w.equivalent,
        "congruent": w.congruent,
    })
}

fn analyze(text: &str, opts: &Options) -> Result<Outcome, CliError> {
    let graph = parse_graph(text)?;
    let d = need_d(opts)?;
    let p = policy(opts)?;
    let space = opts.space.unwrap_or(SpaceArg::Euclidean);
    let (verdict, witness, witness_error) = match space {
        SpaceArg::Euclidean | SpaceArg::Complex => {
            let field = if space == SpaceArg::Complex { Field::Complex } else { Field::Real };
            (ggr_test(&graph, d, field, opts.seed, &p), None, None)
        }
        SpaceArg::Pseudo | SpaceArg::Minkowski => {
            let s = if space == SpaceArg::Minkowski { 1 } else { opts.s.unwrap_or(0) };
            if s > d {
                return Err(CliError::Input(format!("--s {s} exceeds --d {d}")));
            }
            let mut r = pseudo_ggr_verdict(&graph, d, s, opts.seed, &p, opts.witness);
            if space == SpaceArg::Minkowski {
                r.verdict.space = SpaceKind::Minkowski;
                r.verdict.transfer_derived = true;
                r.verdict.s = Some(1);
            }
            (r.verdict, r.witness.as_ref().map(pseudo_witness_json), r.witness_error)
        }
        SpaceArg::Hyperbolic => {
            let r = hyperbolic_ggr_verdict(&graph, d, opts.seed, &p, opts.witness);
            (r.verdict, r.witness.as_ref().map(hyperbolic_witness_json), r.witness_error)
        }
    };
    let mut extra = json!({});
    if opts.witness {
        extra["witness"] = witness.unwrap_or(Value::Null);
        extra["witness_error"] = json!(witness_error);
    }
    Ok(verdict_outcome(&verdict, extra))
}

fn pogorelov_cmd(text: &str, opts: &Options) -> Result<Outcome, CliError> {
    let AnyPair::Real(pair) = parse_pair(text)? else {
        return Err(domain("pogorelov needs a real Euclidean pair"));
    };
    if pair.space().kind != SpaceKind::Euclidean {
        return Err(domain("pogorelov needs a Euclidean pair"));
    }
    let s = opts.s.ok_or_else(|| CliError::Input("--s is required".into()))?;
    if !pair.is_equivalent().map_err(domain)? {
        return Err(domain("input frameworks are not equivalent"));
    }
    let out = pogorelov(&pair, s).map_err(domain)?;
    let swap = coordinate_swap(&pair, s).map_err(domain)?;
    let in_congruent = pair.is_congruent().map_err(domain)?;
    let out_equivalent = out.is_equivalent().map_err(domain)?;
    let out_congruent = out.is_congruent().map_err(domain)?;
    let ok = out_equivalent && in_congruent == out_congruent && swap == out;
    let result = json!({
        "pair": pair_to_json(&out),
        "verification": {
            "input_equivalent": true,
            "input_congruent": in_congruent,
            "output_equivalent": out_equivalent,
            "output_congruent": out_congruent,
            "congruence_reflected": in_congruent == out_congruent,
            "matches_coordinate_swap": swap == out,
        },
    });
    let summary = format!("pseudo({}, {s}) pair, verification {}", pair.space().d, if ok { "passed" } else { "FAILED" });
    Ok(Outcome { result, summary, code: if ok { 0 } else { 3 } })
}

fn signature_json<F: Scalar>(m: &rigiditylab::gram::GMatrix<F>) -> Value {
    match gmatrix_signature(m) {
        Ok(sig) => json!(sig),
        Err(_) => Value::Null,
    }
}

fn gram_cmd(text: &str) -> Result<Outcome, CliError> {
    let (gm, sig, rank) = match parse_framework(text)? {
        AnyFramework::Real(f) => {
            let m = gram(f.config(), f.space());
            (gmatrix_to_json(&m), signature_json(&m), m.rank())
        }
        AnyFramework::Complex(f) => {
            let m = gram(f.config(), f.space());
            (gmatrix_to_json(&m), signature_json(&m), m.rank())
        }
        AnyFramework::Hyperbolic(_) => return Err(domain("g-matrices are defined for linear spaces; cone the framework first")),
    };
    let summary = format!("g-matrix side {}, rank {rank}, signature {}", gm["side"], sig);
    Ok(Outcome { result: json!({ "gmatrix": gm, "signature": sig, "rank": rank }), summary, code: 0 })
}

fn sheet_name(s: Sheet) -> &'static str {
    match s {
        Sheet::Upper => "upper",
        Sheet::Lower => "lower",
    }
}

fn transfer(text: &str, opts: &Options) -> Result<Outcome, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
    if value.get("first").is_some() {
        let AnyPair::Real(pair) = parse_pair(text)? else {
            return Err(domain("pair transfer needs real Euclidean coned frameworks"));
        };
        if pair.space().kind != SpaceKind::Euclidean || !matches!(opts.space, None | Some(SpaceArg::Minkowski)) {
            return Err(domain("pairs transfer from Euclidean to Minkowski space only"));
        }
        let (out, kept) = pogorelov_preserves_cylindrical(&pair).map_err(domain)?;
        let sheet = if pair.is_equivalent().map_err(domain)? { sheet_classification(&out).ok().map(sheet_name) } else { None };
        let result = json!({
            "pair": pair_to_json(&out),
            "flags": { "upper_cylindrical_preserved": kept, "sheet": sheet },
        });
        return Ok(Outcome { result, summary: format!("Minkowski pair, cylindrical preserved: {kept}"), code: 0 });
    }
    match parse_framework(text)? {
        AnyFramework::Hyperbolic(f) => {
            if !matches!(opts.space, None | Some(SpaceArg::Minkowski)) {
                return Err(domain("hyperbolic frameworks transfer to Minkowski space"));
            }
            let m = cone_to_minkowski_seeded(&f, opts.seed, policy(opts)?.bound).map_err(domain)?;
            let back = minkowski_to_hyperbolic(&m).map_err(domain)?;
            let congruent = hyperbolic_congruent(&f, &back).map_err(domain)?;
            let result = json!({
                "framework": framework_to_json(&m),
                "flags": {
                    "upper_coned": is_upper_coned(&m),
                    "lower_coned": is_lower_coned(&m),
                    "upper_cylindrical": is_upper_cylindrical(&m),
                    "round_trip_congruent": congruent,
                },
            });
            Ok(Outcome { result, summary: format!("coned Minkowski framework, round trip congruent: {congruent}"), code: 0 })
        }
        AnyFramework::Real(f) if f.space().kind == SpaceKind::Minkowski => {
            if !matches!(opts.space, None | Some(SpaceArg::Hyperbolic)) {
                return Err(domain("Minkowski coned frameworks transfer to hyperbolic space"));
            }
            let h = minkowski_to_hyperbolic(&f).map_err(domain)?;
            let result = json!({
                "framework": hyperbolic_to_json(&h),
                "flags": { "upper_coned": true, "upper_cylindrical": is_upper_cylindrical(&f) },
            });
            Ok(Outcome { result, summary: format!("hyperbolic framework in dimension {}", h.d()), code: 0 })
        }
        AnyFramework::Real(f) if f.space().kind == SpaceKind::Euclidean => euclidean_transfer(&f, opts),
        _ => Err(domain("no transfer applies to this framework")),
    }
}

fn euclidean_transfer(f: &Framework<Rational>, opts: &Options) -> Result<Outcome, CliError> {
    if opts.mode != ModeArg::Float {
        return Err(domain("rotating a spiky framework is a float operation; pass --mode float"));
    }
    let r = rotate_spiky_to_cylindrical(f, ROTATION_TOL).map_err(domain)?;
    let result = json!({
        "points": r.points,
        "residual": r.residual,
        "flags": { "spiky": is_spiky(f), "upper_cylindrical": r.is_upper_cylindrical() },
    });
    Ok(Outcome { result, summary: format!("rotated to cylindrical, residual {:e}", r.residual), code: 0 })
}

fn enumerate(text: &str, opts: &Options) -> Result<Outcome, CliError> {
    let graph = parse_graph(text)?;
    let d = need_d(opts)?;
    let p = policy(opts)?;
    let base = sample_framework::<Rational>(&graph, SpaceDescriptor::euclidean(d), opts.seed, p.bound);
    let rs = match d {
        1 => enumerate_1d(&graph, base.config()).map_err(domain)?,
        2 => {
            let m: Vec<f64> = rigiditylab::framework::edge_measurements(&base).iter().map(rational_to_f64).collect();
            let h = HeuristicOptions { n_starts: opts.starts, seed: opts.seed, dedup_tol: opts.dedup_tol, ..Default::default() };
            enumerate_2d_heuristic(&graph, &m, &h).map_err(domain)?
        }
        _ => return Err(CliError::Input("enumeration supports --d 1 or --d 2".into())),
    };
    let verdict = ggr_test(&graph, d, Field::Real, opts.seed, &p);
    let report = parity_report(&rs, verdict.verdict);
    let reps = match &rs.representatives {
        Representatives::Exact(r) => json!(r
            .iter()
            .map(|c| c.points().iter().map(|pt| pt.iter().map(Scalar::to_json).collect::<Vec<_>>()).collect::<Vec<_>>())
            .collect::<Vec<_>>()),
        Representatives::Float(r) => json!(r),
    };
    let mut result = serde_json::to_value(&report).map_err(|e| CliError::Internal(e.to_string()))?;
    result["verdict"] = json!(verdict.verdict.as_str());
    result["starts"] = json!(rs.starts);
    result["converged"] = json!(rs.converged);
    result["representatives"] = reps;
    let summary = format!(
        "{} classes ({:?}), verdict {}, consistent: {}",
        report.classes, report.parity, verdict.verdict, report.consistent_with_theory
    );
    Ok(Outcome { result, summary, code: 0 })
}

fn build_pair(text: &str, opts: &Options) -> Result<Outcome, CliError> {
    let graph = parse_graph(text)?;
    let d = need_d(opts)?;
    let pair = build_noncongruent_equivalent_pair(&graph, d, opts.seed).map_err(domain)?;
    let result = json!({
        "pair": pair_to_json(&pair),
        "equivalent": pair.is_equivalent().map_err(domain)?,
        "congruent": pair.is_congruent().map_err(domain)?,
    });
    Ok(Outcome { result, summary: "equivalent non-congruent pair".into(), code: 0 })
}
