//! JSON reading and writing for graphs, frameworks, pairs, g-matrices and verdicts.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::framework::{Configuration, Framework, FrameworkError, Graph, SpaceDescriptor, SpaceKind};
use crate::gram::GMatrix;
use crate::hyperbolic::{HyperbolicError, HyperbolicFramework, HyperbolicPoint};
use crate::linalg::{LinalgError, Matrix};
use crate::pogorelov::FrameworkPair;
use crate::rigidity::GgrVerdict;
use crate::scalar::{ComplexRational, Field, Rational, Scalar, ScalarParseError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad input: {0}")]
    Shape(String),
    #[error(transparent)]
    Scalar(#[from] ScalarParseError),
    #[error(transparent)]
    Framework(#[from] FrameworkError),
    #[error(transparent)]
    Hyperbolic(#[from] HyperbolicError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Serialize, Deserialize)]
struct SpaceJson {
    kind: SpaceKind,
    d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<usize>,
}

#[derive(Deserialize)]
struct GraphJson {
    v: usize,
    edges: Vec<[usize; 2]>,
}

#[derive(Deserialize)]
struct FrameworkJson {
    v: usize,
    edges: Vec<[usize; 2]>,
    space: SpaceJson,
    config: Vec<Vec<Value>>,
    #[serde(default)]
    ball_model: bool,
}

/// A framework of any supported kind, as read from disk.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyFramework {
    Real(Framework<Rational>),
    Complex(Framework<ComplexRational>),
    Hyperbolic(HyperbolicFramework),
}

impl AnyFramework {
    pub fn graph(&self) -> &Graph {
        match self {
            AnyFramework::Real(f) => f.graph(),
            AnyFramework::Complex(f) => f.graph(),
            AnyFramework::Hyperbolic(f) => f.graph(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyFramework::Real(f) => framework_to_json(f),
            AnyFramework::Complex(f) => framework_to_json(f),
            AnyFramework::Hyperbolic(f) => hyperbolic_to_json(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AnyPair {
    Real(FrameworkPair<Rational>),
    Complex(FrameworkPair<ComplexRational>),
}

fn space_json(space: &SpaceDescriptor) -> Value {
    let s = match space.kind {
        SpaceKind::Hyperbolic => None,
        _ => Some(space.s),
    };
    serde_json::to_value(SpaceJson { kind: space.kind, d: space.d, s }).expect("space serializes")
}

fn space_from_json(s: &SpaceJson) -> Result<SpaceDescriptor, IoError> {
    let default_s = match s.kind {
        SpaceKind::Minkowski | SpaceKind::Hyperbolic => 1,
        _ => 0,
    };
    let space = SpaceDescriptor { kind: s.kind, d: s.d, s: s.s.unwrap_or(default_s) };
    space.validate()?;
    Ok(space)
}

fn edges_json(g: &Graph) -> Value {
    json!(g.edges().iter().map(|&(t, u)| [t, u]).collect::<Vec<_>>())
}

pub fn graph_to_json(g: &Graph) -> Value {
    json!({ "v": g.vertex_count(), "edges": edges_json(g) })
}

/// Graph from `{"v", "edges"}`; any other keys (a full framework file) are ignored.
pub fn parse_graph(text: &str) -> Result<Graph, IoError> {
    let g: GraphJson = serde_json::from_str(text)?;
    Ok(Graph::new(g.v, g.edges.into_iter().map(|[t, u]| (t, u)))?)
}

fn matrix_json<F: Scalar>(rows: impl Iterator<Item = Vec<F>>) -> Value {
    Value::Array(rows.map(|r| Value::Array(r.iter().map(Scalar::to_json).collect())).collect())
}

fn parse_rows<F: Scalar>(rows: &[Vec<Value>]) -> Result<Vec<Vec<F>>, IoError> {
    rows.iter().map(|r| r.iter().map(|x| F::from_json(x).map_err(IoError::from)).collect()).collect()
}

pub fn framework_to_json<F: Scalar>(f: &Framework<F>) -> Value {
    json!({
        "v": f.graph().vertex_count(),
        "edges": edges_json(f.graph()),
        "space": space_json(f.space()),
        "config": matrix_json(f.config().points().iter().cloned()),
    })
}

/// Hyperbolic frameworks are written as raw Minkowski rays.
pub fn hyperbolic_to_json(f: &HyperbolicFramework) -> Value {
    json!({
        "v": f.graph().vertex_count(),
        "edges": edges_json(f.graph()),
        "space": space_json(&f.space()),
        "ball_model": false,
        "config": matrix_json(f.points().iter().map(|p| p.ray().to_vec())),
    })
}

fn framework_from_value(v: Value) -> Result<AnyFramework, IoError> {
    let raw: FrameworkJson = serde_json::from_value(v)?;
    let graph = Graph::new(raw.v, raw.edges.into_iter().map(|[t, u]| (t, u)))?;
    let space = space_from_json(&raw.space)?;
    match space.kind {
        SpaceKind::Hyperbolic => {
            let rows = parse_rows::<Rational>(&raw.config)?;
            let f = if raw.ball_model {
                HyperbolicFramework::from_ball(graph, space.d, &rows)?
            } else {
                let points = rows.into_iter().map(HyperbolicPoint::from_ray).collect::<Result<_, _>>()?;
                HyperbolicFramework::new(graph, space.d, points)?
            };
            Ok(AnyFramework::Hyperbolic(f))
        }
        _ if raw.ball_model => Err(IoError::Shape("ball_model applies only to hyperbolic frameworks".into())),
        SpaceKind::Complex => {
            let config = Configuration::new(parse_rows(&raw.config)?)?;
            Ok(AnyFramework::Complex(Framework::new(graph, config, space)?))
        }
        _ => {
            let config = Configuration::new(parse_rows(&raw.config)?)?;
            Ok(AnyFramework::Real(Framework::new(graph, config, space)?))
        }
    }
}

pub fn parse_framework(text: &str) -> Result<AnyFramework, IoError> {
    framework_from_value(serde_json::from_str(text)?)
}

pub fn pair_to_json<F: Scalar>(p: &FrameworkPair<F>) -> Value {
    json!({
        "first": framework_to_json(p.first()),
        "second": framework_to_json(p.second()),
        "haar_coords": p.haar_coords(),
    })
}

pub fn parse_pair(text: &str) -> Result<AnyPair, IoError> {
    let mut v: Value = serde_json::from_str(text)?;
    let take = |v: &mut Value, k: &str| v.get_mut(k).map(Value::take).ok_or_else(|| IoError::Shape(format!("missing \"{k}\"")));
    let first = framework_from_value(take(&mut v, "first")?)?;
    let second = framework_from_value(take(&mut v, "second")?)?;
    let haar = v.get("haar_coords").and_then(Value::as_bool).unwrap_or(false);
    match (first, second) {
        (AnyFramework::Real(a), AnyFramework::Real(b)) => Ok(AnyPair::Real(FrameworkPair::new(a, b, haar)?)),
        (AnyFramework::Complex(a), AnyFramework::Complex(b)) => Ok(AnyPair::Complex(FrameworkPair::new(a, b, haar)?)),
        _ => Err(IoError::Shape("pair members must share a real or complex space".into())),
    }
}

pub fn gmatrix_to_json<F: Scalar>(m: &GMatrix<F>) -> Value {
    json!({ "side": m.side(), "entries": matrix_json(m.entries().to_rows().into_iter()) })
}

#[derive(Deserialize)]
struct GMatrixJson {
    side: usize,
    entries: Vec<Vec<Value>>,
}

/// Real g-matrix, checked square and symmetric.
pub fn parse_gmatrix<F: Scalar>(text: &str) -> Result<GMatrix<F>, IoError> {
    let raw: GMatrixJson = serde_json::from_str(text)?;
    if raw.entries.len() != raw.side || raw.entries.iter().any(|r| r.len() != raw.side) {
        return Err(IoError::Shape(format!("entries are not {0}×{0}", raw.side)));
    }
    let m = Matrix::from_rows(raw.side, parse_rows::<F>(&raw.entries)?)?;
    Ok(GMatrix::new(m)?)
}

pub fn verdict_to_json(v: &GgrVerdict) -> Value {
    json!({
        "verdict": v.verdict.as_str(),
        "space": v.space,
        "d": v.d,
        "s": v.s,
        "field": v.field,
        "ranks": v.ranks,
        "rigidity_ranks": v.rigidity_ranks,
        "seeds": v.seeds,
        "witness_stress": v.witness_stress.as_ref().map(|w| w.to_json()),
        "transfer_derived": v.transfer_derived,
    })
}

/// Field implied by a space kind name, used when reading graph-only inputs.
pub fn field_of(kind: SpaceKind) -> Field {
    match kind {
        SpaceKind::Complex => Field::Complex,
        _ => Field::Real,
    }
}
