//! Graphs, configurations and frameworks, with the metric, equivalence and
//! congruence predicates and the real / s-valued / complex embeddings.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gram::gram;
use crate::linalg::{rank, LinalgError, Matrix};
use crate::random::preserves_form;
use crate::scalar::{imag_unit, ComplexRational, Field, Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrameworkError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("configuration has {found} points but the graph has {expected} vertices")]
    ConfigLength { expected: usize, found: usize },
    #[error("{space} space needs {expected} coordinates, got {found}")]
    FieldMismatch { space: String, expected: Field, found: Field },
    #[error("frameworks have different graphs")]
    GraphMismatch,
    #[error("frameworks live in different spaces")]
    SpaceMismatch,
    #[error("configurations have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("affine span has dimension {span} < {d}; strong congruence recovery needs a full span")]
    DegenerateSpan { span: usize, d: usize },
    #[error("configurations are not congruent")]
    NotCongruent,
    #[error("operation not supported in {0} space")]
    UnsupportedSpace(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Simple undirected graph; edges are kept sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    v: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edges may be given in either orientation; they are stored as `(t, u)`, `t < u`.
    pub fn new(v: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, FrameworkError> {
        let mut seen = std::collections::BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(FrameworkError::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            if a >= v || b >= v {
                return Err(FrameworkError::InvalidGraph(format!("edge {{{a},{b}}} has a vertex >= {v}")));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(FrameworkError::InvalidGraph(format!("duplicate edge {{{},{}}}", e.0, e.1)));
            }
        }
        Ok(Self { v, edges: seen.into_iter().collect() })
    }

    pub fn empty(v: usize) -> Self {
        Self { v, edges: Vec::new() }
    }

    pub fn complete(v: usize) -> Self {
        let edges = (0..v).flat_map(|t| (t + 1..v).map(move |u| (t, u))).collect();
        Self { v, edges }
    }

    pub fn path(v: usize) -> Self {
        Self { v, edges: (1..v).map(|t| (t - 1, t)).collect() }
    }

    pub fn cycle(v: usize) -> Self {
        assert!(v >= 3, "a cycle needs at least three vertices");
        let mut edges: Vec<_> = (1..v).map(|t| (t - 1, t)).collect();
        edges.push((0, v - 1));
        Self::new(v, edges).expect("cycle edges")
    }

    /// Hub 0 joined to a rim cycle on `1..=rim`.
    pub fn wheel(rim: usize) -> Self {
        assert!(rim >= 3);
        let mut edges: Vec<_> = (1..=rim).map(|t| (0, t)).collect();
        edges.extend((1..rim).map(|t| (t, t + 1)));
        edges.push((1, rim));
        Self::new(rim + 1, edges).expect("wheel edges")
    }

    /// Two triangles {0,1,2}, {3,4,5} joined by the matching t ↔ t+3.
    pub fn triangular_prism() -> Self {
        let edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)];
        Self::new(6, edges).expect("prism edges")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|t| (a..a + b).map(move |u| (t, u))).collect();
        Self { v: a + b, edges }
    }

    /// Append a new vertex adjacent to `neighbors`.
    pub fn with_vertex(&self, neighbors: &[usize]) -> Result<Self, FrameworkError> {
        let w = self.v;
        Self::new(w + 1, self.edges.iter().copied().chain(neighbors.iter().map(|&t| (t, w))))
    }

    pub fn with_edge(&self, t: usize, u: usize) -> Result<Self, FrameworkError> {
        Self::new(self.v, self.edges.iter().copied().chain(std::iter::once((t, u))))
    }

    pub fn vertex_count(&self) -> usize {
        self.v
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, t: usize, u: usize) -> bool {
        let e = (t.min(u), t.max(u));
        self.edges.contains(&e)
    }

    pub fn neighbors(&self, t: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| match (a == t, b == t) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect()
    }

    pub fn degree(&self, t: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == t || b == t).count()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.v * self.v.saturating_sub(1) / 2
    }

    pub fn is_connected(&self) -> bool {
        if self.v == 0 {
            return true;
        }
        let mut seen = vec![false; self.v];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            for u in self.neighbors(t) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Euclidean,
    Pseudo,
    Complex,
    Minkowski,
    Hyperbolic,
}

impl std::fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SpaceKind::Euclidean => "euclidean",
            SpaceKind::Pseudo => "pseudo",
            SpaceKind::Complex => "complex",
            SpaceKind::Minkowski => "minkowski",
            SpaceKind::Hyperbolic => "hyperbolic",
        };
        f.write_str(s)
    }
}

/// Metric geometry of a framework.
///
/// For `Minkowski`, `d` is the full ambient dimension (hyperbolic `d − 1`
/// lives inside it). For `Hyperbolic`, `d` is the intrinsic dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub kind: SpaceKind,
    pub d: usize,
    pub s: usize,
}

impl SpaceDescriptor {
    pub fn euclidean(d: usize) -> Self {
        Self { kind: SpaceKind::Euclidean, d, s: 0 }
    }

    pub fn pseudo(d: usize, s: usize) -> Self {
        Self { kind: SpaceKind::Pseudo, d, s }
    }

    pub fn complex(d: usize) -> Self {
        Self { kind: SpaceKind::Complex, d, s: 0 }
    }

    pub fn minkowski(ambient: usize) -> Self {
        Self { kind: SpaceKind::Minkowski, d: ambient, s: 1 }
    }

    pub fn hyperbolic(d: usize) -> Self {
        Self { kind: SpaceKind::Hyperbolic, d, s: 1 }
    }

    pub fn validate(&self) -> Result<(), FrameworkError> {
        let bad = |m: &str| Err(FrameworkError::InvalidSpace(m.to_string()));
        match self.kind {
            SpaceKind::Euclidean | SpaceKind::Complex if self.s != 0 => bad("euclidean and complex spaces have s = 0"),
            SpaceKind::Pseudo if self.s > self.d => bad("pseudo-Euclidean signature exceeds dimension"),
            SpaceKind::Minkowski if self.s != 1 || self.d < 1 => bad("Minkowski space has s = 1 and d >= 1"),
            SpaceKind::Hyperbolic if self.s != 1 => bad("hyperbolic space is modeled with s = 1"),
            _ => Ok(()),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self.kind {
            SpaceKind::Hyperbolic => self.d + 1,
            _ => self.d,
        }
    }

    /// Number of negative squares in the ambient form.
    pub fn negative_count(&self) -> usize {
        match self.kind {
            SpaceKind::Euclidean | SpaceKind::Complex => 0,
            _ => self.s,
        }
    }

    pub fn field(&self) -> Field {
        match self.kind {
            SpaceKind::Complex => Field::Complex,
            _ => Field::Real,
        }
    }

    pub fn signature_matrix<F: Scalar>(&self) -> Matrix<F> {
        crate::random::signature_matrix(self.ambient_dim(), self.negative_count())
    }
}

/// Ambient bilinear form of the space, without conjugation.
pub fn bilinear<F: Scalar>(space: &SpaceDescriptor, x: &[F], y: &[F]) -> F {
    let s = space.negative_count();
    x.iter().zip(y).enumerate().fold(F::zero(), |acc, (i, (a, b))| {
        let p = a.clone() * b.clone();
        if i < s {
            acc - p
        } else {
            acc + p
        }
    })
}

/// Squared length of `w` under the space's metric.
pub fn squared_length<F: Scalar>(space: &SpaceDescriptor, w: &[F]) -> Result<F, FrameworkError> {
    if space.kind == SpaceKind::Hyperbolic {
        return Err(FrameworkError::UnsupportedSpace("hyperbolic".into()));
    }
    if w.len() != space.ambient_dim() {
        return Err(FrameworkError::DimensionMismatch { expected: space.ambient_dim(), found: w.len() });
    }
    Ok(bilinear(space, w, w))
}

pub fn vec_sub<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vec_add<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn vec_scale<F: Scalar>(a: &[F], c: &F) -> Vec<F> {
    a.iter().map(|x| x.clone() * c.clone()).collect()
}

/// An assignment of a coordinate vector to every vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration<F> {
    points: Vec<Vec<F>>,
}

impl<F: Scalar> Configuration<F> {
    pub fn new(points: Vec<Vec<F>>) -> Result<Self, FrameworkError> {
        if let Some(first) = points.first() {
            let d = first.len();
            if let Some(p) = points.iter().find(|p| p.len() != d) {
                return Err(FrameworkError::DimensionMismatch { expected: d, found: p.len() });
            }
        }
        Ok(Self { points })
    }

    /// Coordinates `k·dim .. (k+1)·dim` of `flat` become point `k`.
    pub fn from_flat(flat: &[F], dim: usize) -> Self {
        assert!(dim > 0 && flat.len() % dim == 0);
        Self { points: flat.chunks(dim).map(<[F]>::to_vec).collect() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    pub fn points(&self) -> &[Vec<F>] {
        &self.points
    }

    pub fn point(&self, t: usize) -> &[F] {
        &self.points[t]
    }

    pub fn flatten(&self) -> Vec<F> {
        self.points.iter().flatten().cloned().collect()
    }

    pub fn translate(&self, offset: &[F]) -> Self {
        Self { points: self.points.iter().map(|p| vec_add(p, offset)).collect() }
    }

    /// `p(t) ↦ m·p(t)` for every vertex.
    pub fn transform(&self, m: &Matrix<F>) -> Self {
        Self { points: self.points.iter().map(|p| m.mul_vec(p)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { points: self.points.iter().zip(&other.points).map(|(a, b)| vec_add(a, b)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { points: self.points.iter().zip(&other.points).map(|(a, b)| vec_sub(a, b)).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self { points: self.points.iter().map(|p| vec_scale(p, c)).collect() }
    }

    pub fn map_coords(&self, f: impl Fn(usize, &F) -> F) -> Self {
        let points = self.points.iter().map(|p| p.iter().enumerate().map(|(j, x)| f(j, x)).collect()).collect();
        Self { points }
    }

    pub fn with_point(&self, t: usize, p: Vec<F>) -> Self {
        let mut points = self.points.clone();
        points[t] = p;
        Self { points }
    }

    /// Points translated so vertex 0 sits at the origin, as columns of a `dim × (v−1)` matrix.
    pub fn relative_matrix(&self) -> Matrix<F> {
        let dim = self.dim();
        let v = self.len();
        let mut m = Matrix::zeros(dim, v.saturating_sub(1));
        for t in 1..v {
            for i in 0..dim {
                m[(i, t - 1)] = self.points[t][i].clone() - self.points[0][i].clone();
            }
        }
        m
    }
}

/// Graph, configuration and space together.
#[derive(Clone, Debug, PartialEq)]
pub struct Framework<F> {
    graph: Graph,
    config: Configuration<F>,
    space: SpaceDescriptor,
}

impl<F: Scalar> Framework<F> {
    pub fn new(graph: Graph, config: Configuration<F>, space: SpaceDescriptor) -> Result<Self, FrameworkError> {
        space.validate()?;
        if space.kind == SpaceKind::Hyperbolic {
            return Err(FrameworkError::UnsupportedSpace(
                "hyperbolic (use HyperbolicFramework or cone into Minkowski space)".into(),
            ));
        }
        if space.field() != F::FIELD {
            return Err(FrameworkError::FieldMismatch {
                space: space.kind.to_string(),
                expected: space.field(),
                found: F::FIELD,
            });
        }
        if config.len() != graph.vertex_count() {
            return Err(FrameworkError::ConfigLength { expected: graph.vertex_count(), found: config.len() });
        }
        if !config.is_empty() && config.dim() != space.ambient_dim() {
            return Err(FrameworkError::DimensionMismatch { expected: space.ambient_dim(), found: config.dim() });
        }
        Ok(Self { graph, config, space })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn config(&self) -> &Configuration<F> {
        &self.config
    }

    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    pub fn d(&self) -> usize {
        self.space.ambient_dim()
    }

    /// Same graph and space, new configuration.
    pub fn with_config(&self, config: Configuration<F>) -> Result<Self, FrameworkError> {
        Self::new(self.graph.clone(), config, self.space)
    }

    /// Reinterpret the same coordinates in another space of equal dimension and field.
    pub fn with_space(&self, space: SpaceDescriptor) -> Result<Self, FrameworkError> {
        Self::new(self.graph.clone(), self.config.clone(), space)
    }
}

/// Squared length of every edge, in graph order.
pub fn edge_measurements<F: Scalar>(f: &Framework<F>) -> Vec<F> {
    f.graph
        .edges()
        .iter()
        .map(|&(t, u)| {
            let w = vec_sub(f.config.point(t), f.config.point(u));
            bilinear(&f.space, &w, &w)
        })
        .collect()
}

pub fn is_equivalent<F: Scalar>(f: &Framework<F>, g: &Framework<F>) -> Result<bool, FrameworkError> {
    if f.graph != g.graph {
        return Err(FrameworkError::GraphMismatch);
    }
    if f.space != g.space {
        return Err(FrameworkError::SpaceMismatch);
    }
    Ok(edge_measurements(f) == edge_measurements(g))
}

/// Congruence, decided by equality of g-matrices.
pub fn is_congruent<F: Scalar>(
    p: &Configuration<F>,
    q: &Configuration<F>,
    space: &SpaceDescriptor,
) -> Result<bool, FrameworkError> {
    if p.len() != q.len() {
        return Err(FrameworkError::LengthMismatch(p.len(), q.len()));
    }
    Ok(gram(p, space) == gram(q, space))
}

pub fn affine_span_dim<F: Scalar>(p: &Configuration<F>) -> usize {
    if p.len() <= 1 {
        return 0;
    }
    rank(&p.relative_matrix())
}

/// `q(t) = orthogonal·p(t) + translation` for every vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct StrongCongruence<F> {
    pub orthogonal: Matrix<F>,
    pub translation: Vec<F>,
}

impl<F: Scalar> StrongCongruence<F> {
    pub fn apply(&self, p: &Configuration<F>) -> Configuration<F> {
        p.transform(&self.orthogonal).translate(&self.translation)
    }
}

/// Recover the ambient isometry relating two congruent full-span configurations.
///
/// Solves for `O` on a basis of relative vectors of `p`, then checks it on every
/// vertex and against the form.
pub fn strong_congruence_witness<F: Scalar>(
    p: &Configuration<F>,
    q: &Configuration<F>,
    space: &SpaceDescriptor,
) -> Result<StrongCongruence<F>, FrameworkError> {
    if p.len() != q.len() {
        return Err(FrameworkError::LengthMismatch(p.len(), q.len()));
    }
    let d = space.ambient_dim();
    if p.dim() != d || q.dim() != d {
        return Err(FrameworkError::DimensionMismatch { expected: d, found: p.dim().min(q.dim()) });
    }
    if !is_congruent(p, q, space)? {
        return Err(FrameworkError::NotCongruent);
    }
    let span = affine_span_dim(p);
    if span < d {
        return Err(FrameworkError::DegenerateSpan { span, d });
    }
    let pm = p.relative_matrix();
    let qm = q.relative_matrix();
    let (_, basis) = crate::linalg::rref(&pm);
    let pb = pm.select_columns(&basis);
    let qb = qm.select_columns(&basis);
    let o = qb.matmul(&pb.inverse()?);
    if o.matmul(&pm) != qm || !preserves_form(&o, space.negative_count()) {
        return Err(FrameworkError::NotCongruent);
    }
    let translation = vec_sub(q.point(0), &o.mul_vec(p.point(0)));
    Ok(StrongCongruence { orthogonal: o, translation })
}

fn lift(x: &Rational) -> ComplexRational {
    ComplexRational::from_rational(x.clone())
}

/// Real Euclidean framework viewed in ℂ^d.
pub fn embed_real_as_complex(f: &Framework<Rational>) -> Result<Framework<ComplexRational>, FrameworkError> {
    if f.space.kind != SpaceKind::Euclidean {
        return Err(FrameworkError::SpaceMismatch);
    }
    embed_s_valued(f)
}

/// The real framework in 𝔼^d when every coordinate is real.
pub fn real_part_framework(f: &Framework<ComplexRational>) -> Option<Framework<Rational>> {
    let points = f
        .config
        .points()
        .iter()
        .map(|p| p.iter().map(Scalar::as_real).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    Framework::new(f.graph.clone(), Configuration::new(points).ok()?, SpaceDescriptor::euclidean(f.space.d)).ok()
}

/// s-valued complex representation: the first `s` coordinates are multiplied by `i`.
pub fn embed_s_valued(f: &Framework<Rational>) -> Result<Framework<ComplexRational>, FrameworkError> {
    let s = f.space.negative_count();
    let i = imag_unit();
    let config = Configuration {
        points: f
            .config
            .points()
            .iter()
            .map(|p| p.iter().enumerate().map(|(j, x)| if j < s { i.clone() * lift(x) } else { lift(x) }).collect())
            .collect(),
    };
    Framework::new(f.graph.clone(), config, SpaceDescriptor::complex(f.space.ambient_dim()))
}

/// First `s` coordinates purely imaginary, the rest purely real.
pub fn is_s_valued(p: &Configuration<ComplexRational>, s: usize) -> bool {
    p.points().iter().all(|pt| {
        pt.iter().enumerate().all(|(j, z)| if j < s { z.re.is_zero() } else { z.im.is_zero() })
    })
}

/// Convert a real configuration to the complex field without changing coordinates.
pub fn complexify(p: &Configuration<Rational>) -> Configuration<ComplexRational> {
    Configuration { points: p.points().iter().map(|pt| pt.iter().map(lift).collect()).collect() }
}

pub fn unit_vector<F: Scalar>(dim: usize, k: usize) -> Vec<F> {
    (0..dim).map(|i| if i == k { F::one() } else { F::zero() }).collect()
}
