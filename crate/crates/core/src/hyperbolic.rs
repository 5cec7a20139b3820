//! Coned graphs, the hyperboloid model of ℍ^d inside Minkowski space, and the
//! transfers between hyperbolic, Minkowski-coned and Euclidean-coned frameworks.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::framework::{vec_add, vec_sub, Configuration, Framework, FrameworkError, Graph, SpaceDescriptor, SpaceKind};
use crate::linalg::Matrix;
use crate::pogorelov::{pogorelov, reflection_pair, FrameworkPair, PogorelovError};
use crate::random::{cayley_orthogonal, derive_seed, random_vector, GenericityPolicy};
use crate::rigidity::{ggr_test, GgrVerdict};
use crate::scalar::{int, rat, rational_sqrt, rational_to_f64, Field, Rational};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HyperbolicError {
    #[error("vector lengths differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("ball parameter has |u|² >= 1")]
    OutsideBall,
    #[error("ray is not future timelike (needs ⟨x,x⟩ < 0 and x₁ > 0)")]
    NotTimelike,
    #[error("point {0} has no rational representative on the locus ⟨x,x⟩ = −1")]
    NotOnLocus(usize),
    #[error("scale for vertex {0} is not positive")]
    NonpositiveScale(usize),
    #[error("expected {expected} scales, found {found}")]
    ScaleCount { expected: usize, found: usize },
    #[error("framework is not on a coned graph with the cone vertex last")]
    NotConed,
    #[error("framework is not upper coned")]
    NotUpperConed,
    #[error("framework is not spiky")]
    NotSpiky,
    #[error("base graph is disconnected")]
    Disconnected,
    #[error("framework is not upper cylindrical")]
    NotCylindrical,
    #[error("frameworks are not equivalent")]
    NotEquivalent,
    #[error("second framework is neither upper nor lower coned")]
    SheetAmbiguous,
    #[error("graphs differ")]
    GraphMismatch,
    #[error("float residual {residual:e} exceeds tolerance {tol:e}")]
    ResidualExceeded { residual: f64, tol: f64 },
    #[error("no cylindrical reflection witness found after {0} samples")]
    NoWitness(usize),
    #[error(transparent)]
    Framework(#[from] FrameworkError),
    #[error(transparent)]
    Pogorelov(#[from] PogorelovError),
}

/// `Γ∗{c}`: the base graph plus a cone vertex (index `v`) joined to every base vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConedGraph {
    pub base: Graph,
    pub graph: Graph,
    pub cone_vertex: usize,
}

pub fn cone_graph(g: &Graph) -> ConedGraph {
    let v = g.vertex_count();
    let nbrs: Vec<usize> = (0..v).collect();
    ConedGraph { base: g.clone(), graph: g.with_vertex(&nbrs).expect("cone edges are new"), cone_vertex: v }
}

/// The base graph when `g` is coned with its last vertex, `None` otherwise.
pub fn cone_base(g: &Graph) -> Option<Graph> {
    let v = g.vertex_count();
    if v == 0 || g.degree(v - 1) != v - 1 {
        return None;
    }
    Graph::new(v - 1, g.edges().iter().copied().filter(|&(_, u)| u != v - 1)).ok()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConeTransfer {
    pub base: GgrVerdict,
    pub coned: GgrVerdict,
}

impl ConeTransfer {
    /// Both verdicts decide global rigidity the same way.
    pub fn agrees(&self) -> bool {
        self.base.is_globally_rigid() == self.coned.is_globally_rigid()
    }
}

/// Independent verdicts for `Γ` in 𝔼^d and `Γ∗{c}` in 𝔼^{d+1}.
pub fn cone_verdict_transfer(graph: &Graph, d: usize, seed: u64, policy: &GenericityPolicy) -> ConeTransfer {
    ConeTransfer {
        base: ggr_test(graph, d, Field::Real, derive_seed(seed, 0xBA5E), policy),
        coned: ggr_test(&cone_graph(graph).graph, d + 1, Field::Real, derive_seed(seed, 0xC0DE), policy),
    }
}

/// `−x₁y₁ + Σ_{i≥2} x_i y_i`.
pub fn minkowski_inner(x: &[Rational], y: &[Rational]) -> Result<Rational, HyperbolicError> {
    if x.len() != y.len() {
        return Err(HyperbolicError::DimensionMismatch(x.len(), y.len()));
    }
    Ok(minkowski_unchecked(x, y))
}

fn minkowski_unchecked(x: &[Rational], y: &[Rational]) -> Rational {
    x.iter().zip(y).enumerate().fold(Rational::zero(), |acc, (i, (a, b))| if i == 0 { acc - a * b } else { acc + a * b })
}

pub fn minkowski_inner_f64(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).enumerate().map(|(i, (a, b))| if i == 0 { -a * b } else { a * b }).sum()
}

/// A point of ℍ^d as a future timelike ray in 𝕄^{d+1}.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperbolicPoint {
    ray: Vec<Rational>,
}

impl HyperbolicPoint {
    pub fn from_ray(ray: Vec<Rational>) -> Result<Self, HyperbolicError> {
        if ray.is_empty() || !ray[0].is_positive() || !minkowski_unchecked(&ray, &ray).is_negative() {
            return Err(HyperbolicError::NotTimelike);
        }
        Ok(Self { ray })
    }

    /// `((1+|u|²)/(1−|u|²), 2u/(1−|u|²))`, exactly on the locus.
    pub fn from_ball(u: &[Rational]) -> Result<Self, HyperbolicError> {
        let n: Rational = u.iter().map(|x| x * x).sum();
        if n >= Rational::one() {
            return Err(HyperbolicError::OutsideBall);
        }
        let den = Rational::one() - &n;
        let mut ray = vec![(Rational::one() + &n) / &den];
        ray.extend(u.iter().map(|x| int(2) * x / &den));
        Ok(Self { ray })
    }

    pub fn ray(&self) -> &[Rational] {
        &self.ray
    }

    pub fn dim(&self) -> usize {
        self.ray.len() - 1
    }

    /// `−⟨x,x⟩ > 0`, the squared scale of the ray over the locus point.
    pub fn scale_sq(&self) -> Rational {
        -minkowski_unchecked(&self.ray, &self.ray)
    }

    /// The representative with `⟨x,x⟩ = −1`, when its scale is rational.
    pub fn canonical(&self) -> Option<Vec<Rational>> {
        let r = rational_sqrt(&self.scale_sq())?;
        Some(self.ray.iter().map(|x| x / &r).collect())
    }

    pub fn canonical_f64(&self) -> Vec<f64> {
        let r = rational_to_f64(&self.scale_sq()).sqrt();
        self.ray.iter().map(|x| rational_to_f64(x) / r).collect()
    }

    pub fn transform(&self, o: &Matrix<Rational>) -> Result<Self, HyperbolicError> {
        Self::from_ray(o.mul_vec(&self.ray))
    }
}

/// Hyperbolic distance `arcosh(−⟨x̂,ŷ⟩)` for reporting; verdicts never use it.
pub fn hyperbolic_distance(x: &HyperbolicPoint, y: &HyperbolicPoint) -> f64 {
    (-minkowski_inner_f64(&x.canonical_f64(), &y.canonical_f64())).max(1.0).acosh()
}

/// `⟨x,y⟩/√(⟨x,x⟩⟨y,y⟩)` of two pairs compared exactly through signs and cross-multiplied squares.
fn same_normalized_inner(x: &HyperbolicPoint, y: &HyperbolicPoint, a: &HyperbolicPoint, b: &HyperbolicPoint) -> bool {
    let xy = minkowski_unchecked(&x.ray, &y.ray);
    let ab = minkowski_unchecked(&a.ray, &b.ray);
    xy.signum() == ab.signum() && &xy * &xy * a.scale_sq() * b.scale_sq() == &ab * &ab * x.scale_sq() * y.scale_sq()
}

#[derive(Clone, Debug, PartialEq)]
pub struct HyperbolicFramework {
    graph: Graph,
    d: usize,
    points: Vec<HyperbolicPoint>,
}

impl HyperbolicFramework {
    pub fn new(graph: Graph, d: usize, points: Vec<HyperbolicPoint>) -> Result<Self, HyperbolicError> {
        if points.len() != graph.vertex_count() {
            return Err(FrameworkError::ConfigLength { expected: graph.vertex_count(), found: points.len() }.into());
        }
        if let Some(p) = points.iter().find(|p| p.dim() != d) {
            return Err(FrameworkError::DimensionMismatch { expected: d, found: p.dim() }.into());
        }
        Ok(Self { graph, d, points })
    }

    pub fn from_ball(graph: Graph, d: usize, ball: &[Vec<Rational>]) -> Result<Self, HyperbolicError> {
        let points = ball.iter().map(|u| HyperbolicPoint::from_ball(u)).collect::<Result<_, _>>()?;
        Self::new(graph, d, points)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn points(&self) -> &[HyperbolicPoint] {
        &self.points
    }

    pub fn space(&self) -> SpaceDescriptor {
        SpaceDescriptor::hyperbolic(self.d)
    }

    pub fn transform(&self, o: &Matrix<Rational>) -> Result<Self, HyperbolicError> {
        let points = self.points.iter().map(|p| p.transform(o)).collect::<Result<_, _>>()?;
        Self::new(self.graph.clone(), self.d, points)
    }

    pub fn with_point(&self, t: usize, p: HyperbolicPoint) -> Result<Self, HyperbolicError> {
        let mut points = self.points.clone();
        points[t] = p;
        Self::new(self.graph.clone(), self.d, points)
    }

    pub fn edge_distances(&self) -> Vec<f64> {
        self.graph.edges().iter().map(|&(t, u)| hyperbolic_distance(&self.points[t], &self.points[u])).collect()
    }
}

/// Equal hyperbolic edge lengths, decided exactly.
pub fn hyperbolic_equivalent(f: &HyperbolicFramework, g: &HyperbolicFramework) -> Result<bool, HyperbolicError> {
    if f.graph != g.graph {
        return Err(HyperbolicError::GraphMismatch);
    }
    Ok(f.graph.edges().iter().all(|&(t, u)| same_normalized_inner(&f.points[t], &f.points[u], &g.points[t], &g.points[u])))
}

/// Equal hyperbolic distances between every pair of vertices.
pub fn hyperbolic_congruent(f: &HyperbolicFramework, g: &HyperbolicFramework) -> Result<bool, HyperbolicError> {
    if f.points.len() != g.points.len() {
        return Err(HyperbolicError::GraphMismatch);
    }
    let v = f.points.len();
    Ok((0..v).all(|t| (t + 1..v).all(|u| same_normalized_inner(&f.points[t], &f.points[u], &g.points[t], &g.points[u]))))
}

/// Seeded framework with ball parameters in `[−1/(d+1), 1/(d+1)]^d`.
pub fn sample_hyperbolic_framework(graph: &Graph, d: usize, seed: u64, bound: u64) -> HyperbolicFramework {
    let spread = rat(1, d as i64 + 1);
    let coords = random_vector::<Rational>(graph.vertex_count() * d, bound, seed);
    let ball: Vec<Vec<Rational>> = coords.chunks(d.max(1)).map(|c| c.iter().map(|x| x * &spread).collect()).collect();
    let ball = if d == 0 { vec![Vec::new(); graph.vertex_count()] } else { ball };
    HyperbolicFramework::from_ball(graph.clone(), d, &ball).expect("ball samples lie inside the unit ball")
}

/// Exact isometry of 𝕄^{d+1} fixing the upper sheet.
pub fn minkowski_isometry(seed: u64, dim: usize) -> Matrix<Rational> {
    let o = cayley_orthogonal(seed, dim, 1).expect("Cayley draw");
    if o[(0, 0)].is_negative() {
        o.scale(&-Rational::one())
    } else {
        o
    }
}

/// Cone vertex at `offset`, base vertex `t` at `α_t·x̂_t + offset` with `x̂_t` on the locus.
pub fn cone_to_minkowski(f: &HyperbolicFramework, scales: &[Rational], offset: &[Rational]) -> Result<Framework<Rational>, HyperbolicError> {
    let v = f.points.len();
    if scales.len() != v {
        return Err(HyperbolicError::ScaleCount { expected: v, found: scales.len() });
    }
    if let Some(t) = scales.iter().position(|a| !a.is_positive()) {
        return Err(HyperbolicError::NonpositiveScale(t));
    }
    let dim = f.d + 1;
    if offset.len() != dim {
        return Err(HyperbolicError::DimensionMismatch(offset.len(), dim));
    }
    let mut points = Vec::with_capacity(v + 1);
    for (t, (p, a)) in f.points.iter().zip(scales).enumerate() {
        let x = p.canonical().ok_or(HyperbolicError::NotOnLocus(t))?;
        points.push(vec_add(&x.iter().map(|c| c * a).collect::<Vec<_>>(), offset));
    }
    points.push(offset.to_vec());
    let config = Configuration::new(points)?;
    Ok(Framework::new(cone_graph(&f.graph).graph, config, SpaceDescriptor::minkowski(dim))?)
}

/// Scales in `[1, 3]` and an offset in `[−1, 1]^{d+1}`, both drawn from `seed`.
pub fn cone_to_minkowski_seeded(f: &HyperbolicFramework, seed: u64, bound: u64) -> Result<Framework<Rational>, HyperbolicError> {
    let scales: Vec<Rational> =
        random_vector::<Rational>(f.points.len(), bound, derive_seed(seed, 1)).into_iter().map(|x| x + int(2)).collect();
    let offset = random_vector::<Rational>(f.d + 1, bound, derive_seed(seed, 2));
    cone_to_minkowski(f, &scales, &offset)
}

fn cone_offsets(f: &Framework<Rational>) -> Result<Vec<Vec<Rational>>, HyperbolicError> {
    if cone_base(f.graph()).is_none() {
        return Err(HyperbolicError::NotConed);
    }
    let c = f.config().point(f.graph().vertex_count() - 1);
    Ok(f.config().points()[..f.graph().vertex_count() - 1].iter().map(|p| vec_sub(p, c)).collect())
}

/// Cone vertex moved to the origin; each base vertex becomes the ray it spans.
pub fn minkowski_to_hyperbolic(f: &Framework<Rational>) -> Result<HyperbolicFramework, HyperbolicError> {
    if f.space().kind != SpaceKind::Minkowski {
        return Err(FrameworkError::SpaceMismatch.into());
    }
    if !is_upper_coned(f) {
        return Err(HyperbolicError::NotUpperConed);
    }
    let base = cone_base(f.graph()).ok_or(HyperbolicError::NotConed)?;
    let points = cone_offsets(f)?.into_iter().map(HyperbolicPoint::from_ray).collect::<Result<_, _>>()?;
    HyperbolicFramework::new(base, f.d() - 1, points)
}

fn euclid_sq(w: &[Rational]) -> Rational {
    w.iter().map(|x| x * x).sum()
}

/// Some base vertex farther than 2 from the cone and every base edge shorter than `1/v`.
pub fn is_spiky(f: &Framework<Rational>) -> bool {
    let Ok(offsets) = cone_offsets(f) else { return false };
    let v = offsets.len() as i64;
    let far = offsets.iter().any(|w| euclid_sq(w) > int(4));
    let limit = rat(1, v * v);
    let short = f
        .graph()
        .edges()
        .iter()
        .filter(|&&(_, u)| (u as i64) < v)
        .all(|&(t, u)| euclid_sq(&vec_sub(f.config().point(t), f.config().point(u))) < limit);
    far && short
}

/// `(ρ(t)−ρ(c))₁ > 1` and `Σ_{i≥2}(ρ(t)−ρ(c))_i² < 1` for every base vertex.
pub fn is_upper_cylindrical(f: &Framework<Rational>) -> bool {
    let Ok(offsets) = cone_offsets(f) else { return false };
    offsets.iter().all(|w| w[0] > Rational::one() && euclid_sq(&w[1..]) < Rational::one())
}

fn coned_on_sheet(f: &Framework<Rational>, upper: bool) -> bool {
    let Ok(offsets) = cone_offsets(f) else { return false };
    offsets
        .iter()
        .all(|w| minkowski_unchecked(w, w).is_negative() && if upper { w[0].is_positive() } else { w[0].is_negative() })
}

/// Every base vertex lies in the future timelike cone of the cone vertex.
pub fn is_upper_coned(f: &Framework<Rational>) -> bool {
    coned_on_sheet(f, true)
}

pub fn is_lower_coned(f: &Framework<Rational>) -> bool {
    coned_on_sheet(f, false)
}

/// Float configuration produced by the rotation step, with its congruence residual.
#[derive(Clone, Debug, PartialEq)]
pub struct RotatedConfiguration {
    pub points: Vec<Vec<f64>>,
    pub residual: f64,
}

impl RotatedConfiguration {
    pub fn is_upper_cylindrical(&self) -> bool {
        let c = self.points.last().expect("cone vertex");
        self.points[..self.points.len() - 1].iter().all(|p| {
            let w: Vec<f64> = p.iter().zip(c).map(|(a, b)| a - b).collect();
            w[0] > 1.0 && w[1..].iter().map(|x| x * x).sum::<f64>() < 1.0
        })
    }
}

fn pair_distances(points: &[Vec<f64>]) -> Vec<f64> {
    let mut out = Vec::new();
    for t in 0..points.len() {
        for u in t + 1..points.len() {
            out.push(points[t].iter().zip(&points[u]).map(|(a, b)| (a - b) * (a - b)).sum());
        }
    }
    out
}

/// Reflect a spiky coned framework so the far vertex points along the positive first axis.
pub fn rotate_spiky_to_cylindrical(f: &Framework<Rational>, tol: f64) -> Result<RotatedConfiguration, HyperbolicError> {
    let base = cone_base(f.graph()).ok_or(HyperbolicError::NotConed)?;
    if !base.is_connected() {
        return Err(HyperbolicError::Disconnected);
    }
    if !is_spiky(f) {
        return Err(HyperbolicError::NotSpiky);
    }
    let offsets = cone_offsets(f)?;
    let t0 = offsets.iter().position(|w| euclid_sq(w) > int(4)).expect("spiky has a far vertex");
    let input: Vec<Vec<f64>> = f.config().points().iter().map(|p| p.iter().map(rational_to_f64).collect()).collect();
    let c = input.last().expect("cone vertex").clone();
    let w: Vec<f64> = input[t0].iter().zip(&c).map(|(a, b)| a - b).collect();
    let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut h: Vec<f64> = w.clone();
    h[0] -= norm;
    let hh: f64 = h.iter().map(|x| x * x).sum();
    let reflect = |x: &[f64]| -> Vec<f64> {
        if hh <= f64::EPSILON * norm * norm {
            return x.to_vec();
        }
        let k = 2.0 * x.iter().zip(&h).map(|(a, b)| a * b).sum::<f64>() / hh;
        x.iter().zip(&h).map(|(a, b)| a - k * b).collect()
    };
    let points: Vec<Vec<f64>> = input
        .iter()
        .map(|p| {
            let r = reflect(&p.iter().zip(&c).map(|(a, b)| a - b).collect::<Vec<_>>());
            r.iter().zip(&c).map(|(a, b)| a + b).collect()
        })
        .collect();
    let residual = pair_distances(&input)
        .iter()
        .zip(pair_distances(&points))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if residual > tol {
        return Err(HyperbolicError::ResidualExceeded { residual, tol });
    }
    Ok(RotatedConfiguration { points, residual })
}

/// Pogorelov with `s = 1` on upper-cylindrical Euclidean coned pairs, read in 𝕄^{d+1}.
///
/// The flag reports whether both outputs are again upper cylindrical.
pub fn pogorelov_preserves_cylindrical(pair: &FrameworkPair<Rational>) -> Result<(FrameworkPair<Rational>, bool), HyperbolicError> {
    if !is_upper_cylindrical(pair.first()) || !is_upper_cylindrical(pair.second()) {
        return Err(HyperbolicError::NotCylindrical);
    }
    let out = pogorelov(pair, 1)?;
    let mink = SpaceDescriptor::minkowski(pair.space().d);
    let out = FrameworkPair::new(out.first().with_space(mink)?, out.second().with_space(mink)?, false)?;
    let kept = is_upper_cylindrical(out.first()) && is_upper_cylindrical(out.second());
    Ok((out, kept))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sheet {
    Upper,
    Lower,
}

/// Sheet of the second framework of an equivalent Minkowski coned pair whose first is upper coned.
pub fn sheet_classification(pair: &FrameworkPair<Rational>) -> Result<Sheet, HyperbolicError> {
    if !is_upper_coned(pair.first()) {
        return Err(HyperbolicError::NotUpperConed);
    }
    if !pair.is_equivalent()? {
        return Err(HyperbolicError::NotEquivalent);
    }
    if is_upper_coned(pair.second()) {
        Ok(Sheet::Upper)
    } else if is_lower_coned(pair.second()) {
        Ok(Sheet::Lower)
    } else {
        Err(HyperbolicError::SheetAmbiguous)
    }
}

/// Equivalent non-congruent pair in ℍ^d produced by the cone/Pogorelov pipeline.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperbolicWitness {
    pub euclidean: FrameworkPair<Rational>,
    pub minkowski: FrameworkPair<Rational>,
    pub first: HyperbolicFramework,
    pub second: HyperbolicFramework,
    pub equivalent: bool,
    pub congruent: bool,
}

const WITNESS_SAMPLES: usize = 32;

/// Upper-cylindrical Euclidean coned configuration: cone at the origin, base
/// vertices with first coordinate in `[2, 3]` and the rest in `[−1/(d+1), 1/(d+1)]`.
pub fn sample_cylindrical_coned(graph: &Graph, d: usize, seed: u64, bound: u64) -> Framework<Rational> {
    let coned = cone_graph(graph).graph;
    let dim = d + 1;
    let raw = random_vector::<Rational>(graph.vertex_count() * dim, bound, seed);
    let spread = rat(1, dim as i64);
    let mut points: Vec<Vec<Rational>> = raw
        .chunks(dim)
        .map(|c| c.iter().enumerate().map(|(i, x)| if i == 0 { x / int(2) + rat(5, 2) } else { x * &spread }).collect())
        .collect();
    points.push(vec![Rational::zero(); dim]);
    Framework::new(coned, Configuration::new(points).expect("uniform"), SpaceDescriptor::euclidean(dim)).expect("valid coned sample")
}

/// Exact witness: reflect a vertex of a cylindrical Euclidean coned sample,
/// map the pair to 𝕄^{d+1} by Pogorelov (s = 1), and read off rays.
pub fn hyperbolic_witness(graph: &Graph, d: usize, seed: u64, bound: u64) -> Result<HyperbolicWitness, HyperbolicError> {
    for k in 0..WITNESS_SAMPLES {
        let trial = derive_seed(seed, k as u64);
        let rho = sample_cylindrical_coned(graph, d, trial, bound);
        let euclidean = match reflection_pair(&rho, derive_seed(trial, 1)) {
            Ok(p) => p,
            Err(PogorelovError::NoReflectableVertex { .. }) => return Err(HyperbolicError::NoWitness(k + 1)),
            Err(e) => return Err(e.into()),
        };
        if !is_upper_cylindrical(euclidean.second()) {
            continue;
        }
        let (minkowski, kept) = pogorelov_preserves_cylindrical(&euclidean)?;
        if !kept || sheet_classification(&minkowski)? != Sheet::Upper {
            continue;
        }
        let first = minkowski_to_hyperbolic(minkowski.first())?;
        let second = minkowski_to_hyperbolic(minkowski.second())?;
        let equivalent = hyperbolic_equivalent(&first, &second)?;
        let congruent = hyperbolic_congruent(&first, &second)?;
        return Ok(HyperbolicWitness { euclidean, minkowski, first, second, equivalent, congruent });
    }
    Err(HyperbolicError::NoWitness(WITNESS_SAMPLES))
}

#[derive(Clone, Debug, PartialEq)]
pub struct HyperbolicVerdict {
    pub verdict: GgrVerdict,
    pub witness: Option<HyperbolicWitness>,
    pub witness_error: Option<String>,
}

/// Graph-level verdict in ℍ^d, transferred from the Euclidean verdict.
pub fn hyperbolic_ggr_verdict(graph: &Graph, d: usize, seed: u64, policy: &GenericityPolicy, want_witness: bool) -> HyperbolicVerdict {
    let mut verdict = ggr_test(graph, d, Field::Real, seed, policy);
    verdict.space = SpaceKind::Hyperbolic;
    verdict.s = Some(1);
    verdict.transfer_derived = true;
    let (mut witness, mut witness_error) = (None, None);
    if want_witness && !verdict.is_globally_rigid() {
        match hyperbolic_witness(graph, d, derive_seed(seed, 0x48), policy.bound) {
            Ok(w) => witness = Some(w),
            Err(e) => witness_error = Some(e.to_string()),
        }
    }
    HyperbolicVerdict { verdict, witness, witness_error }
}
