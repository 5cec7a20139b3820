//! Rigidity matrices, equilibrium stresses and the randomized generic global
//! rigidity (GGR) decision by stress-matrix rank.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::framework::{
    bilinear, is_equivalent, vec_sub, Configuration, Framework, FrameworkError, Graph, SpaceDescriptor, SpaceKind,
};
use crate::linalg::{nullspace_basis, rank, Matrix};
use crate::pogorelov::{build_noncongruent_equivalent_pair, pogorelov, FrameworkPair, PogorelovError};
use crate::random::{derive_seed, random_vector, GenericityPolicy};
use crate::scalar::{ComplexRational, Field, Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RigidityError {
    #[error("stress has {found} entries but the graph has {expected} edges")]
    StressLength { expected: usize, found: usize },
    #[error("frameworks are not equivalent")]
    NotEquivalent,
    #[error("R((ρ+σ)/2)·(ρ−σ)/2 ≠ 0 for an equivalent pair")]
    AveragingViolation,
    #[error(transparent)]
    Framework(#[from] FrameworkError),
}

/// `e × (v·d)` matrix; the row of edge `{t,u}` holds `(p(t)−p(u))ᵗS` in the
/// block of `t` and its negative in the block of `u`.
pub fn rigidity_matrix<F: Scalar>(f: &Framework<F>) -> Matrix<F> {
    let d = f.d();
    let s = f.space().negative_count();
    let g = f.graph();
    let mut r = Matrix::zeros(g.edge_count(), g.vertex_count() * d);
    for (k, &(t, u)) in g.edges().iter().enumerate() {
        let w = vec_sub(f.config().point(t), f.config().point(u));
        for i in 0..d {
            let x = if i < s { -w[i].clone() } else { w[i].clone() };
            r[(k, t * d + i)] = x.clone();
            r[(k, u * d + i)] = -x;
        }
    }
    r
}

/// Rank of the rigidity matrix of a generic infinitesimally rigid framework on `v` vertices.
pub fn expected_rigidity_rank(v: usize, d: usize) -> usize {
    if v >= d + 1 {
        v * d - d * (d + 1) / 2
    } else {
        v * v.saturating_sub(1) / 2
    }
}

/// Translations and infinitesimal S-rotations `p ↦ S·K·p` (K skew), flattened per vertex.
pub fn trivial_motions<F: Scalar>(f: &Framework<F>) -> Vec<Vec<F>> {
    let d = f.d();
    let s = f.space().negative_count();
    let pts = f.config().points();
    let mut out = Vec::new();
    for i in 0..d {
        out.push(pts.iter().flat_map(|_| (0..d).map(move |j| if j == i { F::one() } else { F::zero() })).collect());
    }
    for a in 0..d {
        for b in a + 1..d {
            // K = e_a e_bᵗ − e_b e_aᵗ, velocity S·K·p
            let sign = |j: usize| if j < s { -F::one() } else { F::one() };
            let field = pts
                .iter()
                .flat_map(|p| {
                    (0..d).map(|j| {
                        if j == a {
                            sign(a) * p[b].clone()
                        } else if j == b {
                            -(sign(b) * p[a].clone())
                        } else {
                            F::zero()
                        }
                    })
                })
                .collect();
            out.push(field);
        }
    }
    out
}

/// A framework with seeded random coordinates in the given space.
pub fn sample_framework<F: Scalar>(graph: &Graph, space: SpaceDescriptor, seed: u64, bound: u64) -> Framework<F> {
    let d = space.ambient_dim();
    let coords = random_vector::<F>(graph.vertex_count() * d, bound, seed);
    let config = if d == 0 {
        Configuration::new(vec![Vec::new(); graph.vertex_count()]).expect("empty points")
    } else {
        Configuration::from_flat(&coords, d)
    };
    Framework::new(graph.clone(), config, space).expect("sampled framework matches its space")
}

fn locally_rigid_trials<F: Scalar>(graph: &Graph, space: SpaceDescriptor, seed: u64, policy: &GenericityPolicy) -> (bool, Vec<usize>, Vec<u64>) {
    let target = expected_rigidity_rank(graph.vertex_count(), space.ambient_dim());
    let mut ranks = Vec::new();
    let mut seeds = Vec::new();
    for k in 0..policy.retries.max(1) {
        let trial = derive_seed(seed, k as u64);
        let f = sample_framework::<F>(graph, space, trial, policy.bound);
        let r = rank(&rigidity_matrix(&f));
        ranks.push(r);
        seeds.push(trial);
        if r == target {
            return (true, ranks, seeds);
        }
    }
    (false, ranks, seeds)
}

/// Rank of the rigidity matrix reaches its generic maximum at a sampled configuration.
///
/// A deficient sample is retried with fresh seeds; rank can only drop at
/// non-generic points, so one full-rank sample settles the question.
pub fn is_locally_rigid_generic(graph: &Graph, space: SpaceDescriptor, seed: u64, policy: &GenericityPolicy) -> bool {
    match space.field() {
        Field::Real => locally_rigid_trials::<Rational>(graph, space, seed, policy).0,
        Field::Complex => locally_rigid_trials::<ComplexRational>(graph, space, seed, policy).0,
    }
}

/// `ω` with `Σ_u ω_tu (p(t) − p(u)) = 0` at every vertex `t`.
pub fn is_equilibrium_stress<F: Scalar>(f: &Framework<F>, omega: &[F]) -> bool {
    let g = f.graph();
    if omega.len() != g.edge_count() {
        return false;
    }
    let d = f.d();
    let mut sums = vec![vec![F::zero(); d]; g.vertex_count()];
    for (w, &(t, u)) in omega.iter().zip(g.edges()) {
        let diff = vec_sub(f.config().point(t), f.config().point(u));
        for i in 0..d {
            let x = w.clone() * diff[i].clone();
            sums[t][i] = sums[t][i].clone() + x.clone();
            sums[u][i] = sums[u][i].clone() - x;
        }
    }
    sums.iter().flatten().all(Zero::is_zero)
}

/// Basis of the left nullspace of the rigidity matrix.
pub fn equilibrium_stress_basis<F: Scalar>(f: &Framework<F>) -> Vec<Vec<F>> {
    let basis = nullspace_basis(&rigidity_matrix(f).transpose());
    assert!(
        basis.iter().all(|w| is_equilibrium_stress(f, w)),
        "left nullspace vector failed the equilibrium sums"
    );
    basis
}

/// `Ω_tu = −ω_tu` on edges, zero off the graph, rows summing to zero.
pub fn stress_matrix<F: Scalar>(graph: &Graph, omega: &[F]) -> Result<Matrix<F>, RigidityError> {
    if omega.len() != graph.edge_count() {
        return Err(RigidityError::StressLength { expected: graph.edge_count(), found: omega.len() });
    }
    let v = graph.vertex_count();
    let mut m = Matrix::zeros(v, v);
    for (w, &(t, u)) in omega.iter().zip(graph.edges()) {
        m[(t, u)] = -w.clone();
        m[(u, t)] = -w.clone();
        m[(t, t)] = m[(t, t)].clone() + w.clone();
        m[(u, u)] = m[(u, u)].clone() + w.clone();
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictKind {
    Ggr,
    Ggf,
    Flexible,
    SmallComplete,
    SmallIncomplete,
}

impl VerdictKind {
    pub fn is_globally_rigid(self) -> bool {
        matches!(self, VerdictKind::Ggr | VerdictKind::SmallComplete)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::Ggr => "GGR",
            VerdictKind::Ggf => "GGF",
            VerdictKind::Flexible => "FLEXIBLE",
            VerdictKind::SmallComplete => "SMALL_COMPLETE",
            VerdictKind::SmallIncomplete => "SMALL_INCOMPLETE",
        }
    }
}

impl std::fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum WitnessStress {
    Real(Vec<Rational>),
    Complex(Vec<ComplexRational>),
}

impl WitnessStress {
    pub fn to_json(&self) -> Vec<serde_json::Value> {
        match self {
            WitnessStress::Real(w) => w.iter().map(Scalar::to_json).collect(),
            WitnessStress::Complex(w) => w.iter().map(Scalar::to_json).collect(),
        }
    }
}

/// Outcome of a generic global rigidity decision.
#[derive(Clone, Debug, PartialEq)]
pub struct GgrVerdict {
    pub verdict: VerdictKind,
    pub space: SpaceKind,
    pub d: usize,
    pub s: Option<usize>,
    pub field: Field,
    /// Rigidity-matrix ranks of the local rigidity samples.
    pub rigidity_ranks: Vec<usize>,
    /// Stress-matrix ranks of the global rigidity trials.
    pub ranks: Vec<usize>,
    pub seeds: Vec<u64>,
    pub witness_stress: Option<WitnessStress>,
    pub transfer_derived: bool,
}

impl GgrVerdict {
    pub fn is_globally_rigid(&self) -> bool {
        self.verdict.is_globally_rigid()
    }
}

fn ggr_trials<F: Scalar>(graph: &Graph, d: usize, seed: u64, policy: &GenericityPolicy) -> GgrVerdict
where
    WitnessStressOf<F>: IntoWitness<F>,
{
    let v = graph.vertex_count();
    let space = match F::FIELD {
        Field::Real => SpaceDescriptor::euclidean(d),
        Field::Complex => SpaceDescriptor::complex(d),
    };
    let mut verdict = GgrVerdict {
        verdict: VerdictKind::Ggf,
        space: space.kind,
        d,
        s: None,
        field: F::FIELD,
        rigidity_ranks: Vec::new(),
        ranks: Vec::new(),
        seeds: Vec::new(),
        witness_stress: None,
        transfer_derived: false,
    };
    if v <= d + 1 && graph.is_complete() {
        verdict.verdict = VerdictKind::SmallComplete;
        return verdict;
    }

    let (rigid, rranks, rseeds) = locally_rigid_trials::<F>(graph, space, seed, policy);
    verdict.rigidity_ranks = rranks;
    verdict.seeds = rseeds;
    if !rigid {
        verdict.verdict = VerdictKind::Flexible;
        return verdict;
    }
    // an incomplete graph on at most d+1 vertices that still samples as rigid
    if v <= d + 1 {
        verdict.verdict = VerdictKind::SmallIncomplete;
        return verdict;
    }

    let target = v - d - 1;
    for k in 0..policy.retries.max(1) {
        let trial = derive_seed(seed, 0x5700 + k as u64);
        verdict.seeds.push(trial);
        let f = sample_framework::<F>(graph, space, trial, policy.bound);
        let basis = equilibrium_stress_basis(&f);
        let coeffs = random_vector::<F>(basis.len(), policy.bound, derive_seed(trial, 1));
        let mut omega = vec![F::zero(); graph.edge_count()];
        for (c, b) in coeffs.iter().zip(&basis) {
            for (o, x) in omega.iter_mut().zip(b) {
                *o = o.clone() + c.clone() * x.clone();
            }
        }
        let r = rank(&stress_matrix(graph, &omega).expect("stress sized to graph"));
        verdict.ranks.push(r);
        if r == target {
            verdict.verdict = VerdictKind::Ggr;
            verdict.witness_stress = Some(WitnessStressOf::<F>::wrap(omega));
            return verdict;
        }
    }
    verdict
}

/// Helper to route a generic stress vector into [`WitnessStress`].
pub struct WitnessStressOf<F>(std::marker::PhantomData<F>);

pub trait IntoWitness<F> {
    fn wrap(omega: Vec<F>) -> WitnessStress;
}

impl IntoWitness<Rational> for WitnessStressOf<Rational> {
    fn wrap(omega: Vec<Rational>) -> WitnessStress {
        WitnessStress::Real(omega)
    }
}

impl IntoWitness<ComplexRational> for WitnessStressOf<ComplexRational> {
    fn wrap(omega: Vec<ComplexRational>) -> WitnessStress {
        WitnessStress::Complex(omega)
    }
}

/// Generic global rigidity of `graph` in `d` dimensions over ℝ or ℂ.
///
/// A sampled stress matrix of rank `v − d − 1` certifies GGR; failing to reach
/// that rank on every retry yields GGF (correct up to sampling error).
pub fn ggr_test(graph: &Graph, d: usize, field: Field, seed: u64, policy: &GenericityPolicy) -> GgrVerdict {
    match field {
        Field::Real => ggr_trials::<Rational>(graph, d, seed, policy),
        Field::Complex => ggr_trials::<ComplexRational>(graph, d, seed, policy),
    }
}

/// An equivalent, non-congruent pair in 𝕊^d built from a Euclidean reflection pair.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoWitness {
    pub euclidean: FrameworkPair<Rational>,
    pub pseudo: FrameworkPair<Rational>,
    pub equivalent: bool,
    pub congruent: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PseudoVerdict {
    pub verdict: GgrVerdict,
    pub witness: Option<PseudoWitness>,
    pub witness_error: Option<String>,
}

pub fn pseudo_witness(graph: &Graph, d: usize, s: usize, seed: u64) -> Result<PseudoWitness, PogorelovError> {
    let euclidean = build_noncongruent_equivalent_pair(graph, d, seed)?;
    let pseudo = pogorelov(&euclidean, s)?;
    Ok(PseudoWitness {
        equivalent: pseudo.is_equivalent()?,
        congruent: pseudo.is_congruent()?,
        euclidean,
        pseudo,
    })
}

/// Graph-level verdict in 𝕊^d, obtained from the Euclidean verdict by transfer.
///
/// With `want_witness`, a non-rigid verdict carries an exact equivalent
/// non-congruent pseudo-Euclidean pair when the reflection builder applies.
pub fn pseudo_ggr_verdict(
    graph: &Graph,
    d: usize,
    s: usize,
    seed: u64,
    policy: &GenericityPolicy,
    want_witness: bool,
) -> PseudoVerdict {
    let mut verdict = ggr_test(graph, d, Field::Real, seed, policy);
    if s > 0 {
        verdict.space = SpaceKind::Pseudo;
        verdict.s = Some(s);
        verdict.transfer_derived = true;
    }
    let (mut witness, mut witness_error) = (None, None);
    if want_witness && !verdict.is_globally_rigid() {
        match pseudo_witness(graph, d, s, derive_seed(seed, 0x7E57)) {
            Ok(w) => witness = Some(w),
            Err(e) => witness_error = Some(e.to_string()),
        }
    }
    PseudoVerdict { verdict, witness, witness_error }
}

/// `a = (ρ+σ)/2` and its flex `f = (ρ−σ)/2`, checked to satisfy `R(a)·f = 0`.
pub fn averaging_flex<F: Scalar>(rho: &Framework<F>, sigma: &Framework<F>) -> Result<(Framework<F>, Vec<F>), RigidityError> {
    if !is_equivalent(rho, sigma)? {
        return Err(RigidityError::NotEquivalent);
    }
    let half = F::half();
    let a = rho.with_config(rho.config().add(sigma.config()).scale(&half))?;
    let flex = rho.config().sub(sigma.config()).scale(&half).flatten();
    if !rigidity_matrix(&a).mul_vec(&flex).iter().all(Zero::is_zero) {
        return Err(RigidityError::AveragingViolation);
    }
    Ok((a, flex))
}

/// `R(a)·f = 0`.
pub fn is_infinitesimal_flex<F: Scalar>(a: &Framework<F>, flex: &[F]) -> bool {
    rigidity_matrix(a).mul_vec(flex).iter().all(Zero::is_zero)
}

/// Per-edge first-order change of squared length, `β(a_t − a_u, f_t − f_u)`.
pub fn edge_flex_rates<F: Scalar>(a: &Framework<F>, flex: &[F]) -> Vec<F> {
    let d = a.d();
    a.graph()
        .edges()
        .iter()
        .map(|&(t, u)| {
            let w = vec_sub(a.config().point(t), a.config().point(u));
            let df = vec_sub(&flex[t * d..(t + 1) * d], &flex[u * d..(u + 1) * d]);
            bilinear(a.space(), &w, &df)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::DEFAULT_BOUND;
    use crate::scalar::int;

    fn policy() -> GenericityPolicy {
        GenericityPolicy::default()
    }

    fn k4_plus() -> Graph {
        Graph::complete(4).with_vertex(&[0, 1]).unwrap()
    }

    #[test]
    fn single_edge_rows() {
        let cfg = Configuration::new(vec![vec![int(0), int(0)], vec![int(1), int(0)]]).unwrap();
        let f = Framework::new(Graph::path(2), cfg.clone(), SpaceDescriptor::euclidean(2)).unwrap();
        assert_eq!(rigidity_matrix(&f).row(0), &[int(-1), int(0), int(1), int(0)]);
        let f = Framework::new(Graph::path(2), cfg, SpaceDescriptor::pseudo(2, 1)).unwrap();
        assert_eq!(rigidity_matrix(&f).row(0), &[int(1), int(0), int(-1), int(0)]);
    }

    #[test]
    fn trivial_motions_lie_in_kernel() {
        let spaces = [
            SpaceDescriptor::euclidean(2),
            SpaceDescriptor::euclidean(3),
            SpaceDescriptor::pseudo(3, 1),
            SpaceDescriptor::pseudo(3, 2),
            SpaceDescriptor::minkowski(3),
        ];
        for (k, space) in spaces.into_iter().enumerate() {
            let f = sample_framework::<Rational>(&Graph::complete(6), space, k as u64, DEFAULT_BOUND);
            let motions = trivial_motions(&f);
            let d = space.ambient_dim();
            assert_eq!(motions.len(), d * (d + 1) / 2);
            let r = rigidity_matrix(&f);
            for m in &motions {
                assert!(r.mul_vec(m).iter().all(Zero::is_zero));
            }
            let span = Matrix::from_rows(6 * d, motions).unwrap();
            assert_eq!(rank(&span), d * (d + 1) / 2);
        }
        let f = sample_framework::<ComplexRational>(&Graph::complete(5), SpaceDescriptor::complex(2), 9, DEFAULT_BOUND);
        let r = rigidity_matrix(&f);
        for m in trivial_motions(&f) {
            assert!(r.mul_vec(&m).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn local_rigidity_examples() {
        let e2 = SpaceDescriptor::euclidean(2);
        assert!(is_locally_rigid_generic(&Graph::complete(3), e2, 1, &policy()));
        assert!(!is_locally_rigid_generic(&Graph::path(3), e2, 1, &policy()));
        assert!(is_locally_rigid_generic(&Graph::complete(4), SpaceDescriptor::pseudo(2, 1), 1, &policy()));
        assert!(!is_locally_rigid_generic(&Graph::cycle(4), e2, 1, &policy()));
        assert!(is_locally_rigid_generic(&Graph::complete(4), SpaceDescriptor::complex(2), 1, &policy()));
    }

    #[test]
    fn stress_basis_sizes() {
        let e2 = SpaceDescriptor::euclidean(2);
        let tri = sample_framework::<Rational>(&Graph::complete(3), e2, 3, DEFAULT_BOUND);
        assert!(equilibrium_stress_basis(&tri).is_empty());
        let k4 = sample_framework::<Rational>(&Graph::complete(4), e2, 3, DEFAULT_BOUND);
        let basis = equilibrium_stress_basis(&k4);
        assert_eq!(basis.len(), 6 - (4 * 2 - 3));
        let edge = sample_framework::<Rational>(&Graph::path(2), e2, 3, DEFAULT_BOUND);
        assert!(equilibrium_stress_basis(&edge).is_empty());
    }

    #[test]
    fn stress_matrix_properties() {
        let e2 = SpaceDescriptor::euclidean(2);
        let g = Graph::complete(4);
        assert!(stress_matrix(&g, &vec![int(0); 6]).unwrap().is_zero());
        assert!(matches!(stress_matrix(&g, &[int(1)]), Err(RigidityError::StressLength { .. })));

        let f = sample_framework::<Rational>(&g, e2, 8, DEFAULT_BOUND);
        let omega = equilibrium_stress_basis(&f).remove(0);
        let m = stress_matrix(&g, &omega).unwrap();
        assert_eq!(rank(&m), 1);
        assert!(m.is_symmetric());
        for t in 0..4 {
            assert!(m.row(t).iter().fold(Rational::zero(), |a, x| a + x).is_zero());
        }
        for i in 0..2 {
            let col: Vec<Rational> = f.config().points().iter().map(|p| p[i].clone()).collect();
            assert!(m.mul_vec(&col).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn ggr_examples() {
        let v = ggr_test(&Graph::complete(4), 2, Field::Real, 0, &policy());
        assert_eq!(v.verdict, VerdictKind::Ggr);
        assert_eq!(v.ranks.last(), Some(&1));
        let w = match v.witness_stress.as_ref().unwrap() {
            WitnessStress::Real(w) => w.clone(),
            _ => unreachable!(),
        };
        assert_eq!(rank(&stress_matrix(&Graph::complete(4), &w).unwrap()), 1);

        let v = ggr_test(&k4_plus(), 2, Field::Real, 0, &policy());
        assert_eq!(v.verdict, VerdictKind::Ggf);
        assert_eq!(v.ranks, vec![1, 1, 1]);
        assert!(v.witness_stress.is_none());

        assert_eq!(ggr_test(&Graph::path(3), 2, Field::Real, 0, &policy()).verdict, VerdictKind::Flexible);
        assert_eq!(ggr_test(&Graph::complete(3), 2, Field::Real, 0, &policy()).verdict, VerdictKind::SmallComplete);
        assert_eq!(ggr_test(&Graph::path(3), 3, Field::Real, 0, &policy()).verdict, VerdictKind::Flexible);
        assert_eq!(ggr_test(&Graph::complete(2), 3, Field::Real, 0, &policy()).verdict, VerdictKind::SmallComplete);
        assert_eq!(ggr_test(&Graph::cycle(3), 1, Field::Real, 0, &policy()).verdict, VerdictKind::Ggr);
        assert_eq!(ggr_test(&Graph::path(3), 1, Field::Real, 0, &policy()).verdict, VerdictKind::Ggf);
    }

    #[test]
    fn complex_field_agrees_on_small_battery() {
        for g in [Graph::complete(4), k4_plus(), Graph::path(3), Graph::wheel(4)] {
            let r = ggr_test(&g, 2, Field::Real, 4, &policy());
            let c = ggr_test(&g, 2, Field::Complex, 4, &policy());
            assert_eq!(r.verdict, c.verdict);
            assert_eq!(c.field, Field::Complex);
        }
    }

    #[test]
    fn pseudo_verdicts() {
        let v = pseudo_ggr_verdict(&Graph::complete(4), 2, 1, 0, &policy(), true);
        assert_eq!(v.verdict.verdict, VerdictKind::Ggr);
        assert!(v.verdict.transfer_derived);
        assert!(v.witness.is_none());

        let v = pseudo_ggr_verdict(&k4_plus(), 2, 1, 0, &policy(), true);
        assert_eq!(v.verdict.verdict, VerdictKind::Ggf);
        let w = v.witness.unwrap();
        assert!(w.equivalent && !w.congruent);
        assert_eq!(w.pseudo.first().space(), &SpaceDescriptor::pseudo(2, 1));

        let g = Graph::wheel(5);
        let a = pseudo_ggr_verdict(&g, 2, 0, 3, &policy(), false).verdict;
        assert_eq!(a, ggr_test(&g, 2, Field::Real, 3, &policy()));
    }

    #[test]
    fn averaging_examples() {
        let e2 = SpaceDescriptor::euclidean(2);
        let f = sample_framework::<Rational>(&k4_plus(), e2, 2, DEFAULT_BOUND);
        let (a, flex) = averaging_flex(&f, &f).unwrap();
        assert_eq!(a, f);
        assert!(flex.iter().all(Zero::is_zero));

        let pair = build_noncongruent_equivalent_pair(&k4_plus(), 2, 5).unwrap();
        let (a, flex) = averaging_flex(pair.first(), pair.second()).unwrap();
        assert!(is_infinitesimal_flex(&a, &flex));
        assert!(flex.iter().any(|x| !x.is_zero()));

        let g = sample_framework::<Rational>(&k4_plus(), e2, 3, DEFAULT_BOUND);
        assert_eq!(averaging_flex(&f, &g), Err(RigidityError::NotEquivalent));
    }
}
