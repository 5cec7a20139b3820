//! Small-scale realization enumeration used to probe fiber parity without the
//! stress machinery: exact sign enumeration on the line and multi-start
//! damped Newton in the plane.

use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};
use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::framework::{edge_measurements, Configuration, Framework, FrameworkError, Graph, SpaceDescriptor};
use crate::gram::gram;
use crate::random::{derive_seed, rng_from_seed, GenericityPolicy};
use crate::rigidity::{is_locally_rigid_generic, VerdictKind};
use crate::scalar::{complex, rational_sqrt, ComplexRational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not generically locally rigid in the plane")]
    NotLocallyRigid,
    #[error("expected a {expected}-dimensional configuration, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("expected {expected} measurements, found {found}")]
    MeasurementCount { expected: usize, found: usize },
    #[error(transparent)]
    Framework(#[from] FrameworkError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Exactness {
    Exact,
    Heuristic,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Representatives {
    Exact(Vec<Configuration<Rational>>),
    Float(Vec<Vec<Vec<f64>>>),
}

/// Pairwise non-congruent realizations of one measurement vector.
#[derive(Clone, Debug, PartialEq)]
pub struct RealizationSet {
    pub graph: Graph,
    pub d: usize,
    pub measurements: Vec<f64>,
    pub representatives: Representatives,
    pub residual_max: Option<f64>,
    pub starts: usize,
    pub converged: usize,
}

impl RealizationSet {
    pub fn classes(&self) -> usize {
        match &self.representatives {
            Representatives::Exact(r) => r.len(),
            Representatives::Float(r) => r.len(),
        }
    }

    pub fn exactness(&self) -> Exactness {
        match self.representatives {
            Representatives::Exact(_) => Exactness::Exact,
            Representatives::Float(_) => Exactness::Heuristic,
        }
    }
}

/// Every 1D realization of the edge lengths of `base`, up to congruence.
///
/// Signs are assigned along a BFS spanning tree; a branch dies as soon as a
/// non-tree edge between placed vertices has the wrong length.
pub fn enumerate_1d(graph: &Graph, base: &Configuration<Rational>) -> Result<RealizationSet, OracleError> {
    let v = graph.vertex_count();
    if base.len() != v {
        return Err(FrameworkError::ConfigLength { expected: v, found: base.len() }.into());
    }
    if v > 0 && base.dim() != 1 {
        return Err(OracleError::WrongDimension { expected: 1, found: base.dim() });
    }
    if !graph.is_connected() {
        return Err(OracleError::Disconnected);
    }
    let e1 = SpaceDescriptor::euclidean(1);
    let rho = Framework::new(graph.clone(), base.clone(), e1)?;
    let measurements = edge_measurements(&rho);
    if v == 0 {
        return Ok(RealizationSet {
            graph: graph.clone(),
            d: 1,
            measurements: Vec::new(),
            representatives: Representatives::Exact(vec![base.clone()]),
            residual_max: None,
            starts: 0,
            converged: 0,
        });
    }

    // BFS order, parent and tree-edge length per vertex
    let mut order = vec![0];
    let mut parent = vec![usize::MAX; v];
    let mut seen = vec![false; v];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(t) = queue.pop_front() {
        for u in graph.neighbors(t) {
            if !seen[u] {
                seen[u] = true;
                parent[u] = t;
                order.push(u);
                queue.push_back(u);
            }
        }
    }
    let length = |t: usize, u: usize| (&base.point(t)[0] - &base.point(u)[0]).abs();
    let position: Vec<usize> = {
        let mut pos = vec![0; v];
        for (k, &t) in order.iter().enumerate() {
            pos[t] = k;
        }
        pos
    };
    // non-tree edges checked once both endpoints are placed
    let mut checks: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); v];
    for &(t, u) in graph.edges() {
        if parent[u] == t || parent[t] == u {
            continue;
        }
        let (early, late) = if position[t] < position[u] { (t, u) } else { (u, t) };
        checks[late].push((early, length(t, u)));
    }

    let mut found: Vec<Configuration<Rational>> = Vec::new();
    let mut grams = Vec::new();
    let mut x = vec![Rational::zero(); v];
    fn place(
        k: usize,
        order: &[usize],
        parent: &[usize],
        checks: &[Vec<(usize, Rational)>],
        lengths: &dyn Fn(usize, usize) -> Rational,
        x: &mut Vec<Rational>,
        out: &mut Vec<Vec<Rational>>,
    ) {
        if k == order.len() {
            out.push(x.clone());
            return;
        }
        let t = order[k];
        let l = lengths(t, parent[t]);
        let signs: &[i32] = if l.is_zero() { &[1] } else { &[1, -1] };
        for &sg in signs {
            x[t] = if sg > 0 { &x[parent[t]] + &l } else { &x[parent[t]] - &l };
            if checks[t].iter().all(|(u, len)| (&x[t] - &x[*u]).abs() == *len) {
                place(k + 1, order, parent, checks, lengths, x, out);
            }
        }
    }
    let mut raw = Vec::new();
    place(1, &order, &parent, &checks, &length, &mut x, &mut raw);
    for r in raw {
        let config = Configuration::new(r.into_iter().map(|c| vec![c]).collect())?;
        let g = gram(&config, &e1);
        if !grams.contains(&g) {
            grams.push(g);
            found.push(config);
        }
    }
    Ok(RealizationSet {
        graph: graph.clone(),
        d: 1,
        measurements: measurements.iter().map(crate::scalar::rational_to_f64).collect(),
        representatives: Representatives::Exact(found),
        residual_max: Some(0.0),
        starts: 0,
        converged: 0,
    })
}

/// Knobs of the planar multi-start solver.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HeuristicOptions {
    pub n_starts: usize,
    pub seed: u64,
    pub dedup_tol: f64,
    pub residual_tol: f64,
    pub max_iterations: usize,
}

impl Default for HeuristicOptions {
    fn default() -> Self {
        Self { n_starts: 2000, seed: 0, dedup_tol: 1e-4, residual_tol: 1e-8, max_iterations: 200 }
    }
}

// unknowns: x of vertex 1, then (x, y) of vertices 2.. ; vertex 0 pinned at the origin
fn unpack(z: &DVector<f64>, v: usize) -> Vec<[f64; 2]> {
    let mut p = vec![[0.0, 0.0]; v];
    if v >= 2 {
        p[1] = [z[0], 0.0];
    }
    for t in 2..v {
        p[t] = [z[1 + 2 * (t - 2)], z[2 + 2 * (t - 2)]];
    }
    p
}

fn residuals(graph: &Graph, m: &[f64], p: &[[f64; 2]]) -> DVector<f64> {
    DVector::from_iterator(
        m.len(),
        graph.edges().iter().zip(m).map(|(&(t, u), l)| {
            let (dx, dy) = (p[t][0] - p[u][0], p[t][1] - p[u][1]);
            dx * dx + dy * dy - l
        }),
    )
}

fn jacobian(graph: &Graph, p: &[[f64; 2]], n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(graph.edge_count(), n);
    let col = |t: usize, i: usize| -> Option<usize> {
        match t {
            0 => None,
            1 => (i == 0).then_some(0),
            _ => Some(1 + 2 * (t - 2) + i),
        }
    };
    for (k, &(t, u)) in graph.edges().iter().enumerate() {
        for i in 0..2 {
            let g = 2.0 * (p[t][i] - p[u][i]);
            if let Some(c) = col(t, i) {
                j[(k, c)] += g;
            }
            if let Some(c) = col(u, i) {
                j[(k, c)] -= g;
            }
        }
    }
    j
}

fn max_abs(r: &DVector<f64>) -> f64 {
    r.iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// Levenberg–Marquardt from `z`; returns the final point and its max residual.
fn solve(graph: &Graph, m: &[f64], mut z: DVector<f64>, opts: &HeuristicOptions) -> (DVector<f64>, f64) {
    let v = graph.vertex_count();
    let n = z.len();
    let mut p = unpack(&z, v);
    let mut r = residuals(graph, m, &p);
    let mut cost = r.norm_squared();
    let mut lambda = 1e-3;
    for _ in 0..opts.max_iterations {
        if max_abs(&r) <= opts.residual_tol * 1e-2 {
            break;
        }
        let j = jacobian(graph, &p, n);
        let jt = j.transpose();
        let g = &jt * &r;
        let mut a = &jt * &j;
        for i in 0..n {
            a[(i, i)] += lambda * (1.0 + a[(i, i)]);
        }
        let Some(step) = a.lu().solve(&(-g)) else {
            lambda *= 10.0;
            continue;
        };
        let trial = &z + &step;
        let tp = unpack(&trial, v);
        let tr = residuals(graph, m, &tp);
        let tc = tr.norm_squared();
        if tc < cost {
            z = trial;
            p = tp;
            r = tr;
            cost = tc;
            lambda = (lambda * 0.3).max(1e-15);
        } else {
            lambda *= 10.0;
            if lambda > 1e12 {
                break;
            }
        }
    }
    (z, max_abs(&r))
}

fn float_gram(p: &[[f64; 2]]) -> Vec<f64> {
    let mut out = Vec::new();
    for t in 1..p.len() {
        for u in t..p.len() {
            out.push(p[t][0] * p[u][0] + p[t][1] * p[u][1]);
        }
    }
    out
}

/// Max entry difference of two g-matrices over `1 + max |entry|`.
pub fn normalized_gram_distance(a: &[f64], b: &[f64]) -> f64 {
    let scale = 1.0 + a.iter().chain(b).fold(0.0f64, |m, x| m.max(x.abs()));
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())) / scale
}

/// Planar realizations of `measurements` found by seeded multi-start damped Newton.
///
/// Vertex 0 is pinned at the origin and vertex 1 on the first axis; solutions
/// are merged when their g-matrices agree within `dedup_tol`. Classes the
/// solver never reaches are missed.
pub fn enumerate_2d_heuristic(graph: &Graph, measurements: &[f64], opts: &HeuristicOptions) -> Result<RealizationSet, OracleError> {
    if measurements.len() != graph.edge_count() {
        return Err(OracleError::MeasurementCount { expected: graph.edge_count(), found: measurements.len() });
    }
    let policy = GenericityPolicy::default();
    if !is_locally_rigid_generic(graph, SpaceDescriptor::euclidean(2), derive_seed(opts.seed, 0x10CA), &policy) {
        return Err(OracleError::NotLocallyRigid);
    }
    let v = graph.vertex_count();
    let n = if v >= 2 { 2 * v - 3 } else { 0 };
    let spread = measurements.iter().fold(1e-12f64, |a, &x| a.max(x.abs())).sqrt() * 1.5;

    let mut reps: Vec<(Vec<f64>, Vec<[f64; 2]>, f64)> = Vec::new();
    let mut converged = 0;
    for k in 0..opts.n_starts {
        let mut rng = rng_from_seed(derive_seed(opts.seed, k as u64));
        let z0 = DVector::from_iterator(n, (0..n).map(|_| rng.gen_range(-spread..=spread)));
        let (z, res) = solve(graph, measurements, z0, opts);
        if !res.is_finite() || res > opts.residual_tol {
            continue;
        }
        converged += 1;
        let mut p = unpack(&z, v);
        // representative with vertex 1 on the positive axis and the first off-axis vertex above it
        if v >= 2 && p[1][0] < 0.0 {
            p.iter_mut().for_each(|q| q[0] = -q[0]);
        }
        if let Some(q) = p.iter().skip(2).find(|q| q[1].abs() > 1e-9).copied() {
            if q[1] < 0.0 {
                p.iter_mut().for_each(|q| q[1] = -q[1]);
            }
        }
        let g = float_gram(&p);
        match reps.iter_mut().find(|(h, _, _)| normalized_gram_distance(h, &g) < opts.dedup_tol) {
            Some(rep) => rep.2 = rep.2.min(res),
            None => reps.push((g, p, res)),
        }
    }
    let residual_max = reps.iter().map(|r| r.2).fold(None, |a: Option<f64>, x| Some(a.map_or(x, |a| a.max(x))));
    Ok(RealizationSet {
        graph: graph.clone(),
        d: 2,
        measurements: measurements.to_vec(),
        representatives: Representatives::Float(reps.into_iter().map(|(_, p, _)| p.into_iter().map(|q| q.to_vec()).collect()).collect()),
        residual_max,
        starts: opts.n_starts,
        converged,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParityReport {
    pub classes: usize,
    pub parity: Parity,
    pub exactness: Exactness,
    pub residual_max: Option<f64>,
    /// Whether the even-count prediction applies (locally rigid, not globally rigid, v ≥ d+2).
    pub theorem_applies: bool,
    pub consistent_with_theory: bool,
}

/// Compare a class count with what the graph's verdict predicts: one class
/// when globally rigid, an even number when locally rigid but not.
pub fn parity_report(rs: &RealizationSet, verdict: VerdictKind) -> ParityReport {
    let classes = rs.classes();
    let parity = if classes % 2 == 0 { Parity::Even } else { Parity::Odd };
    let theorem_applies = verdict == VerdictKind::Ggf && rs.graph.vertex_count() >= rs.d + 2;
    let consistent_with_theory = if verdict.is_globally_rigid() {
        classes == 1
    } else if theorem_applies {
        parity == Parity::Even
    } else {
        true
    };
    ParityReport { classes, parity, exactness: rs.exactness(), residual_max: rs.residual_max, theorem_applies, consistent_with_theory }
}

/// Exact complex placements of a vertex at squared distances `la`, `lb` from
/// real points `a`, `b` in the plane, when they are Gaussian-rational.
pub fn degree_two_completions(a: &[Rational; 2], b: &[Rational; 2], la: &Rational, lb: &Rational) -> Option<Vec<[ComplexRational; 2]>> {
    let w = [&b[0] - &a[0], &b[1] - &a[1]];
    let dd = &w[0] * &w[0] + &w[1] * &w[1];
    if dd.is_zero() {
        return None;
    }
    let two = Rational::from_integer(2.into());
    let alpha = (la - lb + &dd) / (two * &dd);
    let beta_sq = la / &dd - &alpha * &alpha;
    let (beta, imaginary) = match rational_sqrt(&beta_sq) {
        Some(r) => (r, false),
        None => (rational_sqrt(&-beta_sq.clone())?, true),
    };
    let perp = [-w[1].clone(), w[0].clone()];
    let point = |sign: i32| -> [ComplexRational; 2] {
        let b = if sign > 0 { beta.clone() } else { -beta.clone() };
        std::array::from_fn(|i| {
            let re = &a[i] + &alpha * &w[i];
            let off = &b * &perp[i];
            if imaginary {
                complex(re, off)
            } else {
                complex(re + off, Rational::zero())
            }
        })
    };
    let mut out = vec![point(1)];
    if !beta.is_zero() {
        out.push(point(-1));
    }
    Some(out)
}

/// Every non-real solution has its conjugate in the list.
pub fn conjugates_paired(solutions: &[[ComplexRational; 2]]) -> bool {
    solutions.iter().all(|s| {
        let real = s.iter().all(|z| z.im.is_zero());
        real || solutions.iter().any(|t| t.iter().zip(s).all(|(x, y)| *x == y.conj()))
    })
}
