//! Conjugation-free Gram matrices ("g-matrices") relative to vertex 0, the
//! squared-length projections they induce, and recovery of s-valued
//! configurations from real g-matrices.

use num_complex::Complex;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::framework::{bilinear, vec_sub, Configuration, Graph, SpaceDescriptor};
use crate::linalg::{inertia, ldl_decomposition, rank, InertiaSignature, LinalgError, Matrix};
use crate::scalar::{imag_unit, rational_sqrt, rational_to_f64, ComplexRational, Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GramError {
    #[error("pi_tu needs two distinct vertices, got {0} twice")]
    SameVertex(usize),
    #[error("vertex {vertex} out of range for {v} vertices")]
    VertexOutOfRange { vertex: usize, v: usize },
    #[error("g-matrix has rank {rank} > ambient dimension {d}")]
    RankExceedsDimension { rank: usize, d: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Symmetric `(v−1)×(v−1)` matrix of inner products `β(p(t)−p(0), p(u)−p(0))`.
#[derive(Clone, Debug, PartialEq)]
pub struct GMatrix<F> {
    entries: Matrix<F>,
}

impl<F: Scalar> GMatrix<F> {
    /// Wrap a matrix, checking that it is square and symmetric.
    pub fn new(entries: Matrix<F>) -> Result<Self, LinalgError> {
        if !entries.is_square() {
            return Err(LinalgError::NotSquare { rows: entries.rows(), cols: entries.cols() });
        }
        if !entries.is_symmetric() {
            return Err(LinalgError::NotSymmetric);
        }
        Ok(Self { entries })
    }

    pub fn side(&self) -> usize {
        self.entries.rows()
    }

    /// Number of vertices the matrix describes.
    pub fn vertex_count(&self) -> usize {
        self.side() + 1
    }

    pub fn entries(&self) -> &Matrix<F> {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        rank(&self.entries)
    }
}

pub fn gram<F: Scalar>(p: &Configuration<F>, space: &SpaceDescriptor) -> GMatrix<F> {
    let v = p.len();
    let side = v.saturating_sub(1);
    let rel: Vec<Vec<F>> = (1..v).map(|t| vec_sub(p.point(t), p.point(0))).collect();
    let mut m = Matrix::zeros(side, side);
    for t in 0..side {
        for u in t..side {
            let x = bilinear(space, &rel[t], &rel[u]);
            m[(u, t)] = x.clone();
            m[(t, u)] = x;
        }
    }
    GMatrix { entries: m }
}

/// Squared length of `{t,u}` read off the g-matrix.
pub fn pi_tu<F: Scalar>(m: &GMatrix<F>, t: usize, u: usize) -> Result<F, GramError> {
    let v = m.vertex_count();
    for x in [t, u] {
        if x >= v {
            return Err(GramError::VertexOutOfRange { vertex: x, v });
        }
    }
    if t == u {
        return Err(GramError::SameVertex(t));
    }
    let g = &m.entries;
    let (t, u) = (t.min(u), t.max(u));
    if t == 0 {
        return Ok(g[(u - 1, u - 1)].clone());
    }
    let (a, b) = (t - 1, u - 1);
    Ok(g[(a, a)].clone() + g[(b, b)].clone() - g[(a, b)].clone() - g[(a, b)].clone())
}

/// All-pairs squared-length matrix (`v×v`, zero diagonal).
pub fn pi_k<F: Scalar>(m: &GMatrix<F>) -> Matrix<F> {
    let v = m.vertex_count();
    let mut out = Matrix::zeros(v, v);
    for t in 0..v {
        for u in t + 1..v {
            let x = pi_tu(m, t, u).expect("indices in range");
            out[(u, t)] = x.clone();
            out[(t, u)] = x;
        }
    }
    out
}

/// Squared length of every edge of `graph`, in graph order.
pub fn pi_e<F: Scalar>(m: &GMatrix<F>, graph: &Graph) -> Result<Vec<F>, GramError> {
    graph.edges().iter().map(|&(t, u)| pi_tu(m, t, u)).collect()
}

pub fn gmatrix_signature<F: Scalar>(m: &GMatrix<F>) -> Result<InertiaSignature, GramError> {
    Ok(inertia(&m.entries)?)
}

/// An s-valued configuration given through a scaled real basis.
///
/// Coordinate `j` of vertex `t ≥ 1` is `ε_j · √scales_sq[j] · rows[j][t−1]`,
/// with `ε_j = i` for `j < s` and `1` otherwise; vertex 0 is the origin and
/// coordinates `rows.len()..d` are zero. `scales_sq` are positive rationals,
/// so every identity about the configuration can be checked exactly without
/// taking the square roots.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledConfiguration {
    pub d: usize,
    pub s: usize,
    pub rows: Vec<Vec<Rational>>,
    pub scales_sq: Vec<Rational>,
    /// Set when the input had rank below `d`; other signatures may then share its congruence class.
    pub rank_deficient: bool,
}

impl ScaledConfiguration {
    pub fn vertex_count(&self) -> usize {
        self.rows.first().map_or(1, |r| r.len() + 1)
    }

    /// `Pᵗ S P` evaluated from the certificate.
    pub fn gram(&self) -> GMatrix<Rational> {
        let side = self.vertex_count() - 1;
        let mut m = Matrix::<Rational>::zeros(side, side);
        for (j, (row, c)) in self.rows.iter().zip(&self.scales_sq).enumerate() {
            let w = if j < self.s { -c.clone() } else { c.clone() };
            for t in 0..side {
                if row[t].is_zero() {
                    continue;
                }
                for u in 0..side {
                    m[(t, u)] = m[(t, u)].clone() + w.clone() * row[t].clone() * row[u].clone();
                }
            }
        }
        GMatrix { entries: m }
    }

    /// The first `s` coordinates are imaginary by construction; this checks the layout.
    pub fn is_s_valued(&self) -> bool {
        self.s <= self.rows.len() && self.rows.len() <= self.d && self.scales_sq.iter().all(|c| c.is_positive())
    }

    /// Exact coordinates, available when every scale is a rational square.
    pub fn to_configuration(&self) -> Option<Configuration<ComplexRational>> {
        let roots = self.scales_sq.iter().map(rational_sqrt).collect::<Option<Vec<_>>>()?;
        let v = self.vertex_count();
        let i = imag_unit();
        let mut points = vec![vec![ComplexRational::zero(); self.d]; v];
        for (j, (row, r)) in self.rows.iter().zip(&roots).enumerate() {
            for t in 1..v {
                let x = ComplexRational::from_rational(row[t - 1].clone() * r.clone());
                points[t][j] = if j < self.s { i.clone() * x } else { x };
            }
        }
        Configuration::new(points).ok()
    }

    /// Floating-point coordinates for reporting.
    pub fn to_f64(&self) -> Vec<Vec<Complex<f64>>> {
        let v = self.vertex_count();
        let mut points = vec![vec![Complex::new(0.0, 0.0); self.d]; v];
        for (j, (row, c)) in self.rows.iter().zip(&self.scales_sq).enumerate() {
            let r = rational_to_f64(c).sqrt();
            for t in 1..v {
                let x = rational_to_f64(&row[t - 1]) * r;
                points[t][j] = if j < self.s { Complex::new(0.0, x) } else { Complex::new(x, 0.0) };
            }
        }
        points
    }
}

/// Build an s-valued configuration whose g-matrix equals `m`.
///
/// `m = BᵗDB`; zero rows of `B` are dropped, negative squares are put first,
/// and row `j` carries scale `|D_jj|`.
pub fn configuration_from_real_gmatrix<F: Scalar>(m: &GMatrix<F>, d: usize) -> Result<ScaledConfiguration, GramError> {
    let ldl = ldl_decomposition(&m.entries)?;
    let sig = ldl.signature();
    if sig.rank() > d {
        return Err(GramError::RankExceedsDimension { rank: sig.rank(), d });
    }
    let mut order: Vec<usize> = (0..ldl.d.len()).filter(|&j| ldl.d[j].is_negative()).collect();
    order.extend((0..ldl.d.len()).filter(|&j| ldl.d[j].is_positive()));
    Ok(ScaledConfiguration {
        d,
        s: sig.neg,
        rows: order.iter().map(|&j| ldl.b.row(j).to_vec()).collect(),
        scales_sq: order.iter().map(|&j| ldl.d[j].abs()).collect(),
        rank_deficient: sig.rank() < d,
    })
}

/// Members whose inertia differs from the expected triple (`None` = not real).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SignatureReport {
    pub checked: usize,
    pub mismatches: Vec<(usize, Option<InertiaSignature>)>,
}

impl SignatureReport {
    pub fn all_match(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn signature_consistency_check<F: Scalar>(ms: &[GMatrix<F>], expected: InertiaSignature) -> SignatureReport {
    let mismatches = ms
        .iter()
        .enumerate()
        .filter_map(|(k, m)| match gmatrix_signature(m) {
            Ok(sig) if sig == expected => None,
            Ok(sig) => Some((k, Some(sig))),
            Err(_) => Some((k, None)),
        })
        .collect();
    SignatureReport { checked: ms.len(), mismatches }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framework::{edge_measurements, embed_s_valued, is_s_valued, Framework};
    use crate::random::{random_vector, DEFAULT_BOUND};
    use crate::scalar::{complex, int};
    use num_traits::One;

    fn qp(points: &[&[i64]]) -> Configuration<Rational> {
        Configuration::new(points.iter().map(|p| p.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn gram_examples() {
        let e2 = SpaceDescriptor::euclidean(2);
        let g = gram(&qp(&[&[0, 0], &[1, 0], &[0, 1]]), &e2);
        assert_eq!(g.entries(), &Matrix::identity(2));

        let iso = Configuration::new(vec![
            vec![ComplexRational::zero(), ComplexRational::zero()],
            vec![imag_unit(), ComplexRational::one()],
        ])
        .unwrap();
        let g = gram(&iso, &SpaceDescriptor::complex(2));
        assert_eq!(g.entries(), &Matrix::zeros(1, 1));

        let g = gram(&qp(&[&[0, 0], &[1, 0]]), &SpaceDescriptor::pseudo(2, 1));
        assert_eq!(g.entries()[(0, 0)], int(-1));
    }

    #[test]
    fn pi_examples() {
        let g = GMatrix::new(Matrix::<Rational>::identity(2)).unwrap();
        assert_eq!(pi_tu(&g, 0, 1).unwrap(), int(1));
        assert_eq!(pi_tu(&g, 1, 2).unwrap(), int(2));
        assert_eq!(pi_tu(&g, 2, 2), Err(GramError::SameVertex(2)));
        assert!(matches!(pi_tu(&g, 0, 3), Err(GramError::VertexOutOfRange { .. })));

        let expected = Matrix::from_rows(
            3,
            vec![vec![int(0), int(1), int(1)], vec![int(1), int(0), int(2)], vec![int(1), int(2), int(0)]],
        )
        .unwrap();
        assert_eq!(pi_k(&g), expected);
        assert!(pi_k(&GMatrix::new(Matrix::<Rational>::zeros(3, 3)).unwrap()).is_zero());
        assert!(pi_e(&g, &Graph::empty(3)).unwrap().is_empty());

        let k3 = Graph::complete(3);
        assert_eq!(pi_e(&g, &k3).unwrap(), vec![int(1), int(1), int(2)]);
    }

    #[test]
    fn pi_matches_direct_measurements() {
        for seed in 0..50u64 {
            let d = 1 + (seed % 3) as usize;
            let v = 2 + (seed % 5) as usize;
            let s = (seed as usize) % (d + 1);
            let space = SpaceDescriptor::pseudo(d, s);
            let p = Configuration::from_flat(&random_vector::<Rational>(v * d, DEFAULT_BOUND, seed), d);
            let f = Framework::new(Graph::complete(v), p.clone(), space).unwrap();
            assert_eq!(pi_e(&gram(&p, &space), f.graph()).unwrap(), edge_measurements(&f));
        }
    }

    #[test]
    fn signature_examples() {
        let e2 = SpaceDescriptor::euclidean(2);
        let p = Configuration::from_flat(&random_vector::<Rational>(8, DEFAULT_BOUND, 3), 2);
        assert_eq!(gmatrix_signature(&gram(&p, &e2)).unwrap(), InertiaSignature::new(0, 2, 1));
        assert_eq!(
            gmatrix_signature(&gram(&p, &SpaceDescriptor::pseudo(2, 1))).unwrap(),
            InertiaSignature::new(1, 1, 1)
        );
        let z = GMatrix::new(Matrix::<Rational>::zeros(4, 4)).unwrap();
        assert_eq!(gmatrix_signature(&z).unwrap(), InertiaSignature::new(0, 0, 4));
    }

    #[test]
    fn recovery_examples() {
        let m = GMatrix::new(Matrix::from_rows(1, vec![vec![int(-1)]]).unwrap()).unwrap();
        let sc = configuration_from_real_gmatrix(&m, 1).unwrap();
        let p = sc.to_configuration().unwrap();
        assert_eq!(p.points(), &[vec![ComplexRational::zero()], vec![imag_unit()]]);
        assert_eq!(gram(&p, &SpaceDescriptor::complex(1)), GMatrix::new(m.entries().map(|x| ComplexRational::from_rational(x.clone()))).unwrap());

        let id = GMatrix::new(Matrix::<Rational>::identity(2)).unwrap();
        let sc = configuration_from_real_gmatrix(&id, 2).unwrap();
        let p = sc.to_configuration().unwrap();
        assert!(is_s_valued(&p, 0));
        assert_eq!(sc.gram(), id);

        assert!(matches!(
            configuration_from_real_gmatrix(&id, 1),
            Err(GramError::RankExceedsDimension { rank: 2, d: 1 })
        ));
        let cx = GMatrix::new(Matrix::from_rows(1, vec![vec![complex(int(0), int(1))]]).unwrap()).unwrap();
        assert_eq!(configuration_from_real_gmatrix(&cx, 1), Err(GramError::Linalg(LinalgError::NotReal)));
    }

    #[test]
    fn recovery_round_trip_is_congruent() {
        for seed in 0..20u64 {
            let d = 1 + (seed % 3) as usize;
            let s = (seed as usize / 3) % (d + 1);
            let space = SpaceDescriptor::pseudo(d, s);
            let p = Configuration::from_flat(&random_vector::<Rational>((d + 3) * d, DEFAULT_BOUND, seed), d);
            let g = gram(&p, &space);
            let sc = configuration_from_real_gmatrix(&g, d).unwrap();
            assert_eq!(sc.s, s);
            assert!(sc.is_s_valued());
            assert!(!sc.rank_deficient);
            assert_eq!(sc.gram(), g);
            // through the s-valued complex representation of p
            let f = Framework::new(Graph::empty(d + 3), p, space).unwrap();
            let pc = embed_s_valued(&f).unwrap();
            let gc = gram(pc.config(), &SpaceDescriptor::complex(d));
            assert_eq!(gc.entries().as_real().unwrap(), *g.entries());
        }
    }

    #[test]
    fn consistency_report() {
        let e2 = SpaceDescriptor::euclidean(2);
        let expected = InertiaSignature::new(0, 2, 2);
        let ms: Vec<_> = (0..5u64)
            .map(|k| gram(&Configuration::from_flat(&random_vector::<Rational>(10, DEFAULT_BOUND, k), 2), &e2))
            .collect();
        assert!(signature_consistency_check(&ms, expected).all_match());

        let mut cms: Vec<GMatrix<ComplexRational>> =
            ms.iter().map(|m| GMatrix::new(m.entries().map(|x| ComplexRational::from_rational(x.clone()))).unwrap()).collect();
        let mut imp = cms[0].entries().clone();
        imp[(0, 1)] = complex(int(1), int(1));
        imp[(1, 0)] = complex(int(1), int(1));
        cms.push(GMatrix::new(imp).unwrap());
        let r = signature_consistency_check(&cms, expected);
        assert_eq!(r.mismatches, vec![(5, None)]);

        assert_eq!(signature_consistency_check::<Rational>(&[], expected), SignatureReport::default());
    }
}
