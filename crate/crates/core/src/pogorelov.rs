//! Pogorelov maps between Euclidean and pseudo-Euclidean frameworks, their
//! complex factorization `H⁻¹ ∘ S ∘ H`, and an exact source of equivalent
//! non-congruent pairs by vertex reflection.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::framework::{
    bilinear, is_congruent, is_equivalent, vec_scale, vec_sub, Configuration, Framework, FrameworkError, Graph,
    SpaceDescriptor, SpaceKind,
};
use crate::linalg::{nullspace_basis, Matrix};
use crate::random::{derive_seed, random_vector, DEFAULT_BOUND};
use crate::scalar::{imag_unit, ComplexRational, Rational, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PogorelovError {
    #[error("pair frameworks differ in graph or space, or the space is not {0}")]
    SpaceMismatch(String),
    #[error("signature count {s} exceeds dimension {d}")]
    SignatureOutOfRange { s: usize, d: usize },
    #[error("scale factor is zero")]
    ZeroScale,
    #[error("coordinate {coord} out of range for dimension {d}")]
    CoordinateOutOfRange { coord: usize, d: usize },
    #[error("pair is not stored in Haar coordinates")]
    NotHaarCoordinates,
    #[error("no vertex of degree <= {d} yields an equivalent non-congruent reflection")]
    NoReflectableVertex { d: usize },
    #[error(transparent)]
    Framework(#[from] FrameworkError),
}

/// Two frameworks on the same graph in the same space.
///
/// `haar_coords` marks pairs holding `(a, f)` rather than `(ρ, σ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameworkPair<F> {
    first: Framework<F>,
    second: Framework<F>,
    haar_coords: bool,
}

impl<F: Scalar> FrameworkPair<F> {
    pub fn new(first: Framework<F>, second: Framework<F>, haar_coords: bool) -> Result<Self, FrameworkError> {
        if first.graph() != second.graph() {
            return Err(FrameworkError::GraphMismatch);
        }
        if first.space() != second.space() {
            return Err(FrameworkError::SpaceMismatch);
        }
        Ok(Self { first, second, haar_coords })
    }

    pub fn first(&self) -> &Framework<F> {
        &self.first
    }

    pub fn second(&self) -> &Framework<F> {
        &self.second
    }

    pub fn haar_coords(&self) -> bool {
        self.haar_coords
    }

    pub fn graph(&self) -> &Graph {
        self.first.graph()
    }

    pub fn space(&self) -> &SpaceDescriptor {
        self.first.space()
    }

    pub fn is_equivalent(&self) -> Result<bool, FrameworkError> {
        is_equivalent(&self.first, &self.second)
    }

    pub fn is_congruent(&self) -> Result<bool, FrameworkError> {
        is_congruent(self.first.config(), self.second.config(), self.first.space())
    }

    fn rebuild(&self, a: Configuration<F>, b: Configuration<F>, space: SpaceDescriptor, haar: bool) -> Result<Self, FrameworkError> {
        let first = Framework::new(self.graph().clone(), a, space)?;
        let second = Framework::new(self.graph().clone(), b, space)?;
        Self::new(first, second, haar)
    }
}

fn check_euclidean(pair: &FrameworkPair<Rational>, s: usize) -> Result<usize, PogorelovError> {
    if pair.space().kind != SpaceKind::Euclidean || pair.haar_coords() {
        return Err(PogorelovError::SpaceMismatch("euclidean".into()));
    }
    let d = pair.space().d;
    if s > d {
        return Err(PogorelovError::SignatureOutOfRange { s, d });
    }
    Ok(d)
}

fn check_complex(pair: &FrameworkPair<ComplexRational>, s: usize) -> Result<(), PogorelovError> {
    let d = pair.space().d;
    if s > d {
        return Err(PogorelovError::SignatureOutOfRange { s, d });
    }
    Ok(())
}

/// `(ã + f̃, ã − f̃)` in 𝕊^d, with `a = (ρ+σ)/2`, `f = (ρ−σ)/2` and `f̃` the
/// flex with its first `s` coordinates negated.
pub fn pogorelov(pair: &FrameworkPair<Rational>, s: usize) -> Result<FrameworkPair<Rational>, PogorelovError> {
    let d = check_euclidean(pair, s)?;
    let half = Rational::half();
    let a = pair.first().config().add(pair.second().config()).scale(&half);
    let f = pair.first().config().sub(pair.second().config()).scale(&half);
    let ft = f.map_coords(|j, x| if j < s { -x.clone() } else { x.clone() });
    Ok(pair.rebuild(a.add(&ft), a.sub(&ft), SpaceDescriptor::pseudo(d, s), false)?)
}

/// The Pogorelov map written as a coordinate exchange: the first output takes
/// its first `s` coordinates from σ and the rest from ρ, the second the reverse.
pub fn coordinate_swap(pair: &FrameworkPair<Rational>, s: usize) -> Result<FrameworkPair<Rational>, PogorelovError> {
    let d = check_euclidean(pair, s)?;
    let mix = |lo: &Configuration<Rational>, hi: &Configuration<Rational>| {
        let points = lo
            .points()
            .iter()
            .zip(hi.points())
            .map(|(l, h)| (0..d).map(|j| if j < s { l[j].clone() } else { h[j].clone() }).collect())
            .collect();
        Configuration::new(points).expect("uniform dimension")
    };
    let (rho, sigma) = (pair.first().config(), pair.second().config());
    Ok(pair.rebuild(mix(sigma, rho), mix(rho, sigma), SpaceDescriptor::pseudo(d, s), false)?)
}

/// `(ρ, σ) ↦ ((ρ+σ)/2, (ρ−σ)/2)`.
pub fn haar(pair: &FrameworkPair<ComplexRational>) -> Result<FrameworkPair<ComplexRational>, PogorelovError> {
    let half = ComplexRational::half();
    let (rho, sigma) = (pair.first().config(), pair.second().config());
    Ok(pair.rebuild(rho.add(sigma).scale(&half), rho.sub(sigma).scale(&half), *pair.space(), true)?)
}

/// `(a, f) ↦ (a + f, a − f)`.
pub fn haar_inverse(pair: &FrameworkPair<ComplexRational>) -> Result<FrameworkPair<ComplexRational>, PogorelovError> {
    let (a, f) = (pair.first().config(), pair.second().config());
    Ok(pair.rebuild(a.add(f), a.sub(f), *pair.space(), false)?)
}

/// First `s` coordinates of the first element times `i`, of the second times `−i`.
pub fn s_twist(pair: &FrameworkPair<ComplexRational>, s: usize) -> Result<FrameworkPair<ComplexRational>, PogorelovError> {
    check_complex(pair, s)?;
    let i = imag_unit();
    let mi = -imag_unit();
    let a = pair.first().config().map_coords(|j, x| if j < s { x.clone() * i.clone() } else { x.clone() });
    let b = pair.second().config().map_coords(|j, x| if j < s { x.clone() * mi.clone() } else { x.clone() });
    Ok(pair.rebuild(a, b, *pair.space(), pair.haar_coords())?)
}

/// `H⁻¹ ∘ S ∘ H` on complex pairs.
pub fn complex_pogorelov(pair: &FrameworkPair<ComplexRational>, s: usize) -> Result<FrameworkPair<ComplexRational>, PogorelovError> {
    check_complex(pair, s)?;
    haar_inverse(&s_twist(&haar(pair)?, s)?)
}

/// Scale coordinate `coord` of `a` by `λ` and of `f` by `1/λ` in a Haar-coordinate pair.
pub fn coordinate_scaling(
    pair: &FrameworkPair<ComplexRational>,
    coord: usize,
    lambda: &ComplexRational,
) -> Result<FrameworkPair<ComplexRational>, PogorelovError> {
    if lambda.is_zero() {
        return Err(PogorelovError::ZeroScale);
    }
    if !pair.haar_coords() {
        return Err(PogorelovError::NotHaarCoordinates);
    }
    let d = pair.space().ambient_dim();
    if coord >= d {
        return Err(PogorelovError::CoordinateOutOfRange { coord, d });
    }
    let inv = ComplexRational::one() / lambda.clone();
    let a = pair.first().config().map_coords(|j, x| if j == coord { x.clone() * lambda.clone() } else { x.clone() });
    let f = pair.second().config().map_coords(|j, x| if j == coord { x.clone() * inv.clone() } else { x.clone() });
    Ok(pair.rebuild(a, f, *pair.space(), true)?)
}

/// Reflect vertex `w` across a hyperplane containing the affine hull of its neighbors.
///
/// The hyperplane is padded with seeded random directions when the hull is
/// smaller than a hyperplane. Returns `None` when the sampled normal is null
/// or the reflection fixes `w`.
pub fn reflect_vertex<F: Scalar>(f: &Framework<F>, w: usize, seed: u64) -> Result<Option<Framework<F>>, PogorelovError> {
    let space = *f.space();
    if space.kind == SpaceKind::Hyperbolic {
        return Err(FrameworkError::UnsupportedSpace("hyperbolic".into()).into());
    }
    let d = space.ambient_dim();
    let nbrs = f.graph().neighbors(w);
    let base: Vec<F> = match nbrs.first() {
        Some(&t) => f.config().point(t).to_vec(),
        None => random_vector(d, DEFAULT_BOUND, derive_seed(seed, 0xBA5E)),
    };
    let mut dirs: Vec<Vec<F>> = nbrs[nbrs.len().min(1)..].iter().map(|&t| vec_sub(f.config().point(t), &base)).collect();
    let mut k = 0;
    while dirs.len() < d.saturating_sub(1) {
        dirs.push(random_vector(d, DEFAULT_BOUND, derive_seed(seed, k)));
        k += 1;
    }
    if d == 0 {
        return Ok(None);
    }
    let sign = |j: usize| if j < space.negative_count() { -F::one() } else { F::one() };
    let rows: Vec<Vec<F>> = dirs.iter().map(|v| v.iter().enumerate().map(|(j, x)| x.clone() * sign(j)).collect()).collect();
    let normal = if rows.is_empty() {
        random_vector(d, DEFAULT_BOUND, derive_seed(seed, 0x4E)).into_iter().collect::<Vec<F>>()
    } else {
        match nullspace_basis(&Matrix::from_rows(d, rows).map_err(FrameworkError::from)?).into_iter().next() {
            Some(n) => n,
            None => return Ok(None),
        }
    };
    let nn = bilinear(&space, &normal, &normal);
    if nn.is_zero() {
        return Ok(None);
    }
    let p = f.config().point(w);
    let c = bilinear(&space, &vec_sub(p, &base), &normal) / nn;
    if c.is_zero() {
        return Ok(None);
    }
    let two_c = c.clone() + c;
    let q = vec_sub(p, &vec_scale(&normal, &two_c));
    Ok(Some(f.with_config(f.config().with_point(w, q))?))
}

/// `(ρ, σ)` with `σ` obtained from `ρ` by reflecting one vertex of degree ≤ d,
/// checked equivalent and non-congruent.
pub fn reflection_pair<F: Scalar>(f: &Framework<F>, seed: u64) -> Result<FrameworkPair<F>, PogorelovError> {
    let d = f.d();
    for w in 0..f.graph().vertex_count() {
        if f.graph().degree(w) > d {
            continue;
        }
        for attempt in 0..4 {
            let Some(sigma) = reflect_vertex(f, w, derive_seed(seed, (w * 4 + attempt) as u64))? else {
                continue;
            };
            if is_equivalent(f, &sigma)? && !is_congruent(f.config(), sigma.config(), f.space())? {
                return Ok(FrameworkPair::new(f.clone(), sigma, false)?);
            }
        }
    }
    Err(PogorelovError::NoReflectableVertex { d })
}

/// Exact equivalent non-congruent Euclidean pair on `graph` at a seeded generic configuration.
pub fn build_noncongruent_equivalent_pair(graph: &Graph, d: usize, seed: u64) -> Result<FrameworkPair<Rational>, PogorelovError> {
    let coords = random_vector::<Rational>(graph.vertex_count() * d, DEFAULT_BOUND, seed);
    let config = if d == 0 {
        return Err(PogorelovError::NoReflectableVertex { d });
    } else {
        Configuration::from_flat(&coords, d)
    };
    let rho = Framework::new(graph.clone(), config, SpaceDescriptor::euclidean(d))?;
    reflection_pair(&rho, derive_seed(seed, 0x2EF1))
}
