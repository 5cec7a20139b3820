//! Seeded sampling used as the operational stand-in for genericity, and exact
//! random elements of the (pseudo-)orthogonal groups.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{LinalgError, Matrix};
use crate::scalar::{int, rat, Rational, Scalar};

/// Default coordinate range for generic sampling.
pub const DEFAULT_BOUND: u64 = 1_000_000;
/// Default number of fresh draws before a generic property is declared absent.
pub const DEFAULT_RETRIES: usize = 3;

const CAYLEY_MAX_DRAWS: usize = 16;

/// Sampling knobs shared by every randomized decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityPolicy {
    pub bound: u64,
    pub retries: usize,
}

impl Default for GenericityPolicy {
    fn default() -> Self {
        Self { bound: DEFAULT_BOUND, retries: DEFAULT_RETRIES }
    }
}

/// Derive an independent child seed (splitmix64 finalizer over `base ^ stream`).
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    let mut z = base ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0x6A09_E667_F3BC_C909);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `dim` entries, each an integer in `[-bound, bound]` divided by `bound`.
pub fn random_vector<F: Scalar>(dim: usize, bound: u64, seed: u64) -> Vec<F> {
    assert!(bound >= 2, "sampling bound must be at least 2");
    let mut rng = rng_from_seed(seed);
    (0..dim).map(|_| F::sample(&mut rng, bound)).collect()
}

pub fn random_rational_vector(dim: usize, bound: u64, seed: u64) -> Vec<Rational> {
    random_vector(dim, bound, seed)
}

/// Signature matrix `diag(-1 × s, +1 × (dim − s))`.
pub fn signature_matrix<F: Scalar>(dim: usize, s: usize) -> Matrix<F> {
    let d: Vec<F> = (0..dim).map(|i| if i < s { -F::one() } else { F::one() }).collect();
    Matrix::diagonal(&d)
}

/// Cayley transform `(I − A)(I + A)⁻¹` of `A = S·K` for a skew `K`.
///
/// `A` then satisfies `(SA)ᵗ = −SA`, so the result preserves the form `S`.
pub fn cayley_from_skew(skew: &Matrix<Rational>, s: usize) -> Result<Matrix<Rational>, LinalgError> {
    let n = skew.rows();
    if skew.transpose() != skew.scale(&-Rational::one()) {
        return Err(LinalgError::DimensionMismatch("Cayley generator must be skew-symmetric".into()));
    }
    let sig = signature_matrix::<Rational>(n, s);
    let a = sig.matmul(skew);
    let id = Matrix::identity(n);
    let inv = id.add(&a).inverse()?;
    Ok(id.sub(&a).matmul(&inv))
}

fn random_skew(dim: usize, rng: &mut ChaCha8Rng) -> Matrix<Rational> {
    let mut k = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in i + 1..dim {
            let x = rat(rng.gen_range(-9..=9), rng.gen_range(1..=4));
            k[(i, j)] = x.clone();
            k[(j, i)] = -x;
        }
    }
    k
}

/// Exact random element `O` with `OᵗSO = S`, `S = diag(−1 × s, +1 × (dim − s))`.
pub fn cayley_orthogonal(skew_seed: u64, dim: usize, signature_s: usize) -> Result<Matrix<Rational>, LinalgError> {
    assert!(signature_s <= dim, "signature count exceeds dimension");
    let mut rng = rng_from_seed(skew_seed);
    for _ in 0..CAYLEY_MAX_DRAWS {
        let k = random_skew(dim, &mut rng);
        match cayley_from_skew(&k, signature_s) {
            Ok(o) => return Ok(o),
            Err(LinalgError::Singular) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(LinalgError::SingularCayley(CAYLEY_MAX_DRAWS))
}

/// Cayley element composed with a seeded diagonal ±1 flip, reaching every
/// connected component of the group.
pub fn random_orthogonal(seed: u64, dim: usize, signature_s: usize) -> Result<Matrix<Rational>, LinalgError> {
    let o = cayley_orthogonal(seed, dim, signature_s)?;
    let mut rng = rng_from_seed(derive_seed(seed, 0xF11F));
    let flips: Vec<Rational> = (0..dim).map(|_| if rng.gen_bool(0.5) { int(-1) } else { int(1) }).collect();
    Ok(Matrix::diagonal(&flips).matmul(&o))
}

/// Check `OᵗSO = S` exactly.
pub fn preserves_form<F: Scalar>(o: &Matrix<F>, s: usize) -> bool {
    let sig = signature_matrix::<F>(o.rows(), s);
    o.transpose().matmul(&sig).matmul(o) == sig
}

pub fn is_zero_vector<F: Scalar>(v: &[F]) -> bool {
    v.iter().all(Zero::is_zero)
}
