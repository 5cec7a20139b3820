//! Exact scalar fields: arbitrary-precision rationals and Gaussian rationals.
//!
//! Every rank, signature and equality decision in the crate runs over one of
//! these two fields. Conjugation is only ever applied explicitly.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Exact Gaussian rational `re + i·im`.
pub type ComplexRational = Complex<BigRational>;

/// Which field a value, matrix or configuration lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Field::Real => write!(f, "real"),
            Field::Complex => write!(f, "complex"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarParseError {
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("rational literal {0:?} has zero denominator")]
    ZeroDenominator(String),
    #[error("expected {expected} scalar, found {found}")]
    WrongShape { expected: &'static str, found: String },
}

/// Integral domain used by fraction-free elimination.
///
/// `exact_div` is only called when the quotient is known to be exact.
pub trait IntegralDomain: Clone + PartialEq + Zero + One + Mul<Output = Self> + Sub<Output = Self> {
    fn exact_div(&self, other: &Self) -> Self;
}

impl IntegralDomain for BigInt {
    fn exact_div(&self, other: &Self) -> Self {
        debug_assert!((self % other).is_zero());
        self / other
    }
}

impl IntegralDomain for Complex<BigInt> {
    fn exact_div(&self, other: &Self) -> Self {
        let norm = &other.re * &other.re + &other.im * &other.im;
        let num = self * other.conj();
        debug_assert!((&num.re % &norm).is_zero() && (&num.im % &norm).is_zero());
        Complex::new(num.re / &norm, num.im / &norm)
    }
}

/// An exact field element.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    type Integral: IntegralDomain;
    const FIELD: Field;

    fn from_rational(r: Rational) -> Self;

    fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// The value as a rational, if its imaginary part vanishes.
    fn as_real(&self) -> Option<Rational>;

    fn conj(&self) -> Self;

    /// Multiply a row by the lcm of its denominators and return the integral entries.
    fn integral_row(row: &[Self]) -> Vec<Self::Integral>;

    /// Uniform sample: every component is an integer in `[-bound, bound]` over `bound`.
    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: u64) -> Self;

    fn to_c64(&self) -> Complex<f64>;

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self, ScalarParseError>;

    fn half() -> Self {
        Self::from_rational(Rational::new(BigInt::one(), BigInt::from(2)))
    }
}

fn lcm_denominators<'a>(dens: impl Iterator<Item = &'a BigInt>) -> BigInt {
    dens.fold(BigInt::one(), |acc, d| acc.lcm(d))
}

fn sample_rational<R: Rng + ?Sized>(rng: &mut R, bound: u64) -> Rational {
    let b = bound as i64;
    let n: i64 = rng.gen_range(-b..=b);
    Rational::new(BigInt::from(n), BigInt::from(b))
}

/// Canonical `p/q` (or `p`) string form of a rational.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational, ScalarParseError> {
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| ScalarParseError::BadRational(s.into()))?;
        let q = BigInt::from_str(q.trim()).map_err(|_| ScalarParseError::BadRational(s.into()))?;
        if q.is_zero() {
            return Err(ScalarParseError::ZeroDenominator(s.into()));
        }
        Ok(Rational::new(p, q))
    } else {
        BigInt::from_str(t)
            .map(Rational::from_integer)
            .map_err(|_| ScalarParseError::BadRational(s.into()))
    }
}

fn rational_from_json(v: &Value) -> Result<Rational, ScalarParseError> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(BigInt::from(n.as_i64().unwrap()))),
        Value::Number(n) if n.is_u64() => Ok(Rational::from_integer(BigInt::from(n.as_u64().unwrap()))),
        other => Err(ScalarParseError::WrongShape { expected: "rational", found: other.to_string() }),
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for direct conversion
        let shift = r.denom().bits().max(r.numer().bits()) as i64 - 60;
        let scale = BigInt::one() << shift.max(0) as usize;
        let n = (r.numer() / &scale).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() / &scale).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact square root of a non-negative rational, when it is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn complex(re: Rational, im: Rational) -> ComplexRational {
    Complex::new(re, im)
}

pub fn imag_unit() -> ComplexRational {
    Complex::new(Rational::zero(), Rational::one())
}

impl Scalar for Rational {
    type Integral = BigInt;
    const FIELD: Field = Field::Real;

    fn from_rational(r: Rational) -> Self {
        r
    }

    fn as_real(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn integral_row(row: &[Self]) -> Vec<BigInt> {
        let l = lcm_denominators(row.iter().map(|x| x.denom()));
        row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: u64) -> Self {
        sample_rational(rng, bound)
    }

    fn to_c64(&self) -> Complex<f64> {
        Complex::new(rational_to_f64(self), 0.0)
    }

    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self, ScalarParseError> {
        rational_from_json(v)
    }
}

impl Scalar for ComplexRational {
    type Integral = Complex<BigInt>;
    const FIELD: Field = Field::Complex;

    fn from_rational(r: Rational) -> Self {
        Complex::new(r, Rational::zero())
    }

    fn as_real(&self) -> Option<Rational> {
        self.im.is_zero().then(|| self.re.clone())
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn integral_row(row: &[Self]) -> Vec<Complex<BigInt>> {
        let l = lcm_denominators(row.iter().flat_map(|x| [x.re.denom(), x.im.denom()]));
        row.iter()
            .map(|x| {
                Complex::new(
                    x.re.numer() * (&l / x.re.denom()),
                    x.im.numer() * (&l / x.im.denom()),
                )
            })
            .collect()
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R, bound: u64) -> Self {
        let re = sample_rational(rng, bound);
        let im = sample_rational(rng, bound);
        Complex::new(re, im)
    }

    fn to_c64(&self) -> Complex<f64> {
        Complex::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn to_json(&self) -> Value {
        serde_json::json!({ "re": format_rational(&self.re), "im": format_rational(&self.im) })
    }

    fn from_json(v: &Value) -> Result<Self, ScalarParseError> {
        match v {
            Value::Object(map) => {
                let re = map.get("re").map(rational_from_json).transpose()?.unwrap_or_else(Rational::zero);
                let im = map.get("im").map(rational_from_json).transpose()?.unwrap_or_else(Rational::zero);
                Ok(Complex::new(re, im))
            }
            // a bare rational is accepted as a real-valued complex number
            other => rational_from_json(other).map(Self::from_rational),
        }
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign_of(r: &Rational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
