//! Scalar abstraction over the two arithmetic modes.
//!
//! Every pipeline stage is generic over [`Scalar`], instantiated either with
//! `num_rational::BigRational` (exact mode, the reference semantics) or with
//! `f64` (float mode, best effort at documented tolerances). The trait keeps
//! the split honest: exact mode never rounds, float mode never pretends a
//! comparison is exact.
//!
//! Transfer times are always rational multiples of pi, so [`Time`] stores the
//! coefficient `tau = T / pi` as a scalar and converts to radians only at the
//! evaluation boundary.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Field element used throughout the construction pipeline.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic carries no rounding error.
    const EXACT: bool;

    /// Short mode label used in file headers and log lines.
    const MODE_NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    /// The fraction `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_f64(v: f64) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Strictly greater than zero.
    fn is_positive(&self) -> bool;
    fn is_finite(&self) -> bool;

    /// Rational content of the value. Exact mode returns the value itself;
    /// float mode snaps to the simplest fraction within `rel_tol` relative
    /// error (continued-fraction convergents) and returns `None` when no
    /// denominator below the search cap qualifies.
    fn to_rational(&self, rel_tol: f64) -> Option<BigRational>;

    /// Scale-relative zero test: exact mode demands a true zero, float mode
    /// accepts `|self| <= rel_tol * |scale|`.
    fn negligible(&self, scale: &Self, rel_tol: f64) -> bool;
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const MODE_NAME: &'static str = "float";

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn from_rational(r: &BigRational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn is_positive(&self) -> bool {
        *self > 0.0
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn to_rational(&self, rel_tol: f64) -> Option<BigRational> {
        rationalize(*self, rel_tol)
    }

    fn negligible(&self, scale: &Self, rel_tol: f64) -> bool {
        f64::abs(*self) <= rel_tol * f64::abs(*scale)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    const MODE_NAME: &'static str = "exact";

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }

    fn one() -> Self {
        <BigRational as One>::one()
    }

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).expect("finite float")
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn to_rational(&self, _rel_tol: f64) -> Option<BigRational> {
        Some(self.clone())
    }

    fn negligible(&self, _scale: &Self, _rel_tol: f64) -> bool {
        Zero::is_zero(self)
    }
}

/// Largest denominator the float-mode rationalizer will accept.
const RATIONALIZE_DENOMINATOR_CAP: u64 = 1_000_000_000_000_000;

/// Best rational approximation of `x` within `rel_tol` relative error, found
/// by walking continued-fraction convergents. Returns `None` for nonfinite
/// input or when every convergent under the denominator cap misses.
pub fn rationalize(x: f64, rel_tol: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    if x == 0.0 {
        return Some(<BigRational as Zero>::zero());
    }
    let negative = x < 0.0;
    let target = x.abs();
    let cap = BigInt::from(RATIONALIZE_DENOMINATOR_CAP);

    // Convergent state: (h0, k0) one step behind (h1, k1).
    let mut a = target;
    let mut h0 = BigInt::one();
    let mut k0 = BigInt::zero();
    let mut h1 = BigInt::from_f64(a.floor())?;
    let mut k1 = BigInt::one();
    let mut frac = a - a.floor();

    for _ in 0..64 {
        let approx = BigRational::new(h1.clone(), k1.clone());
        let err = (ToPrimitive::to_f64(&approx).unwrap_or(f64::NAN) - target).abs();
        if err <= rel_tol * target {
            let signed = if negative { -approx } else { approx };
            return Some(signed);
        }
        if k1 > cap {
            return None;
        }
        if frac <= f64::EPSILON * a.abs() {
            return None;
        }
        a = 1.0 / frac;
        frac = a - a.floor();
        let digit = BigInt::from_f64(a.floor())?;
        let h2 = &digit * &h1 + &h0;
        let k2 = &digit * &k1 + &k0;
        h0 = h1;
        k0 = k1;
        h1 = h2;
        k1 = k2;
    }
    None
}

/// A transfer time `T`, stored as the coefficient of pi.
#[derive(Debug, Clone, PartialEq)]
pub struct Time<S> {
    pi_coeff: S,
}

impl<S: Scalar> Time<S> {
    /// Builds `T = c * pi`; the coefficient must be positive and finite.
    pub fn from_pi_coeff(c: S) -> Result<Self> {
        if !c.is_finite() || !c.is_positive() {
            return Err(Error::InvalidSpectrum {
                reason: format!("transfer time must be a positive multiple of pi, got {c}*pi"),
            });
        }
        Ok(Time { pi_coeff: c })
    }

    /// The canonical unit: `T = pi`.
    pub fn pi() -> Self {
        Time { pi_coeff: S::one() }
    }

    pub fn pi_coeff(&self) -> &S {
        &self.pi_coeff
    }

    /// The time in natural units, `c * pi`, as binary64.
    pub fn as_f64(&self) -> f64 {
        self.pi_coeff.to_f64() * std::f64::consts::PI
    }

    /// Time rescaled by an affine map with scale `alpha`: `T -> T / alpha`.
    pub fn scaled_inverse(&self, alpha: &S) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::NonPositiveScale);
        }
        Time::from_pi_coeff(self.pi_coeff.clone() / alpha.clone())
    }
}
