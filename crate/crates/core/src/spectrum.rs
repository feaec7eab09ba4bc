//! One-excitation spectra and the admissibility test for perfect transfer.
//!
//! A chain supports perfect end-to-end transfer at time `T` exactly when its
//! one-excitation eigenvalues satisfy
//!
//! ```text
//! x_{s+1} - x_s = (pi / T) * M_s,   M_s a positive odd integer.
//! ```
//!
//! The decision procedure below normalizes the spacings by their rational
//! gcd `d`: the spectrum is admissible iff every normalized spacing is odd,
//! and the fundamental transfer time is then `T = pi / d`. Larger odd
//! multiples of that `T` work too; `pi / d` is the canonical representative.
//!
//! Three admissible families can be generated directly: the uniform grid,
//! the two-sided geometric-like ladder built from the three-term recurrence
//! `x_{s+1} = K x_s - x_{s-1}`, and the uniform grid with a symmetric middle
//! gap. All are centered so that `x_s = -x_{N-s}`.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Time};

/// Relative tolerance used when float spacings are snapped to rationals.
pub const ADMISSIBILITY_REL_TOL: f64 = 1e-9;

/// Tolerance for structural symmetry tests in float mode.
const SYMMETRY_REL_TOL: f64 = 1e-12;

/// A strictly increasing list of one-excitation energies with an attached
/// transfer time.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<S> {
    points: Vec<S>,
    time: Time<S>,
}

/// Outcome of the admissibility test: the fundamental time and the odd
/// multiples `M_s` realizing each spacing.
#[derive(Debug, Clone)]
pub struct AdmissibleResult<S> {
    pub time: Time<S>,
    pub multiples: Vec<u64>,
}

/// Validates ordering and finiteness; returns nothing on success.
fn validate_points<S: Scalar>(points: &[S]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::InvalidSpectrum { reason: "spectrum has no points".into() });
    }
    for (i, x) in points.iter().enumerate() {
        if !x.is_finite() {
            return Err(Error::InvalidSpectrum { reason: format!("point {i} is not finite") });
        }
    }
    for i in 0..points.len() - 1 {
        // Written with partial_cmp so an incomparable pair (NaN) also fails.
        if points[i].partial_cmp(&points[i + 1]) != Some(std::cmp::Ordering::Less) {
            return Err(Error::NonIncreasing { index: i });
        }
    }
    Ok(())
}

/// gcd on positive rationals: `gcd(p/q, r/s) = gcd(p s, r q) / (q s)`.
fn rational_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    let num = (a.numer() * b.denom()).gcd(&(b.numer() * a.denom()));
    BigRational::new(num, a.denom() * b.denom())
}

/// Decides admissibility of a point set and returns the fundamental `T`.
///
/// Single-point spectra are admissible with `T = pi` by convention. Float
/// spacings are rationalized at [`ADMISSIBILITY_REL_TOL`] first; spacings
/// with no rational ratio fail with `IrrationalSpacingRatio`.
pub fn check_admissible<S: Scalar>(points: &[S]) -> Result<AdmissibleResult<S>> {
    validate_points(points)?;
    if points.len() == 1 {
        return Ok(AdmissibleResult { time: Time::pi(), multiples: Vec::new() });
    }

    let mut spacings = Vec::with_capacity(points.len() - 1);
    for (i, pair) in points.windows(2).enumerate() {
        let gap = pair[1].clone() - pair[0].clone();
        let rational = gap
            .to_rational(ADMISSIBILITY_REL_TOL)
            .filter(Signed::is_positive)
            .ok_or(Error::IrrationalSpacingRatio { index: i })?;
        spacings.push(rational);
    }

    let mut unit = spacings[0].clone();
    for gap in &spacings[1..] {
        unit = rational_gcd(&unit, gap);
    }

    let mut multiples = Vec::with_capacity(spacings.len());
    for (i, gap) in spacings.iter().enumerate() {
        let ratio = gap / &unit;
        debug_assert!(ratio.is_integer(), "gcd must divide every spacing");
        let m = ratio
            .to_integer()
            .to_u64()
            .ok_or(Error::SpacingOverflow { index: i })?;
        if m.is_multiple_of(2) {
            return Err(Error::NotAdmissible { index: i, multiple: m });
        }
        multiples.push(m);
    }

    let time = Time::from_pi_coeff(S::from_rational(&unit.recip()))?;
    Ok(AdmissibleResult { time, multiples })
}

impl<S: Scalar> Spectrum<S> {
    pub fn new(points: Vec<S>, time: Time<S>) -> Result<Self> {
        validate_points(&points)?;
        Ok(Spectrum { points, time })
    }

    /// Points paired with the fundamental transfer time of the point set.
    pub fn with_fundamental_time(points: Vec<S>) -> Result<Self> {
        let admissible = check_admissible(&points)?;
        Spectrum::new(points, admissible.time)
    }

    pub fn points(&self) -> &[S] {
        &self.points
    }

    pub fn time(&self) -> &Time<S> {
        &self.time
    }

    /// Largest site index `N`; the chain has `N + 1` sites.
    pub fn n(&self) -> usize {
        self.points.len() - 1
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Admissibility of the point set alone (canonical time).
    pub fn check_admissible(&self) -> Result<AdmissibleResult<S>> {
        check_admissible(&self.points)
    }

    /// Verifies that the stored time is itself a transfer time, i.e. that
    /// every spacing times `T / pi` is a positive odd integer. Returns those
    /// multiples.
    pub fn validate_pst_time(&self) -> Result<Vec<u64>> {
        let tau = self.time.pi_coeff();
        let mut multiples = Vec::with_capacity(self.points.len().saturating_sub(1));
        for (i, pair) in self.points.windows(2).enumerate() {
            let v = (pair[1].clone() - pair[0].clone()) * tau.clone();
            let rational = v
                .to_rational(ADMISSIBILITY_REL_TOL)
                .ok_or(Error::IrrationalSpacingRatio { index: i })?;
            if !rational.is_integer() {
                return Err(Error::InvalidSpectrum {
                    reason: format!(
                        "stored time is not a transfer time: spacing {i} times T/pi \
                         equals {rational}, not an odd integer"
                    ),
                });
            }
            let m = rational
                .to_integer()
                .to_u64()
                .ok_or(Error::SpacingOverflow { index: i })?;
            if m == 0 || m.is_multiple_of(2) {
                return Err(Error::NotAdmissible { index: i, multiple: m });
            }
            multiples.push(m);
        }
        Ok(multiples)
    }

    /// Mirror antisymmetry `x_s = -x_{N-s}`, exact in rational mode.
    pub fn is_antisymmetric(&self) -> bool {
        let n = self.points.len();
        let scale = self
            .points
            .iter()
            .map(|x| x.abs())
            .fold(S::zero(), |acc, v| if v > acc { v } else { acc });
        (0..n).all(|s| {
            let sum = self.points[s].clone() + self.points[n - 1 - s].clone();
            sum.negligible(&scale, SYMMETRY_REL_TOL)
        })
    }
}

/// Applies `x -> alpha x + beta` with `alpha > 0`; the transfer time scales
/// as `T -> T / alpha`, so admissibility is preserved with the same odd
/// multiples.
pub fn affine_map<S: Scalar>(spectrum: &Spectrum<S>, alpha: &S, beta: &S) -> Result<Spectrum<S>> {
    if !alpha.is_positive() {
        return Err(Error::NonPositiveScale);
    }
    let points = spectrum
        .points
        .iter()
        .map(|x| alpha.clone() * x.clone() + beta.clone())
        .collect();
    let time = spectrum.time.scaled_inverse(alpha)?;
    Spectrum::new(points, time)
}

/// Built-in admissible spectrum families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumFamily {
    /// `x_s = s - N/2`: unit spacings, the binomial chain spectrum.
    Uniform { n: usize },
    /// Antisymmetric seed around the center, then `x_{s+1} = K x_s - x_{s-1}`.
    /// Spacings grow geometrically in `K`; parity of `K` is tied to parity
    /// of `N` so that all spacing multiples stay odd.
    Hyperbolic { n: usize, k: u64 },
    /// Uniform half-integer grid with the `2L + 1` central values removed.
    Gapped { n: usize, l: usize },
}

impl SpectrumFamily {
    pub fn validate(&self) -> Result<()> {
        match *self {
            // A lone site is a legal (if trivial) chain: the spectrum is {0}.
            SpectrumFamily::Uniform { .. } => {}
            SpectrumFamily::Hyperbolic { n, k } => {
                if n == 0 {
                    return Err(Error::BadParameters {
                        reason: "hyperbolic family needs n >= 1".into(),
                    });
                }
                if n.is_multiple_of(2) {
                    if k < 4 || k % 2 != 0 {
                        return Err(Error::BadParameters {
                            reason: format!("even n requires even K >= 4, got K = {k}"),
                        });
                    }
                } else if k < 6 || k % 4 != 2 {
                    return Err(Error::BadParameters {
                        reason: format!("odd n requires K = 2 (mod 4), K >= 6, got K = {k}"),
                    });
                }
            }
            SpectrumFamily::Gapped { n, l } => {
                if n.is_multiple_of(2) || n < 3 {
                    return Err(Error::BadParameters {
                        reason: format!("gapped family needs odd n >= 3, got n = {n}"),
                    });
                }
                if 2 * l + 1 >= n {
                    return Err(Error::BadParameters {
                        reason: format!("gapped family needs 0 <= l < (n-1)/2, got l = {l}"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Number of spectral points the family produces.
    pub fn len(&self) -> usize {
        match *self {
            SpectrumFamily::Uniform { n } | SpectrumFamily::Hyperbolic { n, .. } => n + 1,
            SpectrumFamily::Gapped { n, l } => n + 1 - 2 * l,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Generates a family member, attaching its fundamental time `T = pi`.
pub fn generate<S: Scalar>(family: SpectrumFamily) -> Result<Spectrum<S>> {
    family.validate()?;
    let points: Vec<S> = match family {
        SpectrumFamily::Uniform { n } => {
            (0..=n).map(|s| S::from_ratio(2 * s as i64 - n as i64, 2)).collect()
        }
        SpectrumFamily::Hyperbolic { n, k } => {
            let kk = S::from_int(k as i64);
            // Upper half from the antisymmetric seed; the lower half mirrors.
            let mut upper: Vec<S> = if n.is_multiple_of(2) {
                vec![S::zero(), S::one()]
            } else {
                vec![S::from_ratio(1, 2)]
            };
            // Both parities need n/2 + 1 grid points above the axis.
            let steps = n / 2 + 1;
            while upper.len() < steps {
                let m = upper.len();
                let prev = if m >= 2 {
                    upper[m - 2].clone()
                } else {
                    // Odd n: the point below +1/2 is its mirror image -1/2.
                    -upper[0].clone()
                };
                upper.push(kk.clone() * upper[m - 1].clone() - prev);
            }
            let mut points: Vec<S> = upper.iter().rev().map(|x| -x.clone()).collect();
            if n.is_multiple_of(2) {
                points.pop();
            }
            points.extend(upper);
            points
        }
        SpectrumFamily::Gapped { n, l } => (0..=n)
            .filter(|&s| (2 * s as i64 - n as i64).unsigned_abs() > 2 * l as u64)
            .map(|s| S::from_ratio(2 * s as i64 - n as i64, 2))
            .collect(),
    };
    debug_assert_eq!(points.len(), family.len());
    Spectrum::new(points, Time::pi())
}
