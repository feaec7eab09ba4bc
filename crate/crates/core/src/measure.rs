//! Discrete orthogonality measures on spectral points.
//!
//! Perfect transfer fixes the spectral weights completely: up to overall
//! normalization,
//!
//! ```text
//! w_s  ~  (-1)^(N+s) / prod_{i != s} (x_s - x_i),
//! ```
//!
//! which is positive for every `s` because the product over a strictly
//! increasing point set contributes exactly `N - s` negative factors.
//! Weights are normalized to unit total mass.
//!
//! Float mode accumulates log magnitudes and exponentiates differences from
//! the running maximum, so integer grids stay in range far beyond the point
//! where the raw products would overflow binary64.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectrum::Spectrum;

/// Tolerance for the unit-mass and symmetry checks in float mode.
const MEASURE_REL_TOL: f64 = 1e-12;

/// A finite positive measure with unit total mass on increasing points.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure<S> {
    points: Vec<S>,
    weights: Vec<S>,
}

impl<S: Scalar> DiscreteMeasure<S> {
    /// Validates increasing points, positive weights, and unit total mass
    /// (exact in rational mode, within `1e-12` in float mode).
    pub fn new(points: Vec<S>, weights: Vec<S>) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::InvalidMeasure {
                reason: format!("{} points but {} weights", points.len(), weights.len()),
            });
        }
        if points.is_empty() {
            return Err(Error::InvalidMeasure { reason: "measure has no points".into() });
        }
        for i in 0..points.len() - 1 {
            // Written with partial_cmp so an incomparable pair (NaN) also fails.
            if points[i].partial_cmp(&points[i + 1]) != Some(std::cmp::Ordering::Less) {
                return Err(Error::NonIncreasing { index: i });
            }
        }
        let mut total = S::zero();
        for (i, w) in weights.iter().enumerate() {
            if !w.is_finite() || !w.is_positive() {
                return Err(Error::InvalidMeasure {
                    reason: format!("weight {i} is not positive: {w}"),
                });
            }
            total = total + w.clone();
        }
        let deviation = total - S::one();
        if !deviation.negligible(&S::one(), MEASURE_REL_TOL) {
            return Err(Error::InvalidMeasure {
                reason: format!("total mass differs from 1 by {deviation}"),
            });
        }
        Ok(DiscreteMeasure { points, weights })
    }

    /// Normalizes raw weights of uniform sign to unit mass. Surgery uses
    /// this: a Christoffel multiplier can flip the global sign, but must
    /// never produce mixed signs.
    pub fn from_unnormalized(points: Vec<S>, raw: Vec<S>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyResult);
        }
        let mut total = S::zero();
        for w in &raw {
            total = total + w.clone();
        }
        if total.is_zero() {
            return Err(Error::InvalidMeasure { reason: "raw weights sum to zero".into() });
        }
        let weights: Vec<S> = raw.into_iter().map(|w| w / total.clone()).collect();
        DiscreteMeasure::new(points, weights)
    }

    pub fn points(&self) -> &[S] {
        &self.points
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest site index `N` of the chain this measure reconstructs.
    pub fn n(&self) -> usize {
        self.points.len() - 1
    }
}

/// Mirror symmetry of the weights, `w_s = w_{N-s}`.
pub fn is_symmetric<S: Scalar>(m: &DiscreteMeasure<S>) -> bool {
    let n = m.len();
    (0..n).all(|s| {
        let diff = m.weights[s].clone() - m.weights[n - 1 - s].clone();
        diff.negligible(&m.weights[s], MEASURE_REL_TOL)
    })
}

/// Mirror antisymmetry of the support, `x_s = -x_{N-s}`.
pub fn is_antisymmetric_support<S: Scalar>(m: &DiscreteMeasure<S>) -> bool {
    let n = m.len();
    let scale = m
        .points
        .iter()
        .map(|x| x.abs())
        .fold(S::zero(), |acc, v| if v > acc { v } else { acc });
    (0..n).all(|s| {
        let sum = m.points[s].clone() + m.points[n - 1 - s].clone();
        sum.negligible(&scale, MEASURE_REL_TOL)
    })
}

/// The transfer-enforcing weights for an admissible spectrum.
///
/// Both the point set and the stored time are checked first; the weights
/// depend only on the points.
pub fn pst_weights<S: Scalar>(spectrum: &Spectrum<S>) -> Result<DiscreteMeasure<S>> {
    spectrum.validate_pst_time()?;
    let points = spectrum.points();
    if S::EXACT {
        pst_weights_exact(points)
    } else {
        pst_weights_log_domain(points)
    }
}

fn pst_weights_exact<S: Scalar>(points: &[S]) -> Result<DiscreteMeasure<S>> {
    let n = points.len();
    let mut raw = Vec::with_capacity(n);
    for s in 0..n {
        let mut prod = S::one();
        for i in 0..n {
            if i != s {
                prod = prod * (points[s].clone() - points[i].clone());
            }
        }
        let sign = if (n - 1 + s).is_multiple_of(2) { S::one() } else { -S::one() };
        raw.push(sign / prod);
    }
    let mut total = S::zero();
    for w in &raw {
        total = total + w.clone();
    }
    let weights = raw.into_iter().map(|w| w / total.clone()).collect();
    DiscreteMeasure::new(points.to_vec(), weights)
}

fn pst_weights_log_domain<S: Scalar>(points: &[S]) -> Result<DiscreteMeasure<S>> {
    let n = points.len();
    let xs: Vec<f64> = points.iter().map(|x| x.to_f64()).collect();
    // log |w~_s|; the sign is (+) for every s once (-1)^(N+s) is folded in.
    let mut logs = Vec::with_capacity(n);
    for s in 0..n {
        let mut log_prod = 0.0;
        for i in 0..n {
            if i != s {
                log_prod += (xs[s] - xs[i]).abs().ln();
            }
        }
        if !log_prod.is_finite() {
            return Err(Error::Overflow { index: s });
        }
        logs.push(-log_prod);
    }
    let peak = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let scaled: Vec<f64> = logs.iter().map(|l| (l - peak).exp()).collect();
    let total: f64 = scaled.iter().sum();
    let mut weights = Vec::with_capacity(n);
    for (s, r) in scaled.iter().enumerate() {
        let w = r / total;
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::Overflow { index: s });
        }
        weights.push(S::from_f64(w));
    }
    DiscreteMeasure::new(points.to_vec(), weights)
}
