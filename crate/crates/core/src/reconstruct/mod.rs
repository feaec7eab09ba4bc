//! Inverse spectral reconstruction: from spectrum to chain couplings.
//!
//! The one-excitation block of an XX chain is the Jacobi matrix
//!
//! ```text
//!       [ B_0  J_1            ]
//!   J = [ J_1  B_1  J_2       ]      J_n > 0,
//!       [      J_2  B_2  ...  ]
//! ```
//!
//! whose monic orthogonal polynomials satisfy
//! `P_{n+1} = (x - B_n) P_n - U_n P_{n-1}` with `U_n = J_n^2`. Reconstruction
//! inverts that map: given the spectrum (and the transfer-enforcing weights
//! it dictates), recover `B_n` and `U_n`.
//!
//! Two algorithms are provided behind a common trait and selected by name:
//!
//! * `euclid`: interpolate the top orthonormal polynomial from its `+-1`
//!   values, then run the Euclidean division descent. Exact in rational
//!   mode; best effort in float mode with explicit failure signals.
//! * `stieltjes`: discrete Stieltjes orthogonalization against the weights.
//!   Works identically in both modes and is the float-mode default.

mod euclid;
mod stieltjes;

pub use euclid::{lagrange_chi_n, reconstruct_euclid, SignInterpolation};
pub use stieltjes::reconstruct_stieltjes;

use crate::error::{Error, Result};
use crate::measure::pst_weights;
use crate::poly::Poly;
use crate::scalar::{Scalar, Time};
use crate::spectrum::Spectrum;

/// Monic three-term recurrence data: `b` holds `B_0..B_N`, `u` holds
/// `U_1..U_N` (all positive).
#[derive(Debug, Clone, PartialEq)]
pub struct MonicRecurrence<S> {
    b: Vec<S>,
    u: Vec<S>,
}

impl<S: Scalar> MonicRecurrence<S> {
    pub fn new(b: Vec<S>, u: Vec<S>) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::InvalidRecurrence { reason: "no diagonal entries".into() });
        }
        if u.len() + 1 != b.len() {
            return Err(Error::InvalidRecurrence {
                reason: format!("{} diagonal entries need {} couplings, got {}",
                    b.len(), b.len() - 1, u.len()),
            });
        }
        for (i, v) in b.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::InvalidRecurrence { reason: format!("B_{i} is not finite") });
            }
        }
        for (i, v) in u.iter().enumerate() {
            if !v.is_finite() || !v.is_positive() {
                return Err(Error::NonPositiveU { index: i + 1 });
            }
        }
        Ok(MonicRecurrence { b, u })
    }

    /// Largest site index `N`.
    pub fn n(&self) -> usize {
        self.b.len() - 1
    }

    pub fn b(&self) -> &[S] {
        &self.b
    }

    pub fn u(&self) -> &[S] {
        &self.u
    }

    /// Values `P_0(x) .. P_{N+1}(x)` of the monic polynomials at one point.
    pub fn monic_values(&self, x: &S) -> Vec<S> {
        let n = self.b.len();
        let mut values = Vec::with_capacity(n + 1);
        values.push(S::one());
        for k in 0..n {
            let prev = if k == 0 {
                S::zero()
            } else {
                self.u[k - 1].clone() * values[k - 1].clone()
            };
            let next = (x.clone() - self.b[k].clone()) * values[k].clone() - prev;
            values.push(next);
        }
        values
    }

    /// The monic characteristic polynomial `P_{N+1}` of the Jacobi matrix.
    pub fn characteristic_polynomial(&self) -> Poly<S> {
        let mut p_prev = Poly::zero();
        let mut p_cur = Poly::one();
        for k in 0..self.b.len() {
            let shifted = Poly::from_coeffs(vec![-self.b[k].clone(), S::one()]).mul(&p_cur);
            let tail = if k == 0 { Poly::zero() } else { p_prev.scaled(&self.u[k - 1]) };
            let p_next = shifted.sub(&tail);
            p_prev = p_cur;
            p_cur = p_next;
        }
        p_cur
    }

    /// Squared norms `h_0 .. h_N` with `h_0 = 1`, `h_n = U_1 ... U_n`.
    pub fn squared_norms(&self) -> Vec<S> {
        let mut h = Vec::with_capacity(self.b.len());
        h.push(S::one());
        for u in &self.u {
            let last = h.last().unwrap().clone();
            h.push(last * u.clone());
        }
        h
    }
}

/// A physical chain: fields `B_n`, squared couplings `U_n`, their positive
/// square roots `J_n` in binary64, and the transfer time.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiChain<S> {
    b: Vec<S>,
    u: Vec<S>,
    j: Vec<f64>,
    time: Time<S>,
}

impl<S: Scalar> JacobiChain<S> {
    pub fn n(&self) -> usize {
        self.b.len() - 1
    }

    pub fn b(&self) -> &[S] {
        &self.b
    }

    pub fn u(&self) -> &[S] {
        &self.u
    }

    /// Couplings `J_1..J_N` (always binary64; exact mode keeps `U_n = J_n^2`
    /// as the exact quantity).
    pub fn j(&self) -> &[f64] {
        &self.j
    }

    pub fn time(&self) -> &Time<S> {
        &self.time
    }

    pub fn recurrence(&self) -> MonicRecurrence<S> {
        MonicRecurrence { b: self.b.clone(), u: self.u.clone() }
    }

    pub fn b_f64(&self) -> Vec<f64> {
        self.b.iter().map(|v| v.to_f64()).collect()
    }
}

/// Attaches a transfer time and takes coupling square roots.
pub fn chain_from_recurrence<S: Scalar>(
    r: &MonicRecurrence<S>,
    time: Time<S>,
) -> Result<JacobiChain<S>> {
    let j = r.u.iter().map(|u| u.to_f64().sqrt()).collect::<Vec<_>>();
    for (i, v) in j.iter().enumerate() {
        if !(v.is_finite() && *v > 0.0) {
            return Err(Error::NonPositiveU { index: i + 1 });
        }
    }
    Ok(JacobiChain { b: r.b.clone(), u: r.u.clone(), j, time })
}

/// Affine spectral shift of a chain: `B -> alpha B + beta`, `U -> alpha^2 U`,
/// `T -> T / alpha`. The transferred state and fidelity are unchanged.
pub fn affine_map_chain<S: Scalar>(
    chain: &JacobiChain<S>,
    alpha: &S,
    beta: &S,
) -> Result<JacobiChain<S>> {
    if !alpha.is_positive() {
        return Err(Error::NonPositiveScale);
    }
    let b = chain
        .b
        .iter()
        .map(|v| alpha.clone() * v.clone() + beta.clone())
        .collect();
    let u = chain
        .u
        .iter()
        .map(|v| alpha.clone() * alpha.clone() * v.clone())
        .collect();
    let recurrence = MonicRecurrence::new(b, u)?;
    chain_from_recurrence(&recurrence, chain.time.scaled_inverse(alpha)?)
}

// ── algorithm registry ──────────────────────────────────────────────

/// A named inverse-spectral method. Implementations are registered in
/// [`algorithms`] and looked up by name at run time.
pub trait ReconstructionAlgorithm<S: Scalar>: Send + Sync {
    fn name(&self) -> &'static str;
    fn reconstruct(&self, spectrum: &Spectrum<S>) -> Result<MonicRecurrence<S>>;
}

/// Lagrange sign interpolation followed by Euclidean division descent.
pub struct EuclidAlgorithm;

/// Discrete Stieltjes orthogonalization against the transfer weights.
pub struct StieltjesAlgorithm;

impl<S: Scalar> ReconstructionAlgorithm<S> for EuclidAlgorithm {
    fn name(&self) -> &'static str {
        "euclid"
    }

    fn reconstruct(&self, spectrum: &Spectrum<S>) -> Result<MonicRecurrence<S>> {
        reconstruct_euclid(spectrum)
    }
}

impl<S: Scalar> ReconstructionAlgorithm<S> for StieltjesAlgorithm {
    fn name(&self) -> &'static str {
        "stieltjes"
    }

    fn reconstruct(&self, spectrum: &Spectrum<S>) -> Result<MonicRecurrence<S>> {
        let measure = pst_weights(spectrum)?;
        reconstruct_stieltjes(&measure)
    }
}

/// Every registered algorithm, in registration order.
pub fn algorithms<S: Scalar>() -> Vec<Box<dyn ReconstructionAlgorithm<S>>> {
    vec![Box::new(EuclidAlgorithm), Box::new(StieltjesAlgorithm)]
}

/// Looks an algorithm up by its registered name.
pub fn algorithm<S: Scalar>(name: &str) -> Result<Box<dyn ReconstructionAlgorithm<S>>> {
    algorithms()
        .into_iter()
        .find(|a| a.name() == name)
        .ok_or_else(|| Error::UnknownAlgorithm { name: name.to_string() })
}

/// Mode default: exact arithmetic favors the division descent, float
/// arithmetic the orthogonalization.
pub fn default_algorithm_name(exact: bool) -> &'static str {
    if exact {
        "euclid"
    } else {
        "stieltjes"
    }
}

/// Worst entrywise difference between two recurrences, relative to the
/// larger coefficient scale. Zero-field diagonals are measured against the
/// coupling scale rather than against themselves.
pub fn recurrence_discrepancy<S: Scalar>(a: &MonicRecurrence<S>, b: &MonicRecurrence<S>) -> f64 {
    if a.b.len() != b.b.len() {
        return f64::INFINITY;
    }
    let scale = a
        .b
        .iter()
        .chain(a.u.iter())
        .chain(b.b.iter())
        .chain(b.u.iter())
        .map(|v| v.to_f64().abs())
        .fold(0.0f64, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    let worst = a
        .b
        .iter()
        .zip(&b.b)
        .chain(a.u.iter().zip(&b.u))
        .map(|(x, y)| (x.to_f64() - y.to_f64()).abs())
        .fold(0.0f64, f64::max);
    worst / scale
}

/// Runs every registered algorithm and checks pairwise agreement: bit-exact
/// in rational mode, within `tolerance` relative in float mode. Returns the
/// mode-default result together with the worst observed discrepancy.
pub fn reconstruct_cross_checked<S: Scalar>(
    spectrum: &Spectrum<S>,
    tolerance: f64,
) -> Result<(MonicRecurrence<S>, f64)> {
    let algos = algorithms::<S>();
    let mut results = Vec::with_capacity(algos.len());
    for algo in &algos {
        results.push((algo.name(), algo.reconstruct(spectrum)?));
    }
    let mut worst = 0.0f64;
    for i in 0..results.len() {
        for j in i + 1..results.len() {
            let d = recurrence_discrepancy(&results[i].1, &results[j].1);
            let disagree = if S::EXACT { results[i].1 != results[j].1 } else { d > tolerance };
            if disagree {
                return Err(Error::AlgorithmDisagreement { discrepancy: d, tolerance });
            }
            worst = worst.max(d);
        }
    }
    let default_name = default_algorithm_name(S::EXACT);
    let chosen = results
        .into_iter()
        .find(|(name, _)| *name == default_name)
        .map(|(_, r)| r)
        .expect("default algorithm is registered");
    Ok((chosen, worst))
}
