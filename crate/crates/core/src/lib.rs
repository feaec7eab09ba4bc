//! Perfect state transfer chain construction toolkit.
//!
//! An XX spin chain restricted to its one-excitation sector is a real
//! symmetric tridiagonal (Jacobi) matrix: magnetic fields `B_n` on the
//! diagonal, couplings `J_n > 0` off it. Perfect state transfer (PST)
//! between the two ends at time `T` happens exactly when the one-excitation
//! spectrum has all gaps equal to odd multiples of `pi/T` and the end
//! components of the eigenvectors carry a specific alternating-sign
//! weight pattern.
//!
//! This crate walks that equivalence in both directions and sideways:
//!
//! * [`spectrum`] generates and validates admissible spectra (uniform,
//!   hyperbolic, and gapped families) and computes the transfer time.
//! * [`measure`] attaches the unique PST spectral weights to an admissible
//!   spectrum.
//! * [`reconstruct`] rebuilds the chain from spectral data via two
//!   independent routes, a characteristic-polynomial Euclid descent and a
//!   Stieltjes moment recursion, behind a common [`reconstruct::ReconstructionAlgorithm`]
//!   trait so callers can select, enumerate, or cross-check them by name.
//! * [`analysis`] diagonalizes chains, simulates transfer, and verifies
//!   fidelity together with the structural identities (persymmetry,
//!   boundary sign condition, dual weights). Mirror symmetry is never
//!   imposed during construction; analysis only measures it.
//! * [`surgery`] removes spectral levels (edges, symmetric pairs,
//!   middle pairs) with Christoffel-transform closed forms cross-checked
//!   against full re-reconstruction, yielding new PST chains from old.
//! * [`format`] reads and writes the JSON and CSV interchange formats.
//! * [`selftest`] runs the numbered acceptance criteria.
//!
//! Everything numeric is generic over [`scalar::Scalar`], instantiated at
//! `f64` (mode `"float"`) and `num_rational::BigRational` (mode
//! `"exact"`). Exact mode is the reference semantics: identities that hold
//! mathematically hold bit-for-bit there, and the float mode is judged
//! against it.

pub mod analysis;
pub mod error;
pub mod format;
pub mod measure;
pub mod poly;
pub mod reconstruct;
pub mod scalar;
pub mod selftest;
pub mod spectrum;
pub mod surgery;

pub use error::{Error, Result};
pub use scalar::{Scalar, Time};

/// Re-exported so downstream callers can name the exact-mode scalar
/// without depending on `num-rational` directly.
pub use num_rational::BigRational;
