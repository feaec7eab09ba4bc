//! Error taxonomy shared by every module.
//!
//! Variants are grouped by the pipeline stage that raises them: spectrum
//! validation, weight formation, chain reconstruction, spectral surgery,
//! and forward analysis. Constructors validate their invariants eagerly,
//! so downstream code can assume well-formed values.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    // ── spectrum ────────────────────────────────────────────────────
    #[error("spectrum points are not strictly increasing at index {index}")]
    NonIncreasing { index: usize },

    #[error("spectrum is not admissible: even spacing multiple at index {index} (gap is {multiple} units)")]
    NotAdmissible { index: usize, multiple: u64 },

    #[error("spacing at index {index} has no rational ratio to the others within tolerance")]
    IrrationalSpacingRatio { index: usize },

    #[error("spacing multiple at index {index} exceeds the supported integer range")]
    SpacingOverflow { index: usize },

    #[error("affine map scale must be positive")]
    NonPositiveScale,

    #[error("invalid family parameters: {reason}")]
    BadParameters { reason: String },

    #[error("invalid spectrum: {reason}")]
    InvalidSpectrum { reason: String },

    // ── measure ─────────────────────────────────────────────────────
    #[error("floating-point range exceeded while forming weight {index}")]
    Overflow { index: usize },

    #[error("invalid measure: {reason}")]
    InvalidMeasure { reason: String },

    // ── reconstruction ──────────────────────────────────────────────
    #[error("leading coefficient of the interpolated sign polynomial vanishes")]
    DegenerateLeadingCoefficient,

    #[error("division residue at descent step {step} does not have degree {expected}")]
    ResidueDegreeError { step: usize, expected: usize },

    #[error("recovered squared coupling U_{index} is not positive")]
    NonPositiveU { index: usize },

    #[error("squared norm h_{index} is not positive; orthogonality lost")]
    NonPositiveNorm { index: usize },

    #[error("invalid recurrence: {reason}")]
    InvalidRecurrence { reason: String },

    #[error(
        "reconstruction algorithms disagree: relative discrepancy {discrepancy:.3e} \
         exceeds {tolerance:.1e}"
    )]
    AlgorithmDisagreement { discrepancy: f64, tolerance: f64 },

    #[error("unknown reconstruction algorithm `{name}`")]
    UnknownAlgorithm { name: String },

    // ── surgery ─────────────────────────────────────────────────────
    #[error("removing the single interior level at index {index} cannot preserve transfer")]
    InteriorSingleRemoval { index: usize },

    #[error("surgery would leave no spectral points")]
    EmptyResult,

    #[error("P_{degree} vanishes at the removal point; Christoffel update undefined")]
    ZeroDenominator { degree: usize },

    #[error("symmetric surgery requires zero magnetic field, but B_{index} is nonzero")]
    NonZeroField { index: usize },

    #[error("invalid surgery plan: {reason}")]
    InvalidPlan { reason: String },

    // ── analysis ────────────────────────────────────────────────────
    #[error("eigensolver failed to converge for eigenvalue {index}")]
    ConvergenceFailure { index: usize },

    #[error("invalid chain: {reason}")]
    InvalidChain { reason: String },

    // ── serialization ───────────────────────────────────────────────
    #[error("parse error: {reason}")]
    Parse { reason: String },
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonIncreasing { .. } => "NonIncreasing",
            Error::NotAdmissible { .. } => "NotAdmissible",
            Error::IrrationalSpacingRatio { .. } => "IrrationalSpacingRatio",
            Error::SpacingOverflow { .. } => "SpacingOverflow",
            Error::NonPositiveScale => "NonPositiveScale",
            Error::BadParameters { .. } => "BadParameters",
            Error::InvalidSpectrum { .. } => "InvalidSpectrum",
            Error::Overflow { .. } => "Overflow",
            Error::InvalidMeasure { .. } => "InvalidMeasure",
            Error::DegenerateLeadingCoefficient => "DegenerateLeadingCoefficient",
            Error::ResidueDegreeError { .. } => "ResidueDegreeError",
            Error::NonPositiveU { .. } => "NonPositiveU",
            Error::NonPositiveNorm { .. } => "NonPositiveNorm",
            Error::InvalidRecurrence { .. } => "InvalidRecurrence",
            Error::AlgorithmDisagreement { .. } => "AlgorithmDisagreement",
            Error::UnknownAlgorithm { .. } => "UnknownAlgorithm",
            Error::InteriorSingleRemoval { .. } => "InteriorSingleRemoval",
            Error::EmptyResult => "EmptyResult",
            Error::ZeroDenominator { .. } => "ZeroDenominator",
            Error::NonZeroField { .. } => "NonZeroField",
            Error::InvalidPlan { .. } => "InvalidPlan",
            Error::ConvergenceFailure { .. } => "ConvergenceFailure",
            Error::InvalidChain { .. } => "InvalidChain",
            Error::Parse { .. } => "Parse",
        }
    }

    /// Index payload, when the variant points at a specific site or level.
    pub fn index(&self) -> Option<usize> {
        match self {
            Error::NonIncreasing { index }
            | Error::NotAdmissible { index, .. }
            | Error::IrrationalSpacingRatio { index }
            | Error::SpacingOverflow { index }
            | Error::Overflow { index }
            | Error::NonPositiveU { index }
            | Error::NonPositiveNorm { index }
            | Error::InteriorSingleRemoval { index }
            | Error::NonZeroField { index }
            | Error::ConvergenceFailure { index } => Some(*index),
            Error::ResidueDegreeError { step, .. } => Some(*step),
            Error::ZeroDenominator { degree } => Some(*degree),
            _ => None,
        }
    }
}
