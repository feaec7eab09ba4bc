//! Command-line front end for the PST chain toolkit.
//!
//! Subcommands mirror the pipeline: `spectrum gen` and `spectrum check`
//! produce and validate one-excitation spectra, `chain build` reconstructs
//! the couplings, `chain verify` simulates transfer and reports residuals,
//! `chain surgery` removes spectral levels, and `selftest` runs the
//! acceptance suite.
//!
//! Exit codes are a stable contract: 0 success, 1 I/O or parse failure,
//! 2 inadmissible spectrum, 3 reconstruction failure, 4 verification
//! failure, 5 invalid surgery. Machine-readable error JSON goes to stderr;
//! requested artifacts go to stdout or `--out`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pstforge::analysis::{fidelity_curve, persymmetry_residual, verify_with_measure};
use pstforge::error::Error;
use pstforge::BigRational;
use pstforge::format;
use pstforge::measure::pst_weights;
use pstforge::reconstruct::{
    algorithm, chain_from_recurrence, default_algorithm_name, reconstruct_cross_checked,
};
use pstforge::scalar::Scalar;
use pstforge::selftest;
use pstforge::spectrum::{check_admissible, generate, Spectrum, SpectrumFamily};
use pstforge::surgery::apply_plan;

/// Fidelity and residual tolerance for `chain verify` (exit 0 vs 4).
const VERIFY_TOLERANCE: f64 = 1e-8;
/// Relative tolerance for `--algorithm both` cross-checks.
const CROSS_TOLERANCE: f64 = 1e-8;

const EXIT_IO: u8 = 1;
const EXIT_INADMISSIBLE: u8 = 2;
const EXIT_RECONSTRUCTION: u8 = 3;
const EXIT_VERIFICATION: u8 = 4;
const EXIT_SURGERY: u8 = 5;

#[derive(Parser)]
#[command(
    name = "pstforge",
    version,
    about = "Construct, verify, and surgically modify perfect state transfer spin chains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate or validate one-excitation spectra.
    Spectrum {
        #[command(subcommand)]
        action: SpectrumAction,
    },
    /// Build, verify, and operate on coupling chains.
    Chain {
        #[command(subcommand)]
        action: ChainAction,
    },
    /// Run the built-in acceptance suite and print a pass/fail table.
    Selftest {
        /// Seed for the randomized criteria.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand)]
enum SpectrumAction {
    /// Generate a named spectrum family member.
    Gen {
        /// Spectrum family.
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Chain length parameter N (the spectrum has N+1 levels before any gap).
        #[arg(long)]
        n: usize,
        /// Hyperbolic steepness K (hyperbolic family only).
        #[arg(long)]
        k: Option<u64>,
        /// Gap half-width L (gapped family only).
        #[arg(long)]
        l: Option<usize>,
        /// Arithmetic mode; defaults to PSTFORGE_MODE or exact.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a spectrum file for admissibility; prints T and the gap multiples.
    Check {
        /// Spectrum JSON file.
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum ChainAction {
    /// Reconstruct the chain couplings from an admissible spectrum.
    Build {
        /// Spectrum JSON file.
        #[arg(long)]
        spectrum: PathBuf,
        /// Arithmetic mode; defaults to PSTFORGE_MODE or exact.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Reconstruction algorithm; `both` cross-checks the two routes.
        #[arg(long, value_enum)]
        algorithm: Option<AlgorithmArg>,
        /// Output chain JSON file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also export the couplings as CSV (kind,index,value).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Simulate transfer on a chain file and report fidelity and residuals.
    Verify {
        /// Chain JSON file.
        #[arg(long = "in")]
        input: PathBuf,
        /// Write the fidelity curve |f(t)| over [0, 2T] as CSV.
        #[arg(long)]
        curve: Option<PathBuf>,
        /// Number of curve samples.
        #[arg(long, default_value_t = 512)]
        samples: usize,
    },
    /// Apply a spectral surgery plan to a chain file.
    Surgery {
        /// Chain JSON file (must embed spectral_data, as `chain build` writes).
        #[arg(long = "in")]
        input: PathBuf,
        /// Surgery plan JSON file.
        #[arg(long)]
        plan: PathBuf,
        /// Output chain JSON file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Uniform,
    Hyperbolic,
    Gapped,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AlgorithmArg {
    Euclid,
    Stieltjes,
    Both,
}

/// A terminal failure: exit code plus the JSON payload for stderr.
struct Failure {
    code: u8,
    payload: Value,
}

fn classify(e: &Error) -> u8 {
    match e {
        Error::NonIncreasing { .. }
        | Error::NotAdmissible { .. }
        | Error::IrrationalSpacingRatio { .. }
        | Error::SpacingOverflow { .. }
        | Error::NonPositiveScale
        | Error::BadParameters { .. }
        | Error::InvalidSpectrum { .. } => EXIT_INADMISSIBLE,
        Error::Overflow { .. }
        | Error::InvalidMeasure { .. }
        | Error::DegenerateLeadingCoefficient
        | Error::ResidueDegreeError { .. }
        | Error::NonPositiveU { .. }
        | Error::NonPositiveNorm { .. }
        | Error::InvalidRecurrence { .. }
        | Error::AlgorithmDisagreement { .. }
        | Error::UnknownAlgorithm { .. } => EXIT_RECONSTRUCTION,
        Error::InteriorSingleRemoval { .. }
        | Error::EmptyResult
        | Error::ZeroDenominator { .. }
        | Error::NonZeroField { .. }
        | Error::InvalidPlan { .. } => EXIT_SURGERY,
        Error::ConvergenceFailure { .. } => EXIT_VERIFICATION,
        Error::InvalidChain { .. } | Error::Parse { .. } => EXIT_IO,
    }
}

fn fail(e: Error) -> Failure {
    let mut payload = json!({ "error": e.code(), "message": e.to_string() });
    if let Some(index) = e.index() {
        payload["index"] = json!(index);
    }
    Failure { code: classify(&e), payload }
}

fn fail_io(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_IO,
        payload: json!({ "error": "io", "message": format!("{}: {e}", path.display()) }),
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are successes, not usage errors.
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(EXIT_IO);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("{}", failure.payload);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Spectrum { action } => match action {
            SpectrumAction::Gen { family, n, k, l, mode, out } => {
                let family = family_from_flags(family, n, k, l)?;
                match resolve_mode(mode)? {
                    ModeArg::Exact => cmd_spectrum_gen::<BigRational>(family, out.as_deref()),
                    ModeArg::Float => cmd_spectrum_gen::<f64>(family, out.as_deref()),
                }
            }
            SpectrumAction::Check { input } => cmd_spectrum_check(&input),
        },
        Command::Chain { action } => match action {
            ChainAction::Build { spectrum, mode, algorithm, out, csv } => {
                match resolve_mode(mode)? {
                    ModeArg::Exact => cmd_build::<BigRational>(
                        &spectrum,
                        algorithm,
                        out.as_deref(),
                        csv.as_deref(),
                    ),
                    ModeArg::Float => {
                        cmd_build::<f64>(&spectrum, algorithm, out.as_deref(), csv.as_deref())
                    }
                }
            }
            ChainAction::Verify { input, curve, samples } => {
                let value = read_json(&input)?;
                match detect_mode(&value) {
                    ModeArg::Exact => {
                        cmd_verify::<BigRational>(&value, curve.as_deref(), samples)
                    }
                    ModeArg::Float => cmd_verify::<f64>(&value, curve.as_deref(), samples),
                }
            }
            ChainAction::Surgery { input, plan, out } => {
                let value = read_json(&input)?;
                match detect_mode(&value) {
                    ModeArg::Exact => cmd_surgery::<BigRational>(&value, &plan, out.as_deref()),
                    ModeArg::Float => cmd_surgery::<f64>(&value, &plan, out.as_deref()),
                }
            }
        },
        Command::Selftest { seed } => cmd_selftest(seed.unwrap_or(selftest::DEFAULT_SEED)),
    }
}

// ── shared plumbing ─────────────────────────────────────────────────

fn resolve_mode(flag: Option<ModeArg>) -> Result<ModeArg, Failure> {
    if let Some(mode) = flag {
        return Ok(mode);
    }
    match std::env::var("PSTFORGE_MODE") {
        Ok(value) => match value.as_str() {
            "exact" => Ok(ModeArg::Exact),
            "float" => Ok(ModeArg::Float),
            other => Err(fail(Error::Parse {
                reason: format!("PSTFORGE_MODE must be `exact` or `float`, not `{other}`"),
            })),
        },
        Err(_) => Ok(ModeArg::Exact),
    }
}

/// Pick the arithmetic for a self-describing file: honor its `mode` field,
/// falling back to the encoding of the first coupling or point.
fn detect_mode(value: &Value) -> ModeArg {
    match value.get("mode").and_then(Value::as_str) {
        Some("exact") => ModeArg::Exact,
        Some("float") => ModeArg::Float,
        _ => {
            let probe = value
                .get("b")
                .or_else(|| value.get("points"))
                .and_then(|a| a.as_array())
                .and_then(|a| a.first());
            match probe {
                Some(Value::String(_)) => ModeArg::Exact,
                _ => ModeArg::Float,
            }
        }
    }
}

fn family_from_flags(
    family: FamilyArg,
    n: usize,
    k: Option<u64>,
    l: Option<usize>,
) -> Result<SpectrumFamily, Failure> {
    let bad = |reason: String| fail(Error::BadParameters { reason });
    match family {
        FamilyArg::Uniform => {
            if k.is_some() || l.is_some() {
                return Err(bad("the uniform family takes neither --k nor --l".into()));
            }
            Ok(SpectrumFamily::Uniform { n })
        }
        FamilyArg::Hyperbolic => {
            if l.is_some() {
                return Err(bad("the hyperbolic family does not take --l".into()));
            }
            let k = k.ok_or_else(|| bad("the hyperbolic family requires --k".into()))?;
            Ok(SpectrumFamily::Hyperbolic { n, k })
        }
        FamilyArg::Gapped => {
            if k.is_some() {
                return Err(bad("the gapped family does not take --k".into()));
            }
            let l = l.ok_or_else(|| bad("the gapped family requires --l".into()))?;
            Ok(SpectrumFamily::Gapped { n, l })
        }
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| fail_io(path, e))?;
    serde_json::from_str(&text).map_err(|e| {
        fail(Error::Parse { reason: format!("{}: {e}", path.display()) })
    })
}

fn emit(value: &Value, out: Option<&Path>) -> CliResult {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| fail(Error::Parse { reason: e.to_string() }))?;
    text.push('\n');
    write_text(&text, out)
}

fn write_text(text: &str, out: Option<&Path>) -> CliResult {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| fail_io(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ── commands ────────────────────────────────────────────────────────

fn cmd_spectrum_gen<S: Scalar>(family: SpectrumFamily, out: Option<&Path>) -> CliResult {
    let spectrum: Spectrum<S> = generate(family).map_err(fail)?;
    emit(&format::spectrum_to_json(&spectrum), out)
}

fn cmd_spectrum_check(input: &Path) -> CliResult {
    let value = read_json(input)?;
    match detect_mode(&value) {
        ModeArg::Exact => check_points::<BigRational>(&value),
        ModeArg::Float => check_points::<f64>(&value),
    }
}

fn check_points<S: Scalar>(value: &Value) -> CliResult {
    let points: Vec<S> = format::spectrum_points_from_json(value).map_err(fail)?;
    let result = check_admissible(&points).map_err(fail)?;
    let report = json!({
        "admissible": true,
        "time": format::time_to_json(&result.time),
        "multiples": result.multiples,
    });
    emit(&report, None)
}

fn cmd_build<S: Scalar>(
    spectrum_path: &Path,
    algorithm_flag: Option<AlgorithmArg>,
    out: Option<&Path>,
    csv: Option<&Path>,
) -> CliResult {
    let value = read_json(spectrum_path)?;
    let spectrum: Spectrum<S> = format::spectrum_from_json(&value).map_err(fail)?;
    let measure = pst_weights(&spectrum).map_err(fail)?;

    let recurrence = match algorithm_flag {
        Some(AlgorithmArg::Both) => {
            let (recurrence, discrepancy) =
                reconstruct_cross_checked(&spectrum, CROSS_TOLERANCE).map_err(fail)?;
            eprintln!("algorithm cross-check discrepancy: {discrepancy:.3e}");
            recurrence
        }
        named => {
            let name = match named {
                Some(AlgorithmArg::Euclid) => "euclid",
                Some(AlgorithmArg::Stieltjes) => "stieltjes",
                _ => default_algorithm_name(S::EXACT),
            };
            algorithm::<S>(name).map_err(fail)?.reconstruct(&spectrum).map_err(fail)?
        }
    };

    let chain = chain_from_recurrence(&recurrence, spectrum.time().clone()).map_err(fail)?;
    eprintln!("persymmetry residual: {:.3e}", persymmetry_residual(&chain));

    if let Some(csv_path) = csv {
        write_text(&format::chain_to_csv(&chain), Some(csv_path))?;
    }
    emit(&format::chain_to_json(&chain, Some(&measure)), out)
}

fn cmd_verify<S: Scalar>(value: &Value, curve: Option<&Path>, samples: usize) -> CliResult {
    let (chain, measure) = format::chain_from_json::<S>(value).map_err(fail)?;
    let report = verify_with_measure(&chain, measure.as_ref()).map_err(fail)?;

    if let Some(curve_path) = curve {
        let points = fidelity_curve(&chain, samples).map_err(fail)?;
        write_text(&format::curve_to_csv(&points), Some(curve_path))?;
    }

    emit(&format::report_to_json(&report, VERIFY_TOLERANCE), None)?;
    if report.passes(VERIFY_TOLERANCE) {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_VERIFICATION,
            payload: json!({
                "error": "verification_failed",
                "message": format!(
                    "transfer fidelity {:.12} or a residual exceeds tolerance {VERIFY_TOLERANCE:e}",
                    report.fidelity
                ),
            }),
        })
    }
}

fn cmd_surgery<S: Scalar>(value: &Value, plan_path: &Path, out: Option<&Path>) -> CliResult {
    let (chain, measure) = format::chain_from_json::<S>(value).map_err(fail)?;
    let measure = measure.ok_or_else(|| {
        fail(Error::InvalidChain {
            reason: "surgery needs the embedded spectral_data that `chain build` writes".into(),
        })
    })?;

    let plan_value = read_json(plan_path)?;
    let plan = format::plan_from_json(&plan_value).map_err(fail)?;

    let outcome = apply_plan(&measure, &chain.recurrence(), &plan).map_err(fail)?;
    eprintln!(
        "removed {} level(s); closed-form cross-check discrepancy: {:.3e}",
        outcome.levels_removed, outcome.cross_check_discrepancy
    );

    let derived =
        chain_from_recurrence(&outcome.recurrence, chain.time().clone()).map_err(fail)?;
    let report = verify_with_measure(&derived, Some(&outcome.measure)).map_err(fail)?;
    eprintln!(
        "verification: fidelity {:.12}, persymmetry {:.3e}, sign condition {:.3e}, dual weight {:.3e}",
        report.fidelity,
        report.persymmetry_residual,
        report.sign_condition_residual,
        report.dual_weight_residual
    );

    emit(&format::chain_to_json(&derived, Some(&outcome.measure)), out)?;
    if report.passes(VERIFY_TOLERANCE) {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_VERIFICATION,
            payload: json!({
                "error": "verification_failed",
                "message": "the derived chain does not verify as a transfer chain".to_string(),
            }),
        })
    }
}

fn cmd_selftest(seed: u64) -> CliResult {
    let reports = selftest::run_all(seed);
    println!("{:>2}  {:<38} {:<6} {:>5}  detail", "#", "criterion", "result", "cases");
    let mut all_passed = true;
    for r in &reports {
        all_passed &= r.passed;
        println!(
            "{:>2}  {:<38} {:<6} {:>5}  {}",
            r.index,
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.cases,
            r.detail
        );
    }
    if all_passed {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_VERIFICATION,
            payload: json!({
                "error": "selftest_failed",
                "message": "one or more acceptance criteria failed",
            }),
        })
    }
}
