//! File formats: JSON for pipeline objects, CSV for plotting.
//!
//! Exact-mode values are written as `"p/q"` strings (plain `"p"` for
//! integers) so nothing is rounded on the way to disk; float-mode values are
//! JSON numbers. Every file carries a `"mode"` field. Exact consumers refuse
//! float-encoded payloads, because a rounded value has no exact reading;
//! float consumers accept exact files and convert on entry.
//!
//! Transfer times are written symbolically in exact mode with the grammar
//! `[k]pi[/m]`, for example `"pi"`, `"3pi"`, `"pi/2"`, `"3pi/2"`; float mode
//! writes plain seconds.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::analysis::TransferReport;
use crate::error::{Error, Result};
use crate::measure::DiscreteMeasure;
use crate::reconstruct::{chain_from_recurrence, JacobiChain, MonicRecurrence};
use crate::scalar::{Scalar, Time};
use crate::spectrum::Spectrum;
use crate::surgery::{SurgeryKind, SurgeryPlan};

/// One scalar as a JSON value, `"p/q"` in exact mode, a number otherwise.
pub fn scalar_to_json<S: Scalar>(x: &S) -> Value {
    if S::EXACT {
        let r = x.to_rational(0.0).expect("exact scalar has rational content");
        Value::String(render_rational(&r))
    } else {
        json!(x.to_f64())
    }
}

/// Parses a scalar written by [`scalar_to_json`] in either mode. Exact mode
/// refuses JSON numbers: a rounded value has no faithful rational reading.
pub fn scalar_from_json<S: Scalar>(v: &Value) -> Result<S> {
    match v {
        Value::String(text) => Ok(S::from_rational(&parse_rational(text)?)),
        Value::Number(num) => {
            if S::EXACT {
                return Err(Error::Parse {
                    reason: format!(
                        "exact mode cannot consume the float-encoded value {num}; rerun in float mode or re-export the file exactly"
                    ),
                });
            }
            let f = num.as_f64().ok_or_else(|| Error::Parse {
                reason: format!("value {num} does not fit binary64"),
            })?;
            Ok(S::from_f64(f))
        }
        other => Err(Error::Parse {
            reason: format!("expected a number or \"p/q\" string, got {other}"),
        }),
    }
}

fn render_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"` or `"p/q"` into a rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let (num_str, den_str) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (text, None),
    };
    let numer: BigInt = num_str.parse().map_err(|_| Error::Parse {
        reason: format!("invalid integer {num_str:?} in rational"),
    })?;
    let denom: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| Error::Parse {
            reason: format!("invalid denominator {d:?} in rational"),
        })?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::Parse { reason: format!("zero denominator in {text:?}") });
    }
    Ok(BigRational::new(numer, denom))
}

/// A transfer time as JSON: symbolic `[k]pi[/m]` string in exact mode,
/// seconds as a number in float mode.
pub fn time_to_json<S: Scalar>(t: &Time<S>) -> Value {
    match t.pi_coeff().to_rational(0.0) {
        Some(c) => Value::String(render_pi(&c)),
        None => json!(t.as_f64()),
    }
}

fn render_pi(c: &BigRational) -> String {
    let head = if c.numer().is_one() { "pi".to_string() } else { format!("{}pi", c.numer()) };
    if c.denom().is_one() {
        head
    } else {
        format!("{head}/{}", c.denom())
    }
}

/// Parses the `[k]pi[/m]` grammar into the coefficient of pi.
pub fn parse_pi_coeff(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let idx = t.find("pi").ok_or_else(|| Error::Parse {
        reason: format!("time {t:?} must contain \"pi\" (for example \"3pi/2\")"),
    })?;
    let head = &t[..idx];
    let tail = &t[idx + 2..];
    let numer: BigInt = if head.is_empty() {
        BigInt::one()
    } else {
        head.parse().map_err(|_| Error::Parse {
            reason: format!("invalid pi multiplier {head:?} in {t:?}"),
        })?
    };
    let denom: BigInt = if tail.is_empty() {
        BigInt::one()
    } else {
        let rest = tail.strip_prefix('/').ok_or_else(|| Error::Parse {
            reason: format!("unexpected trailing text {tail:?} in {t:?}"),
        })?;
        rest.trim().parse().map_err(|_| Error::Parse {
            reason: format!("invalid divisor {rest:?} in {t:?}"),
        })?
    };
    if denom.is_zero() {
        return Err(Error::Parse { reason: format!("zero divisor in {t:?}") });
    }
    Ok(BigRational::new(numer, denom))
}

/// Parses a time in either representation. Exact mode requires the symbolic
/// form; float mode also accepts plain seconds.
pub fn time_from_json<S: Scalar>(v: &Value) -> Result<Time<S>> {
    match v {
        Value::String(text) => {
            let c = parse_pi_coeff(text)?;
            Time::from_pi_coeff(S::from_rational(&c))
        }
        Value::Number(num) => {
            if S::EXACT {
                return Err(Error::Parse {
                    reason: format!(
                        "exact mode needs a symbolic time like \"3pi/2\", got the number {num}"
                    ),
                });
            }
            let secs = num.as_f64().ok_or_else(|| Error::Parse {
                reason: format!("time {num} does not fit binary64"),
            })?;
            Time::from_pi_coeff(S::from_f64(secs / std::f64::consts::PI))
        }
        other => Err(Error::Parse { reason: format!("time must be a string or number, got {other}") }),
    }
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::Parse { reason: format!("{what} must be a JSON object") })
}

fn required<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Parse { reason: format!("missing field {key:?}") })
}

/// Parses a homogeneous scalar array field.
pub fn scalar_array<S: Scalar>(v: &Value, what: &str) -> Result<Vec<S>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse { reason: format!("{what} must be an array") })?;
    arr.iter().map(scalar_from_json).collect()
}

fn check_mode<S: Scalar>(obj: &Map<String, Value>) -> Result<()> {
    match obj.get("mode") {
        None => Ok(()),
        Some(Value::String(m)) if m == S::MODE_NAME => Ok(()),
        Some(Value::String(m)) if m == "float" && S::EXACT => Err(Error::Parse {
            reason: "file was written in float mode; exact arithmetic cannot consume rounded values (rerun with --mode float)"
                .into(),
        }),
        Some(Value::String(m)) if m == "exact" && !S::EXACT => Ok(()),
        Some(Value::String(m)) => {
            Err(Error::Parse { reason: format!("unknown mode {m:?} (expected \"exact\" or \"float\")") })
        }
        Some(other) => Err(Error::Parse { reason: format!("mode must be a string, got {other}") }),
    }
}

fn usize_field(obj: &Map<String, Value>, key: &str) -> Result<Option<usize>> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => {
            let n = v.as_u64().ok_or_else(|| Error::Parse {
                reason: format!("field {key:?} must be a nonnegative integer, got {v}"),
            })?;
            Ok(Some(n as usize))
        }
    }
}

// ── spectrum files ──────────────────────────────────────────────────

pub fn spectrum_to_json<S: Scalar>(s: &Spectrum<S>) -> Value {
    json!({
        "mode": S::MODE_NAME,
        "n": s.n(),
        "points": s.points().iter().map(scalar_to_json).collect::<Vec<_>>(),
        "time": time_to_json(s.time()),
    })
}

/// Reads a spectrum file. A missing `"time"` field is replaced by the
/// fundamental transfer time, which requires the points to be admissible.
pub fn spectrum_from_json<S: Scalar>(v: &Value) -> Result<Spectrum<S>> {
    let obj = as_object(v, "spectrum")?;
    check_mode::<S>(obj)?;
    let points = scalar_array::<S>(required(obj, "points")?, "points")?;
    let spectrum = match obj.get("time") {
        Some(t) => Spectrum::new(points, time_from_json(t)?)?,
        None => Spectrum::with_fundamental_time(points)?,
    };
    if let Some(n) = usize_field(obj, "n")? {
        if n != spectrum.n() {
            return Err(Error::Parse {
                reason: format!("field n = {n} disagrees with {} points", spectrum.len()),
            });
        }
    }
    Ok(spectrum)
}

/// Just the point list of a spectrum file, mode-checked but without any
/// admissibility requirement. `spectrum check` starts here.
pub fn spectrum_points_from_json<S: Scalar>(v: &Value) -> Result<Vec<S>> {
    let obj = as_object(v, "spectrum")?;
    check_mode::<S>(obj)?;
    scalar_array::<S>(required(obj, "points")?, "points")
}

// ── chain files ─────────────────────────────────────────────────────

/// A chain file: couplings, time, and optionally the spectral data that
/// built it. Exact chains that keep their spectral data can be re-verified
/// with zero-residual identities later.
pub fn chain_to_json<S: Scalar>(
    chain: &JacobiChain<S>,
    measure: Option<&DiscreteMeasure<S>>,
) -> Value {
    let mut obj = Map::new();
    obj.insert("mode".into(), json!(S::MODE_NAME));
    obj.insert("n".into(), json!(chain.n()));
    obj.insert(
        "b".into(),
        Value::Array(chain.b().iter().map(scalar_to_json).collect()),
    );
    obj.insert(
        "u".into(),
        Value::Array(chain.u().iter().map(scalar_to_json).collect()),
    );
    obj.insert("j".into(), json!(chain.j()));
    obj.insert("time".into(), time_to_json(chain.time()));
    if let Some(m) = measure {
        obj.insert(
            "spectral_data".into(),
            json!({
                "points": m.points().iter().map(scalar_to_json).collect::<Vec<_>>(),
                "weights": m.weights().iter().map(scalar_to_json).collect::<Vec<_>>(),
            }),
        );
    }
    Value::Object(obj)
}

/// Reads a chain file back. The `"j"` field is display output and is
/// recomputed from `u`, never trusted.
pub fn chain_from_json<S: Scalar>(
    v: &Value,
) -> Result<(JacobiChain<S>, Option<DiscreteMeasure<S>>)> {
    let obj = as_object(v, "chain")?;
    check_mode::<S>(obj)?;
    let b = scalar_array::<S>(required(obj, "b")?, "b")?;
    let u = scalar_array::<S>(required(obj, "u")?, "u")?;
    let time = time_from_json(required(obj, "time")?)?;
    let recurrence = MonicRecurrence::new(b, u)?;
    if let Some(n) = usize_field(obj, "n")? {
        if n != recurrence.n() {
            return Err(Error::Parse {
                reason: format!("field n = {n} disagrees with {} sites", recurrence.n() + 1),
            });
        }
    }
    let chain = chain_from_recurrence(&recurrence, time)?;
    let measure = match obj.get("spectral_data") {
        Some(sd) => {
            let sobj = as_object(sd, "spectral_data")?;
            let points = scalar_array::<S>(required(sobj, "points")?, "spectral points")?;
            let weights = scalar_array::<S>(required(sobj, "weights")?, "spectral weights")?;
            Some(DiscreteMeasure::new(points, weights)?)
        }
        None => None,
    };
    Ok((chain, measure))
}

// ── surgery plans ───────────────────────────────────────────────────

pub fn plan_to_json(plan: &SurgeryPlan) -> Value {
    let mut obj = Map::new();
    obj.insert("kind".into(), json!(plan.kind.name()));
    if let Some(j) = plan.kind.index() {
        obj.insert("j".into(), json!(j));
    }
    obj.insert("repetitions".into(), json!(plan.repetitions));
    Value::Object(obj)
}

/// Reads a plan; `"repetitions"` defaults to 1.
pub fn plan_from_json(v: &Value) -> Result<SurgeryPlan> {
    let obj = as_object(v, "surgery plan")?;
    let kind_name = required(obj, "kind")?
        .as_str()
        .ok_or_else(|| Error::Parse { reason: "plan kind must be a string".into() })?;
    let j = usize_field(obj, "j")?;
    let kind = SurgeryKind::parse(kind_name, j)?;
    let repetitions = usize_field(obj, "repetitions")?.unwrap_or(1);
    Ok(SurgeryPlan { kind, repetitions })
}

// ── reports and plot data ───────────────────────────────────────────

pub fn report_to_json(report: &TransferReport, tolerance: f64) -> Value {
    json!({
        "fidelity": report.fidelity,
        "phase": report.phase,
        "time": report.time_used,
        "persymmetry_residual": report.persymmetry_residual,
        "sign_condition_residual": report.sign_condition_residual,
        "dual_weight_residual": report.dual_weight_residual,
        "tolerance": tolerance,
        "pass": report.passes(tolerance),
    })
}

/// Chain couplings as CSV rows `kind,index,value`: fields `B` by site
/// (0-based), couplings `J` by bond (1-based).
pub fn chain_to_csv<S: Scalar>(chain: &JacobiChain<S>) -> String {
    let mut out = String::from("kind,index,value\n");
    for (i, b) in chain.b_f64().iter().enumerate() {
        out.push_str(&format!("B,{i},{b}\n"));
    }
    for (i, j) in chain.j().iter().enumerate() {
        out.push_str(&format!("J,{},{j}\n", i + 1));
    }
    out
}

/// Amplitude samples as CSV rows `t,re,im,abs`.
pub fn curve_to_csv(curve: &[(f64, Complex64)]) -> String {
    let mut out = String::from("t,re,im,abs\n");
    for (t, f) in curve {
        out.push_str(&format!("{t},{},{},{}\n", f.re, f.im, f.norm()));
    }
    out
}
