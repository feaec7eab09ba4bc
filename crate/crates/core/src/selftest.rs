//! Built-in acceptance suite.
//!
//! Ten numbered criteria cover the closed-form oracles (binomial and
//! hyperbolic chains), transfer fidelity, the emergent structural
//! identities (persymmetry, boundary sign condition, dual weights),
//! algorithm cross-agreement, the spectral round trip, surgery
//! consistency, and an exhaustive desk-scale surgery reachability sweep.
//! `run_all` executes every criterion and returns one report per criterion;
//! the CLI prints them as a table and the integration suite asserts each.
//!
//! Float-mode sweeps are scoped where binary64 genuinely runs out of room.
//! For spectrally wide (hyperbolic) chains the edge weights decay like the
//! inverse of the spacing products, and the Christoffel bound
//! `sum_n chi_n(x_s)^2 = 1/w_s` turns rounding noise into errors of order
//! `eps / sqrt(w_min)` in any value-level identity; past the caps below
//! those identities are checked exactly in rational mode instead, which is
//! the reference semantics.

use std::collections::{HashMap, VecDeque};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{
    is_mirror_symmetric, persymmetry_residual, site_amplitudes, transfer_amplitude, verify,
    verify_with_measure,
};
use crate::error::Result;
use crate::measure::{pst_weights, DiscreteMeasure};
use crate::reconstruct::{
    chain_from_recurrence, reconstruct_cross_checked, reconstruct_euclid, reconstruct_stieltjes,
    recurrence_discrepancy, JacobiChain, MonicRecurrence,
};
use crate::scalar::{Scalar, Time};
use crate::spectrum::{generate, Spectrum, SpectrumFamily};
use crate::surgery::{apply_plan, SurgeryKind, SurgeryPlan};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 20260819;

/// Largest hyperbolic `N` whose float reconstruction keeps the mirror
/// symmetry below 1e-10 (measured residual 2e-15 at 12, 7e-6 at 13: the
/// smallest weight there is ~1e-13, so the Stieltjes tail runs on noise).
const HYPERBOLIC_FLOAT_PERSYM_MAX_N: usize = 12;

/// Largest hyperbolic `N` for which the float chi recurrence still resolves
/// the boundary sign condition below 1e-8 (5e-9 at 7, 1.4e-8 at 8).
const HYPERBOLIC_FLOAT_SIGN_MAX_N: usize = 7;

/// Largest hyperbolic `N` for which the float Euclid descent stays within
/// 1e-8 of the Stieltjes route (3e-9 at 8; at 9 the end-value sign
/// interpolation degenerates outright).
const HYPERBOLIC_FLOAT_CROSS_MAX_N: usize = 8;

/// Largest hyperbolic `N` for which the float eigensolve round trip stays
/// within 1e-8 (2e-13 at 14, 1.4e-4 at 15).
const HYPERBOLIC_FLOAT_ROUNDTRIP_MAX_N: usize = 14;

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

type Check<T> = std::result::Result<T, String>;

fn report(
    index: usize,
    name: &'static str,
    body: impl FnOnce() -> Check<(usize, String)>,
) -> CriterionReport {
    match body() {
        Ok((cases, detail)) => CriterionReport { index, name, passed: true, cases, detail },
        Err(detail) => CriterionReport { index, name, passed: false, cases: 0, detail },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check<()> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn step<T>(r: Result<T>, what: &str) -> Check<T> {
    r.map_err(|e| format!("{what}: {e}"))
}

/// Runs the full suite with the given randomization seed.
pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(seed),
    ]
}

// ── shared construction helpers ─────────────────────────────────────

fn build_exact(
    family: SpectrumFamily,
) -> Result<(JacobiChain<BigRational>, DiscreteMeasure<BigRational>)> {
    let s: Spectrum<BigRational> = generate(family)?;
    let m = pst_weights(&s)?;
    let r = reconstruct_euclid(&s)?;
    Ok((chain_from_recurrence(&r, s.time().clone())?, m))
}

fn build_float(family: SpectrumFamily) -> Result<(JacobiChain<f64>, DiscreteMeasure<f64>)> {
    let s: Spectrum<f64> = generate(family)?;
    let m = pst_weights(&s)?;
    let r = reconstruct_stieltjes(&m)?;
    Ok((chain_from_recurrence(&r, s.time().clone())?, m))
}

/// All three families up to `max_n`, with the hyperbolic member capped
/// separately (float pipelines lose the wide chains first).
fn families_up_to(max_n: usize, hyperbolic_max_n: usize) -> Vec<SpectrumFamily> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        out.push(SpectrumFamily::Uniform { n });
    }
    for n in 1..=max_n.min(hyperbolic_max_n) {
        let k = if n.is_multiple_of(2) { 4 } else { 6 };
        out.push(SpectrumFamily::Hyperbolic { n, k });
    }
    let mut n = 3;
    while n <= max_n {
        for l in 0..(n - 1) / 2 {
            out.push(SpectrumFamily::Gapped { n, l });
        }
        n += 2;
    }
    out
}

// ── criterion 1: binomial chain closed form ─────────────────────────

pub fn criterion_1() -> CriterionReport {
    report(1, "binomial chain closed form", || {
        let mut worst = 0.0f64;
        for n in 1..=10usize {
            let s: Spectrum<BigRational> = step(generate(SpectrumFamily::Uniform { n }), "generate")?;
            let r = step(reconstruct_euclid(&s), "exact reconstruction")?;
            for (k, u) in r.u().iter().enumerate() {
                let expected = BigRational::from_ratio(((k + 1) * (n - k)) as i64, 4);
                ensure(*u == expected, || {
                    format!("exact N={n}: U_{} = {u}, expected {expected}", k + 1)
                })?;
            }
            for (k, b) in r.b().iter().enumerate() {
                ensure(b.is_zero(), || format!("exact N={n}: B_{k} = {b}, expected 0"))?;
            }

            let sf: Spectrum<f64> = step(generate(SpectrumFamily::Uniform { n }), "generate")?;
            let mf = step(pst_weights(&sf), "float weights")?;
            let rf = step(reconstruct_stieltjes(&mf), "float reconstruction")?;
            for (k, u) in rf.u().iter().enumerate() {
                let expected = ((k + 1) * (n - k)) as f64 / 4.0;
                let dev = (u - expected).abs() / expected;
                worst = worst.max(dev);
                ensure(dev <= 1e-10, || {
                    format!("float N={n}: U_{} off by {dev:.3e} relative", k + 1)
                })?;
            }
            let scale = (n as f64 + 1.0) / 4.0;
            for (k, b) in rf.b().iter().enumerate() {
                let dev = b.abs() / scale;
                worst = worst.max(dev);
                ensure(dev <= 1e-10, || format!("float N={n}: B_{k} = {b}"))?;
            }
        }
        Ok((10, format!("exact couplings bit-equal; worst float deviation {worst:.2e}")))
    })
}

// ── criterion 2: hyperbolic chain closed form ───────────────────────

/// The closed-form coupling of the hyperbolic chain, with `q` the root of
/// `q^2 - Kq + 1` inside `(0, 1)`. The scale follows from the generator's
/// seeding: the even-`N` seed step `A (1/q - q) = 1` gives
/// `A^2 = 1/(K^2 - 4)`, while the odd-`N` seed `A (q^{-1/2} - q^{1/2}) = 1/2`
/// gives `A^2 = 1/(4(K - 2))`.
fn hyperbolic_closed_u(n: usize, k: u64, m: usize) -> f64 {
    let kf = k as f64;
    let a2 = if n.is_multiple_of(2) { 1.0 / (kf * kf - 4.0) } else { 1.0 / (4.0 * (kf - 2.0)) };
    let q = (kf - (kf * kf - 4.0).sqrt()) / 2.0;
    let mm = m as i32;
    let nn = n as i32;
    a2 * (1.0 - q.powi(2 * mm)) * (q.powi(2 * (mm - nn - 1)) - 1.0)
        / ((1.0 + q.powi(2 * mm - nn - 2)) * (1.0 + q.powi(2 * mm - nn)))
}

pub fn criterion_2() -> CriterionReport {
    report(2, "hyperbolic chain closed form", || {
        let pairs = [(4usize, 4u64), (4, 6), (6, 4), (3, 6), (5, 6)];
        let mut worst = 0.0f64;
        for (n, k) in pairs {
            let s: Spectrum<BigRational> =
                step(generate(SpectrumFamily::Hyperbolic { n, k }), "generate")?;
            let r = step(reconstruct_euclid(&s), "exact reconstruction")?;
            for (i, b) in r.b().iter().enumerate() {
                ensure(b.is_zero(), || format!("(N={n},K={k}): B_{i} = {b}, expected 0"))?;
            }
            ensure(is_mirror_symmetric(&r), || {
                format!("(N={n},K={k}): couplings are not mirror-symmetric")
            })?;
            for (i, u) in r.u().iter().enumerate() {
                let closed = hyperbolic_closed_u(n, k, i + 1);
                let dev = (u.to_f64() - closed).abs() / closed;
                worst = worst.max(dev);
                ensure(dev <= 1e-9, || {
                    format!(
                        "(N={n},K={k}): U_{} = {} vs closed form {closed} ({dev:.3e} relative)",
                        i + 1,
                        u.to_f64()
                    )
                })?;
            }
        }
        Ok((pairs.len(), format!("worst closed-form deviation {worst:.2e}")))
    })
}

// ── criterion 3: transfer fidelity ──────────────────────────────────

pub fn criterion_3() -> CriterionReport {
    report(3, "transfer fidelity", || {
        let families = families_up_to(16, 16);
        let mut worst_deficit = 0.0f64;
        let mut worst_unitarity = 0.0f64;
        for family in &families {
            let (chain, _) = step(build_exact(*family), &format!("{family:?}"))?;
            let t = chain.time().as_f64();
            let f = step(transfer_amplitude(&chain, t), "transfer amplitude")?;
            let deficit = 1.0 - f.norm();
            worst_deficit = worst_deficit.max(deficit);
            ensure(f.norm() >= 1.0 - 1e-10, || {
                format!("{family:?}: |f(T)| = {:.15}", f.norm())
            })?;
            for t_probe in [0.37 * t, t] {
                let amps = step(site_amplitudes(&chain, t_probe), "site amplitudes")?;
                let total: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
                worst_unitarity = worst_unitarity.max((total - 1.0).abs());
                ensure((total - 1.0).abs() <= 1e-10, || {
                    format!("{family:?}: site probabilities sum to {total:.15} at t = {t_probe}")
                })?;
            }
        }
        Ok((
            families.len(),
            format!(
                "worst fidelity deficit {worst_deficit:.2e}, worst probability-sum deviation {worst_unitarity:.2e}"
            ),
        ))
    })
}

// ── criterion 4: emergent persymmetry ───────────────────────────────

pub fn criterion_4() -> CriterionReport {
    report(4, "emergent persymmetry", || {
        // Exact sweep: bit-level mirror symmetry, never imposed upstream
        // (the construction code carries no symmetrization; the residual is
        // computed only here in analysis).
        let exact_families = families_up_to(16, 16);
        for family in &exact_families {
            let (chain, _) = step(build_exact(*family), &format!("{family:?}"))?;
            ensure(is_mirror_symmetric(&chain.recurrence()), || {
                format!("{family:?}: exact couplings are not bit-mirror-symmetric")
            })?;
            let residual = persymmetry_residual(&chain);
            ensure(residual == 0.0, || {
                format!("{family:?}: exact persymmetry residual {residual:.3e} != 0")
            })?;
        }

        // Float sweep to N = 32.
        let float_families = families_up_to(32, HYPERBOLIC_FLOAT_PERSYM_MAX_N);
        let mut worst = 0.0f64;
        for family in &float_families {
            let (chain, _) = step(build_float(*family), &format!("float {family:?}"))?;
            let residual = persymmetry_residual(&chain);
            worst = worst.max(residual);
            ensure(residual <= 1e-10, || {
                format!("float {family:?}: persymmetry residual {residual:.3e}")
            })?;
        }
        Ok((
            exact_families.len() + float_families.len(),
            format!("exact residuals identically 0; worst float residual {worst:.2e}"),
        ))
    })
}

// ── criterion 5: boundary sign condition ────────────────────────────

pub fn criterion_5() -> CriterionReport {
    report(5, "boundary sign condition", || {
        // Exact mode: the identity chi_N(x_s) = (-1)^(N+s) is decided by
        // rational arithmetic and must hold with residual exactly zero.
        let exact_families = families_up_to(16, 16);
        for family in &exact_families {
            let (chain, measure) = step(build_exact(*family), &format!("{family:?}"))?;
            let rep = step(verify_with_measure(&chain, Some(&measure)), "verify")?;
            ensure(rep.sign_condition_residual == 0.0, || {
                format!(
                    "{family:?}: exact sign-condition residual {:.3e}",
                    rep.sign_condition_residual
                )
            })?;
        }

        // Float mode re-derives chi_N from the recurrence at the eigensolve
        // points; scoped by conditioning.
        let float_families = families_up_to(16, HYPERBOLIC_FLOAT_SIGN_MAX_N);
        let mut worst = 0.0f64;
        for family in &float_families {
            let (chain, _) = step(build_float(*family), &format!("float {family:?}"))?;
            let rep = step(verify(&chain), "float verify")?;
            worst = worst.max(rep.sign_condition_residual);
            ensure(rep.sign_condition_residual <= 1e-8, || {
                format!(
                    "float {family:?}: sign-condition residual {:.3e}",
                    rep.sign_condition_residual
                )
            })?;
        }
        Ok((
            exact_families.len() + float_families.len(),
            format!("exact residuals identically 0; worst float residual {worst:.2e}"),
        ))
    })
}

// ── criterion 6: algorithm cross-agreement ──────────────────────────

pub fn criterion_6() -> CriterionReport {
    report(6, "algorithm cross-agreement", || {
        for family in families_up_to(20, 20) {
            let s: Spectrum<BigRational> = step(generate(family), "generate")?;
            let (_, discrepancy) =
                step(reconstruct_cross_checked(&s, 1e-8), &format!("exact {family:?}"))?;
            ensure(discrepancy == 0.0, || {
                format!("exact {family:?}: algorithms differ by {discrepancy:.3e}")
            })?;
        }

        let float_families = families_up_to(12, HYPERBOLIC_FLOAT_CROSS_MAX_N);
        let mut worst = 0.0f64;
        for family in &float_families {
            let s: Spectrum<f64> = step(generate(*family), "generate")?;
            let (_, discrepancy) =
                step(reconstruct_cross_checked(&s, 1e-8), &format!("float {family:?}"))?;
            worst = worst.max(discrepancy);
        }
        Ok((
            families_up_to(20, 20).len() + float_families.len(),
            format!("exact agreement bit-level; worst float discrepancy {worst:.2e}"),
        ))
    })
}

// ── criterion 7: spectral round trip ────────────────────────────────

pub fn criterion_7() -> CriterionReport {
    report(7, "spectral round trip", || {
        let families = families_up_to(16, HYPERBOLIC_FLOAT_ROUNDTRIP_MAX_N);
        let mut worst = 0.0f64;
        for family in &families {
            let (chain, _) = step(build_float(*family), &format!("{family:?}"))?;
            let data = step(crate::analysis::eigensolve(&chain), "eigensolve")?;
            let measured = step(
                DiscreteMeasure::new(data.points.clone(), data.weights.clone()),
                "measured spectrum",
            )?;
            let rebuilt = step(reconstruct_stieltjes(&measured), "rebuild")?;
            let discrepancy = recurrence_discrepancy(&chain.recurrence(), &rebuilt);
            worst = worst.max(discrepancy);
            ensure(discrepancy <= 1e-8, || {
                format!("{family:?}: round-trip discrepancy {discrepancy:.3e}")
            })?;
        }
        Ok((families.len(), format!("worst round-trip discrepancy {worst:.2e}")))
    })
}

// ── criterion 8: surgery consistency ────────────────────────────────

pub fn criterion_8() -> CriterionReport {
    report(8, "surgery consistency", || {
        let mut cases = 0usize;

        // Middle-pair deletion on the uniform N=5 chain lands exactly on
        // the gapped L=1 family member.
        let (chain5, measure5) = step(build_exact(SpectrumFamily::Uniform { n: 5 }), "uniform 5")?;
        let outcome = step(
            apply_plan(
                &measure5,
                &chain5.recurrence(),
                &SurgeryPlan::once(SurgeryKind::RemoveMiddlePair),
            ),
            "remove middle pair",
        )?;
        let gapped: Spectrum<BigRational> =
            step(generate(SpectrumFamily::Gapped { n: 5, l: 1 }), "gapped(5,1)")?;
        ensure(outcome.measure.points() == gapped.points(), || {
            "uniform 5 surgery: points differ from gapped L=1".into()
        })?;
        let direct = step(pst_weights(&gapped), "gapped weights")?;
        ensure(outcome.measure.weights() == direct.weights(), || {
            "uniform 5 surgery: weights differ from direct construction".into()
        })?;
        ensure(outcome.cross_check_discrepancy == 0.0, || {
            "uniform 5 surgery: closed form and re-reconstruction differ".into()
        })?;
        let derived = step(
            chain_from_recurrence(&outcome.recurrence, chain5.time().clone()),
            "derived chain",
        )?;
        let f = step(transfer_amplitude(&derived, derived.time().as_f64()), "fidelity")?;
        ensure(f.norm() >= 1.0 - 1e-10, || {
            format!("uniform 5 surgery: fidelity {:.15}", f.norm())
        })?;
        cases += 1;

        // The two-site worked example: uniform N=3 surgers down to J_1 = 3/2.
        let (chain3, measure3) = step(build_exact(SpectrumFamily::Uniform { n: 3 }), "uniform 3")?;
        let outcome3 = step(
            apply_plan(
                &measure3,
                &chain3.recurrence(),
                &SurgeryPlan::once(SurgeryKind::RemoveMiddlePair),
            ),
            "uniform 3 middle pair",
        )?;
        ensure(outcome3.recurrence.u() == [BigRational::from_ratio(9, 4)], || {
            "uniform 3 surgery: expected U_1 = 9/4 (J_1 = 3/2)".into()
        })?;
        cases += 1;

        // Iterate middle-pair deletion on uniform N=9 to exhaustion; every
        // stage must keep all transfer identities intact.
        let (chain9, measure9) = step(build_exact(SpectrumFamily::Uniform { n: 9 }), "uniform 9")?;
        let mut measure = measure9;
        let mut recurrence = chain9.recurrence();
        for stage in 1..=4usize {
            let outcome = step(
                apply_plan(&measure, &recurrence, &SurgeryPlan::once(SurgeryKind::RemoveMiddlePair)),
                &format!("uniform 9 stage {stage}"),
            )?;
            measure = outcome.measure;
            recurrence = outcome.recurrence;
            let stage_chain = step(
                chain_from_recurrence(&recurrence, chain9.time().clone()),
                "stage chain",
            )?;
            let rep = step(verify_with_measure(&stage_chain, Some(&measure)), "stage verify")?;
            ensure(rep.fidelity >= 1.0 - 1e-10, || {
                format!("uniform 9 stage {stage}: fidelity {:.15}", rep.fidelity)
            })?;
            ensure(
                rep.persymmetry_residual == 0.0
                    && rep.sign_condition_residual == 0.0
                    && rep.dual_weight_residual == 0.0,
                || format!("uniform 9 stage {stage}: a residual is nonzero"),
            )?;
            if stage <= 3 {
                let direct: Spectrum<BigRational> = step(
                    generate(SpectrumFamily::Gapped { n: 9, l: stage }),
                    "gapped direct",
                )?;
                ensure(measure.points() == direct.points(), || {
                    format!("uniform 9 stage {stage}: points differ from gapped L={stage}")
                })?;
                let direct_rec = step(reconstruct_euclid(&direct), "gapped reconstruction")?;
                ensure(
                    recurrence.b() == direct_rec.b() && recurrence.u() == direct_rec.u(),
                    || format!("uniform 9 stage {stage}: couplings differ from direct build"),
                )?;
            } else {
                ensure(measure.len() == 2, || "exhaustion should leave two levels".into())?;
                ensure(recurrence.u() == [BigRational::from_ratio(81, 4)], || {
                    "final two-level chain should have U_1 = 81/4".into()
                })?;
            }
            cases += 1;
        }

        Ok((cases, "surgery route, closed forms, and direct builds all agree".into()))
    })
}

// ── criterion 9: desk-scale universality ────────────────────────────

/// Every gap between consecutive kept grid positions is odd.
fn mask_has_odd_gaps(mask: u16, width: u32) -> bool {
    let mut last: Option<u32> = None;
    for i in 0..width {
        if mask & (1 << i) != 0 {
            if let Some(p) = last {
                if (i - p) % 2 == 0 {
                    return false;
                }
            }
            last = Some(i);
        }
    }
    true
}

pub fn criterion_9() -> CriterionReport {
    report(9, "desk-scale surgery universality", || {
        const WIDTH: u32 = 13; // grid {-6, ..., 6}
        let full: u16 = (1 << WIDTH) - 1;
        let grid: Vec<BigRational> =
            (0..WIDTH).map(|i| BigRational::from_int(i as i64 - 6)).collect();

        let spectrum = step(
            Spectrum::with_fundamental_time(grid.clone()),
            "full grid spectrum",
        )?;
        let root_measure = step(pst_weights(&spectrum), "full grid weights")?;
        let root_rec = step(reconstruct_stieltjes(&root_measure), "full grid chain")?;

        let mut states: HashMap<u16, (DiscreteMeasure<BigRational>, MonicRecurrence<BigRational>)> =
            HashMap::new();
        states.insert(full, (root_measure, root_rec));
        let mut queue = VecDeque::from([full]);

        while let Some(mask) = queue.pop_front() {
            let (measure, _) = states.get(&mask).expect("queued masks are stored").clone();
            let len = measure.len();
            let bits: Vec<u32> = (0..WIDTH).filter(|i| mask & (1 << i) != 0).collect();

            let mut moves: Vec<Vec<usize>> = Vec::new();
            if len >= 3 {
                moves.push(vec![0]);
                moves.push(vec![len - 1]);
            }
            if len >= 4 {
                for i in 0..len - 1 {
                    moves.push(vec![i, i + 1]);
                }
            }

            for indices in moves {
                let child_mask =
                    indices.iter().fold(mask, |m, &i| m & !(1 << bits[i]));
                if states.contains_key(&child_mask) {
                    continue;
                }
                let child_measure = step(
                    crate::surgery::remove_levels_measure(&measure, &indices),
                    "level deletion",
                )?;
                let child_rec = step(reconstruct_stieltjes(&child_measure), "surgery rebuild")?;

                // Direct construction from the surviving spectrum, through
                // the independent Euclid route.
                let direct_spectrum = step(
                    Spectrum::with_fundamental_time(child_measure.points().to_vec()),
                    "direct spectrum",
                )?;
                let direct_measure = step(pst_weights(&direct_spectrum), "direct weights")?;
                ensure(child_measure.weights() == direct_measure.weights(), || {
                    format!("mask {child_mask:#015b}: surgery weights differ from direct")
                })?;
                let direct_rec = step(reconstruct_euclid(&direct_spectrum), "direct rebuild")?;
                ensure(
                    child_rec.b() == direct_rec.b() && child_rec.u() == direct_rec.u(),
                    || format!("mask {child_mask:#015b}: surgery chain differs from direct"),
                )?;

                states.insert(child_mask, (child_measure, child_rec));
                queue.push_back(child_mask);
            }
        }

        // Reachability oracle: exhaustive enumeration of the admissible
        // subsets (all gaps odd, at least two points).
        let mut expected = 0usize;
        for mask in 1u16..=full {
            let admissible = mask.count_ones() >= 2 && mask_has_odd_gaps(mask, WIDTH);
            if admissible {
                expected += 1;
            }
            ensure(states.contains_key(&mask) == admissible, || {
                format!(
                    "mask {mask:#015b}: reachable = {}, admissible = {admissible}",
                    states.contains_key(&mask)
                )
            })?;
        }
        ensure(states.len() == expected, || {
            format!("reached {} subsets, enumeration says {expected}", states.len())
        })?;

        Ok((expected, format!("all {expected} reachable subsets match their direct builds bit-exactly")))
    })
}

// ── criterion 10: dual-weight identity on random chains ─────────────

pub fn criterion_10(seed: u64) -> CriterionReport {
    report(10, "dual-weight identity on random chains", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst = 0.0f64;
        let cases = 100usize;
        for case in 0..cases {
            let n = rng.gen_range(1..=12usize);
            let b: Vec<f64> = (0..=n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let u: Vec<f64> = (0..n)
                .map(|_| {
                    let j: f64 = rng.gen_range(0.25..1.75);
                    j * j
                })
                .collect();
            let recurrence = step(MonicRecurrence::new(b, u), "random recurrence")?;
            let chain = step(chain_from_recurrence(&recurrence, Time::pi()), "random chain")?;
            let rep = step(verify(&chain), "verify")?;
            worst = worst.max(rep.dual_weight_residual);
            ensure(rep.dual_weight_residual <= 1e-8, || {
                format!(
                    "case {case} (N={n}): dual-weight residual {:.3e}",
                    rep.dual_weight_residual
                )
            })?;
        }
        Ok((cases, format!("worst dual-weight residual {worst:.2e}")))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_gap_masks_are_detected() {
        // {0, 1, 2} has gaps 1,1; {0, 2} has gap 2.
        assert!(mask_has_odd_gaps(0b111, 13));
        assert!(!mask_has_odd_gaps(0b101, 13));
        assert!(!mask_has_odd_gaps(0b1000000000001, 13), "gap 12 is even");
    }

    #[test]
    fn alternating_parity_subset_count_is_fibonacci_flavored() {
        // Sequences with all-odd gaps over 13 positions: summing the
        // Fibonacci-style recursion gives 985 nonempty, 972 of size >= 2.
        let count = (1u16..1 << 13)
            .filter(|m| m.count_ones() >= 2 && mask_has_odd_gaps(*m, 13))
            .count();
        assert_eq!(count, 972);
    }

    #[test]
    fn family_sweep_respects_the_hyperbolic_cap() {
        let families = families_up_to(32, 4);
        let max_hyp = families
            .iter()
            .filter_map(|f| match f {
                SpectrumFamily::Hyperbolic { n, .. } => Some(*n),
                _ => None,
            })
            .max()
            .unwrap();
        assert_eq!(max_hyp, 4);
        assert!(families.contains(&SpectrumFamily::Uniform { n: 32 }));
    }
}
