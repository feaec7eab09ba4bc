//! Euclidean division descent.
//!
//! The top orthonormal polynomial of a transfer chain takes the values
//! `chi_N(x_s) = (-1)^(N+s)`, so it can be written down directly by Lagrange
//! interpolation; its positive leading coefficient rescales it to the monic
//! `P_N`. Together with `P_{N+1} = prod_s (x - x_s)` the whole recurrence
//! follows by repeated division,
//!
//! ```text
//! P_{k+1} = (x - B_k) P_k - U_k P_{k-1},
//! ```
//!
//! i.e. the quotient of `P_{k+1} / P_k` is `x - B_k` and the remainder is
//! `-U_k P_{k-1}`. The remainder's leading coefficient hands over `U_k`; its
//! sign is fixed by the recurrence, so `U_k = -lead(R)`.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::spectrum::Spectrum;

use super::MonicRecurrence;

/// Float-mode threshold: a remainder lead smaller than this fraction of the
/// dividend's coefficient scale counts as a vanished residue degree.
const RESIDUE_REL_TOL: f64 = 1e-12;

/// The interpolated sign polynomial `chi_N` and its monic rescaling `P_N`.
#[derive(Debug, Clone)]
pub struct SignInterpolation<S> {
    pub chi: Poly<S>,
    pub monic: Poly<S>,
}

/// Lagrange interpolation of the values `(-1)^(N+s)` on the spectrum.
///
/// Each basis numerator is obtained by deflating `P_{N+1}` at one node, so
/// the whole interpolation costs `O(N^2)`. The leading coefficient equals
/// `sum_s 1 / |prod_{i != s} (x_s - x_i)| > 0`; a vanishing lead therefore
/// signals invalid input (or float exhaustion) rather than a valid chain.
pub fn lagrange_chi_n<S: Scalar>(spectrum: &Spectrum<S>) -> Result<SignInterpolation<S>> {
    let points = spectrum.points();
    let n = points.len() - 1;
    let full = Poly::monic_from_roots(points);

    let mut chi = Poly::zero();
    for (s, x_s) in points.iter().enumerate() {
        let linear = Poly::from_coeffs(vec![-x_s.clone(), S::one()]);
        let (numerator, _) = full.div_rem_monic(&linear);
        let denominator = numerator.eval(x_s);
        if denominator.is_zero() {
            return Err(Error::DegenerateLeadingCoefficient);
        }
        let sign = if (n + s).is_multiple_of(2) { S::one() } else { -S::one() };
        chi = chi.add(&numerator.scaled(&(sign / denominator)));
    }

    let lead = chi.coeff(n);
    let coeff_scale = chi
        .coeffs()
        .iter()
        .map(|c| c.to_f64().abs())
        .fold(0.0f64, f64::max);
    let degenerate = if S::EXACT {
        lead.is_zero() || chi.degree() != Some(n)
    } else {
        !lead.is_finite() || lead.to_f64().abs() <= RESIDUE_REL_TOL * coeff_scale
    };
    if degenerate || !lead.is_positive() {
        return Err(Error::DegenerateLeadingCoefficient);
    }

    let monic_coeffs = (0..=n).map(|k| chi.coeff(k) / lead.clone()).collect();
    Ok(SignInterpolation { chi, monic: Poly::from_coeffs(monic_coeffs) })
}

/// Full reconstruction by division descent from `P_{N+1}` and `P_N`.
pub fn reconstruct_euclid<S: Scalar>(spectrum: &Spectrum<S>) -> Result<MonicRecurrence<S>> {
    spectrum.validate_pst_time()?;
    let n = spectrum.n();
    let mut p_hi = Poly::monic_from_roots(spectrum.points());
    let mut p_lo = lagrange_chi_n(spectrum)?.monic;

    let mut b_rev: Vec<S> = Vec::with_capacity(n + 1);
    let mut u_rev: Vec<S> = Vec::with_capacity(n);

    for k in (0..=n).rev() {
        let dividend_scale = p_hi
            .coeffs()
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0f64, f64::max);
        let (quotient, remainder) = p_hi.div_rem_monic(&p_lo);
        debug_assert_eq!(quotient.degree(), Some(1), "monic degree drop must be 1");
        b_rev.push(-quotient.coeff(0));

        if k == 0 {
            break;
        }
        // True remainder is -U_k P_{k-1}, degree k - 1.
        let lead = remainder[k - 1].clone();
        let vanished = if S::EXACT {
            lead.is_zero()
        } else {
            !lead.is_finite() || lead.to_f64().abs() <= RESIDUE_REL_TOL * dividend_scale
        };
        if vanished {
            return Err(Error::ResidueDegreeError { step: k, expected: k - 1 });
        }
        let u_k = -lead;
        if !u_k.is_positive() {
            return Err(Error::NonPositiveU { index: k });
        }
        let next_lo = Poly::from_coeffs(
            remainder
                .into_iter()
                .map(|c| -(c / u_k.clone()))
                .collect(),
        );
        u_rev.push(u_k);
        p_hi = p_lo;
        p_lo = next_lo;
    }

    b_rev.reverse();
    u_rev.reverse();
    MonicRecurrence::new(b_rev, u_rev)
}
