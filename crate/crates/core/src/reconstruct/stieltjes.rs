//! Discrete Stieltjes orthogonalization.
//!
//! Given the measure `(x_s, w_s)`, the recurrence coefficients are inner
//! products of the monic polynomials it orthogonalizes:
//!
//! ```text
//! B_n = <x P_n, P_n> / h_n,     U_n = h_n / h_{n-1},     h_n = <P_n, P_n>,
//! ```
//!
//! with `<f, g> = sum_s w_s f(x_s) g(x_s)`. The polynomials are carried as
//! value vectors on the support, so each step costs `O(N)` and the whole
//! reconstruction `O(N^2)`. The same loop serves both arithmetic modes; a
//! nonpositive `h_n` can only appear in float mode and is reported as lost
//! orthogonality rather than patched over.

use crate::error::{Error, Result};
use crate::measure::DiscreteMeasure;
use crate::scalar::Scalar;

use super::MonicRecurrence;

/// Reconstruction by orthogonalization against an explicit measure.
pub fn reconstruct_stieltjes<S: Scalar>(measure: &DiscreteMeasure<S>) -> Result<MonicRecurrence<S>> {
    let points = measure.points();
    let weights = measure.weights();
    let n = measure.n();

    let dot = |f: &[S], g: &[S]| -> S {
        let mut acc = S::zero();
        for ((w, a), b) in weights.iter().zip(f).zip(g) {
            acc = acc + w.clone() * a.clone() * b.clone();
        }
        acc
    };

    let mut b = Vec::with_capacity(n + 1);
    let mut u = Vec::with_capacity(n);

    // Values of P_{k-1} and P_k on the support.
    let mut p_prev = vec![S::zero(); points.len()];
    let mut p_cur = vec![S::one(); points.len()];
    let mut h_prev = S::one();
    let mut h_cur = dot(&p_cur, &p_cur);

    for k in 0..=n {
        let weighted_x: Vec<S> = points
            .iter()
            .zip(&p_cur)
            .map(|(x, p)| x.clone() * p.clone())
            .collect();
        let b_k = dot(&weighted_x, &p_cur) / h_cur.clone();
        b.push(b_k.clone());

        if k == n {
            break;
        }

        let u_k = if k == 0 { S::zero() } else { h_cur.clone() / h_prev.clone() };
        let p_next: Vec<S> = points
            .iter()
            .zip(&p_cur)
            .zip(&p_prev)
            .map(|((x, p), q)| (x.clone() - b_k.clone()) * p.clone() - u_k.clone() * q.clone())
            .collect();
        let h_next = dot(&p_next, &p_next);
        if !h_next.is_finite() || !h_next.is_positive() {
            return Err(Error::NonPositiveNorm { index: k + 1 });
        }
        u.push(h_next.clone() / h_cur.clone());

        p_prev = p_cur;
        p_cur = p_next;
        h_prev = h_cur;
        h_cur = h_next;
    }

    MonicRecurrence::new(b, u)
}
