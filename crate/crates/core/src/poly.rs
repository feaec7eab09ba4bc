//! Dense univariate polynomials over a [`Scalar`].
//!
//! Coefficients are stored in ascending order, `c[0] + c[1] x + ...`, with
//! exactly-zero leading coefficients trimmed. The only nontrivial operation
//! the pipeline needs is long division by a monic divisor, which stays exact
//! in rational mode; float-mode degree decisions are made by the callers,
//! which know the relevant scales.

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![S::one()] }
    }

    pub fn constant(c: S) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// Builds a polynomial, trimming exactly-zero leading coefficients.
    pub fn from_coeffs(mut coeffs: Vec<S>) -> Self {
        while matches!(coeffs.last(), Some(c) if c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn add(&self, other: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn scaled(&self, factor: &S) -> Poly<S> {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c.clone() * factor.clone()).collect())
    }

    pub fn mul(&self, other: &Poly<S>) -> Poly<S> {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(coeffs)
    }

    /// The monic polynomial with the given roots, `prod_s (x - r_s)`.
    pub fn monic_from_roots(roots: &[S]) -> Poly<S> {
        let mut coeffs = vec![S::one()];
        for r in roots {
            let mut next = vec![S::zero(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] = next[k + 1].clone() + c.clone();
                next[k] = next[k].clone() - r.clone() * c.clone();
            }
            coeffs = next;
        }
        Poly::from_coeffs(coeffs)
    }

    /// Long division by a monic divisor: returns the quotient and the raw
    /// remainder coefficients (length = divisor degree, untruncated so float
    /// callers can inspect near-zero tails).
    pub fn div_rem_monic(&self, divisor: &Poly<S>) -> (Poly<S>, Vec<S>) {
        let d = divisor.degree().expect("divisor must be nonzero");
        assert!(
            divisor.leading().map(|c| c.clone() == S::one()).unwrap_or(false),
            "divisor must be monic"
        );
        if self.coeffs.len() <= d {
            let mut rem = self.coeffs.clone();
            rem.resize(d, S::zero());
            return (Poly::zero(), rem);
        }
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - d;
        let mut quot = vec![S::zero(); qlen];
        for k in (0..qlen).rev() {
            let factor = rem[k + d].clone();
            quot[k] = factor.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - factor.clone() * dc.clone();
            }
        }
        rem.truncate(d);
        (Poly::from_coeffs(quot), rem)
    }
}
