//! Quadrature for the integral shapes that show up here: smooth finite
//! intervals, semi-infinite integrals with endpoint singularities and decay,
//! and semi-infinite integrals oscillating in √t with algebraic decay.

mod de;
mod gk;
mod osc;

pub use de::{exp_sinh, exp_sinh_complex, tanh_sinh};
pub use gk::gk_adaptive;
pub use osc::integrate_oscillatory;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Outcome of one quadrature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub err_estimate: f64,
    pub n_evals: usize,
    pub converged: bool,
    /// Truncation and transform parameters, in evaluation order.
    pub log: Vec<(String, f64)>,
}

impl QuadResult {
    pub(crate) fn new(value: f64, err_estimate: f64, n_evals: usize, tol: f64) -> Self {
        let converged = err_estimate <= tol * value.abs().max(1.0);
        Self {
            value,
            err_estimate,
            n_evals,
            converged,
            log: Vec::new(),
        }
    }

    pub(crate) fn with(mut self, key: &str, v: f64) -> Self {
        self.log.push((key.to_string(), v));
        self
    }
}

/// Shape of an integrand whose phase is linear in √t.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscSpec {
    /// Frequencies ω in factors like sin(ω√t) or J_μ(ω√t).
    pub sqrt_argument_frequencies: Vec<f64>,
    /// Power of t at the origin.
    pub endpoint_exponent: f64,
    /// The integrand envelope decays like t^{−decay_exponent}.
    pub decay_exponent: f64,
    /// Smallest √t beyond which the large-argument expansions of the integrand
    /// are usable.
    pub onset: f64,
}

impl OscSpec {
    pub fn new(freqs: &[f64], endpoint_exponent: f64, decay_exponent: f64) -> Self {
        Self {
            sqrt_argument_frequencies: freqs.to_vec(),
            endpoint_exponent,
            decay_exponent,
            onset: 0.0,
        }
    }

    pub fn with_onset(mut self, onset: f64) -> Self {
        self.onset = onset;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.endpoint_exponent > -1.0) {
            return Err(Error::Param(format!(
                "endpoint exponent {} not integrable at 0",
                self.endpoint_exponent
            )));
        }
        if self
            .sqrt_argument_frequencies
            .iter()
            .any(|w| !(*w >= 0.0) || !w.is_finite())
        {
            return Err(Error::Param("frequencies must be finite and non-negative".into()));
        }
        Ok(())
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct KSum {
    s: f64,
    c: f64,
}

impl KSum {
    pub fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }
    pub fn value(&self) -> f64 {
        self.s + self.c
    }
}

/// Adaptive 15-point Gauss–Kronrod on [lo, hi].
pub fn integrate_finite<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<QuadResult> {
    if !(lo < hi) {
        return Err(Error::Param(format!(
            "integrate_finite: need lo < hi, got [{lo}, {hi}]"
        )));
    }
    gk_adaptive(&f, lo, hi, 0.0, tol, 2000)
}

/// ∫₀^∞ f(t) dt by the exp-sinh substitution t = s·exp(π/2·sinh u).
///
/// `endpoint_exponent` is the power of t at 0 (must exceed −1).
pub fn integrate_singular_decay<F: Fn(f64) -> f64>(f: F, endpoint_exponent: f64, tol: f64) -> Result<QuadResult> {
    integrate_singular_decay_scaled(f, endpoint_exponent, 1.0, tol)
}

/// As [`integrate_singular_decay`] with a length scale `scale` for t.
pub fn integrate_singular_decay_scaled<F: Fn(f64) -> f64>(
    f: F,
    endpoint_exponent: f64,
    scale: f64,
    tol: f64,
) -> Result<QuadResult> {
    if !(endpoint_exponent > -1.0) {
        return Err(Error::Param(format!(
            "endpoint exponent {endpoint_exponent} not integrable at 0"
        )));
    }
    if !(scale > 0.0) {
        return Err(Error::Param(format!("scale {scale} must be positive")));
    }
    Ok(exp_sinh(&f, scale, tol)?.with("endpoint_exponent", endpoint_exponent))
}

/// ∫₀^∞ f(t) dt split at the positive `breaks`: tanh-sinh on the first
/// piece (integrable singularity at 0 allowed), Gauss–Kronrod between
/// breaks, exp-sinh on the tail. Meant for integrands with a sharp interior
/// peak, such as Poisson kernels y/((t − t₀)² + y²).
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(f: F, breaks: &[f64], tol: f64) -> Result<QuadResult> {
    let mut pts: Vec<f64> = breaks.iter().cloned().filter(|b| *b > 0.0 && b.is_finite()).collect();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());
    if pts.is_empty() {
        return exp_sinh(&f, 1.0, tol);
    }
    let head = tanh_sinh(&f, 0.0, pts[0], tol)?;
    let mut acc = KSum::default();
    acc.add(head.value);
    let mut err = head.err_estimate;
    let mut n = head.n_evals;
    for w in pts.windows(2) {
        let r = gk_adaptive(&f, w[0], w[1], 0.0, tol, 500)?;
        acc.add(r.value);
        err += r.err_estimate;
        n += r.n_evals;
    }
    let last = *pts.last().unwrap();
    let g = |s: f64| f(last + s);
    let tail = exp_sinh(&g, last, tol)?;
    acc.add(tail.value);
    err += tail.err_estimate;
    n += tail.n_evals;
    Ok(QuadResult::new(acc.value(), err, n, tol).with("pieces", (pts.len() + 1) as f64))
}

/// ∫₀^∞ f(t) dt as exp-sinh pieces on (0, split) (through t = split·e^{−s})
/// and (split, ∞). Suits integrands with a log-type singularity at 0.
pub fn integrate_log_split<F: Fn(f64) -> f64>(f: F, split: f64, tol: f64) -> Result<QuadResult> {
    if !(split > 0.0) || !split.is_finite() {
        return Err(Error::Param(format!("split point {split} must be positive")));
    }
    let head = exp_sinh(
        &|s: f64| {
            let t = split * (-s).exp();
            if t == 0.0 {
                0.0
            } else {
                f(t) * t
            }
        },
        1.0,
        tol,
    )?;
    let tail = exp_sinh(&|s: f64| f(split + s), split, tol)?;
    let mut acc = KSum::default();
    acc.add(head.value);
    acc.add(tail.value);
    Ok(QuadResult::new(
        acc.value(),
        head.err_estimate + tail.err_estimate,
        head.n_evals + tail.n_evals,
        tol,
    )
    .with("split", split))
}

/// ∫₀^∞ e^{−xt} f(t) dt.
pub fn numeric_laplace<F: Fn(f64) -> f64>(f: F, x: f64, endpoint_exponent: f64, tol: f64) -> Result<QuadResult> {
    numeric_laplace_scaled(f, x, endpoint_exponent, 1.0, tol)
}

/// ∫₀^∞ e^{−xt} f(t) dt where `scale` is the natural length of f alone.
pub fn numeric_laplace_scaled<F: Fn(f64) -> f64>(
    f: F,
    x: f64,
    endpoint_exponent: f64,
    scale: f64,
    tol: f64,
) -> Result<QuadResult> {
    if !(x > 0.0) {
        return Err(Error::Param(format!("numeric_laplace: x = {x} must be positive")));
    }
    let s = scale.min(1.0 / x);
    let g = |t: f64| {
        let e = (-x * t).exp();
        if e == 0.0 {
            0.0
        } else {
            e * f(t)
        }
    };
    Ok(integrate_singular_decay_scaled(g, endpoint_exponent, s, tol)?.with("laplace_x", x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn elementary_battery() {
        let r = integrate_finite(|x| x, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 0.5).abs() < 1e-14 && r.converged);
        let r = integrate_singular_decay(|t| (-t).exp(), 0.0, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-13);
        let r = integrate_singular_decay(|t| (-t).exp() / t.sqrt(), -0.5, 1e-12).unwrap();
        assert!((r.value - PI.sqrt()).abs() < 1e-12);
        let r = numeric_laplace(|_| 1.0, 2.0, 0.0, 1e-12).unwrap();
        assert!((r.value - 0.5).abs() < 1e-13);
    }

    #[test]
    fn bad_input() {
        assert!(integrate_finite(|x| x, 1.0, 0.0, 1e-8).is_err());
        assert!(integrate_singular_decay(|t| t, -1.0, 1e-8).is_err());
        assert!(matches!(
            integrate_finite(|x| 1.0 / (x - 0.5), 0.0, 1.0, 1e-8),
            Err(Error::Evaluation { .. })
        ));
    }
}
