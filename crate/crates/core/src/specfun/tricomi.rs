//! Tricomi ψ(a, c, x) for x > 0, its boundary values on the negative axis,
//! and Whittaker W.
//!
//! For a > 0,
//!   x^a ψ(a,c,x) = (1/Γ(a)) ∫₀^∞ e^{−s} s^{a−1} (1 + s/x)^{c−a−1} ds,
//! integrated by exp-sinh. The scaled form is accurate for large x, where
//! the Laplace transforms built on ψ tend to 1. Other a are reduced by the
//! Kummer transformation or the contiguous relation in a.

use super::gamma::{cospi, ln_gamma, ln_gamma_abs, rgamma, sinpi};
use super::hyper::kummer_m;
use super::BoundaryPsiPair;
use crate::error::{domain, no_conv, Result};
use crate::quad::{exp_sinh, exp_sinh_complex};
use num_complex::Complex64;
use std::f64::consts::PI;

const TOL: f64 = 1e-14;

/// x^a ψ(a,c,x) for a > 0, x > 0.
pub fn tricomi_psi_scaled(a: f64, c: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) || !(x > 0.0) || !c.is_finite() {
        return Err(domain(
            "tricomi_psi_scaled",
            format!("need a > 0, x > 0; got a={a}, c={c}, x={x}"),
        ));
    }
    let p = c - a - 1.0;
    let lg = ln_gamma(a)?;
    let f = |s: f64| (-s + (a - 1.0) * s.ln() + p * (s / x).ln_1p() - lg).exp();
    let r = exp_sinh(&f, 1.0, TOL)?;
    if !r.value.is_finite() || r.err_estimate > 1e-10 * r.value.abs() {
        return Err(no_conv("tricomi_psi", format!("integral at a={a}, c={c}, x={x}")));
    }
    Ok(r.value)
}

/// Tricomi's ψ(a, c, x) = U(a, c, x) for x > 0.
pub fn tricomi_psi(a: f64, c: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !a.is_finite() || !c.is_finite() {
        return Err(domain("tricomi_psi", format!("need x > 0; got a={a}, c={c}, x={x}")));
    }
    if a > 0.0 {
        return Ok(tricomi_psi_scaled(a, c, x)? * (-a * x.ln()).exp());
    }
    if a == 0.0 {
        return Ok(1.0);
    }
    let a2 = a - c + 1.0;
    if a2 > 0.0 {
        return Ok(x.powf(1.0 - c) * tricomi_psi(a2, 2.0 - c, x)?);
    }
    // U(a−1) = (x + 2a − c)U(a) − a(a − c + 1)U(a + 1), run downward from a + n > 0
    let n = (-a).floor() as usize + 1;
    let top = a + n as f64;
    let mut u1 = tricomi_psi(top + 1.0, c, x)?;
    let mut u0 = tricomi_psi(top, c, x)?;
    let mut k = top;
    for _ in 0..n {
        let um = (x + 2.0 * k - c) * u0 - k * (k - c + 1.0) * u1;
        u1 = u0;
        u0 = um;
        k -= 1.0;
    }
    Ok(u0)
}

fn near_integer(c: f64, tol: f64) -> bool {
    (c - c.round()).abs() < tol
}

/// ψ(a, c, te^{iπ}), the limit from the upper half-plane onto −t, by the
/// two-Kummer-solution combination
/// k₁Φ(a,c,−t) − e^{−iπc}k₂t^{1−c}Φ(a−c+1,2−c,−t), k₁ = Γ(1−c)/Γ(a−c+1),
/// k₂ = Γ(c−1)/Γ(a). Within 0.02 of an integer c the contour form is used.
pub fn tricomi_psi_boundary(a: f64, c: f64, t: f64) -> Result<BoundaryPsiPair> {
    if !(a > 0.0) || !(c < 1.0) || !(t > 0.0) {
        return Err(domain(
            "tricomi_psi_boundary",
            format!("need a > 0, c < 1, t > 0; got a={a}, c={c}, t={t}"),
        ));
    }
    if near_integer(c, 0.02) {
        return tricomi_psi_boundary_contour(a, c, t);
    }
    let (l1, s1) = ln_gamma_abs(1.0 - c)?;
    let k1 = s1 * (l1 - ln_gamma(a - c + 1.0)?).exp();
    let (l2, s2) = ln_gamma_abs(c - 1.0)?;
    let k2 = s2 * l2.exp() * rgamma(a);
    let y1 = kummer_m(a, c, -t)?;
    let y2 = t.powf(1.0 - c) * kummer_m(a - c + 1.0, 2.0 - c, -t)?;
    Ok(BoundaryPsiPair {
        re_part: k1 * y1 - cospi(c) * k2 * y2,
        im_part: sinpi(c) * k2 * y2,
    })
}

/// ψ(a, c, te^{iπ}) for any real c by rotating the Laplace integral onto
/// the ray arg s = −3π/4:
///   e^{−3iπa/4}/Γ(a) ∫₀^∞ exp(−t r e^{iπ/4}) r^{a−1} (1 + r e^{−3iπ/4})^{c−a−1} dr.
pub fn tricomi_psi_boundary_contour(a: f64, c: f64, t: f64) -> Result<BoundaryPsiPair> {
    if !(a > 0.0) || !(t > 0.0) || !c.is_finite() {
        return Err(domain(
            "tricomi_psi_boundary_contour",
            format!("need a > 0, t > 0; got a={a}, t={t}"),
        ));
    }
    let phi = 0.75 * PI;
    let rot = Complex64::from_polar(1.0, PI - phi);
    let w = Complex64::from_polar(1.0, -phi);
    let lg = ln_gamma(a)?;
    let p = c - a - 1.0;
    let f = |r: f64| -> Complex64 {
        let base = Complex64::new(1.0, 0.0) + w * r;
        let e = -rot * (t * r) + (a - 1.0) * r.ln() + p * base.ln() - lg;
        e.exp()
    };
    let scale = 1.0 / t.max(1.0);
    let (v, err) = exp_sinh_complex(&f, scale, TOL)?;
    if err > 1e-10 * v.norm() {
        return Err(no_conv("tricomi_psi_boundary_contour", format!("a={a}, c={c}, t={t}")));
    }
    let z = v * Complex64::from_polar(1.0, -phi * a);
    Ok(BoundaryPsiPair {
        re_part: z.re,
        im_part: z.im,
    })
}

/// Whittaker W_{κ,m}(x) = e^{−x/2} x^{m+1/2} ψ(m − κ + 1/2, 1 + 2m, x).
pub fn whittaker_w(kappa: f64, m: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain("whittaker_w", format!("x = {x} must be positive")));
    }
    let a = m - kappa + 0.5;
    let c = 1.0 + 2.0 * m;
    if a > 0.0 {
        // x^{m+1/2−a} = x^{κ}
        let s = tricomi_psi_scaled(a, c, x)?;
        return Ok(s * (-0.5 * x + kappa * x.ln()).exp());
    }
    let psi = tricomi_psi(a, c, x)?;
    Ok(psi * (-0.5 * x + (m + 0.5) * x.ln()).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn exponential_integral_identity() {
        // ψ(1,1,x) = eˣE₁(x); E₁(1) = 0.21938393439552026
        let v = tricomi_psi(1.0, 1.0, 1.0).unwrap();
        assert!(rel(v, 1f64.exp() * 0.21938393439552026) < 1e-13);
    }

    #[test]
    fn kummer_transformation() {
        for &(a, c, x) in &[(1.5, 0.5, 0.7), (2.0, 3.3, 4.0), (0.4, -1.2, 0.01)] {
            let l = tricomi_psi(a, c, x).unwrap();
            let r = x.powf(1.0 - c) * tricomi_psi(a - c + 1.0, 2.0 - c, x).unwrap();
            assert!(rel(l, r) < 1e-12, "{a} {c} {x}: {l} {r}");
        }
    }

    #[test]
    fn polynomial_case() {
        // ψ(−1, c, x) = x − c; ψ(−2, c, x) = x² − 2(c+1)x + c(c+1)
        let (c, x) = (3.5, 0.8);
        assert!((tricomi_psi(-1.0, c, x).unwrap() - (x - c)).abs() < 1e-12);
        let e = x * x - 2.0 * (c + 1.0) * x + c * (c + 1.0);
        assert!((tricomi_psi(-2.0, c, x).unwrap() - e).abs() < 1e-11);
    }

    #[test]
    fn boundary_forms_agree() {
        for &(a, c, t) in &[(1.5, 0.5, 0.3), (2.0, -0.5, 2.0), (0.7, 0.2, 7.0), (3.0, 0.9, 20.0)] {
            let s = tricomi_psi_boundary(a, c, t).unwrap();
            let q = tricomi_psi_boundary_contour(a, c, t).unwrap();
            assert!(
                (s.re_part - q.re_part).abs() < 1e-11 * s.modulus_sq().sqrt(),
                "{a} {c} {t}"
            );
            assert!(
                (s.im_part - q.im_part).abs() < 1e-11 * s.modulus_sq().sqrt(),
                "{a} {c} {t}"
            );
        }
    }

    #[test]
    fn whittaker_symmetry() {
        for &(k, m, x) in &[(0.3, 0.4, 1.5), (-1.0, 1.3, 0.2), (2.0, 0.25, 10.0)] {
            let l = whittaker_w(k, m, x).unwrap();
            let r = whittaker_w(k, -m, x).unwrap();
            assert!(rel(l, r) < 1e-11, "{k} {m} {x}: {l} {r}");
        }
    }
}
