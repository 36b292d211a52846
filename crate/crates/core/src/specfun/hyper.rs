//! Gauss ₂F₁ on [0,1) and Kummer's Φ = ₁F₁ on the real line.

use super::gamma::{ln_gamma_abs, rgamma};
use crate::error::{no_conv, Error, Result};

const HARD_CAP: usize = 400_000;

fn is_nonpos_int(c: f64) -> bool {
    c <= 0.0 && c == c.round()
}

fn series_2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut small = 0;
    for k in 0..HARD_CAP {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        if term.abs() <= 1e-17 * sum.abs() {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(no_conv("gauss_2f1", format!("series stalled at x={x}")))
}

/// Γ(p)Γ(q)/(Γ(r)Γ(s)) with 1/Γ at poles treated as zero.
fn gamma_ratio(p: f64, q: f64, r: f64, s: f64) -> f64 {
    let (lp, sp) = ln_gamma_abs(p).unwrap_or((f64::INFINITY, 1.0));
    let (lq, sq) = ln_gamma_abs(q).unwrap_or((f64::INFINITY, 1.0));
    if rgamma(r) == 0.0 || rgamma(s) == 0.0 {
        return 0.0;
    }
    let (lr, sr) = ln_gamma_abs(r).unwrap();
    let (ls, ss) = ln_gamma_abs(s).unwrap();
    sp * sq * sr * ss * (lp + lq - lr - ls).exp()
}

/// ₂F₁(a, b; c; x) for 0 ≤ x < 1.
///
/// Direct series up to x = 0.9; beyond that the 1 − x connection formula when
/// c − a − b is safely away from an integer.
pub fn gauss_2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    if is_nonpos_int(c) {
        return Err(Error::Param(format!("gauss_2f1: c = {c} is a non-positive integer")));
    }
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Domain {
            func: "gauss_2f1",
            msg: format!("x = {x} outside [0, 1)"),
        });
    }
    if x == 0.0 || a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    if b == c {
        return Ok((1.0 - x).powf(-a));
    }
    if a == c {
        return Ok((1.0 - x).powf(-b));
    }
    let s = c - a - b;
    if x > 0.9 && (s - s.round()).abs() > 1e-3 {
        let y = 1.0 - x;
        let t1 = gamma_ratio(c, s, c - a, c - b) * series_2f1(a, b, 1.0 - s, y)?;
        let t2 = y.powf(s) * gamma_ratio(c, -s, a, b) * series_2f1(c - a, c - b, 1.0 + s, y)?;
        return Ok(t1 + t2);
    }
    series_2f1(a, b, c, x)
}

fn series_1f1(a: f64, c: f64, x: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut small = 0;
    for k in 0..HARD_CAP {
        let kf = k as f64;
        term *= (a + kf) / ((c + kf) * (kf + 1.0)) * x;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        if term.abs() <= 1e-17 * sum.abs() && kf > x.abs() {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
        if !sum.is_finite() {
            return Err(Error::Overflow("kummer_m"));
        }
    }
    Err(no_conv("kummer_m", format!("series stalled at x={x}")))
}

/// Kummer's Φ(a, c, x) = ₁F₁(a; c; x) for real x.
///
/// Negative x goes through Φ(a,c,x) = eˣΦ(c−a,c,−x), which keeps the sum
/// free of alternating cancellation.
pub fn kummer_m(a: f64, c: f64, x: f64) -> Result<f64> {
    if is_nonpos_int(c) {
        return Err(Error::Param(format!("kummer_m: c = {c} is a non-positive integer")));
    }
    if !x.is_finite() {
        return Err(Error::Domain {
            func: "kummer_m",
            msg: format!("x = {x}"),
        });
    }
    if x == 0.0 || a == 0.0 {
        return Ok(1.0);
    }
    if a == c {
        return Ok(x.exp());
    }
    if x < 0.0 {
        return Ok(x.exp() * series_1f1(c - a, c, -x)?);
    }
    series_1f1(a, c, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_closed_form() {
        for &x in &[0.1, 0.5, 0.89, 0.95, 0.999] {
            let v = gauss_2f1(1.0, 1.0, 2.0, x).unwrap();
            let e = -(1.0 - x).ln() / x;
            assert!((v - e).abs() < 1e-11 * e, "x={x}: {v} vs {e}");
        }
    }

    #[test]
    fn connection_branch_matches_series() {
        // asin(√x)/√(x(1−x)) = ₂F₁(1,1;3/2;x)
        for &x in &[0.91, 0.97, 0.995] {
            let v = gauss_2f1(1.0, 1.0, 1.5, x).unwrap();
            let e = x.sqrt().asin() / (x * (1.0 - x)).sqrt();
            assert!((v - e).abs() < 1e-11 * e, "x={x}: {v} vs {e}");
        }
    }

    #[test]
    fn kummer_closed_forms() {
        for &x in &[-30.0, -2.0, 0.5, 4.0, 40.0] {
            let v = kummer_m(1.0, 2.0, x).unwrap();
            let e = (f64::exp(x) - 1.0) / x;
            assert!((v - e).abs() < 1e-13 * e.abs(), "x={x}");
            assert!((kummer_m(2.3, 2.3, x).unwrap() - x.exp()).abs() < 1e-14 * x.exp());
        }
        assert!(kummer_m(1.0, -2.0, 1.0).is_err());
        assert!(gauss_2f1(1.0, 1.0, 0.0, 0.5).is_err());
    }
}
