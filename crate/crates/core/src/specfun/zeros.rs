//! Positive zeros j_{ν,n} of J_ν.
//!
//! The first two zeros come from a sign-change scan started at the lower
//! bound √(ν(ν+2)); later ones are bracketed around the extrapolated spacing
//! (spacings are monotone in n and tend to π) and polished by Illinois
//! regula falsi. Tables are cached per order behind an `RwLock`.

use super::bessel::jy_policy;
use super::EvalPolicy;
use crate::error::{domain, no_conv, Result};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{OnceLock, RwLock};

type Cache = RwLock<HashMap<u64, Vec<f64>>>;

fn cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(|| RwLock::new(HashMap::new()))
}

fn j(nu: f64, x: f64) -> f64 {
    jy_policy(nu, x, &EvalPolicy::default())
        .map(|v| v.0)
        .unwrap_or(f64::NAN)
}

fn refine(nu: f64, mut a: f64, mut b: f64) -> Result<f64> {
    let mut fa = j(nu, a);
    let mut fb = j(nu, b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(no_conv("bessel_zero", format!("no sign change on [{a}, {b}]")));
    }
    let mut side = 0i32;
    for _ in 0..200 {
        let c = (a * fb - b * fa) / (fb - fa);
        if (b - a).abs() <= 4.0 * f64::EPSILON * c.abs() {
            return Ok(c);
        }
        let fc = j(nu, c);
        if fc == 0.0 {
            return Ok(c);
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
        let m = 0.5 * (a + b);
        if (b - a).abs() <= 2.0 * f64::EPSILON * m {
            return Ok(m);
        }
    }
    Ok(0.5 * (a + b))
}

fn scan_next(nu: f64, start: f64) -> Result<f64> {
    let step = 0.25;
    let mut x0 = start;
    let mut f0 = j(nu, x0);
    for _ in 0..100_000 {
        let x1 = x0 + step;
        let f1 = j(nu, x1);
        if f0 == 0.0 {
            return Ok(x0);
        }
        if f0.signum() != f1.signum() {
            return refine(nu, x0, x1);
        }
        x0 = x1;
        f0 = f1;
    }
    Err(no_conv("bessel_zero", "scan exhausted"))
}

fn extend(nu: f64, zs: &mut Vec<f64>, n: usize) -> Result<()> {
    while zs.len() < n {
        let k = zs.len();
        let z = if k == 0 {
            let lo = if nu > 0.0 { (nu * (nu + 2.0)).sqrt() } else { 1e-3 };
            scan_next(nu, lo)?
        } else if k == 1 {
            scan_next(nu, zs[0] + 0.5)?
        } else {
            let d = zs[k - 1] - zs[k - 2];
            let (lo, hi) = if d > PI { (PI, d) } else { (d, PI) };
            let a = zs[k - 1] + 0.9 * lo;
            let b = zs[k - 1] + 1.1 * hi;
            match refine(nu, a, b) {
                Ok(z) => z,
                Err(_) => scan_next(nu, zs[k - 1] + 0.5)?,
            }
        };
        zs.push(z);
    }
    Ok(())
}

/// First `n` zeros of J_ν for ν > −1 (cached).
pub(crate) fn zeros_any(nu: f64, n: usize) -> Result<Vec<f64>> {
    if !(nu > -1.0) || !nu.is_finite() {
        return Err(domain("bessel_zeros", format!("order {nu} must exceed -1")));
    }
    let key = nu.to_bits();
    if let Some(v) = cache().read().unwrap().get(&key) {
        if v.len() >= n {
            return Ok(v[..n].to_vec());
        }
    }
    let mut w = cache().write().unwrap();
    let zs = w.entry(key).or_default();
    extend(nu, zs, n)?;
    Ok(zs[..n].to_vec())
}

/// j_{ν,n}, the n-th positive zero of J_ν (ν ≥ 0, n ≥ 1).
pub fn bessel_zero(nu: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(domain("bessel_zero", "n must be at least 1"));
    }
    if nu < 0.0 {
        return Err(domain("bessel_zero", format!("order {nu} is negative")));
    }
    Ok(zeros_any(nu, n)?[n - 1])
}

/// The first `n` positive zeros of J_ν.
pub fn bessel_zeros(nu: f64, n: usize) -> Result<Vec<f64>> {
    if nu < 0.0 {
        return Err(domain("bessel_zeros", format!("order {nu} is negative")));
    }
    zeros_any(nu, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_order_zeros_are_multiples_of_pi() {
        let z = bessel_zeros(0.5, 200).unwrap();
        for (k, v) in z.iter().enumerate() {
            assert!((v - (k + 1) as f64 * PI).abs() < 1e-11, "n={}", k + 1);
        }
    }

    #[test]
    fn first_zero_of_j1() {
        assert!((bessel_zero(1.0, 1).unwrap() - 3.8317059702075125).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(bessel_zero(0.0, 0).is_err());
        assert!(bessel_zero(-0.5, 1).is_err());
        assert!(zeros_any(-0.5, 3).is_ok());
    }
}
