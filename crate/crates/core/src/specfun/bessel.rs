//! Bessel functions of real order and positive real argument.
//!
//! * `x < 2`: Temme's series for the fractional order, recurrence to ν.
//! * `2 ≤ x`: Steed's CF2 plus the CF1 ratio, combined through the Wronskian.
//! * `x ≥ switch` and `x ≥ ν²`: Hankel asymptotic expansions. The phase
//!   x − (ν/2 + 1/4)π is formed by angle addition so that huge arguments keep
//!   J, Y and trigonometric factors of the same x mutually consistent.

use super::gamma::{cospi, ln_gamma, sinpi, temme_gammas};
use super::EvalPolicy;
use crate::error::{domain, no_conv, Error, Result};
use num_complex::Complex64;
use std::f64::consts::{FRAC_2_PI, PI};

const EPS: f64 = f64::EPSILON;
const FPMIN: f64 = f64::MIN_POSITIVE / f64::EPSILON;
const MAXIT: usize = 200_000;
const XMIN: f64 = 2.0;

fn default_switch() -> f64 {
    EvalPolicy::default().series_asymptotic_switch
}

fn asymptotic_regime(nu: f64, x: f64, switch: f64) -> bool {
    x >= switch && x >= nu * nu
}

/// Hankel P and Q sums; `None` if the expansion stalls above round-off.
fn hankel_pq(nu: f64, x: f64) -> Option<(f64, f64)> {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term: f64 = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let kk = k as f64;
        let odd = 2.0 * kk - 1.0;
        term *= (mu - odd * odd) / (kk * 8.0 * x);
        if term == 0.0 {
            return Some((p, q));
        }
        let a = term.abs();
        if a > prev && a > 1e-17 {
            return None;
        }
        prev = a;
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if a < 1e-17 * p.abs().max(q.abs()).max(1e-300) {
            return Some((p, q));
        }
    }
    None
}

/// Large-argument sum Σ (±1)^k a_k(ν)/x^k used for I (alternating) and K.
fn ik_asym_sum(nu: f64, x: f64, alternating: bool) -> Option<f64> {
    let mu = 4.0 * nu * nu;
    let mut s = 1.0;
    let mut term: f64 = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let kk = k as f64;
        let odd = 2.0 * kk - 1.0;
        term *= (mu - odd * odd) / (kk * 8.0 * x);
        if alternating {
            term = -term;
        }
        if term == 0.0 {
            return Some(s);
        }
        let a = term.abs();
        if a > prev && a > 1e-17 {
            return None;
        }
        prev = a;
        s += term;
        if a < 1e-17 * s.abs() {
            return Some(s);
        }
    }
    None
}

fn phase_trig(nu: f64, x: f64) -> (f64, f64) {
    // ω = x − (ν/2 + 1/4)π
    let c0 = cospi(nu / 2.0 + 0.25);
    let s0 = sinpi(nu / 2.0 + 0.25);
    let (sx, cx) = x.sin_cos();
    (cx * c0 + sx * s0, sx * c0 - cx * s0)
}

fn jy_asym(nu: f64, x: f64) -> Option<(f64, f64)> {
    let (p, q) = hankel_pq(nu, x)?;
    let (cw, sw) = phase_trig(nu, x);
    let amp = (FRAC_2_PI / x).sqrt();
    Some((amp * (p * cw - q * sw), amp * (p * sw + q * cw)))
}

/// Steed/Temme evaluation for ν ≥ 0: returns (J_ν, Y_ν, J'_ν, Y'_ν).
fn besseljy_cf(xnu: f64, x: f64) -> Result<(f64, f64, f64, f64)> {
    let nl = if x < XMIN {
        (xnu + 0.5) as i64
    } else {
        ((xnu - x + 1.5) as i64).max(0)
    };
    let xmu = xnu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;
    let mut isign = 1.0;
    let mut h = xnu * xi;
    if h < FPMIN {
        h = FPMIN;
    }
    let mut b = xi2 * xnu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() <= EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(no_conv("bessel_jy", format!("CF1 at nu={xnu}, x={x}")));
    }
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = xnu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;
    let (rjmu, mut rymu, mut ry1);
    if x < XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut ok = false;
        for i in 1..=MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(no_conv("bessel_jy", "Temme series"));
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut ok = false;
        for i in 1..MAXIT {
            a += 2.0 * i as f64;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() <= EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(no_conv("bessel_jy", "CF2"));
        }
        let gam = (p - f) / q;
        let mut r = (w / ((p - f) * gam + q)).sqrt();
        if rjl < 0.0 {
            r = -r;
        }
        rjmu = r;
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }
    let fact = rjmu / rjl;
    let jo = rjl1 * fact;
    let jpo = rjp1 * fact;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    let ypo = xnu * xi * rymu - ry1;
    Ok((jo, rymu, jpo, ypo))
}

/// (J_ν(x), Y_ν(x)) for ν ≥ 0 with a given asymptotic switch.
fn jy_nonneg(nu: f64, x: f64, switch: f64) -> Result<(f64, f64)> {
    if asymptotic_regime(nu, x, switch) {
        if let Some(v) = jy_asym(nu, x) {
            return Ok(v);
        }
    }
    let (j, y, _, _) = besseljy_cf(nu, x)?;
    if x < 1e-3 {
        // the scaled CF1 start loses J here; three series terms are exact to 1e-20
        let h2 = 0.25 * x * x;
        let lead = (nu * (0.5 * x).ln() - ln_gamma(nu + 1.0)?).exp();
        let j = lead * (1.0 - h2 / (nu + 1.0) * (1.0 - h2 / (2.0 * (nu + 2.0))));
        return Ok((j, y));
    }
    Ok((j, y))
}

/// (J_ν(x), Y_ν(x)) for any real ν (reflection for ν < 0) under a policy.
pub(crate) fn jy_policy(nu: f64, x: f64, policy: &EvalPolicy) -> Result<(f64, f64)> {
    if !(x > 0.0) || !x.is_finite() || !nu.is_finite() {
        return Err(domain("bessel_jy", format!("need x > 0, got nu={nu}, x={x}")));
    }
    let sw = policy.series_asymptotic_switch;
    if nu >= 0.0 {
        return jy_nonneg(nu, x, sw);
    }
    let m = -nu;
    let (j, y) = jy_nonneg(m, x, sw)?;
    let (c, s) = (cospi(m), sinpi(m));
    Ok((c * j - s * y, s * j + c * y))
}

/// Both J_ν(x) and Y_ν(x) for real ν and x > 0.
pub fn bessel_jy(nu: f64, x: f64) -> Result<(f64, f64)> {
    jy_policy(nu, x, &EvalPolicy::default())
}

/// J_ν(x) for ν ≥ −1, x > 0.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if nu < -1.0 {
        return Err(domain("bessel_j", format!("order {nu} below -1")));
    }
    Ok(bessel_jy(nu, x)?.0)
}

/// Y_ν(x) for ν ≥ 0, x > 0.
pub fn bessel_y(nu: f64, x: f64) -> Result<f64> {
    if nu < 0.0 {
        return Err(domain("bessel_y", format!("order {nu} is negative")));
    }
    Ok(bessel_jy(nu, x)?.1)
}

/// J_ν(x)² + Y_ν(x)², free of phase cancellation for large x.
pub fn jy_modulus_sq(nu: f64, x: f64) -> f64 {
    if asymptotic_regime(nu, x, default_switch()) {
        if let Some((p, q)) = hankel_pq(nu, x) {
            return FRAC_2_PI / x * (p * p + q * q);
        }
    }
    match bessel_jy(nu, x) {
        Ok((j, y)) => j * j + y * y,
        Err(_) => f64::NAN,
    }
}

/// H⁽¹⁾_ν(x)·e^{−ix}: a non-oscillating function of x.
pub fn hankel1_reduced(nu: f64, x: f64) -> Complex64 {
    if asymptotic_regime(nu.abs(), x, default_switch()) {
        if let Some((p, q)) = hankel_pq(nu, x) {
            let amp = (FRAC_2_PI / x).sqrt();
            let ph = Complex64::new(cospi(nu / 2.0 + 0.25), -sinpi(nu / 2.0 + 0.25));
            return Complex64::new(p, q) * ph * amp;
        }
    }
    match bessel_jy(nu, x) {
        Ok((j, y)) => Complex64::new(j, y) * Complex64::new(x.cos(), -x.sin()),
        Err(_) => Complex64::new(f64::NAN, f64::NAN),
    }
}

/// Temme/Steed evaluation for ν ≥ 0: returns (e^{−x}I_ν, e^{x}K_ν).
fn besselik_cf(xnu: f64, x: f64) -> Result<(f64, f64)> {
    let nl = (xnu + 0.5) as i64;
    let xmu = xnu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let mut h = xnu * xi;
    if h < FPMIN {
        h = FPMIN;
    }
    let mut b = xi2 * xnu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() <= EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(no_conv("bessel_ik", format!("CF1 at nu={xnu}, x={x}")));
    }
    let mut ril = FPMIN;
    let mut ripl = h * ril;
    let ril1 = ril;
    let mut fact = xnu * xi;
    for _ in 0..nl {
        let ritemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
    }
    let f = ripl / ril;
    // rkmu, rk1 are K_μ, K_{μ+1} scaled by e^{x}
    let (mut rkmu, mut rk1);
    if x < XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let e = e.exp();
        let mut p = 0.5 * e / gampl;
        let mut q = 0.5 / (e * gammi);
        let mut c = 1.0;
        let d = x2 * x2;
        let mut sum1 = p;
        let mut ok = false;
        for i in 1..=MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * ff;
            sum += del;
            let del1 = c * (p - fi * ff);
            sum1 += del1;
            if del.abs() < sum.abs() * EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(no_conv("bessel_ik", "Temme series"));
        }
        let ex = x.exp();
        rkmu = sum * ex;
        rk1 = sum1 * xi2 * ex;
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - xmu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        let mut ok = false;
        for i in 1..MAXIT {
            let fi = i as f64;
            a -= 2.0 * fi;
            c = -a * c / (fi + 1.0);
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() <= EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(no_conv("bessel_ik", "CF2"));
        }
        h *= a1;
        rkmu = (PI / (2.0 * x)).sqrt() / s;
        rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
    }
    let rkmup = xmu * xi * rkmu - rk1;
    // Wronskian I_μK'_μ − I'_μK_μ = −1/x with scaled K gives scaled I
    let rimu = xi / (f * rkmu - rkmup);
    let io = rimu * ril1 / ril;
    for i in 1..=nl {
        let rktemp = (xmu + i as f64) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    Ok((io, rkmu))
}

/// (e^{−x}I_ν(x), e^{x}K_ν(x)) for ν ≥ 0.
fn ik_scaled_nonneg(nu: f64, x: f64, switch: f64) -> Result<(f64, f64)> {
    if asymptotic_regime(nu, x, switch.max(30.0)) {
        if let (Some(si), Some(sk)) = (ik_asym_sum(nu, x, true), ik_asym_sum(nu, x, false)) {
            let i = si / (2.0 * PI * x).sqrt();
            let k = sk * (PI / (2.0 * x)).sqrt();
            return Ok((i, k));
        }
    }
    let (i, k) = besselik_cf(nu, x)?;
    if x < 2.0 {
        return Ok((i_series_scaled(nu, x)?, k));
    }
    Ok((i, k))
}

/// e^{−x}I_ν(x) from the ascending series, ν ≥ 0, small x. Unlike the
/// Wronskian route it keeps full relative accuracy as x → 0.
fn i_series_scaled(nu: f64, x: f64) -> Result<f64> {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..MAXIT {
        let fk = k as f64;
        term *= q / (fk * (nu + fk));
        sum += term;
        if term < EPS * sum {
            let lead = nu * (0.5 * x).ln() - ln_gamma(nu + 1.0)? - x;
            return Ok(sum * lead.exp());
        }
    }
    Err(no_conv("bessel_i", format!("ascending series at nu={nu}, x={x}")))
}

pub(crate) fn ik_scaled_policy(nu: f64, x: f64, policy: &EvalPolicy) -> Result<(f64, f64)> {
    if !(x > 0.0) || !x.is_finite() || !nu.is_finite() {
        return Err(domain("bessel_ik", format!("need x > 0, got nu={nu}, x={x}")));
    }
    let sw = policy.series_asymptotic_switch;
    if nu >= 0.0 {
        return ik_scaled_nonneg(nu, x, sw);
    }
    let m = -nu;
    let (i, k) = ik_scaled_nonneg(m, x, sw)?;
    // I_{−m} = I_m + (2/π) sin(mπ) K_m
    let irefl = i + FRAC_2_PI * sinpi(m) * (-2.0 * x).exp() * k;
    Ok((irefl, k))
}

/// I_ν(x) for ν > −1 (any real ν accepted), optionally scaled by e^{−x}.
pub fn bessel_i(nu: f64, x: f64, scaled: bool) -> Result<f64> {
    let (i, _) = ik_scaled_policy(nu, x, &EvalPolicy::default())?;
    if scaled {
        return Ok(i);
    }
    if x > 700.0 {
        return Err(Error::Overflow("bessel_i"));
    }
    Ok(i * x.exp())
}

/// K_ν(x) = K_{−ν}(x), optionally scaled by e^{x}.
pub fn bessel_k(nu: f64, x: f64, scaled: bool) -> Result<f64> {
    let (_, k) = ik_scaled_policy(nu.abs(), x, &EvalPolicy::default())?;
    if scaled {
        Ok(k)
    } else {
        Ok(k * (-x).exp())
    }
}

/// ln I_ν(x).
pub fn ln_bessel_i(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_i(nu, x, true)?.ln() + x)
}

/// ln K_ν(x).
pub fn ln_bessel_k(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_k(nu, x, true)?.ln() - x)
}

/// I_{ν+1}(x)/I_ν(x).
pub fn bessel_i_ratio(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_i(nu + 1.0, x, true)? / bessel_i(nu, x, true)?)
}

/// K_{ν−1}(x)/K_ν(x).
pub fn bessel_k_ratio(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_k(nu - 1.0, x, true)? / bessel_k(nu, x, true)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn half_integer_closed_forms() {
        for &x in &[0.01, 0.3, 1.0, 1.99, 2.0, 7.5, 24.0, 26.0, 100.0, 1e4] {
            let (j, y) = bessel_jy(0.5, x).unwrap();
            let amp = (2.0 / (PI * x)).sqrt();
            assert!((j - amp * x.sin()).abs() < 1e-13 * amp, "J x={x}");
            assert!((y + amp * x.cos()).abs() < 1e-13 * amp, "Y x={x}");
            let k = bessel_k(0.5, x, true).unwrap();
            assert!(rel(k, (PI / (2.0 * x)).sqrt()) < 1e-13, "K x={x}");
        }
        let i = bessel_i(0.5, 1.0, false).unwrap();
        assert!(rel(i, (2.0 / PI).sqrt() * 1f64.sinh()) < 1e-14);
        for &x in &[1e-300, 1e-30, 1e-15, 1e-5, 0.5, 1.99] {
            let i = bessel_i(0.5, x, false).unwrap();
            assert!(rel(i, (2.0 / (PI * x)).sqrt() * x.sinh()) < 1e-13, "I x={x}");
        }
        for &x in &[1e-200, 1e-30, 1e-8, 9e-4, 1.1e-3, 0.5] {
            let (j, y) = bessel_jy(0.5, x).unwrap();
            let amp = (2.0 / (PI * x)).sqrt();
            assert!(rel(j, amp * x.sin()) < 1e-13, "J x={x}");
            assert!(rel(y, -amp * x.cos()) < 1e-13, "Y x={x}");
        }
    }

    #[test]
    fn negative_order_reflections() {
        // J_{-1/2}(x) = √(2/(πx)) cos x
        let x = 3.3;
        let amp = (2.0 / (PI * x)).sqrt();
        assert!((bessel_j(-0.5, x).unwrap() - amp * x.cos()).abs() < 1e-14);
        assert!((bessel_j(-1.0, x).unwrap() + bessel_j(1.0, x).unwrap()).abs() < 1e-15);
        // I_{-1/2}(x) = √(2/(πx)) cosh x
        let im = bessel_i(-0.5, 0.7, false).unwrap();
        assert!(rel(im, (2.0 / (PI * 0.7)).sqrt() * 0.7f64.cosh()) < 1e-14);
        assert_eq!(bessel_k(-1.3, 2.0, false).unwrap(), bessel_k(1.3, 2.0, false).unwrap());
    }

    #[test]
    fn domain_errors() {
        assert!(bessel_j(-1.5, 1.0).is_err());
        assert!(bessel_y(-0.1, 1.0).is_err());
        assert!(bessel_k(0.0, 0.0, false).is_err());
        assert!(bessel_i(1.0, 800.0, false).is_err());
        assert!(bessel_i(1.0, 800.0, true).is_ok());
    }

    #[test]
    fn hankel_reduced_matches_direct() {
        for &(nu, x) in &[(0.0, 30.0), (1.5, 40.0), (0.3, 5.0)] {
            let (j, y) = bessel_jy(nu, x).unwrap();
            let h = hankel1_reduced(nu, x) * Complex64::new(x.cos(), x.sin());
            assert!((h.re - j).abs() < 1e-14 && (h.im - y).abs() < 1e-14);
        }
    }
}
