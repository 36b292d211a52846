//! Gamma function family (Lanczos, g = 7, nine terms).

use crate::error::{domain, Result};
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// sin(πx), exact at integers and half-integers.
pub fn sinpi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).floor();
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    if r == 0.5 {
        return 1.0;
    }
    if r == 1.5 {
        return -1.0;
    }
    (PI * r).sin()
}

/// cos(πx), exact at integers and half-integers.
pub fn cospi(x: f64) -> f64 {
    sinpi(x + 0.5)
}

fn ln_gamma_pos(x: f64) -> f64 {
    if x < 0.5 {
        // reflection keeps the Lanczos sum away from its poles
        return (PI / sinpi(x)).ln() - ln_gamma_pos(1.0 - x);
    }
    let z = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + a.ln()
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("log_gamma", format!("x = {x} must be positive")));
    }
    Ok(ln_gamma_pos(x))
}

/// ln |Γ(x)| and the sign of Γ(x), for any non-pole real x.
pub fn ln_gamma_abs(x: f64) -> Result<(f64, f64)> {
    if x > 0.0 {
        return Ok((ln_gamma_pos(x), 1.0));
    }
    if x == x.floor() {
        return Err(domain("gamma", format!("pole at x = {x}")));
    }
    let s = sinpi(x);
    let lg = (PI / s.abs()).ln() - ln_gamma_pos(1.0 - x);
    Ok((lg, s.signum()))
}

/// Γ(x) for any non-pole real x.
pub fn gamma(x: f64) -> Result<f64> {
    if x > 0.0 && x < 20.0 {
        // shift to [1,2) and multiply back: avoids exp/ln round trip
        let mut y = x;
        let mut f = 1.0;
        while y >= 2.0 {
            y -= 1.0;
            f *= y;
        }
        while y < 1.0 {
            f /= y;
            y += 1.0;
        }
        return Ok(f * ln_gamma_pos(y).exp());
    }
    let (lg, s) = ln_gamma_abs(x)?;
    Ok(s * lg.exp())
}

/// 1/Γ(x), zero at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    match gamma(x) {
        Ok(g) if g.is_finite() => 1.0 / g,
        _ => {
            let (lg, s) = ln_gamma_abs(x).unwrap_or((f64::INFINITY, 1.0));
            s * (-lg).exp()
        }
    }
}

/// Taylor coefficients of 1/Γ(z) about z = 0 (c₁ = 1).
const RGAMMA_TAYLOR: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_9,
    -0.655_878_071_520_253_8,
    -0.042_002_635_034_095_2,
    0.166_538_611_382_291_5,
    -0.042_197_734_555_544_3,
    -0.009_621_971_527_877_0,
    0.007_218_943_246_663_0,
    -0.001_165_167_591_859_1,
    -0.000_215_241_674_114_9,
    0.000_128_050_282_388_2,
    -0.000_020_134_854_780_7,
    -0.000_001_250_493_482_1,
    0.000_001_133_027_232_0,
    -0.000_000_205_633_841_7,
    0.000_000_006_116_095_0,
    0.000_000_005_002_007_5,
    -0.000_000_001_181_274_6,
    0.000_000_000_104_342_7,
    0.000_000_000_007_782_3,
    -0.000_000_000_003_696_8,
    0.000_000_000_000_510_0,
    -0.000_000_000_000_020_6,
    -0.000_000_000_000_005_4,
    0.000_000_000_000_001_4,
    0.000_000_000_000_000_1,
];

/// Temme's auxiliary gammas for |μ| ≤ 1/2:
/// returns (γ₁, γ₂, 1/Γ(1+μ), 1/Γ(1−μ)) with
/// γ₁ = (1/Γ(1−μ) − 1/Γ(1+μ))/(2μ), γ₂ = (1/Γ(1−μ) + 1/Γ(1+μ))/2.
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    // 1/Γ(1+μ) = Σ c_k μ^{k-1}; split into even and odd powers of μ
    let mu2 = mu * mu;
    let mut even = 0.0; // Σ c_{2j+1} μ^{2j}
    let mut odd = 0.0; // Σ c_{2j+2} μ^{2j}
    for j in (0..13).rev() {
        even = even * mu2 + RGAMMA_TAYLOR[2 * j];
        odd = odd * mu2 + RGAMMA_TAYLOR[2 * j + 1];
    }
    let gampl = even + mu * odd;
    let gammi = even - mu * odd;
    (-odd, even, gampl, gammi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_gamma_values() {
        assert!(ln_gamma(1.0).unwrap().abs() < 1e-15);
        assert!(ln_gamma(2.0).unwrap().abs() < 1e-15);
        assert!((ln_gamma(0.5).unwrap() - 0.572_364_942_924_700_1).abs() < 1e-14);
        assert!((ln_gamma(10.0).unwrap() - 362_880f64.ln()).abs() < 1e-13);
        assert!(ln_gamma(0.0).is_err());
        assert!(ln_gamma(-1.5).is_err());
    }

    #[test]
    fn gamma_negative_and_reciprocal() {
        // Γ(-1/2) = -2√π
        let g = gamma(-0.5).unwrap();
        assert!((g + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert_eq!(rgamma(-3.0), 0.0);
        assert!((rgamma(4.0) - 1.0 / 6.0).abs() < 1e-15);
        assert!(gamma(-2.0).is_err());
    }

    #[test]
    fn temme_matches_direct() {
        for &mu in &[-0.5, -0.3, -1e-9, 0.0, 0.2, 0.4999] {
            let (g1, g2, gp, gm) = temme_gammas(mu);
            assert!((gp - rgamma(1.0 + mu)).abs() < 4e-15);
            assert!((gm - rgamma(1.0 - mu)).abs() < 4e-15);
            if mu.abs() > 0.1 {
                assert!((g1 - (gm - gp) / (2.0 * mu)).abs() < 1e-14);
            }
            assert!((g2 - (gm + gp) / 2.0).abs() < 4e-15);
        }
    }
}
