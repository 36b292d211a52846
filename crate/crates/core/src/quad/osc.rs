//! Semi-infinite integrals whose phase is linear in √t.
//!
//! After t = u² the integrand g(u) = 2u·f(u²) oscillates with the registered
//! frequencies. Partial integrals S(U) are taken at U_k = U₀·2^k, with U₀ a
//! multiple of the common period, so every oscillating remainder is sampled
//! at the same phase. The remainders then expand in powers U^{−q}, U^{−q−1},
//! … with q = 2d − 2 (d the decay power of f), and repeated Richardson
//! extrapolation in U removes them. Without a common period (incommensurate
//! frequencies) the period of the slowest frequency is used and the error
//! estimate says how well that went.

use super::de::tanh_sinh;
use super::gk::gk_adaptive;
use super::{integrate_singular_decay, KSum, OscSpec, QuadResult};
use crate::error::Result;
use std::f64::consts::PI;

const MAX_LEVELS: usize = 12;
const MAX_DEPTH: usize = 7;
const MAX_CELLS: usize = 60_000;

/// Common base frequency of `freqs` if all ratios are rationals with small
/// denominators.
fn base_frequency(freqs: &[f64]) -> (f64, bool) {
    let wmin = freqs.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut den: u64 = 1;
    for &w in freqs {
        let r = w / wmin;
        let mut found = None;
        for q in 1..=64u64 {
            let p = (r * q as f64).round();
            if (r * q as f64 - p).abs() < 1e-10 * r * q as f64 {
                found = Some(q);
                break;
            }
        }
        match found {
            Some(q) => den = lcm(den, q),
            None => return (wmin, false),
        }
    }
    (wmin / den as f64, true)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// ∫₀^∞ f(t) dt for f oscillating in √t with algebraic envelope decay.
pub fn integrate_oscillatory<F: Fn(f64) -> f64>(f: F, spec: &OscSpec, tol: f64) -> Result<QuadResult> {
    spec.validate()?;
    let freqs: Vec<f64> = spec
        .sqrt_argument_frequencies
        .iter()
        .cloned()
        .filter(|w| *w > 0.0)
        .collect();
    if freqs.is_empty() {
        return Ok(integrate_singular_decay(f, spec.endpoint_exponent, tol)?.with("fallback_nonoscillatory", 1.0));
    }
    let (wg, commensurate) = base_frequency(&freqs);
    let wmax = freqs.iter().cloned().fold(0.0, f64::max);
    let period = 2.0 * PI / wg;
    let start = spec
        .onset
        .max(2.0 * period)
        .max(12.0 / freqs.iter().cloned().fold(f64::INFINITY, f64::min));
    let n0 = (start / period).ceil() as usize;
    let u0 = n0 as f64 * period;
    // cells at least resolve a few half-waves of the fastest factor
    let sub = ((wmax / wg) / 2.0).ceil().max(1.0) as usize;
    let cell = period / sub as f64;

    let g = |u: f64| {
        if u == 0.0 {
            return 0.0;
        }
        2.0 * u * f(u * u)
    };

    let mut n_evals = 0usize;
    // head: first cell with tanh-sinh for the endpoint singularity
    let first = cell.min(u0);
    let h = tanh_sinh(&g, 0.0, first, tol * 1e-2)?;
    n_evals += h.n_evals;
    let mut acc = KSum::default();
    acc.add(h.value);
    let mut quad_err = h.err_estimate;
    let head_cells = (u0 / cell).round() as usize;
    let mut scale = h.value.abs();
    for i in 1..head_cells {
        let a = i as f64 * cell;
        let r = gk_adaptive(&g, a, a + cell, 0.0, tol * 1e-3, 200)?;
        n_evals += r.n_evals;
        quad_err += r.err_estimate;
        scale = scale.max(r.value.abs());
        acc.add(r.value);
    }
    let mut sums = vec![acc.value()];
    let q = 2.0 * spec.decay_exponent - 2.0;
    // a growing leading term u^{1−2d} is removed as well; the limit is then the
    // Abel sum of the integral
    let lead = 2.0 * spec.decay_exponent - 1.0;
    let exps: Vec<f64> = (0..MAX_DEPTH)
        .map(|j| q + j as f64)
        .filter(|p| *p > 0.05 || (*p < -0.05 && *p >= lead - 1e-9))
        .collect();

    let mut table: Vec<Vec<f64>> = vec![vec![sums[0]]];
    let mut best = (sums[0], f64::INFINITY);
    let mut cells_used = head_cells;
    let mut upper = u0;
    let mut level = 0;
    while level < MAX_LEVELS {
        level += 1;
        let next = u0 * (1u64 << level) as f64;
        let ncell = ((next - upper) / cell).round() as usize;
        if cells_used + ncell > MAX_CELLS {
            break;
        }
        let abs_tol = 1e-4 * tol * scale.max(f64::MIN_POSITIVE) * (cell / next);
        for i in 0..ncell {
            let a = upper + i as f64 * cell;
            let r = gk_adaptive(&g, a, a + cell, abs_tol, 0.0, 200)?;
            n_evals += r.n_evals;
            quad_err += r.err_estimate;
            acc.add(r.value);
        }
        cells_used += ncell;
        upper = next;
        sums.push(acc.value());
        let prev_row = table.last().unwrap().clone();
        let mut row = vec![acc.value()];
        for j in 1..=exps.len().min(level) {
            let f2 = 2f64.powf(exps[j - 1]);
            let v = row[j - 1] + (row[j - 1] - prev_row[j - 1]) / (f2 - 1.0);
            row.push(v);
        }
        let m = row.len() - 1;
        let err = if m >= 1 && prev_row.len() > m - 1 {
            let a = (row[m] - prev_row[m.min(prev_row.len() - 1)]).abs();
            let b = (row[m] - row[m - 1]).abs();
            a.max(b.min(a * 10.0))
        } else {
            f64::INFINITY
        };
        if err < best.1 || m == 0 {
            best = (row[m], err);
        }
        table.push(row);
        if level >= 3 && best.1 + quad_err <= tol * best.0.abs() {
            break;
        }
    }
    let err = best.1 + quad_err;
    let mut res = QuadResult::new(best.0, err, n_evals, tol)
        .with("u0", u0)
        .with("u_max", upper)
        .with("period", period)
        .with("levels", level as f64)
        .with("richardson_q", q)
        .with("commensurate", if commensurate { 1.0 } else { 0.0 });
    for (k, s) in sums.iter().enumerate() {
        res = res.with(&format!("partial_{k}"), *s);
    }
    Ok(res)
}
