//! Completely monotone building blocks of −(ln L)′ and their derivative
//! ladders, values on the cut and Pick imaginary parts.

use crate::error::Result;
use crate::quad::{exp_sinh, integrate_log_split, integrate_with_breaks, KSum};
use crate::specfun::{bessel_k_ratio, jy_modulus_sq, zeros_any};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::Arc;

pub(crate) type Kernel = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

pub(crate) const QUAD_TOL: f64 = 1e-12;

/// c times one of: x^{−p}; 1/(x+s); Σ_k 1/(x + j²_{μ,k}/a²); ∫w(t)/(x + g(t)) dt.
#[derive(Clone)]
pub(crate) enum Term {
    Power {
        c: f64,
        p: f64,
    },
    Pole {
        c: f64,
        s: f64,
    },
    Ml {
        c: f64,
        mu: f64,
        a: f64,
    },
    Stj {
        c: f64,
        w: Kernel,
        g: Kernel,
        g_inv: Kernel,
        split: f64,
        closed: Option<Kernel>,
    },
}

/// ½k_ν(t) with k_ν the K_RATIO kernel (2/π²)/(t(J_ν² + Y_ν²)(√t)).
fn half_k_ratio_kernel(nu: f64) -> Kernel {
    Arc::new(move |t: f64| {
        if t <= 0.0 {
            return 0.0;
        }
        let m = jy_modulus_sq(nu, t.sqrt());
        if !m.is_finite() {
            return 0.0;
        }
        1.0 / (PI * PI * t * m)
    })
}

impl Term {
    /// c·(b/(2√x))·K_{ν−1}(b√x)/K_ν(b√x) = c·½∫k_ν(t)/(x + t/b²) dt.
    pub(crate) fn k_ratio(c: f64, nu: f64, b: f64) -> Term {
        let b2 = b * b;
        Term::Stj {
            c,
            w: half_k_ratio_kernel(nu),
            g: Arc::new(move |t| t / b2),
            g_inv: Arc::new(move |x| b2 * x),
            split: b2,
            closed: Some(Arc::new(move |x: f64| {
                let z = b * x.sqrt();
                bessel_k_ratio(nu, z)
                    .map(|r| 0.5 * b / x.sqrt() * r)
                    .unwrap_or(f64::NAN)
            })),
        }
    }

    /// ½∫k_ν(t)/(x + (a + t/b)/2) dt.
    pub(crate) fn gig_k_ratio(nu: f64, a: f64, b: f64) -> Term {
        Term::Stj {
            c: 1.0,
            w: half_k_ratio_kernel(nu),
            g: Arc::new(move |t| 0.5 * (a + t / b)),
            g_inv: Arc::new(move |x| b * (2.0 * x - a)),
            split: b * a.max(1.0),
            closed: None,
        }
    }

    pub(crate) fn kind(&self) -> super::LadderKind {
        use super::LadderKind::*;
        match self {
            Term::Power { .. } | Term::Pole { .. } => Exact,
            Term::Ml { .. } => Series,
            Term::Stj { .. } => Quadrature,
        }
    }

    pub(crate) fn coef(&self) -> f64 {
        match self {
            Term::Power { c, .. } | Term::Pole { c, .. } | Term::Ml { c, .. } | Term::Stj { c, .. } => *c,
        }
    }

    /// c·(−1)ⁿ dⁿ/dxⁿ of the base function, n = 0..=max_n.
    pub(crate) fn ladder(&self, x: f64, max_n: usize, n_zeros: usize) -> Result<Vec<f64>> {
        let base = match self {
            Term::Power { p, .. } => {
                let mut v = Vec::with_capacity(max_n + 1);
                let mut g = x.powf(-p);
                for n in 0..=max_n {
                    v.push(g);
                    g *= (p + n as f64) / x;
                }
                v
            }
            Term::Pole { s, .. } => {
                let r = 1.0 / (x + s);
                let mut v = Vec::with_capacity(max_n + 1);
                let mut g = r;
                for n in 0..=max_n {
                    v.push(g);
                    g *= (n + 1) as f64 * r;
                }
                v
            }
            Term::Ml { mu, a, .. } => ml_ladder(*mu, *a, x, max_n, n_zeros)?,
            Term::Stj { w, g, split, .. } => {
                let mut v = Vec::with_capacity(max_n + 1);
                let mut fact = 1.0;
                for n in 0..=max_n {
                    if n > 0 {
                        fact *= n as f64;
                    }
                    let e = -((n + 1) as f64);
                    let r = integrate_log_split(|t| w(t) * (x + g(t)).powf(e), *split, QUAD_TOL)?;
                    v.push(fact * r.value);
                }
                v
            }
        };
        let c = self.coef();
        Ok(base.into_iter().map(|g| c * g).collect())
    }

    /// Value at x from the direct special-function form where one exists,
    /// the Mittag-Leffler series with `n_zeros` terms for I-ratios.
    pub(crate) fn value(&self, x: f64, n_zeros: usize) -> Result<f64> {
        match self {
            Term::Stj { c, closed: Some(f), .. } => Ok(c * f(x)),
            _ => Ok(self.ladder(x, 0, n_zeros)?[0]),
        }
    }

    /// Im of the term's continuation at w = −(x + iy), y > 0.
    pub(crate) fn pick_im(&self, x: f64, y: f64, n_zeros: usize) -> Result<f64> {
        let c = self.coef();
        let v = match self {
            Term::Power { p, .. } => Complex64::new(-x, -y).powf(-p).im,
            Term::Pole { s, .. } => y / ((s - x).powi(2) + y * y),
            Term::Ml { mu, a, .. } => ml_pick(*mu, *a, x, y, n_zeros)?,
            Term::Stj { w, g, g_inv, split, .. } => {
                let f = |t: f64| {
                    let d = g(t) - x;
                    w(t) * y / (d * d + y * y)
                };
                let mut br = vec![*split];
                for xx in [x - y, x, x + y] {
                    let t = g_inv(xx);
                    if t > 0.0 && t.is_finite() {
                        br.push(t);
                    }
                }
                integrate_with_breaks(f, &br, QUAD_TOL)?.value
            }
        };
        Ok(c * v)
    }
}

/// McMahon's expansion of j_{μ,k} for real k, and its k-derivative.
fn mcmahon(mu: f64, k: f64) -> (f64, f64) {
    let m = 4.0 * mu * mu;
    let b = (k + 0.5 * mu - 0.25) * PI;
    let e = 8.0 * b;
    let c2 = 4.0 * (m - 1.0) * (7.0 * m - 31.0) / 3.0;
    let j = b - (m - 1.0) / e - c2 / e.powi(3);
    let dj = PI * (1.0 + 8.0 * (m - 1.0) / (e * e) + 3.0 * 8.0 * c2 / e.powi(4));
    (j, dj)
}

/// n!·Σ_k (x + j²_{μ,k}/a²)^{−n−1} for n = 0..=max_n; first `n_zeros` terms
/// summed, the rest from a midpoint Euler–Maclaurin integral over McMahon
/// zeros.
pub(crate) fn ml_ladder(mu: f64, a: f64, x: f64, max_n: usize, n_zeros: usize) -> Result<Vec<f64>> {
    let zs = zeros_any(mu, n_zeros)?;
    let a2 = a * a;
    let mut acc = vec![KSum::default(); max_n + 1];
    for j in &zs {
        let r = 1.0 / (x + j * j / a2);
        let mut p = r;
        for s in acc.iter_mut() {
            s.add(p);
            p *= r;
        }
    }
    let k0 = n_zeros as f64 + 0.5;
    let mut out = Vec::with_capacity(max_n + 1);
    let mut fact = 1.0;
    for (n, s) in acc.iter().enumerate() {
        if n > 0 {
            fact *= n as f64;
        }
        let e = -((n + 1) as f64);
        let f = |u: f64| {
            let (j, _) = mcmahon(mu, k0 + u);
            (x + j * j / a2).powf(e)
        };
        let tail = exp_sinh(&f, k0, QUAD_TOL)?.value;
        let (j, dj) = mcmahon(mu, k0);
        let q = x + j * j / a2;
        // f′(k0)/24
        let corr = e * q.powf(e - 1.0) * 2.0 * j * dj / a2 / 24.0;
        out.push(fact * (s.value() + tail + corr));
    }
    Ok(out)
}

/// Σ_k y/((j²_{μ,k}/a² − x)² + y²) with the same tail treatment.
fn ml_pick(mu: f64, a: f64, x: f64, y: f64, n_zeros: usize) -> Result<f64> {
    let zs = zeros_any(mu, n_zeros)?;
    let a2 = a * a;
    let mut s = KSum::default();
    for j in &zs {
        let d = j * j / a2 - x;
        s.add(y / (d * d + y * y));
    }
    let k0 = n_zeros as f64 + 0.5;
    let f = |u: f64| {
        let (j, _) = mcmahon(mu, k0 + u);
        let d = j * j / a2 - x;
        y / (d * d + y * y)
    };
    let tail = exp_sinh(&f, k0, QUAD_TOL)?.value;
    let (j, dj) = mcmahon(mu, k0);
    let d = j * j / a2 - x;
    let corr = -2.0 * y * d / (d * d + y * y).powi(2) * 2.0 * j * dj / a2 / 24.0;
    Ok(s.value() + tail + corr)
}

/// I_{μ+1}(z)/I_μ(z) = Σ_k 2z/(z² + j²_{μ,k}) from its Mittag-Leffler
/// expansion with `n_terms` zeros plus the integral tail.
pub fn ml_i_ratio(mu: f64, z: f64, n_terms: usize) -> Result<f64> {
    if !(mu > -1.0) || !(z > 0.0) || n_terms == 0 {
        return Err(crate::error::domain(
            "ml_i_ratio",
            format!("need mu > -1, z > 0, n_terms > 0; got {mu}, {z}, {n_terms}"),
        ));
    }
    Ok(2.0 * z * ml_ladder(mu, 1.0, z * z, 0, n_terms)?[0])
}
