//! Numerical infinite-divisibility checks: complete-monotonicity ladders,
//! Bernstein, self-decomposability, Pick positivity, hyperbolic complete
//! monotonicity, and the Landau constant.
//!
//! Each −(ln L)′ handled here is written as a signed sum of x^{−p}, 1/(x+s),
//! Mittag-Leffler sums Σ 1/(x + j²_{μ,k}/a²) and Stieltjes integrals
//! ∫w(t)/(x + g(t)) dt, so derivatives of every order come from closed forms
//! or from differentiating under the integral sign. Laws without such a form
//! use the cumulants of the exponentially tilted density.
//!
//! A passing report is evidence on a finite grid, not a proof.

mod cm;
mod terms;

pub use cm::{
    am_check, cm_check, cm_check_with, ridders, CMReport, CmFunction, LadderKind, LadderValue, SlackPolicy, Verdict,
};
pub use terms::ml_i_ratio;

use crate::distributions::{kdist_mixing_kernel, tricomi_weight, Dist, DistSpec};
use crate::error::{domain, Error, Result};
use crate::quad::{numeric_laplace_scaled, tanh_sinh};
use crate::specfun::{bessel_i, bessel_j, ln_bessel_i, ln_bessel_k, ln_gamma, zeros_any};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::sync::Arc;
use terms::{Term, QUAD_TOL};

/// Zeros summed explicitly in Mittag-Leffler series.
pub const DEFAULT_ML_TERMS: usize = 1000;

/// Laplace transforms under test. All equal 1 at x = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "lt")]
pub enum LTSpec {
    /// (a√x)^μ / (2^μ Γ(μ+1) I_μ(a√x)); μ > −1.
    #[serde(rename = "RHO")]
    Rho { mu: f64, a: f64 },
    /// (b/a)^{μ−ν} I_μ(a√x)I_ν(b√x)/(I_μ(b√x)I_ν(a√x)) · ρ_{σ,b}(x);
    /// μ > −1, ν > σ > −1, b > a > 0.
    #[serde(rename = "OMEGA1")]
    Omega1 {
        mu: f64,
        nu: f64,
        sigma: f64,
        a: f64,
        b: f64,
    },
    /// The same Bessel quotient times e^{−b√x}; μ > −1, ν > 1/2, b > a > 0.
    #[serde(rename = "OMEGA2")]
    Omega2 { mu: f64, nu: f64, a: f64, b: f64 },
    /// 2μ I_μ(√x) K_μ(√x); μ > 0.
    #[serde(rename = "IKMU")]
    Ikmu { mu: f64 },
    /// ∝ e^{−a√x} x^{(ν−μ)/2} I_μ(a√x) K_ν(b√x); ν > 0, μ > 1/2.
    #[serde(rename = "CHI")]
    Chi { mu: f64, nu: f64, a: f64, b: f64 },
    /// ∝ x^{(μ+ν)/2} K_μ(a√x) K_ν(b√x); μ, ν > 0.
    #[serde(rename = "THETA")]
    Theta { mu: f64, nu: f64, a: f64, b: f64 },
    /// ∝ e^{−(a+b)√x} x^{−(μ+ν)/2} I_μ(a√x) I_ν(b√x); μ, ν > 1/2.
    #[serde(rename = "ZETA")]
    Zeta { mu: f64, nu: f64, a: f64, b: f64 },
    /// ∝ e^{−(a+b)√x} / (x^{(μ+ν)/2} K_μ(a√x) K_ν(b√x)); μ, ν > 1/2.
    #[serde(rename = "KAPPA")]
    Kappa { mu: f64, nu: f64, a: f64, b: f64 },
    /// ∝ e^{−(a+b)√x} x^{−(μ+ν)/2} I_μ(a√x)/K_ν(b√x); μ, ν > 1/2.
    #[serde(rename = "EPSILON")]
    Epsilon { mu: f64, nu: f64, a: f64, b: f64 },
    /// ∝ x^{(μ+ν)/2} K_ν(b√x)/I_μ(a√x); ν > 0, μ > −1.
    #[serde(rename = "EPSILON_RECIP")]
    EpsilonRecip { mu: f64, nu: f64, a: f64, b: f64 },
    /// Closed-form Laplace transform of a distribution.
    #[serde(rename = "DIST")]
    Dist { d: DistSpec },
}

const BESSEL_NAMES: [&str; 10] = [
    "RHO",
    "OMEGA1",
    "OMEGA2",
    "IKMU",
    "CHI",
    "THETA",
    "ZETA",
    "KAPPA",
    "EPSILON",
    "EPSILON_RECIP",
];

fn keys_of(name: &str) -> Option<&'static [&'static str]> {
    Some(match name {
        "RHO" => &["mu", "a"],
        "OMEGA1" => &["mu", "nu", "sigma", "a", "b"],
        "IKMU" => &["mu"],
        "OMEGA2" | "CHI" | "THETA" | "ZETA" | "KAPPA" | "EPSILON" | "EPSILON_RECIP" => &["mu", "nu", "a", "b"],
        _ => return None,
    })
}

impl LTSpec {
    pub fn name(&self) -> &'static str {
        use LTSpec::*;
        match self {
            Rho { .. } => "RHO",
            Omega1 { .. } => "OMEGA1",
            Omega2 { .. } => "OMEGA2",
            Ikmu { .. } => "IKMU",
            Chi { .. } => "CHI",
            Theta { .. } => "THETA",
            Zeta { .. } => "ZETA",
            Kappa { .. } => "KAPPA",
            Epsilon { .. } => "EPSILON",
            EpsilonRecip { .. } => "EPSILON_RECIP",
            Dist { .. } => "DIST",
        }
    }

    pub fn params(&self) -> Vec<(&'static str, f64)> {
        use LTSpec::*;
        match *self {
            Rho { mu, a } => vec![("mu", mu), ("a", a)],
            Omega1 { mu, nu, sigma, a, b } => vec![("mu", mu), ("nu", nu), ("sigma", sigma), ("a", a), ("b", b)],
            Ikmu { mu } => vec![("mu", mu)],
            Omega2 { mu, nu, a, b }
            | Chi { mu, nu, a, b }
            | Theta { mu, nu, a, b }
            | Zeta { mu, nu, a, b }
            | Kappa { mu, nu, a, b }
            | Epsilon { mu, nu, a, b }
            | EpsilonRecip { mu, nu, a, b } => vec![("mu", mu), ("nu", nu), ("a", a), ("b", b)],
            Dist { d } => d.params(),
        }
    }

    /// Builds a spec from a Bessel-transform name (RHO, …) or a distribution
    /// kind (mckay1, …) and a complete key set.
    pub fn from_params(name: &str, p: &BTreeMap<String, f64>) -> Result<Self> {
        let upper = name.to_ascii_uppercase();
        let Some(keys) = keys_of(&upper) else {
            return Ok(LTSpec::Dist {
                d: DistSpec::from_params(name, p)?,
            });
        };
        for k in p.keys() {
            if !keys.contains(&k.as_str()) {
                return Err(Error::Param(format!("{upper} has no parameter '{k}'")));
            }
        }
        let g = |k: &str| {
            p.get(k)
                .copied()
                .ok_or_else(|| Error::Param(format!("{upper} needs parameter '{k}'")))
        };
        use LTSpec::*;
        let s = match upper.as_str() {
            "RHO" => Rho {
                mu: g("mu")?,
                a: g("a")?,
            },
            "OMEGA1" => Omega1 {
                mu: g("mu")?,
                nu: g("nu")?,
                sigma: g("sigma")?,
                a: g("a")?,
                b: g("b")?,
            },
            "OMEGA2" => Omega2 {
                mu: g("mu")?,
                nu: g("nu")?,
                a: g("a")?,
                b: g("b")?,
            },
            "IKMU" => Ikmu { mu: g("mu")? },
            "CHI" => Chi {
                mu: g("mu")?,
                nu: g("nu")?,
                a: g("a")?,
                b: g("b")?,
            },
            "THETA" => Theta {
                mu: g("mu")?,
                nu: g("nu")?,
                a: g("a")?,
                b: g("b")?,
            },
            "ZETA" => Zeta {
                mu: g("mu")?,
                nu: g("nu")?,
                a: g("a")?,
                b: g("b")?,
            },
            "KAPPA" => Kappa {
                mu: g("mu")?,
                nu: g("nu")?,
                a: g("a")?,
                b: g("b")?,
            },
            "EPSILON" => Epsilon {
                mu: g("mu")?,
                nu: g("nu")?,
                a: g("a")?,
                b: g("b")?,
            },
            _ => EpsilonRecip {
                mu: g("mu")?,
                nu: g("nu")?,
                a: g("a")?,
                b: g("b")?,
            },
        };
        s.validate()?;
        Ok(s)
    }

    /// Names accepted by [`LTSpec::from_params`] for the Bessel transforms.
    pub fn bessel_names() -> &'static [&'static str] {
        &BESSEL_NAMES
    }

    /// One parameter set per Bessel transform, inside the proven domains.
    pub fn defaults() -> Vec<LTSpec> {
        use LTSpec::*;
        vec![
            Rho { mu: 1.0, a: 1.0 },
            Omega1 {
                mu: 1.0,
                nu: 1.5,
                sigma: 0.5,
                a: 1.0,
                b: 2.0,
            },
            Omega2 {
                mu: 1.0,
                nu: 1.0,
                a: 1.0,
                b: 2.0,
            },
            Ikmu { mu: 1.0 },
            Chi {
                mu: 1.0,
                nu: 1.0,
                a: 1.0,
                b: 2.0,
            },
            Theta {
                mu: 1.0,
                nu: 1.0,
                a: 1.0,
                b: 2.0,
            },
            Zeta {
                mu: 1.0,
                nu: 1.0,
                a: 1.0,
                b: 2.0,
            },
            Kappa {
                mu: 1.0,
                nu: 1.0,
                a: 1.0,
                b: 2.0,
            },
            Epsilon {
                mu: 1.0,
                nu: 1.0,
                a: 1.0,
                b: 2.0,
            },
            EpsilonRecip {
                mu: 1.0,
                nu: 1.0,
                a: 1.0,
                b: 2.0,
            },
        ]
    }

    pub fn validate(&self) -> Result<()> {
        use LTSpec::*;
        let bad = |msg: String| Err(domain("LTSpec", format!("{}: {msg}", self.name())));
        let pos = |a: f64, b: f64| a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite();
        match *self {
            Rho { mu, a } => {
                if !(mu > -1.0 && a > 0.0) {
                    return bad(format!("need mu > -1, a > 0; got mu={mu}, a={a}"));
                }
            }
            Omega1 { mu, nu, sigma, a, b } => {
                if !(mu > -1.0 && nu > sigma && sigma > -1.0 && b > a && a > 0.0) {
                    return bad("need mu > -1, nu > sigma > -1, b > a > 0".into());
                }
            }
            Omega2 { mu, nu, a, b } => {
                if !(mu > -1.0 && nu > 0.5 && b > a && a > 0.0) {
                    return bad("need mu > -1, nu > 1/2, b > a > 0".into());
                }
            }
            Ikmu { mu } => {
                if !(mu > 0.0) {
                    return bad(format!("need mu > 0, got {mu}"));
                }
            }
            Chi { mu, nu, a, b } => {
                if !(nu > 0.0 && mu > 0.5 && pos(a, b)) {
                    return bad("need nu > 0, mu > 1/2, a, b > 0".into());
                }
            }
            Theta { mu, nu, a, b } => {
                if !(mu > 0.0 && nu > 0.0 && pos(a, b)) {
                    return bad("need mu, nu > 0, a, b > 0".into());
                }
            }
            Zeta { mu, nu, a, b } | Kappa { mu, nu, a, b } | Epsilon { mu, nu, a, b } => {
                if !(mu > 0.5 && nu > 0.5 && pos(a, b)) {
                    return bad("need mu, nu > 1/2, a, b > 0".into());
                }
            }
            EpsilonRecip { mu, nu, a, b } => {
                if !(nu > 0.0 && mu > -1.0 && pos(a, b)) {
                    return bad("need nu > 0, mu > -1, a, b > 0".into());
                }
            }
            Dist { d } => {
                d.validate()?;
                if let DistSpec::NoncentralChiSq { .. } = d {
                    return Err(Error::Unsupported("Laplace transform of ncchisq".into()));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for LTSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LTSpec::Dist { d } => write!(f, "DIST kind={}", d.kind())?,
            _ => write!(f, "{}", self.name())?,
        }
        for (k, v) in self.params() {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

/// ln L(x) for x > 0.
pub fn ln_lt_value(spec: &LTSpec, x: f64) -> Result<f64> {
    use LTSpec::*;
    spec.validate()?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("lt_value", format!("x = {x} must be positive")));
    }
    let r = x.sqrt();
    let lx = x.ln();
    let lgi = |m: f64| ln_gamma(m);
    let quot = |mu: f64, nu: f64, a: f64, b: f64| -> Result<f64> {
        Ok(
            (mu - nu) * (b / a).ln() + ln_bessel_i(mu, a * r)? + ln_bessel_i(nu, b * r)?
                - ln_bessel_i(mu, b * r)?
                - ln_bessel_i(nu, a * r)?,
        )
    };
    let ln_rho = |mu: f64, a: f64| -> Result<f64> {
        Ok(mu * (a * r).ln() - mu * LN_2 - lgi(mu + 1.0)? - ln_bessel_i(mu, a * r)?)
    };
    Ok(match *spec {
        Rho { mu, a } => ln_rho(mu, a)?,
        Omega1 { mu, nu, sigma, a, b } => quot(mu, nu, a, b)? + ln_rho(sigma, b)?,
        Omega2 { mu, nu, a, b } => quot(mu, nu, a, b)? - b * r,
        Ikmu { mu } => (2.0 * mu).ln() + ln_bessel_i(mu, r)? + ln_bessel_k(mu, r)?,
        Chi { mu, nu, a, b } => {
            (mu - nu + 1.0) * LN_2 + lgi(mu + 1.0)? + nu * b.ln() - mu * a.ln() - lgi(nu)? - a * r
                + 0.5 * (nu - mu) * lx
                + ln_bessel_i(mu, a * r)?
                + ln_bessel_k(nu, b * r)?
        }
        Theta { mu, nu, a, b } => {
            mu * a.ln() + nu * b.ln() - (mu + nu - 2.0) * LN_2 - lgi(mu)? - lgi(nu)?
                + 0.5 * (mu + nu) * lx
                + ln_bessel_k(mu, a * r)?
                + ln_bessel_k(nu, b * r)?
        }
        Zeta { mu, nu, a, b } => {
            (mu + nu) * LN_2 + lgi(mu + 1.0)? + lgi(nu + 1.0)?
                - mu * a.ln()
                - nu * b.ln()
                - (a + b) * r
                - 0.5 * (mu + nu) * lx
                + ln_bessel_i(mu, a * r)?
                + ln_bessel_i(nu, b * r)?
        }
        Kappa { mu, nu, a, b } => {
            (mu + nu - 2.0) * LN_2 + lgi(mu)? + lgi(nu)?
                - mu * a.ln()
                - nu * b.ln()
                - (a + b) * r
                - 0.5 * (mu + nu) * lx
                - ln_bessel_k(mu, a * r)?
                - ln_bessel_k(nu, b * r)?
        }
        Epsilon { mu, nu, a, b } => {
            (mu + nu - 1.0) * LN_2 + lgi(nu)? + lgi(mu + 1.0)?
                - mu * a.ln()
                - nu * b.ln()
                - (a + b) * r
                - 0.5 * (mu + nu) * lx
                + ln_bessel_i(mu, a * r)?
                - ln_bessel_k(nu, b * r)?
        }
        EpsilonRecip { mu, nu, a, b } => {
            mu * a.ln() + nu * b.ln() - (mu + nu - 1.0) * LN_2 - lgi(nu)? - lgi(mu + 1.0)?
                + 0.5 * (mu + nu) * lx
                + ln_bessel_k(nu, b * r)?
                - ln_bessel_i(mu, a * r)?
        }
        Dist { d } => crate::distributions::Dist::new(d)?.laplace_closed(x)?.ln(),
    })
}

/// L(x); L(0) = 1.
pub fn lt_value(spec: &LTSpec, x: f64) -> Result<f64> {
    if x == 0.0 {
        spec.validate()?;
        return Ok(1.0);
    }
    Ok(ln_lt_value(spec, x)?.exp())
}

/// The pieces of −(ln L)′, or None for laws that use the cumulant ladder.
fn phi_terms(spec: &LTSpec) -> Result<Option<Vec<Term>>> {
    use LTSpec::*;
    spec.validate()?;
    let ml = |c: f64, mu: f64, a: f64| Term::Ml { c, mu, a };
    let kr = Term::k_ratio;
    let sq = |c: f64| Term::Power { c: 0.5 * c, p: 0.5 };
    Ok(Some(match *spec {
        Rho { mu, a } => vec![ml(1.0, mu, a)],
        Omega1 { mu, nu, sigma, a, b } => {
            vec![
                ml(-1.0, mu, a),
                ml(-1.0, nu, b),
                ml(1.0, mu, b),
                ml(1.0, nu, a),
                ml(1.0, sigma, b),
            ]
        }
        Omega2 { mu, nu, a, b } => vec![sq(b), ml(-1.0, mu, a), ml(-1.0, nu, b), ml(1.0, mu, b), ml(1.0, nu, a)],
        Ikmu { mu } => vec![ml(-1.0, mu, 1.0), kr(1.0, mu, 1.0)],
        Chi { mu, nu, a, b } => vec![sq(a), ml(-1.0, mu, a), kr(1.0, nu, b)],
        Theta { mu, nu, a, b } => vec![kr(1.0, mu, a), kr(1.0, nu, b)],
        Zeta { mu, nu, a, b } => vec![sq(a + b), ml(-1.0, mu, a), ml(-1.0, nu, b)],
        Kappa { mu, nu, a, b } => vec![sq(a + b), kr(-1.0, mu, a), kr(-1.0, nu, b)],
        Epsilon { mu, nu, a, b } => vec![sq(a + b), ml(-1.0, mu, a), kr(-1.0, nu, b)],
        EpsilonRecip { mu, nu, a, b } => vec![ml(1.0, mu, a), kr(1.0, nu, b)],
        Dist { d } => match d {
            DistSpec::McKayI { mu, a, b } => {
                vec![
                    Term::Pole { c: mu + 0.5, s: b - a },
                    Term::Pole { c: mu + 0.5, s: b + a },
                ]
            }
            DistSpec::McKayII { mu, a, b } => vec![
                Term::Pole { c: mu + 1.5, s: b - a },
                Term::Pole { c: mu + 1.5, s: b + a },
                Term::Pole { c: -1.0, s: b },
            ],
            DistSpec::KDist { alpha, beta, mu } if alpha != beta => {
                let k = alpha * beta / mu;
                let w = kdist_mixing_kernel(alpha, beta)?;
                vec![Term::Stj {
                    c: alpha.min(beta),
                    w: Arc::new(w),
                    g: Arc::new(move |t| if t > 0.0 { k / t } else { f64::INFINITY }),
                    g_inv: Arc::new(move |x| if x > 0.0 { k / x } else { f64::NAN }),
                    split: 1.0,
                    closed: None,
                }]
            }
            DistSpec::GammaQuotient {
                alpha,
                beta,
                alpha0,
                beta0,
            } => {
                let th = beta / beta0;
                let c = 1.0 - alpha0;
                let lg = ln_gamma(alpha + 1.0)? + ln_gamma(alpha - c + 1.0)?;
                vec![Term::Stj {
                    c: alpha,
                    w: Arc::new(tricomi_weight(alpha, c, lg)),
                    g: Arc::new(move |t| t / th),
                    g_inv: Arc::new(move |x| th * x),
                    split: 1.0,
                    closed: None,
                }]
            }
            DistSpec::GIG { mu, a, b } => {
                let mut v = vec![Term::gig_k_ratio(mu.abs(), a, b)];
                if mu > 0.0 {
                    v.push(Term::Pole { c: mu, s: 0.5 * a });
                }
                v
            }
            _ => return Ok(None),
        },
    }))
}

/// −(d/dx) ln L(x), from I-ratio Mittag-Leffler series with `n_terms` zeros
/// (plus tail), the direct K-ratio and elementary terms. Distribution
/// transforms use [`Dist::neg_logderiv_lt`].
pub fn neg_logderiv(spec: &LTSpec, x: f64, n_terms: usize) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("neg_logderiv", format!("x = {x} must be positive")));
    }
    if n_terms == 0 {
        return Err(domain("neg_logderiv", "n_terms must be positive"));
    }
    if let LTSpec::Dist { d } = spec {
        spec.validate()?;
        return Dist::new(*d)?.neg_logderiv_lt(x);
    }
    let terms = phi_terms(spec)?.expect("Bessel transforms have term forms");
    let mut s = 0.0;
    for t in &terms {
        s += t.value(x, n_terms)?;
    }
    Ok(s)
}

/// (−1)ⁿ dⁿ/dxⁿ [−(ln L)′] at x for n = 0..=max_order, with the kind of
/// ladder used.
pub fn phi_prime_ladder(spec: &LTSpec, x: f64, max_order: usize) -> Result<(LadderKind, Vec<LadderValue>)> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("phi_prime_ladder", format!("x = {x} must be positive")));
    }
    match phi_terms(spec)? {
        Some(terms) => {
            let kind = terms.iter().map(|t| t.kind()).max().unwrap_or(LadderKind::Exact);
            let mut out = vec![LadderValue::exact(0.0, 0.0); max_order + 1];
            for t in &terms {
                for (o, g) in out.iter_mut().zip(t.ladder(x, max_order, DEFAULT_ML_TERMS)?) {
                    o.value += g;
                    o.scale += g.abs();
                }
            }
            Ok((kind, out))
        }
        None => {
            let LTSpec::Dist { d } = spec else { unreachable!() };
            Ok((LadderKind::Quadrature, cumulant_ladder(&Dist::new(*d)?, x, max_order)?))
        }
    }
}

/// Cumulants κ_{n+1}, n = 0..=max_order, of the density e^{−xt}f(t)/L(x);
/// these equal (−1)ⁿ dⁿ/dxⁿ [−(ln L)′].
fn cumulant_ladder(d: &Dist, x: f64, max_order: usize) -> Result<Vec<LadderValue>> {
    let e0 = d.endpoint_exponent();
    let sc = d.scale();
    let nm = max_order + 2;
    let mut m = Vec::with_capacity(nm);
    for j in 0..nm {
        let f = |t: f64| {
            if t <= 0.0 {
                return 0.0;
            }
            match d.log_pdf(t) {
                Ok(l) => (l + j as f64 * t.ln()).exp(),
                Err(_) => f64::NAN,
            }
        };
        m.push(numeric_laplace_scaled(f, x, e0 + j as f64, sc, 1e-13)?.value);
    }
    let m0 = m[0];
    let m: Vec<f64> = m.iter().map(|v| v / m0).collect();
    // κ_n = m_n − Σ_{k<n} C(n−1, k−1) κ_k m_{n−k}
    let mut kap = vec![0.0; nm];
    let mut mag = vec![0.0; nm];
    for n in 1..nm {
        let mut s = m[n];
        let mut a = m[n].abs();
        let mut c = 1.0;
        for k in 1..n {
            s -= c * kap[k] * m[n - k];
            a += c * mag[k] * m[n - k].abs();
            c = c * (n - 1 - (k - 1)) as f64 / k as f64;
        }
        kap[n] = s;
        mag[n] = a;
    }
    Ok((0..=max_order)
        .map(|n| LadderValue::exact(kap[n + 1], mag[n + 1]))
        .collect())
}

fn phi_function<'a>(spec: &'a LTSpec) -> Result<CmFunction<'a>> {
    let kind = match phi_terms(spec)? {
        Some(t) => t.iter().map(|t| t.kind()).max().unwrap_or(LadderKind::Exact),
        None => LadderKind::Quadrature,
    };
    Ok(CmFunction::new(move |x| neg_logderiv(spec, x, DEFAULT_ML_TERMS))
        .with_ladder(kind, move |x, n| Ok(phi_prime_ladder(spec, x, n)?.1)))
}

/// Bernstein check: −ln L vanishes at 0⁺ and −(ln L)′ is completely monotone
/// on the grid up to `max_order`.
pub fn bernstein_check(spec: &LTSpec, grid: &[f64], max_order: usize) -> Result<CMReport> {
    let l0 = ln_lt_value(spec, 1e-14)?;
    let f = phi_function(spec)?;
    let mut r = cm_check(&f, grid, max_order)?;
    if l0.abs() > 1e-6 {
        r.pass = false;
        r.verdict = Verdict::Fail;
    }
    Ok(r)
}

/// Self-decomposability surrogate: x ↦ L(x)/L(αx) is completely monotone on
/// the grid (it equals 1 at 0). Derivatives of the quotient come from those
/// of −(ln L)′ through the exponential recurrence.
pub fn selfdecomp_check(spec: &LTSpec, alpha: f64, grid: &[f64], max_order: usize) -> Result<CMReport> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(domain(
            "selfdecomp_check",
            format!("alpha = {alpha} must lie in (0, 1)"),
        ));
    }
    let kind = match phi_terms(spec)? {
        Some(t) => t.iter().map(|t| t.kind()).max().unwrap_or(LadderKind::Exact),
        None => LadderKind::Quadrature,
    };
    let value = move |x: f64| Ok((ln_lt_value(spec, x)? - ln_lt_value(spec, alpha * x)?).exp());
    let ladder = move |x: f64, n: usize| -> Result<Vec<LadderValue>> {
        let f0 = value(x)?;
        if n == 0 {
            return Ok(vec![LadderValue::exact(f0, f0)]);
        }
        let (_, gx) = phi_prime_ladder(spec, x, n - 1)?;
        let (_, ga) = phi_prime_ladder(spec, alpha * x, n - 1)?;
        Ok(quotient_ladder(&gx, &ga, alpha, f0, n))
    };
    let f = CmFunction::new(value).with_ladder(kind, ladder);
    cm_check(&f, grid, max_order)
}

/// F_n = (−1)ⁿ f⁽ⁿ⁾ for f = e^{ℓ}, −ℓ′(x) = φ′(x) − αφ′(αx):
/// F_{n+1} = Σ_k C(n,k) H_k F_{n−k}, H_k = G_k(x) − α^{k+1} G_k(αx).
fn quotient_ladder(gx: &[LadderValue], ga: &[LadderValue], alpha: f64, f0: f64, max_n: usize) -> Vec<LadderValue> {
    let h: Vec<(f64, f64)> = (0..max_n)
        .map(|k| {
            let p = alpha.powi(k as i32 + 1);
            (gx[k].value - p * ga[k].value, gx[k].scale + p * ga[k].scale)
        })
        .collect();
    let mut f = vec![(f0, f0.abs())];
    for n in 0..max_n {
        let (mut v, mut a) = (0.0, 0.0);
        let mut c = 1.0;
        for k in 0..=n {
            v += c * h[k].0 * f[n - k].0;
            a += c * h[k].1 * f[n - k].1;
            c = c * (n - k) as f64 / (k + 1) as f64;
        }
        f.push((v, a));
    }
    f.into_iter().map(|(v, a)| LadderValue::exact(v, a)).collect()
}

/// Pick-function grid verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PickReport {
    pub grid: Vec<(f64, f64)>,
    pub min_im_value: f64,
    pub pass: bool,
    /// The point of the minimum when it is below −slack.
    pub witness: Option<(f64, f64)>,
    pub slack: f64,
}

pub const PICK_SLACK: f64 = 1e-12;

/// Im[ψ′(s)/ψ(s)] for the moment generating function ψ(s) = L(−s) at
/// s = x + iy, y > 0.
pub fn pick_im(spec: &LTSpec, x: f64, y: f64) -> Result<f64> {
    if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(domain(
            "pick_im",
            format!("need finite s with Im s > 0, got {x} + {y}i"),
        ));
    }
    if let LTSpec::Dist { d } = spec {
        let dist = Dist::new(*d)?;
        match dist.mgf_logderiv_im(x, y) {
            Err(Error::Unsupported(_)) => {}
            r => return r,
        }
    }
    let terms = phi_terms(spec)?.ok_or_else(|| Error::Unsupported(format!("Pick form for {spec}")))?;
    let mut s = 0.0;
    for t in &terms {
        s += t.pick_im(x, y, DEFAULT_ML_TERMS)?;
    }
    Ok(s)
}

/// Minimum of [`pick_im`] over the grid.
pub fn pick_check(spec: &LTSpec, grid: &[(f64, f64)]) -> Result<PickReport> {
    if grid.is_empty() {
        return Err(domain("pick_check", "empty grid"));
    }
    let mut min = f64::INFINITY;
    let mut at = grid[0];
    for &(x, y) in grid {
        let v = pick_im(spec, x, y)?;
        if v < min {
            min = v;
            at = (x, y);
        }
    }
    let pass = min >= -PICK_SLACK;
    Ok(PickReport {
        grid: grid.to_vec(),
        min_im_value: min,
        pass,
        witness: if pass { None } else { Some(at) },
        slack: PICK_SLACK,
    })
}

/// Re s from −20 to 20 in steps of 1/2, plus points at and next to the
/// first three singularities of each pole or zero-sum piece; Im s in
/// {1e-3, 1e-2, 0.1, 0.5, 1, 2, 5}.
pub fn default_pick_grid(spec: &LTSpec) -> Result<Vec<(f64, f64)>> {
    let mut re: Vec<f64> = (0..=80).map(|k| -20.0 + 0.5 * k as f64).collect();
    let mut sing = Vec::new();
    match spec {
        LTSpec::Dist { d } => match *d {
            DistSpec::McKayI { a, b, .. } | DistSpec::McKayII { a, b, .. } => sing.extend([b - a, b + a]),
            _ => {}
        },
        _ => {
            if let Some(terms) = phi_terms(spec)? {
                for t in terms {
                    match t {
                        Term::Ml { mu, a, .. } => {
                            for j in zeros_any(mu, 3)? {
                                sing.push((j / a).powi(2));
                            }
                        }
                        Term::Pole { s, .. } => sing.push(s),
                        _ => {}
                    }
                }
            }
        }
    }
    for s in sing {
        re.extend([s * 0.99, s, s * 1.01]);
    }
    re.sort_by(|a, b| a.partial_cmp(b).unwrap());
    re.dedup();
    let ims = [1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 5.0];
    Ok(re.iter().flat_map(|x| ims.iter().map(move |y| (*x, *y))).collect())
}

/// Subject of an HCM check: a density, or a Laplace transform taken as φ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "subject", rename_all = "lowercase")]
pub enum HcmSubject {
    Density { d: DistSpec },
    Transform { lt: LTSpec },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HcmRow {
    pub u: f64,
    pub report: CMReport,
}

/// Per-u verdicts for w ↦ f(uv)f(u/v), w = v + 1/v.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HCMReport {
    pub rows: Vec<HcmRow>,
    pub pass: bool,
}

fn split_w(w: f64) -> f64 {
    0.5 * (w + (w * w - 4.0).sqrt())
}

/// Checks that w ↦ f(uv)f(u/v) is completely monotone on `w_grid` ⊂ (2, ∞)
/// for each u.
pub fn hcm_check(subject: &HcmSubject, us: &[f64], w_grid: &[f64], max_order: usize) -> Result<HCMReport> {
    let mut rows = Vec::with_capacity(us.len());
    for &u in us {
        if !(u > 0.0) {
            return Err(domain("hcm_check", format!("u = {u} must be positive")));
        }
        let report = match *subject {
            HcmSubject::Density { d } => {
                let dist = Dist::new(d)?;
                let val = move |w: f64| dist.hcm_profile(u, w);
                let f = CmFunction::new(val).with_origin(2.0).with_step(|w| 0.5 * w);
                match d {
                    DistSpec::GammaQuotient {
                        alpha,
                        beta,
                        alpha0,
                        beta0,
                    } => {
                        let th = beta0 / beta;
                        let (a, b, p) = (1.0 + (u * th).powi(2), th * u, alpha + alpha0);
                        let lad = move |w: f64, n: usize| -> Result<Vec<LadderValue>> {
                            let f0 = dist.hcm_profile(u, w)?;
                            let mut v = vec![LadderValue::exact(f0, f0)];
                            let mut g = f0;
                            for k in 0..n {
                                g *= (p + k as f64) * b / (a + b * w);
                                v.push(LadderValue::exact(g, g));
                            }
                            Ok(v)
                        };
                        cm_check(&f.with_ladder(LadderKind::Exact, lad), w_grid, max_order)?
                    }
                    DistSpec::GIG { a, b, .. } => {
                        let lam = 0.5 * (a * u + b / u);
                        let lad = move |w: f64, n: usize| -> Result<Vec<LadderValue>> {
                            let f0 = dist.hcm_profile(u, w)?;
                            Ok((0..=n)
                                .map(|k| {
                                    let g = f0 * lam.powi(k as i32);
                                    LadderValue::exact(g, g)
                                })
                                .collect())
                        };
                        cm_check(&f.with_ladder(LadderKind::Exact, lad), w_grid, max_order)?
                    }
                    _ => cm_check(&f, w_grid, max_order)?,
                }
            }
            HcmSubject::Transform { lt } => {
                let val = move |w: f64| {
                    let v = split_w(w);
                    Ok((ln_lt_value(&lt, u * v)? + ln_lt_value(&lt, u / v)?).exp())
                };
                let f = CmFunction::new(val).with_origin(2.0).with_step(|w| 0.5 * w);
                cm_check(&f, w_grid, max_order)?
            }
        };
        rows.push(HcmRow { u, report });
    }
    let pass = rows.iter().all(|r| r.report.pass);
    Ok(HCMReport { rows, pass })
}

/// First and second w-derivatives of the non-central χ² product profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileSignReport {
    pub mu: f64,
    pub lambda: f64,
    pub u: f64,
    pub w_grid: Vec<f64>,
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
    pub decreasing: bool,
    pub convex: bool,
    /// λ ≤ 2(2μ+1): decrease is asserted.
    pub decreasing_claimed: bool,
    /// λ ≤ 2μ+1: convexity is asserted.
    pub convex_claimed: bool,
    pub pass: bool,
}

/// Signs of d/dw and d²/dw² of w ↦ χ_{μ,λ}(uv)χ_{μ,λ}(u/v) on the grid, by
/// Ridders differences.
pub fn noncentral_profile_check(mu: f64, lambda: f64, u: f64, w_grid: &[f64]) -> Result<ProfileSignReport> {
    if !(mu > 0.0 && lambda > 0.0 && u > 0.0) {
        return Err(domain("noncentral_profile_check", "need mu, lambda, u > 0"));
    }
    if w_grid.iter().any(|w| !(*w > 2.0)) {
        return Err(domain("noncentral_profile_check", "w grid must lie in (2, ∞)"));
    }
    let dist = Dist::new(DistSpec::NoncentralChiSq { mu, lambda })?;
    let f = |w: f64| dist.hcm_profile(u, w);
    let mut d1 = Vec::new();
    let mut d2 = Vec::new();
    for &w in w_grid {
        let h = 0.25 * w;
        d1.push(ridders(&f, w, 1, h)?.0);
        d2.push(ridders(&f, w, 2, h)?.0);
    }
    let decreasing = d1.iter().all(|d| *d < 0.0);
    let convex = d2.iter().all(|d| *d > 0.0);
    let decreasing_claimed = lambda <= 2.0 * (2.0 * mu + 1.0);
    let convex_claimed = lambda <= 2.0 * mu + 1.0;
    let pass = (!decreasing_claimed || decreasing) && (!convex_claimed || convex);
    Ok(ProfileSignReport {
        mu,
        lambda,
        u,
        w_grid: w_grid.to_vec(),
        d1,
        d2,
        decreasing,
        convex,
        decreasing_claimed,
        convex_claimed,
        pass,
    })
}

/// I_μ(uv) I_μ(u/v) with w = v + 1/v.
pub fn i_product_profile(mu: f64, u: f64, w: f64) -> Result<f64> {
    if !(w >= 2.0) {
        return Err(domain("i_product_profile", format!("w = {w} must be at least 2")));
    }
    let v = split_w(w);
    let (a, b) = (u * v, u / v);
    Ok((bessel_i(mu, a, true)?.ln() + bessel_i(mu, b, true)?.ln() + a + b).exp())
}

/// Absolute monotonicity of w ↦ I_μ(uv)I_μ(u/v) on the grid: all
/// derivatives up to `max_order` non-negative (Ridders differences).
pub fn absmon_check(mu: f64, u: f64, w_grid: &[f64], max_order: usize) -> Result<CMReport> {
    if !(mu > -0.5 && u > 0.0) {
        return Err(domain("absmon_check", format!("need mu > -1/2, u > 0; got {mu}, {u}")));
    }
    let f = CmFunction::new(move |w| i_product_profile(mu, u, w))
        .with_origin(2.0)
        .with_step(move |w| (0.5 / u).min(0.5 * w));
    am_check(&f, w_grid, max_order)
}

/// d/dw of I_μ(uv)I_μ(u/v) from the angular representation:
/// u²w·(u²/2)^μ/(√π Γ(μ+½)) ∫₀^π S^{−μ−1} I_{μ+1}(S) sin^{2μ}t dt,
/// S² = u²(w² − 2 − 2cos t).
pub fn i_product_first_derivative(mu: f64, u: f64, w: f64) -> Result<f64> {
    if !(mu > -0.5 && u > 0.0 && w > 2.0) {
        return Err(domain("i_product_first_derivative", "need mu > -1/2, u > 0, w > 2"));
    }
    let lc = mu * (0.5 * u * u).ln() - 0.5 * PI.ln() - ln_gamma(mu + 0.5)?;
    let f = |t: f64| {
        let s = u * (w * w - 2.0 - 2.0 * t.cos()).sqrt();
        match bessel_i(mu + 1.0, s, true) {
            Ok(i) => (lc + i.ln() + s - (mu + 1.0) * s.ln() + 2.0 * mu * t.sin().ln()).exp(),
            Err(_) => f64::NAN,
        }
    };
    Ok(u * u * w * tanh_sinh(&f, 0.0, PI, QUAD_TOL)?.value)
}

/// sup_{t>0} t^{1/3} J₀(t), with its maximizer.
pub fn landau_constant_with_argmax() -> Result<(f64, f64)> {
    let g = |t: f64| -> Result<f64> { Ok(t.cbrt() * bessel_j(0.0, t)?) };
    // golden section on (0, j_{0,1}), where J₀ > 0
    let (mut lo, mut hi) = (1e-3, 2.404);
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = hi - r * (hi - lo);
    let mut d = lo + r * (hi - lo);
    let (mut gc, mut gd) = (g(c)?, g(d)?);
    for _ in 0..60 {
        if gc > gd {
            hi = d;
            d = c;
            gd = gc;
            c = hi - r * (hi - lo);
            gc = g(c)?;
        } else {
            lo = c;
            c = d;
            gc = gd;
            d = lo + r * (hi - lo);
            gd = g(d)?;
        }
    }
    // Newton on h(t) = J₀(t) − 3tJ₁(t), the stationarity condition
    let mut t = 0.5 * (lo + hi);
    for _ in 0..20 {
        let j0 = bessel_j(0.0, t)?;
        let j1 = bessel_j(1.0, t)?;
        let h = j0 - 3.0 * t * j1;
        let dh = -j1 - 3.0 * t * j0;
        let step = h / dh;
        t -= step;
        if step.abs() <= 1e-15 * t {
            break;
        }
    }
    Ok((g(t)?, t))
}

/// c_L = sup_{t>0} t^{1/3} J₀(t) ≈ 0.7857468704.
pub fn landau_constant() -> Result<f64> {
    Ok(landau_constant_with_argmax()?.0)
}
