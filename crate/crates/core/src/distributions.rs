//! Bessel-type lifetime distributions on (0, ∞): densities, normalizers,
//! Laplace transforms and their log-derivatives.
//!
//! Densities are evaluated as exp(log kernel − log normalizer) with scaled
//! Bessel functions, so large orders and arguments do not overflow.

use crate::error::{domain, Error, Result};
use crate::quad::{exp_sinh, exp_sinh_complex, integrate_with_breaks};
use crate::specfun::{
    gauss_2f1, ln_bessel_i, ln_bessel_k, ln_gamma, tricomi_psi_boundary, tricomi_psi_boundary_contour,
    tricomi_psi_scaled,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Parameters of one distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DistSpec {
    /// x^μ e^{−bx} I_μ(ax); μ > −1/2, b > a > 0.
    #[serde(rename = "mckay1")]
    McKayI { mu: f64, a: f64, b: f64 },
    /// x^{μ+1} e^{−bx} I_μ(ax); μ > −1, b > a > 0.
    #[serde(rename = "mckay2")]
    McKayII { mu: f64, a: f64, b: f64 },
    /// x^{ν−1} e^{−bx} I_μ(ax); μ > −1, μ + ν > 0, b > a > 0.
    GenMcKay { mu: f64, nu: f64, a: f64, b: f64 },
    /// x^{2μ} e^{−bx} I_μ(ax)²; μ > −1/4, b > 2a > 0.
    SqMcKay { mu: f64, a: f64, b: f64 },
    /// K-distribution (gamma-gamma); α, β, μ > 0.
    KDist { alpha: f64, beta: f64, mu: f64 },
    /// Generalized inverse Gaussian x^{μ−1} e^{−(ax + b/x)/2}; a, b > 0.
    #[serde(rename = "gig")]
    GIG { mu: f64, a: f64, b: f64 },
    /// Ratio X/Y of independent Gamma(α, scale β) and Gamma(α₀, scale β₀).
    GammaQuotient {
        alpha: f64,
        beta: f64,
        alpha0: f64,
        beta0: f64,
    },
    /// Non-central χ² with μ degrees of freedom and non-centrality λ.
    #[serde(rename = "ncchisq")]
    NoncentralChiSq { mu: f64, lambda: f64 },
}

/// Log of the normalizing constant: pdf = kernel / exp(log_value).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Normalizer {
    pub log_value: f64,
}

fn finite_all(v: &[f64]) -> bool {
    v.iter().all(|x| x.is_finite())
}

impl DistSpec {
    pub fn mckay1(mu: f64, a: f64, b: f64) -> Result<Self> {
        Self::McKayI { mu, a, b }.validated()
    }
    pub fn mckay2(mu: f64, a: f64, b: f64) -> Result<Self> {
        Self::McKayII { mu, a, b }.validated()
    }
    pub fn gen_mckay(mu: f64, nu: f64, a: f64, b: f64) -> Result<Self> {
        Self::GenMcKay { mu, nu, a, b }.validated()
    }
    pub fn sq_mckay(mu: f64, a: f64, b: f64) -> Result<Self> {
        Self::SqMcKay { mu, a, b }.validated()
    }
    pub fn kdist(alpha: f64, beta: f64, mu: f64) -> Result<Self> {
        Self::KDist { alpha, beta, mu }.validated()
    }
    pub fn gig(mu: f64, a: f64, b: f64) -> Result<Self> {
        Self::GIG { mu, a, b }.validated()
    }
    pub fn gamma_quotient(alpha: f64, beta: f64, alpha0: f64, beta0: f64) -> Result<Self> {
        Self::GammaQuotient {
            alpha,
            beta,
            alpha0,
            beta0,
        }
        .validated()
    }
    pub fn noncentral_chisq(mu: f64, lambda: f64) -> Result<Self> {
        Self::NoncentralChiSq { mu, lambda }.validated()
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    /// Five valid parameter sets per kind, spread over each domain.
    pub fn sample_sets() -> Vec<DistSpec> {
        vec![
            Self::mckay1(0.5, 1.0, 2.0),
            Self::mckay1(-0.3, 0.5, 0.7),
            Self::mckay1(3.0, 2.0, 2.5),
            Self::mckay1(25.0, 1.0, 1.5),
            Self::mckay1(0.0, 0.1, 5.0),
            Self::mckay2(0.5, 1.0, 2.0),
            Self::mckay2(-0.7, 0.5, 0.7),
            Self::mckay2(3.0, 2.0, 2.5),
            Self::mckay2(10.0, 1.0, 1.2),
            Self::mckay2(0.0, 0.1, 5.0),
            Self::gen_mckay(0.5, 1.0, 1.0, 2.0),
            Self::gen_mckay(-0.5, 0.8, 0.5, 0.7),
            Self::gen_mckay(2.0, 0.5, 1.0, 1.5),
            Self::gen_mckay(1.0, 3.5, 1.0, 3.0),
            Self::gen_mckay(0.3, 0.2, 0.4, 1.0),
            Self::sq_mckay(0.0, 1.0, 3.0),
            Self::sq_mckay(-0.2, 0.5, 1.5),
            Self::sq_mckay(0.5, 1.0, 2.5),
            Self::sq_mckay(2.0, 0.3, 1.0),
            Self::sq_mckay(0.25, 1.0, 5.0),
            Self::kdist(1.0, 2.0, 1.0),
            Self::kdist(1.5, 2.5, 0.5),
            Self::kdist(0.7, 0.9, 2.0),
            Self::kdist(3.0, 1.0, 1.0),
            Self::kdist(2.0, 2.0, 3.0),
            Self::gig(0.5, 1.0, 2.0),
            Self::gig(-1.5, 2.0, 0.5),
            Self::gig(0.0, 1.0, 1.0),
            Self::gig(3.0, 0.2, 4.0),
            Self::gig(-0.5, 1.0, 1.0),
            Self::gamma_quotient(1.0, 1.0, 1.0, 1.0),
            Self::gamma_quotient(2.5, 1.0, 3.0, 2.0),
            Self::gamma_quotient(0.5, 2.0, 4.0, 1.0),
            Self::gamma_quotient(3.0, 0.5, 2.5, 1.5),
            Self::gamma_quotient(1.5, 1.0, 1.5, 1.0),
            Self::noncentral_chisq(1.0, 1.0),
            Self::noncentral_chisq(3.0, 2.0),
            Self::noncentral_chisq(0.5, 5.0),
            Self::noncentral_chisq(10.0, 3.0),
            Self::noncentral_chisq(4.0, 10.0),
        ]
        .into_iter()
        .map(|r| r.expect("sample parameters are valid"))
        .collect()
    }

    /// Checks the parameter conditions of the variant.
    pub fn validate(&self) -> Result<()> {
        use DistSpec::*;
        let (ok, what) = match *self {
            McKayI { mu, a, b } => (
                finite_all(&[mu, a, b]) && mu > -0.5 && b > a && a > 0.0,
                "mu > -1/2, b > a > 0",
            ),
            McKayII { mu, a, b } => (
                finite_all(&[mu, a, b]) && mu > -1.0 && b > a && a > 0.0,
                "mu > -1, b > a > 0",
            ),
            GenMcKay { mu, nu, a, b } => (
                finite_all(&[mu, nu, a, b]) && mu > -1.0 && mu + nu > 0.0 && b > a && a > 0.0,
                "mu > -1, mu + nu > 0, b > a > 0",
            ),
            SqMcKay { mu, a, b } => (
                finite_all(&[mu, a, b]) && mu > -0.25 && b > 2.0 * a && a > 0.0,
                "mu > -1/4, b > 2a > 0",
            ),
            KDist { alpha, beta, mu } => (
                finite_all(&[alpha, beta, mu]) && alpha > 0.0 && beta > 0.0 && mu > 0.0,
                "alpha, beta, mu > 0",
            ),
            GIG { mu, a, b } => (finite_all(&[mu, a, b]) && a > 0.0 && b > 0.0, "a, b > 0"),
            GammaQuotient {
                alpha,
                beta,
                alpha0,
                beta0,
            } => (
                finite_all(&[alpha, beta, alpha0, beta0]) && alpha > 0.0 && beta > 0.0 && alpha0 > 0.0 && beta0 > 0.0,
                "alpha, beta, alpha0, beta0 > 0",
            ),
            NoncentralChiSq { mu, lambda } => (
                finite_all(&[mu, lambda]) && mu > 0.0 && lambda > 0.0,
                "mu > 0, lambda > 0",
            ),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Param(format!("{}: need {what}, got {self}", self.kind())))
        }
    }

    /// Short name used in the key-value form.
    pub fn kind(&self) -> &'static str {
        use DistSpec::*;
        match self {
            McKayI { .. } => "mckay1",
            McKayII { .. } => "mckay2",
            GenMcKay { .. } => "genmckay",
            SqMcKay { .. } => "sqmckay",
            KDist { .. } => "kdist",
            GIG { .. } => "gig",
            GammaQuotient { .. } => "gammaquotient",
            NoncentralChiSq { .. } => "ncchisq",
        }
    }

    /// Parameter names and values in canonical order.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        use DistSpec::*;
        match *self {
            McKayI { mu, a, b } | McKayII { mu, a, b } | SqMcKay { mu, a, b } | GIG { mu, a, b } => {
                vec![("mu", mu), ("a", a), ("b", b)]
            }
            GenMcKay { mu, nu, a, b } => vec![("mu", mu), ("nu", nu), ("a", a), ("b", b)],
            KDist { alpha, beta, mu } => vec![("alpha", alpha), ("beta", beta), ("mu", mu)],
            GammaQuotient {
                alpha,
                beta,
                alpha0,
                beta0,
            } => {
                vec![("alpha", alpha), ("beta", beta), ("alpha0", alpha0), ("beta0", beta0)]
            }
            NoncentralChiSq { mu, lambda } => vec![("mu", mu), ("lambda", lambda)],
        }
    }

    /// Builds a spec from `kind` and a map of named parameters. Every
    /// parameter of the kind must be present and no others.
    pub fn from_params(kind: &str, p: &BTreeMap<String, f64>) -> Result<Self> {
        let names: &[&str] = match kind {
            "mckay1" | "mckay2" | "sqmckay" | "gig" => &["mu", "a", "b"],
            "genmckay" => &["mu", "nu", "a", "b"],
            "kdist" => &["alpha", "beta", "mu"],
            "gammaquotient" => &["alpha", "beta", "alpha0", "beta0"],
            "ncchisq" => &["mu", "lambda"],
            _ => return Err(Error::Parse(format!("unknown distribution kind '{kind}'"))),
        };
        if let Some(k) = p.keys().find(|k| !names.contains(&k.as_str())) {
            return Err(Error::Parse(format!("unexpected parameter '{k}' for {kind}")));
        }
        let mut v = Vec::with_capacity(names.len());
        for n in names {
            v.push(
                *p.get(*n)
                    .ok_or_else(|| Error::Parse(format!("{kind} needs parameter '{n}'")))?,
            );
        }
        match kind {
            "mckay1" => Self::mckay1(v[0], v[1], v[2]),
            "mckay2" => Self::mckay2(v[0], v[1], v[2]),
            "sqmckay" => Self::sq_mckay(v[0], v[1], v[2]),
            "gig" => Self::gig(v[0], v[1], v[2]),
            "genmckay" => Self::gen_mckay(v[0], v[1], v[2], v[3]),
            "kdist" => Self::kdist(v[0], v[1], v[2]),
            "gammaquotient" => Self::gamma_quotient(v[0], v[1], v[2], v[3]),
            _ => Self::noncentral_chisq(v[0], v[1]),
        }
    }
}

/// Splits `key=value` tokens into a map. Values must parse as reals except
/// for the keys listed in `text_keys`, returned separately.
pub fn parse_kv(s: &str, text_keys: &[&str]) -> Result<(BTreeMap<String, f64>, BTreeMap<String, String>)> {
    let mut nums = BTreeMap::new();
    let mut text = BTreeMap::new();
    for tok in s.split_whitespace() {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got '{tok}'")))?;
        if k.is_empty() {
            return Err(Error::Parse(format!("empty key in '{tok}'")));
        }
        let dup = if text_keys.contains(&k) {
            text.insert(k.to_string(), v.to_string()).is_some()
        } else {
            let x: f64 = v
                .parse()
                .map_err(|_| Error::Parse(format!("'{v}' is not a number (key {k})")))?;
            nums.insert(k.to_string(), x).is_some()
        };
        if dup {
            return Err(Error::Parse(format!("duplicate key '{k}'")));
        }
    }
    Ok((nums, text))
}

impl FromStr for DistSpec {
    type Err = Error;

    /// `kind=mckay1 mu=0.5 a=1 b=2`
    fn from_str(s: &str) -> Result<Self> {
        let (nums, text) = parse_kv(s, &["kind"])?;
        let kind = text.get("kind").ok_or_else(|| Error::Parse("missing kind=".into()))?;
        Self::from_params(kind, &nums)
    }
}

impl fmt::Display for DistSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "kind={}", self.kind())?;
        for (k, v) in self.params() {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

/// A validated distribution with its normalizer computed once.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Dist {
    pub spec: DistSpec,
    pub norm: Normalizer,
}

fn ln_2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    Ok(gauss_2f1(a, b, c, x)?.ln())
}

/// log of the normalizing constant of `d`.
pub fn normalizer(d: &DistSpec) -> Result<Normalizer> {
    use DistSpec::*;
    d.validate()?;
    let ln_sqrt_pi = 0.5 * PI.ln();
    let log_value = match *d {
        McKayI { mu, a, b } => {
            mu * (2.0 * a).ln() + ln_gamma(mu + 0.5)? - ln_sqrt_pi - (mu + 0.5) * (b * b - a * a).ln()
        }
        McKayII { mu, a, b } => {
            (2.0 * b).ln() + mu * (2.0 * a).ln() + ln_gamma(mu + 1.5)? - ln_sqrt_pi - (mu + 1.5) * (b * b - a * a).ln()
        }
        GenMcKay { mu, nu, a, b } => {
            let p = mu + nu;
            mu * (0.5 * a).ln() - p * b.ln() + ln_gamma(p)? - ln_gamma(mu + 1.0)?
                + ln_2f1(0.5 * p, 0.5 * (p + 1.0), mu + 1.0, (a / b).powi(2))?
        }
        SqMcKay { mu, a, b } => {
            4.0 * mu * 2f64.ln() + 2.0 * mu * a.ln() - PI.ln() - (4.0 * mu + 1.0) * b.ln()
                + ln_gamma(mu + 0.5)?
                + ln_gamma(2.0 * mu + 0.5)?
                - ln_gamma(mu + 1.0)?
                + ln_2f1(mu + 0.5, 2.0 * mu + 0.5, mu + 1.0, 4.0 * (a / b).powi(2))?
        }
        KDist { alpha, beta, mu } => {
            let k = alpha * beta / mu;
            ln_gamma(alpha)? + ln_gamma(beta)? - 2f64.ln() - 0.5 * (alpha + beta) * k.ln()
        }
        GIG { mu, a, b } => 2f64.ln() + ln_bessel_k(mu, (a * b).sqrt())? + 0.5 * mu * (b / a).ln(),
        GammaQuotient {
            alpha,
            beta,
            alpha0,
            beta0,
        } => ln_gamma(alpha)? + ln_gamma(alpha0)? - ln_gamma(alpha + alpha0)? - alpha * (beta0 / beta).ln(),
        NoncentralChiSq { mu, lambda } => 2f64.ln() + 0.5 * lambda + (0.25 * mu - 0.5) * lambda.ln(),
    };
    if !log_value.is_finite() {
        return Err(Error::Overflow("normalizer"));
    }
    Ok(Normalizer { log_value })
}

fn check_x(func: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(domain(func, format!("x = {x} must be positive")))
    }
}

/// Smallest |Im s| accepted by `mgf_logderiv_im`.
const MIN_IM: f64 = 1e-8;

const PICK_TOL: f64 = 1e-11;

impl Dist {
    pub fn new(spec: DistSpec) -> Result<Self> {
        Ok(Self {
            spec,
            norm: normalizer(&spec)?,
        })
    }

    /// log of the unnormalized density.
    fn log_kernel(&self, x: f64) -> Result<f64> {
        use DistSpec::*;
        let lx = x.ln();
        Ok(match self.spec {
            McKayI { mu, a, b } => mu * lx - b * x + ln_bessel_i(mu, a * x)?,
            McKayII { mu, a, b } => (mu + 1.0) * lx - b * x + ln_bessel_i(mu, a * x)?,
            GenMcKay { mu, nu, a, b } => (nu - 1.0) * lx - b * x + ln_bessel_i(mu, a * x)?,
            SqMcKay { mu, a, b } => 2.0 * mu * lx - b * x + 2.0 * ln_bessel_i(mu, a * x)?,
            KDist { alpha, beta, mu } => {
                let k = alpha * beta / mu;
                (0.5 * (alpha + beta) - 1.0) * lx + ln_bessel_k(alpha - beta, 2.0 * (k * x).sqrt())?
            }
            GIG { mu, a, b } => (mu - 1.0) * lx - 0.5 * (a * x + b / x),
            GammaQuotient {
                alpha,
                beta,
                alpha0,
                beta0,
            } => (alpha - 1.0) * lx - (alpha + alpha0) * (beta0 / beta * x).ln_1p(),
            NoncentralChiSq { mu, lambda } => {
                -0.5 * x + (0.25 * mu - 0.5) * lx + ln_bessel_i(0.5 * mu - 1.0, (lambda * x).sqrt())?
            }
        })
    }

    pub fn log_pdf(&self, x: f64) -> Result<f64> {
        check_x("log_pdf", x)?;
        Ok(self.log_kernel(x)? - self.norm.log_value)
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        Ok(self.log_pdf(x)?.exp())
    }

    /// Power of x in the density near 0 (−∞ exponent replaced by a large
    /// value for GIG, whose density vanishes faster than any power).
    pub fn endpoint_exponent(&self) -> f64 {
        use DistSpec::*;
        match self.spec {
            McKayI { mu, .. } => 2.0 * mu,
            McKayII { mu, .. } => 2.0 * mu + 1.0,
            GenMcKay { mu, nu, .. } => mu + nu - 1.0,
            SqMcKay { mu, .. } => 4.0 * mu,
            KDist { alpha, beta, .. } => alpha.min(beta) - 1.0,
            GIG { .. } => 10.0,
            GammaQuotient { alpha, .. } => alpha - 1.0,
            NoncentralChiSq { mu, .. } => 0.5 * mu - 1.0,
        }
    }

    /// Natural length scale of the density (roughly its mean).
    pub fn scale(&self) -> f64 {
        use DistSpec::*;
        match self.spec {
            McKayI { mu, a, b } => (2.0 * mu + 1.0).max(0.5) / (b - a),
            McKayII { mu, a, b } => (2.0 * mu + 2.0).max(0.5) / (b - a),
            GenMcKay { mu, nu, a, b } => (mu + nu).max(0.5) / (b - a),
            SqMcKay { mu, a, b } => (4.0 * mu + 1.0).max(0.5) / (b - 2.0 * a),
            KDist { mu, .. } => mu,
            GIG { mu, a, b } => ((b / a).sqrt()).max(mu.abs() / a).max(1e-300),
            GammaQuotient {
                alpha,
                beta,
                alpha0,
                beta0,
            } => alpha * beta0 / beta / alpha0.max(1.0),
            NoncentralChiSq { mu, lambda } => mu + lambda,
        }
    }

    /// Closed-form Laplace transform L(x) = ∫ e^{−xt} pdf(t) dt, x ≥ 0.
    pub fn laplace_closed(&self, x: f64) -> Result<f64> {
        use DistSpec::*;
        if !(x >= 0.0) || !x.is_finite() {
            return Err(domain("laplace_closed", format!("x = {x} must be non-negative")));
        }
        if let NoncentralChiSq { .. } = self.spec {
            return Err(Error::Unsupported("laplace_closed for ncchisq".into()));
        }
        if x == 0.0 {
            return Ok(1.0);
        }
        Ok(match self.spec {
            McKayI { mu, a, b } => ((b * b - a * a) / ((x + b).powi(2) - a * a)).powf(mu + 0.5),
            McKayII { mu, a, b } => (1.0 + x / b) * ((b * b - a * a) / ((x + b).powi(2) - a * a)).powf(mu + 1.5),
            GenMcKay { mu, nu, a, b } => {
                let p = mu + nu;
                let (h1, h2, c) = (0.5 * p, 0.5 * (p + 1.0), mu + 1.0);
                (p * (b / (x + b)).ln() + ln_2f1(h1, h2, c, (a / (x + b)).powi(2))?
                    - ln_2f1(h1, h2, c, (a / b).powi(2))?)
                .exp()
            }
            SqMcKay { mu, a, b } => {
                let (h1, h2, c) = (mu + 0.5, 2.0 * mu + 0.5, mu + 1.0);
                ((4.0 * mu + 1.0) * (b / (x + b)).ln() + ln_2f1(h1, h2, c, 4.0 * (a / (x + b)).powi(2))?
                    - ln_2f1(h1, h2, c, 4.0 * (a / b).powi(2))?)
                .exp()
            }
            KDist { alpha, beta, mu } => tricomi_psi_scaled(alpha, 1.0 + alpha - beta, alpha * beta / (mu * x))?,
            GIG { mu, a, b } => {
                let r = (b * (2.0 * x + a)).sqrt();
                (0.5 * mu * (a / (2.0 * x + a)).ln() + ln_bessel_k(mu, r)? - ln_bessel_k(mu, (a * b).sqrt())?).exp()
            }
            GammaQuotient {
                alpha,
                beta,
                alpha0,
                beta0,
            } => {
                let z = x * beta / beta0;
                let s = tricomi_psi_scaled(alpha, 1.0 - alpha0, z)?;
                (ln_gamma(alpha + alpha0)? - ln_gamma(alpha0)? - alpha * z.ln()).exp() * s
            }
            NoncentralChiSq { .. } => unreachable!(),
        })
    }

    /// −(d/dx) ln L(x) for x > 0.
    pub fn neg_logderiv_lt(&self, x: f64) -> Result<f64> {
        use DistSpec::*;
        check_x("neg_logderiv_lt", x)?;
        match self.spec {
            McKayI { mu, a, b } => Ok((mu + 0.5) * (1.0 / (x + b - a) + 1.0 / (x + b + a))),
            McKayII { mu, a, b } => {
                let y = x + b;
                Ok((mu + 1.0) / (y - a) + (mu + 1.0) / (y + a) + a * a / (y * (y - a) * (y + a)))
            }
            GenMcKay { mu, nu, a, b } => {
                let p = mu + nu;
                let y = x + b;
                let z = (a / y).powi(2);
                let r = gauss_2f1(0.5 * p + 1.0, 0.5 * p + 1.5, mu + 2.0, z)?
                    / gauss_2f1(0.5 * p, 0.5 * p + 0.5, mu + 1.0, z)?;
                Ok(p / y + a * a * p * (p + 1.0) / (2.0 * (mu + 1.0) * y.powi(3)) * r)
            }
            SqMcKay { mu, a, b } => {
                let y = x + b;
                let z = 4.0 * (a / y).powi(2);
                let r = gauss_2f1(mu + 1.5, 2.0 * mu + 1.5, mu + 2.0, z)?
                    / gauss_2f1(mu + 0.5, 2.0 * mu + 0.5, mu + 1.0, z)?;
                Ok((4.0 * mu + 1.0) / y + 8.0 * a * a * (mu + 0.5) * (2.0 * mu + 0.5) / ((mu + 1.0) * y.powi(3)) * r)
            }
            KDist { alpha, beta, mu } => kdist_neg_logderiv(alpha, beta, mu, x),
            GammaQuotient {
                alpha,
                beta,
                alpha0,
                beta0,
            } => {
                let z = x * beta / beta0;
                let c = 1.0 - alpha0;
                Ok(alpha / x * tricomi_psi_scaled(alpha + 1.0, c + 1.0, z)? / tricomi_psi_scaled(alpha, c, z)?)
            }
            GIG { .. } => richardson_logderiv(|t| self.laplace_closed(t), x),
            NoncentralChiSq { .. } => Err(Error::Unsupported("neg_logderiv_lt for ncchisq".into())),
        }
    }

    /// Im[φ′(s)/φ(s)] for the moment generating function φ(s) = L(−s) at
    /// s = s_re + i·s_im, s_im > 0.
    pub fn mgf_logderiv_im(&self, s_re: f64, s_im: f64) -> Result<f64> {
        use DistSpec::*;
        if !s_re.is_finite() || !s_im.is_finite() || s_im == 0.0 {
            return Err(domain(
                "mgf_logderiv_im",
                format!("need finite s with Im s != 0, got {s_re} + {s_im}i"),
            ));
        }
        // Schwarz reflection
        if s_im < 0.0 {
            return Ok(-self.mgf_logderiv_im(s_re, -s_im)?);
        }
        if s_im < MIN_IM {
            return Err(domain("mgf_logderiv_im", format!("Im s = {s_im} below {MIN_IM}")));
        }
        let (x, y) = (s_re, s_im);
        match self.spec {
            McKayI { mu, a, b } => {
                Ok((mu + 0.5) * (y / ((x + a - b).powi(2) + y * y) + y / ((x - a - b).powi(2) + y * y)))
            }
            KDist { alpha, beta, mu } => {
                if alpha == beta {
                    return Ok(kdist_mgf_logderiv_mixture(alpha, beta, mu, Complex64::new(x, y))?.im);
                }
                let a1 = alpha.min(beta);
                let k = alpha * beta / mu;
                let w = kdist_mixing_kernel(alpha, beta)?;
                let f = |t: f64| {
                    if t == 0.0 {
                        return 0.0;
                    }
                    let d = x - k / t;
                    a1 * y * w(t) / (d * d + y * y)
                };
                let mut br = vec![1.0];
                if x > 0.0 {
                    let t0 = k / x;
                    let half = (y / x).min(0.5);
                    br.extend([t0 * (1.0 - half), t0, t0 * (1.0 + half)]);
                }
                Ok(integrate_with_breaks(f, &br, PICK_TOL)?.value)
            }
            GammaQuotient {
                alpha,
                beta,
                alpha0,
                beta0,
            } => {
                let th = beta / beta0;
                let (a, c) = (alpha, 1.0 - alpha0);
                let lg = ln_gamma(a + 1.0)? + ln_gamma(a - c + 1.0)?;
                let w = tricomi_weight(a, c, lg);
                let (t0, h) = (th * x, th * y);
                let f = |t: f64| w(t) * a * th * h / ((t - t0).powi(2) + h * h);
                let mut br = vec![1.0];
                if t0 > 0.0 {
                    br.extend([(t0 - 5.0 * h).max(0.5 * t0), t0, t0 + 5.0 * h]);
                }
                Ok(integrate_with_breaks(f, &br, PICK_TOL)?.value)
            }
            _ => Err(Error::Unsupported(format!("mgf_logderiv_im for {}", self.spec.kind()))),
        }
    }

    /// f(uv)f(u/v) for v > 1 with v + 1/v = w.
    pub fn hcm_profile(&self, u: f64, w: f64) -> Result<f64> {
        check_x("hcm_profile", u)?;
        if !(w > 2.0) || !w.is_finite() {
            return Err(domain("hcm_profile", format!("w = {w} must exceed 2")));
        }
        if let DistSpec::GammaQuotient {
            alpha,
            beta,
            alpha0,
            beta0,
        } = self.spec
        {
            let th = beta0 / beta;
            let lc = -self.norm.log_value;
            let l =
                2.0 * lc + (2.0 * alpha - 2.0) * u.ln() - (alpha + alpha0) * (1.0 + (u * th).powi(2) + th * u * w).ln();
            return Ok(l.exp());
        }
        let v = 0.5 * (w + (w * w - 4.0).sqrt());
        Ok((self.log_pdf(u * v)? + self.log_pdf(u / v)?).exp())
    }
}

/// t ↦ t^{−c} e^{−t} |ψ(a, c, te^{iπ})|^{−2} e^{−lg}.
pub(crate) fn tricomi_weight(a: f64, c: f64, lg: f64) -> impl Fn(f64) -> f64 {
    move |t: f64| {
        // e^{−t} underflows past here
        if t == 0.0 || t > 740.0 {
            return 0.0;
        }
        let p = if c < 1.0 {
            tricomi_psi_boundary(a, c, t)
        } else {
            tricomi_psi_boundary_contour(a, c, t)
        };
        match p {
            Ok(p) => (-c * t.ln() - t - p.modulus_sq().ln() - lg).exp(),
            Err(_) => f64::NAN,
        }
    }
}

/// ω_{α,β}(t) = t^{β−α−1} e^{−t} |ψ(α, 1+α−β, te^{iπ})|^{−2} / (Γ(α+1)Γ(β)).
///
/// A probability density for α < β; for α > β its mass is β/α.
pub fn omega_kernel(alpha: f64, beta: f64) -> Result<impl Fn(f64) -> f64> {
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(domain(
            "omega_kernel",
            format!("need alpha, beta > 0, got {alpha}, {beta}"),
        ));
    }
    let lg = ln_gamma(alpha + 1.0)? + ln_gamma(beta)?;
    Ok(tricomi_weight(alpha, 1.0 + alpha - beta, lg))
}

/// Mixing density of the K-distribution log-derivative: ω_{α,β} with the
/// parameters ordered so that α < β (the transform is symmetric in them).
pub fn kdist_mixing_kernel(alpha: f64, beta: f64) -> Result<impl Fn(f64) -> f64> {
    if alpha == beta {
        return Err(domain(
            "kdist_mixing_kernel",
            "alpha = beta has no integrable kernel of this form",
        ));
    }
    omega_kernel(alpha.min(beta), alpha.max(beta))
}

fn kdist_neg_logderiv(alpha: f64, beta: f64, mu: f64, x: f64) -> Result<f64> {
    let k = alpha * beta / mu;
    if alpha == beta {
        // α/x·[1 − ψ̃(α+1, 2, z)/ψ̃(α, 1, z)] with ψ̃ = z^a ψ, z = κ/x
        let z = k / x;
        let r = tricomi_psi_scaled(alpha + 1.0, 2.0, z)? / tricomi_psi_scaled(alpha, 1.0, z)?;
        return Ok(alpha / x * (1.0 - r));
    }
    let a1 = alpha.min(beta);
    let w = kdist_mixing_kernel(alpha, beta)?;
    let f = |t: f64| if t == 0.0 { 0.0 } else { a1 * t * w(t) / (x * t + k) };
    Ok(exp_sinh(&f, 1.0, 1e-12)?.value)
}

/// φ′(s)/φ(s) for the K-distribution from its gamma mixture form:
/// φ(s) = E[(1 − sY/α)^{−α}], Y ~ Gamma(β, mean μ).
pub fn kdist_mgf_logderiv_mixture(alpha: f64, beta: f64, mu: f64, s: Complex64) -> Result<Complex64> {
    if !(s.im > 0.0) {
        return Err(domain("kdist_mgf_logderiv_mixture", "need Im s > 0"));
    }
    // The zero of 1 − sy/α sits at y = α/s, below the real axis; integrating
    // along the ray y = te^{iπ/6} keeps clear of it. Constant factors
    // (dy, Gamma normalization) cancel in the ratio.
    let rate = beta / mu;
    let rot = Complex64::from_polar(1.0, PI / 6.0);
    let m = |j: f64| {
        move |t: f64| -> Complex64 {
            if t == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let z = rot * t;
            ((beta - 1.0 + j) * z.ln() - rate * z - (alpha + j) * (1.0 - s * z / alpha).ln()).exp()
        }
    };
    let (v0, _) = exp_sinh_complex(&m(0.0), mu, 1e-13)?;
    let (v1, _) = exp_sinh_complex(&m(1.0), mu, 1e-13)?;
    Ok(v1 / v0)
}

/// −(ln L)′(x) by central differences of ln L with two Richardson levels,
/// starting step h = x·1e-3.
fn richardson_logderiv<L: Fn(f64) -> Result<f64>>(lt: L, x: f64) -> Result<f64> {
    let d = |h: f64| -> Result<f64> { Ok((lt(x + h)?.ln() - lt(x - h)?.ln()) / (2.0 * h)) };
    let h = x * 1e-3;
    let (d1, d2, d3) = (d(h)?, d(h / 2.0)?, d(h / 4.0)?);
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d3 - d2) / 3.0;
    Ok(-(16.0 * r2 - r1) / 15.0)
}
