//! Stieltjes-transform identities F(z) = ∫₀^∞ k(t)/(z + t) dt.
//!
//! Each catalog entry carries a closed-form left-hand side, the kernel
//! density k, its oscillation profile and a tolerance class. Forward
//! verification integrates the kernel and compares with the closed form;
//! the inversion check recovers k from the boundary values of F on the cut.
//!
//! The Tricomi quotients other than the basic one have the shape
//! F(z) = c₀ + c₁z + ∫ z k(t)/(z + t) dt and are handled by the same code.
//! McDonald's product formula and the angular I-product integral are not
//! Stieltjes transforms; they sit in the catalog as plain integral
//! identities in the variable z.

use crate::distributions::tricomi_weight;
use crate::error::{domain, Error, Result};
use crate::quad::{
    exp_sinh, integrate_log_split, integrate_oscillatory, numeric_laplace_scaled, tanh_sinh, OscSpec, QuadResult,
};
use crate::specfun::{
    bessel_i, bessel_jy, bessel_k, cospi, hankel1_reduced, jy_modulus_sq, ln_gamma, sinpi, tricomi_psi,
    tricomi_psi_boundary, tricomi_psi_boundary_contour, tricomi_psi_scaled,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

type C = Complex64;

/// The catalog. Parameter names follow the formulas in the variant docs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id")]
pub enum IdentityId {
    /// e^{−a√z} z^{−μ/2} I_μ(a√z); kernel (1/π) t^{−μ/2} J_μ(a√t) sin(a√t).
    #[serde(rename = "I_EXP")]
    IExp { mu: f64, a: f64 },
    /// z^{(ν−μ)/2} I_μ(a√z) K_ν(b√z); kernel ½ t^{(ν−μ)/2} J_μ(a√t) J_ν(b√t).
    #[serde(rename = "IK_PROD")]
    IkProd { mu: f64, nu: f64, a: f64, b: f64 },
    /// 2 I_μ(√z) K_μ(√z); kernel J_μ²(√t).
    #[serde(rename = "IK_EQUAL")]
    IkEqual { mu: f64 },
    /// z^{(ν−μ)/2} e^{−a√z} I_μ(a√z) K_ν(b√z).
    #[serde(rename = "IK_EXP")]
    IkExp { mu: f64, nu: f64, a: f64, b: f64 },
    /// z^{(μ+ν)/2} K_μ(a√z) K_ν(b√z).
    #[serde(rename = "KK_PROD")]
    KkProd { mu: f64, nu: f64, a: f64, b: f64 },
    /// e^{−(a+b)√z} z^{−(μ+ν)/2} I_μ(a√z) I_ν(b√z).
    #[serde(rename = "II_EXP")]
    IiExp { mu: f64, nu: f64, a: f64, b: f64 },
    /// e^{−(a+b)√z} / (z^{(μ+ν)/2} K_μ(a√z) K_ν(b√z)).
    #[serde(rename = "KK_RECIP")]
    KkRecip { mu: f64, nu: f64, a: f64, b: f64 },
    /// z^{−(μ+ν)/2} e^{−(a+b)√z} I_μ(a√z) / K_ν(b√z).
    #[serde(rename = "IK_QUOT")]
    IkQuot { mu: f64, nu: f64, a: f64, b: f64 },
    /// z^{−ν/2} e^{−b√z} / K_ν(b√z).
    #[serde(rename = "K_RECIP")]
    KRecip { nu: f64, b: f64 },
    /// K_{μ−1}(√z) / (√z K_μ(√z)).
    #[serde(rename = "K_RATIO")]
    KRatio { mu: f64 },
    /// ψ(a+1, c+1, z)/ψ(a, c, z).
    #[serde(rename = "TRICOMI_RATIO")]
    TricomiRatio { a: f64, c: f64 },
    /// ψ(a, c−1, z)/ψ(a, c, z).
    #[serde(rename = "TRICOMI_Cm1")]
    TricomiCm1 { a: f64, c: f64 },
    /// ψ(a+1, c, z)/ψ(a, c, z).
    #[serde(rename = "TRICOMI_Ap1")]
    TricomiAp1 { a: f64, c: f64 },
    /// ψ(a, c+1, z)/ψ(a, c, z).
    #[serde(rename = "TRICOMI_Cp1")]
    TricomiCp1 { a: f64, c: f64 },
    /// ψ(a−1, c, z)/ψ(a, c, z).
    #[serde(rename = "TRICOMI_Am1")]
    TricomiAm1 { a: f64, c: f64 },
    /// K_μ(z) K_μ(y) = ½ ∫₀^∞ exp(−t/2 − (z² + y²)/(2t)) K_μ(zy/t) dt/t.
    #[serde(rename = "MCDONALD")]
    McDonald { mu: f64, y: f64 },
    /// I_μ(z) I_μ(b) as the angular integral over (0, π).
    #[serde(rename = "I_PRODUCT_ANGLE")]
    IProductAngle { mu: f64, b: f64 },
}

pub const CATALOG_NAMES: [&str; 17] = [
    "I_EXP",
    "IK_PROD",
    "IK_EQUAL",
    "IK_EXP",
    "KK_PROD",
    "II_EXP",
    "KK_RECIP",
    "IK_QUOT",
    "K_RECIP",
    "K_RATIO",
    "TRICOMI_RATIO",
    "TRICOMI_Cm1",
    "TRICOMI_Ap1",
    "TRICOMI_Cp1",
    "TRICOMI_Am1",
    "MCDONALD",
    "I_PRODUCT_ANGLE",
];

fn keys_of(name: &str) -> Option<&'static [&'static str]> {
    Some(match name {
        "I_EXP" => &["mu", "a"],
        "IK_PROD" | "IK_EXP" | "KK_PROD" | "II_EXP" | "KK_RECIP" | "IK_QUOT" => &["mu", "nu", "a", "b"],
        "IK_EQUAL" | "K_RATIO" => &["mu"],
        "K_RECIP" => &["nu", "b"],
        "TRICOMI_RATIO" | "TRICOMI_Cm1" | "TRICOMI_Ap1" | "TRICOMI_Cp1" | "TRICOMI_Am1" => &["a", "c"],
        "MCDONALD" => &["mu", "y"],
        "I_PRODUCT_ANGLE" => &["mu", "b"],
        _ => return None,
    })
}

impl IdentityId {
    pub fn name(&self) -> &'static str {
        use IdentityId::*;
        match self {
            IExp { .. } => "I_EXP",
            IkProd { .. } => "IK_PROD",
            IkEqual { .. } => "IK_EQUAL",
            IkExp { .. } => "IK_EXP",
            KkProd { .. } => "KK_PROD",
            IiExp { .. } => "II_EXP",
            KkRecip { .. } => "KK_RECIP",
            IkQuot { .. } => "IK_QUOT",
            KRecip { .. } => "K_RECIP",
            KRatio { .. } => "K_RATIO",
            TricomiRatio { .. } => "TRICOMI_RATIO",
            TricomiCm1 { .. } => "TRICOMI_Cm1",
            TricomiAp1 { .. } => "TRICOMI_Ap1",
            TricomiCp1 { .. } => "TRICOMI_Cp1",
            TricomiAm1 { .. } => "TRICOMI_Am1",
            McDonald { .. } => "MCDONALD",
            IProductAngle { .. } => "I_PRODUCT_ANGLE",
        }
    }

    /// Parameters in declaration order.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        use IdentityId::*;
        match *self {
            IExp { mu, a } => vec![("mu", mu), ("a", a)],
            IkProd { mu, nu, a, b }
            | IkExp { mu, nu, a, b }
            | KkProd { mu, nu, a, b }
            | IiExp { mu, nu, a, b }
            | KkRecip { mu, nu, a, b }
            | IkQuot { mu, nu, a, b } => vec![("mu", mu), ("nu", nu), ("a", a), ("b", b)],
            IkEqual { mu } | KRatio { mu } => vec![("mu", mu)],
            KRecip { nu, b } => vec![("nu", nu), ("b", b)],
            TricomiRatio { a, c }
            | TricomiCm1 { a, c }
            | TricomiAp1 { a, c }
            | TricomiCp1 { a, c }
            | TricomiAm1 { a, c } => {
                vec![("a", a), ("c", c)]
            }
            McDonald { mu, y } => vec![("mu", mu), ("y", y)],
            IProductAngle { mu, b } => vec![("mu", mu), ("b", b)],
        }
    }

    /// Builds an entry from its name and a complete key set.
    pub fn from_params(name: &str, p: &BTreeMap<String, f64>) -> Result<Self> {
        let keys = keys_of(name).ok_or_else(|| Error::Param(format!("unknown identity '{name}'")))?;
        for k in p.keys() {
            if !keys.contains(&k.as_str()) {
                return Err(Error::Param(format!("{name} has no parameter '{k}'")));
            }
        }
        let g = |k: &str| {
            p.get(k)
                .copied()
                .ok_or_else(|| Error::Param(format!("{name} needs parameter '{k}'")))
        };
        use IdentityId::*;
        Ok(match name {
            "I_EXP" => IExp {
                mu: g("mu")?,
                a: g("a")?,
            },
            "IK_PROD" => IkProd {
                mu: g("mu")?,
                nu: g("nu")?,
                a: g("a")?,
                b: g("b")?,
            },
            "IK_EQUAL" => IkEqual { mu: g("mu")? },
            "IK_EXP" => IkExp {
                mu: g("mu")?,
                nu: g("nu")?,
                a: g("a")?,
                b: g("b")?,
            },
            "KK_PROD" => KkProd {
                mu: g("mu")?,
                nu: g("nu")?,
                a: g("a")?,
                b: g("b")?,
            },
            "II_EXP" => IiExp {
                mu: g("mu")?,
                nu: g("nu")?,
                a: g("a")?,
                b: g("b")?,
            },
            "KK_RECIP" => KkRecip {
                mu: g("mu")?,
                nu: g("nu")?,
                a: g("a")?,
                b: g("b")?,
            },
            "IK_QUOT" => IkQuot {
                mu: g("mu")?,
                nu: g("nu")?,
                a: g("a")?,
                b: g("b")?,
            },
            "K_RECIP" => KRecip {
                nu: g("nu")?,
                b: g("b")?,
            },
            "K_RATIO" => KRatio { mu: g("mu")? },
            "TRICOMI_RATIO" => TricomiRatio { a: g("a")?, c: g("c")? },
            "TRICOMI_Cm1" => TricomiCm1 { a: g("a")?, c: g("c")? },
            "TRICOMI_Ap1" => TricomiAp1 { a: g("a")?, c: g("c")? },
            "TRICOMI_Cp1" => TricomiCp1 { a: g("a")?, c: g("c")? },
            "TRICOMI_Am1" => TricomiAm1 { a: g("a")?, c: g("c")? },
            "MCDONALD" => McDonald {
                mu: g("mu")?,
                y: g("y")?,
            },
            "I_PRODUCT_ANGLE" => IProductAngle {
                mu: g("mu")?,
                b: g("b")?,
            },
            _ => unreachable!(),
        })
    }

    /// One representative parameter set per entry, inside the proven domains.
    pub fn defaults() -> Vec<IdentityId> {
        use IdentityId::*;
        vec![
            IExp { mu: 1.0, a: 1.0 },
            IkProd {
                mu: 0.5,
                nu: 0.8,
                a: 1.0,
                b: 2.0,
            },
            IkEqual { mu: 0.0 },
            IkExp {
                mu: 1.0,
                nu: 0.5,
                a: 0.5,
                b: 1.0,
            },
            KkProd {
                mu: 0.5,
                nu: 0.75,
                a: 0.25,
                b: 0.5,
            },
            IiExp {
                mu: 1.0,
                nu: 0.5,
                a: 1.0,
                b: 2.0,
            },
            KkRecip {
                mu: 1.0,
                nu: 1.5,
                a: 1.0,
                b: 2.0,
            },
            IkQuot {
                mu: 1.0,
                nu: 1.5,
                a: 1.0,
                b: 2.0,
            },
            KRecip { nu: 1.5, b: 1.0 },
            KRatio { mu: 1.0 },
            TricomiRatio { a: 1.5, c: 0.5 },
            TricomiCm1 { a: 1.5, c: 0.5 },
            TricomiAp1 { a: 1.5, c: 0.5 },
            TricomiCp1 { a: 1.5, c: 0.5 },
            TricomiAm1 { a: 1.5, c: 0.5 },
            McDonald { mu: 0.3, y: 1.0 },
            IProductAngle { mu: 0.5, b: 1.0 },
        ]
    }

    fn is_tricomi(&self) -> bool {
        matches!(
            self,
            IdentityId::TricomiRatio { .. }
                | IdentityId::TricomiCm1 { .. }
                | IdentityId::TricomiAp1 { .. }
                | IdentityId::TricomiCp1 { .. }
                | IdentityId::TricomiAm1 { .. }
        )
    }

    /// True for the entries that are Stieltjes representations in z.
    pub fn is_stieltjes(&self) -> bool {
        !matches!(self, IdentityId::McDonald { .. } | IdentityId::IProductAngle { .. })
    }

    /// True for the Bessel representations whose inner Laplace transform is
    /// a density of an infinitely divisible law.
    pub fn has_laplace_density(&self) -> bool {
        self.is_stieltjes() && !self.is_tricomi()
    }

    /// Domain predicate. `extended` admits the wider IK_PROD conditions
    /// ν > −1, ν − μ < 2.
    pub fn check_domain(&self, extended: bool) -> Result<()> {
        use IdentityId::*;
        let bad = |why: &str| Err(Error::Param(format!("{} outside its domain: {why}", self.name())));
        for (k, v) in self.params() {
            if !v.is_finite() {
                return bad(&format!("{k} = {v}"));
            }
        }
        match *self {
            IExp { mu, a } => {
                if !(a > 0.0 && mu > -0.5) {
                    return bad("need a > 0, mu > -1/2");
                }
            }
            IkProd { mu, nu, a, b } => {
                if !(a > 0.0 && a <= b && mu > -1.0) {
                    return bad("need 0 < a <= b, mu > -1");
                }
                let ok = if extended {
                    nu > -1.0 && nu - mu < 2.0
                } else {
                    nu >= 0.0 && nu - mu < 1.0
                };
                if !ok {
                    return bad(if extended {
                        "need nu > -1, nu - mu < 2"
                    } else {
                        "need nu >= 0, nu - mu < 1"
                    });
                }
            }
            IkEqual { mu } => {
                if !(mu > -1.0) {
                    return bad("need mu > -1");
                }
            }
            IkExp { mu, nu, a, b } => {
                if !(a > 0.0 && b > 0.0 && mu > -1.0 && nu > -1.0) {
                    return bad("need a, b > 0, mu, nu > -1");
                }
            }
            KkProd { mu, nu, a, b } => {
                if !(a > 0.0 && b > 0.0 && mu >= 0.0 && nu >= 0.0) {
                    return bad("need a, b > 0, mu, nu >= 0");
                }
            }
            IiExp { mu, nu, a, b } => {
                if !(a > 0.0 && b > 0.0 && mu > -1.0 && nu > -1.0 && mu + nu > -1.0) {
                    return bad("need a, b > 0, mu, nu > -1, mu + nu > -1");
                }
            }
            KkRecip { mu, nu, a, b } => {
                if !(a > 0.0 && b > 0.0 && mu + nu > 1.0) {
                    return bad("need a, b > 0, mu + nu > 1");
                }
            }
            IkQuot { mu, nu, a, b } => {
                if !(a > 0.0 && b > 0.0 && mu > -1.0 && mu + nu > 0.0) {
                    return bad("need a, b > 0, mu > -1, mu + nu > 0");
                }
            }
            KRecip { nu, b } => {
                if !(b > 0.0 && nu > 0.5) {
                    return bad("need b > 0, nu > 1/2");
                }
            }
            KRatio { mu } => {
                if !(mu >= 0.0) {
                    return bad("need mu >= 0");
                }
            }
            TricomiRatio { a, c }
            | TricomiCm1 { a, c }
            | TricomiAp1 { a, c }
            | TricomiCp1 { a, c }
            | TricomiAm1 { a, c } => {
                if !(a > 0.0 && c < 1.0) {
                    return bad("need a > 0, c < 1");
                }
            }
            McDonald { y, .. } => {
                if !(y > 0.0) {
                    return bad("need y > 0");
                }
            }
            IProductAngle { mu, b } => {
                if !(mu > -0.5 && b > 0.0) {
                    return bad("need mu > -1/2, b > 0");
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        for (k, v) in self.params() {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

/// Accuracy class of an identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TolClass {
    /// 1e-7
    Tight,
    /// 1e-4: two oscillations over a [J² + Y²] denominator.
    Hard,
}

impl TolClass {
    pub fn value(self) -> f64 {
        match self {
            TolClass::Tight => 1e-7,
            TolClass::Hard => 1e-4,
        }
    }
}

/// How the right-hand side is assembled from the kernel:
/// `constant + linear·z + ∫ k(t) m(z, t) dt` with m = 1/(z+t) or z/(z+t).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RhsShape {
    pub constant: f64,
    pub linear: f64,
    pub z_weighted: bool,
}

impl RhsShape {
    const PLAIN: RhsShape = RhsShape {
        constant: 0.0,
        linear: 0.0,
        z_weighted: false,
    };
}

/// One validated identity with its quadrature profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub id: IdentityId,
    pub osc_spec: OscSpec,
    pub tol_class: TolClass,
    pub shape: RhsShape,
    /// Built under the wider, unproven IK_PROD conditions.
    pub exploratory: bool,
    /// Multiplies the kernel; 1 except in sensitivity checks.
    pub kernel_scale: f64,
    /// log Γ-normalization of the Tricomi kernels, 0 otherwise.
    #[serde(skip)]
    ln_norm: f64,
}

impl IdentityRecord {
    /// Entry under the proven conditions.
    pub fn new(id: IdentityId) -> Result<Self> {
        Self::build(id, false)
    }

    /// Entry under the wider conditions where they exist; results built from
    /// it are exploratory.
    pub fn new_extended(id: IdentityId) -> Result<Self> {
        let proven = id.check_domain(false).is_ok();
        let mut r = Self::build(id, true)?;
        r.exploratory = !proven;
        Ok(r)
    }

    fn build(id: IdentityId, extended: bool) -> Result<Self> {
        id.check_domain(extended)?;
        use IdentityId::*;
        let big = f64::MAX;
        let (osc_spec, tol_class) = match id {
            IExp { mu, a } => (OscSpec::new(&[a, 2.0 * a], 0.5, 0.5 * mu + 1.25), TolClass::Tight),
            IkProd { mu, nu, a, b } => (OscSpec::new(&[a, b], nu, 1.5 - 0.5 * (nu - mu)), TolClass::Tight),
            IkEqual { mu } => (OscSpec::new(&[1.0, 2.0], mu, 1.5), TolClass::Tight),
            IkExp { mu, nu, a, b } => (
                OscSpec::new(&[a, b, a + b], nu.min(0.5), 1.5 - 0.5 * (nu - mu)),
                TolClass::Tight,
            ),
            KkProd { mu, nu, a, b } => (
                OscSpec::new(&[a, b, a + b], mu.min(nu), 1.5 - 0.5 * (mu + nu)),
                TolClass::Tight,
            ),
            IiExp { mu, nu, a, b } => (
                OscSpec::new(&[a, b, a + b], 0.5, 1.5 + 0.5 * (mu + nu)),
                TolClass::Tight,
            ),
            KkRecip { mu, nu, .. } => (OscSpec::new(&[], 0.0, 0.5 * (mu + nu + 1.0)), TolClass::Hard),
            IkQuot { mu, nu, a, .. } => {
                let e = if nu >= 0.0 { nu.min(0.5) } else { -nu };
                (OscSpec::new(&[a, 2.0 * a], e, 1.0 + 0.5 * (mu + nu)), TolClass::Hard)
            }
            KRecip { nu, .. } => (OscSpec::new(&[], 0.5, 0.5 * nu + 0.75), TolClass::Tight),
            KRatio { mu } => (OscSpec::new(&[], (mu - 1.0).max(-0.99), 1.5), TolClass::Tight),
            TricomiRatio { c, .. }
            | TricomiCm1 { c, .. }
            | TricomiAp1 { c, .. }
            | TricomiCp1 { c, .. }
            | TricomiAm1 { c, .. } => (OscSpec::new(&[], -c, big), TolClass::Tight),
            McDonald { .. } | IProductAngle { .. } => (OscSpec::new(&[], 0.0, big), TolClass::Tight),
        };
        let (shape, ln_norm) = match id {
            TricomiRatio { a, c } => (RhsShape::PLAIN, ln_gamma(a + 1.0)? + ln_gamma(a - c + 1.0)?),
            TricomiCm1 { a, c } => (
                RhsShape {
                    constant: (1.0 - c) / (a - c + 1.0),
                    linear: 0.0,
                    z_weighted: true,
                },
                ln_gamma(a)? + ln_gamma(a - c + 2.0)?,
            ),
            TricomiAp1 { a, c } => (
                RhsShape {
                    constant: 1.0 / (a - c + 1.0),
                    linear: 0.0,
                    z_weighted: true,
                },
                ln_gamma(a + 1.0)? + ln_gamma(a - c + 2.0)?,
            ),
            TricomiCp1 { a, c } => (
                RhsShape {
                    constant: 1.0,
                    linear: 0.0,
                    z_weighted: false,
                },
                ln_gamma(a)? + ln_gamma(a - c + 1.0)?,
            ),
            TricomiAm1 { a, c } => (
                RhsShape {
                    constant: a - c,
                    linear: 1.0,
                    z_weighted: true,
                },
                ln_gamma(a)? + ln_gamma(a - c + 1.0)?,
            ),
            _ => (RhsShape::PLAIN, 0.0),
        };
        Ok(Self {
            id,
            osc_spec,
            tol_class,
            shape,
            exploratory: false,
            kernel_scale: 1.0,
            ln_norm,
        })
    }

    /// Copy with the kernel multiplied by `s`.
    pub fn with_kernel_scale(mut self, s: f64) -> Self {
        self.kernel_scale = s;
        self
    }
}

fn check_z(func: &'static str, z: f64) -> Result<()> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(domain(func, format!("z = {z} must be positive")));
    }
    Ok(())
}

fn ln_is(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_i(nu, x, true)?.ln())
}

fn ln_ks(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_k(nu, x, true)?.ln())
}

/// Closed-form left-hand side at z > 0 (scaled Bessel factors, log space).
pub fn lhs_value(rec: &IdentityRecord, z: f64) -> Result<f64> {
    check_z("lhs_value", z)?;
    let s = z.sqrt();
    let lz = z.ln();
    use IdentityId::*;
    let v = match rec.id {
        IExp { mu, a } => (-0.5 * mu * lz + ln_is(mu, a * s)?).exp(),
        IkProd { mu, nu, a, b } => (0.5 * (nu - mu) * lz + ln_is(mu, a * s)? + ln_ks(nu, b * s)? + (a - b) * s).exp(),
        IkEqual { mu } => 2.0 * (ln_is(mu, s)? + ln_ks(mu, s)?).exp(),
        IkExp { mu, nu, a, b } => (0.5 * (nu - mu) * lz + ln_is(mu, a * s)? + ln_ks(nu, b * s)? - b * s).exp(),
        KkProd { mu, nu, a, b } => (0.5 * (mu + nu) * lz + ln_ks(mu, a * s)? + ln_ks(nu, b * s)? - (a + b) * s).exp(),
        IiExp { mu, nu, a, b } => (-0.5 * (mu + nu) * lz + ln_is(mu, a * s)? + ln_is(nu, b * s)?).exp(),
        KkRecip { mu, nu, a, b } => (-0.5 * (mu + nu) * lz - ln_ks(mu, a * s)? - ln_ks(nu, b * s)?).exp(),
        IkQuot { mu, nu, a, b } => (-0.5 * (mu + nu) * lz + ln_is(mu, a * s)? - ln_ks(nu, b * s)?).exp(),
        KRecip { nu, b } => (-0.5 * nu * lz - ln_ks(nu, b * s)?).exp(),
        KRatio { mu } => (ln_ks(mu - 1.0, s)? - ln_ks(mu, s)? - 0.5 * lz).exp(),
        TricomiRatio { a, c } => tricomi_psi_scaled(a + 1.0, c + 1.0, z)? / (z * tricomi_psi_scaled(a, c, z)?),
        TricomiCm1 { a, c } => tricomi_psi_scaled(a, c - 1.0, z)? / tricomi_psi_scaled(a, c, z)?,
        TricomiAp1 { a, c } => tricomi_psi_scaled(a + 1.0, c, z)? / (z * tricomi_psi_scaled(a, c, z)?),
        TricomiCp1 { a, c } => tricomi_psi_scaled(a, c + 1.0, z)? / tricomi_psi_scaled(a, c, z)?,
        TricomiAm1 { a, c } => {
            if a > 1.0 {
                z * tricomi_psi_scaled(a - 1.0, c, z)? / tricomi_psi_scaled(a, c, z)?
            } else {
                tricomi_psi(a - 1.0, c, z)? / tricomi_psi(a, c, z)?
            }
        }
        McDonald { mu, y } => (ln_ks(mu, z)? + ln_ks(mu, y)? - z - y).exp(),
        IProductAngle { mu, b } => (ln_is(mu, z)? + ln_is(mu, b)? + z + b).exp(),
    };
    if !v.is_finite() {
        return Err(Error::Overflow("lhs_value"));
    }
    Ok(v)
}

/// t^p / h formed in log-polar form, so a huge h and a huge t^p cancel
/// before either overflows.
fn pow_div(p: f64, t: f64, h: C) -> C {
    let (m, arg) = h.to_polar();
    if !m.is_finite() || m == 0.0 {
        return C::new(0.0, 0.0);
    }
    C::from_polar((p * t.ln() - m.ln()).exp(), -arg)
}

/// t^p Re[e^{−ix}/conj(h_ν(y))] = t^p [J_ν(y)cos(x+y) + Y_ν(y)sin(x+y)]/[J_ν²(y) + Y_ν²(y)].
fn gamma_quot(p: f64, t: f64, nu: f64, x: f64, y: f64) -> f64 {
    (pow_div(p, t, hankel1_reduced(nu, y)).conj() * C::new(x.cos(), -x.sin())).re
}

fn kernel_raw(rec: &IdentityRecord, t: f64) -> Result<f64> {
    let r = t.sqrt();
    use IdentityId::*;
    let v = match rec.id {
        IExp { mu, a } => {
            let (j, _) = bessel_jy(mu, a * r)?;
            t.powf(-0.5 * mu) * j * (a * r).sin() / PI
        }
        IkProd { mu, nu, a, b } => {
            let (ja, _) = bessel_jy(mu, a * r)?;
            let (jb, _) = bessel_jy(nu, b * r)?;
            0.5 * t.powf(0.5 * (nu - mu)) * ja * jb
        }
        IkEqual { mu } => {
            let (j, _) = bessel_jy(mu, r)?;
            j * j
        }
        IkExp { mu, nu, a, b } => {
            let (ja, _) = bessel_jy(mu, a * r)?;
            // J_ν(y)cos x − Y_ν(y) sin x = Re[h_ν(y) e^{i(x+y)}]
            let h = hankel1_reduced(nu, b * r);
            let ph = (a + b) * r;
            let m = (h * C::new(ph.cos(), ph.sin())).re;
            0.5 * t.powf(0.5 * (nu - mu)) * ja * m
        }
        KkProd { mu, nu, a, b } => {
            // J_μ(x)Y_ν(y) + J_ν(y)Y_μ(x) = Im[H⁽¹⁾_μ(x) H⁽¹⁾_ν(y)]
            let h = hankel1_reduced(mu, a * r) * hankel1_reduced(nu, b * r);
            let ph = (a + b) * r;
            let m = (h * C::new(ph.cos(), ph.sin())).im;
            -0.25 * PI * t.powf(0.5 * (mu + nu)) * m
        }
        IiExp { mu, nu, a, b } => {
            let (ja, _) = bessel_jy(mu, a * r)?;
            let (jb, _) = bessel_jy(nu, b * r)?;
            t.powf(-0.5 * (mu + nu)) * ja * jb * ((a + b) * r).sin() / PI
        }
        KkRecip { mu, nu, a, b } => {
            // Γ_{μ,ν,a,b}(t) = −Im[1/(h_μ(a√t) h_ν(b√t))]
            let q =
                pow_div(-0.5 * mu, t, hankel1_reduced(mu, a * r)) * pow_div(-0.5 * nu, t, hankel1_reduced(nu, b * r));
            -4.0 / PI.powi(3) * q.im
        }
        IkQuot { mu, nu, a, b } => {
            let (ja, _) = bessel_jy(mu, a * r)?;
            -2.0 / (PI * PI) * t.powf(-0.5 * mu) * ja * gamma_quot(-0.5 * nu, t, nu, a * r, b * r)
        }
        KRecip { nu, b } => -2.0 / (PI * PI) * gamma_quot(-0.5 * nu, t, nu, 0.0, b * r),
        KRatio { mu } => 2.0 / (PI * PI) / (t * jy_modulus_sq(mu, r)),
        TricomiRatio { a, c } | TricomiCm1 { a, c } | TricomiCp1 { a, c } | TricomiAm1 { a, c } => {
            tricomi_weight(a, c, rec.ln_norm)(t)
        }
        TricomiAp1 { a, c } => -tricomi_weight(a, c, rec.ln_norm)(t),
        McDonald { .. } | IProductAngle { .. } => {
            return Err(Error::Unsupported(format!("{} has no Stieltjes kernel", rec.id.name())))
        }
    };
    if !v.is_finite() {
        // Y_ν overflow deep inside a bounded endpoint; the piece is below 1e-200
        if t < 1e-200 && rec.osc_spec.endpoint_exponent >= 0.0 {
            return Ok(0.0);
        }
        return Err(Error::Evaluation { at: t });
    }
    Ok(v * rec.kernel_scale)
}

/// The measure density k(t) of the representation (sign-indefinite).
pub fn kernel_density(rec: &IdentityRecord, t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(domain("kernel_density", format!("t = {t} must be positive")));
    }
    kernel_raw(rec, t)
}

/// Integrand of the right-hand side; evaluation failures become NaN so the
/// quadrature reports their location.
fn rhs_integrand(rec: &IdentityRecord, z: f64) -> impl Fn(f64) -> f64 + '_ {
    let zw = rec.shape.z_weighted;
    move |t: f64| {
        if t == 0.0 {
            return 0.0;
        }
        let m = if zw { z / (z + t) } else { 1.0 / (z + t) };
        match kernel_raw(rec, t) {
            Ok(k) => k * m,
            Err(_) => f64::NAN,
        }
    }
}

/// ∫₀^∞ f by splitting at 1: t = e^{−s} on (0, 1] and exp-sinh on the rest.
/// Log-singular ends like 1/(t ln²t) stay integrable in s.
fn integrate_kernel_form<F: Fn(f64) -> f64>(rec: &IdentityRecord, f: F, tol: f64) -> Result<QuadResult> {
    if rec.osc_spec.sqrt_argument_frequencies.is_empty() {
        integrate_log_split(f, 1.0, tol)
    } else {
        integrate_oscillatory(f, &rec.osc_spec, tol)
    }
}

fn angle_integral(mu: f64, z: f64, b: f64, tol: f64) -> Result<QuadResult> {
    // (zb/2)^μ/(√π Γ(μ+½)) ∫₀^π R^{−μ} I_μ(R) sin^{2μ}t dt, R² = (z−b)² + 4zb sin²(t/2)
    let lc = mu * (0.5 * z * b).ln() - 0.5 * PI.ln() - ln_gamma(mu + 0.5)?;
    let f = |t: f64, c: f64| -> f64 {
        let st = t.sin();
        let hs = (0.5 * t).sin();
        let hc = (0.5 * t).cos();
        // sin²(t/2) for t, cos²(t/2) for π − t
        let q = if c > 0.0 { hs * hs } else { hc * hc };
        let r = ((z - b) * (z - b) + 4.0 * z * b * q).sqrt();
        let lr = if r > 0.0 {
            match bessel_i(mu, r, true) {
                Ok(i) => i.ln() + r - mu * r.ln(),
                Err(_) => return f64::NAN,
            }
        } else {
            -mu * 2f64.ln() - ln_gamma(mu + 1.0).unwrap_or(f64::NAN)
        };
        (lc + lr + 2.0 * mu * st.ln()).exp()
    };
    let h1 = tanh_sinh(&|t: f64| f(t, 1.0), 0.0, 0.5 * PI, tol)?;
    let h2 = tanh_sinh(&|s: f64| f(s, -1.0), 0.0, 0.5 * PI, tol)?;
    Ok(QuadResult::new(
        h1.value + h2.value,
        h1.err_estimate + h2.err_estimate,
        h1.n_evals + h2.n_evals,
        tol,
    ))
}

fn mcdonald_integral(mu: f64, z: f64, y: f64, tol: f64) -> Result<QuadResult> {
    // ½ ∫ exp(−t/2 − (z+y)²/(2t)) ·e^{zy/t}K_μ(zy/t) dt/t
    let w = (z + y) * (z + y);
    let f = |t: f64| -> f64 {
        let e = -0.5 * t - 0.5 * w / t;
        if e < -745.0 {
            return 0.0;
        }
        match bessel_k(mu, z * y / t, true) {
            Ok(k) => 0.5 * (e + k.ln()).exp() / t,
            Err(_) => f64::NAN,
        }
    };
    exp_sinh(&f, z + y, tol)
}

/// Right-hand side at z: constant + linear·z + ∫ k(t) m(z,t) dt.
pub fn stieltjes_rhs(rec: &IdentityRecord, z: f64, tol: f64) -> Result<QuadResult> {
    check_z("stieltjes_rhs", z)?;
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::Param(format!("tolerance {tol} must be in (0, 1)")));
    }
    match rec.id {
        IdentityId::McDonald { mu, y } => {
            let r = mcdonald_integral(mu, z, y, tol)?;
            return Ok(QuadResult {
                value: r.value * rec.kernel_scale,
                ..r
            });
        }
        IdentityId::IProductAngle { mu, b } => {
            let r = angle_integral(mu, z, b, tol)?;
            return Ok(QuadResult {
                value: r.value * rec.kernel_scale,
                ..r
            });
        }
        _ => {}
    }
    let r = integrate_kernel_form(rec, rhs_integrand(rec, z), tol)?;
    let extra = rec.shape.constant + rec.shape.linear * z;
    Ok(QuadResult {
        value: r.value + extra,
        ..r
    })
}

/// |lhs − rhs| / max(|lhs|, 1e-300).
pub fn residual(rec: &IdentityRecord, z: f64, tol: f64) -> Result<f64> {
    Ok(verify_point(rec, z, tol)?.residual)
}

/// One forward-verification result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRow {
    pub entry_id: String,
    pub params: String,
    pub z: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub err_estimate: f64,
    pub n_evals: usize,
    pub converged: bool,
    pub tol_class: TolClass,
    pub exploratory: bool,
}

impl VerificationRow {
    pub const CSV_HEADER: &'static str = "entry_id,params,z,lhs,rhs,residual,err_estimate,n_evals,converged";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{:e},{:e},{:e},{:e},{:e},{},{}",
            self.entry_id,
            self.params,
            self.z,
            self.lhs,
            self.rhs,
            self.residual,
            self.err_estimate,
            self.n_evals,
            self.converged
        )
    }

    /// Residual within the entry's tolerance class.
    pub fn passes(&self) -> bool {
        self.residual <= self.tol_class.value()
    }

    /// Residual within `tol`.
    pub fn passes_with(&self, tol: f64) -> bool {
        self.residual <= tol
    }
}

fn params_string(id: &IdentityId) -> String {
    id.params()
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

/// lhs, rhs and residual at one z.
pub fn verify_point(rec: &IdentityRecord, z: f64, tol: f64) -> Result<VerificationRow> {
    let lhs = lhs_value(rec, z)?;
    let rhs = stieltjes_rhs(rec, z, tol)?;
    let residual = (lhs - rhs.value).abs() / lhs.abs().max(1e-300);
    Ok(VerificationRow {
        entry_id: rec.id.name().to_string(),
        params: params_string(&rec.id),
        z,
        lhs,
        rhs: rhs.value,
        residual,
        err_estimate: rhs.err_estimate,
        n_evals: rhs.n_evals,
        converged: rhs.converged,
        tol_class: rec.tol_class,
        exploratory: rec.exploratory,
    })
}

/// `n` log-spaced points on [lo, hi].
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (l0, l1) = (lo.ln(), hi.ln());
    let mut g: Vec<f64> = (0..n)
        .map(|i| (l0 + (l1 - l0) * i as f64 / (n - 1) as f64).exp())
        .collect();
    g[0] = lo;
    g[n - 1] = hi;
    g
}

/// Verifies every (record, z) pair on up to `threads` worker threads.
/// Rows come back ordered by record, then by z. The quadrature tolerance
/// for each record is a tenth of `tol_for(class)`.
pub fn verify_catalog(
    recs: &[IdentityRecord],
    zs: &[f64],
    tol_for: impl Fn(TolClass) -> f64 + Sync,
    threads: usize,
) -> Vec<(usize, f64, Result<VerificationRow>)> {
    let jobs: Vec<(usize, f64)> = recs
        .iter()
        .enumerate()
        .flat_map(|(i, _)| zs.iter().map(move |&z| (i, z)))
        .collect();
    let threads = threads.max(1).min(jobs.len().max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut out: Vec<(usize, usize, Result<VerificationRow>)> = std::thread::scope(|sc| {
        let handles: Vec<_> = (0..threads)
            .map(|_| {
                sc.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let j = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        if j >= jobs.len() {
                            break;
                        }
                        let (i, z) = jobs[j];
                        let rec = &recs[i];
                        let tol = 0.1 * tol_for(rec.tol_class);
                        local.push((j, i, verify_point(rec, z, tol)));
                    }
                    local
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("verification worker panicked"))
            .collect()
    });
    out.sort_by_key(|(j, _, _)| *j);
    out.into_iter().map(|(j, i, r)| (i, jobs[j].1, r)).collect()
}

/// Inner Laplace density g(s) = ∫₀^∞ e^{−st} k(t) dt.
pub fn laplace_density(rec: &IdentityRecord, s: f64, tol: f64) -> Result<QuadResult> {
    if !rec.id.has_laplace_density() {
        return Err(Error::Unsupported(format!("laplace_density for {}", rec.id.name())));
    }
    if !(s > 0.0) {
        return Err(domain("laplace_density", format!("s = {s} must be positive")));
    }
    let wmax = rec
        .osc_spec
        .sqrt_argument_frequencies
        .iter()
        .cloned()
        .fold(0.0, f64::max);
    let natural = if wmax > 0.0 { 1.0 / (wmax * wmax) } else { 1.0 };
    let k = |t: f64| kernel_raw(rec, t).unwrap_or(f64::NAN);
    numeric_laplace_scaled(k, s, rec.osc_spec.endpoint_exponent.max(-0.99), natural, tol)
}

/// Below this s the two-fold transform is folded back into one integral.
const FOLD_S: f64 = 0.1;

/// ∫₀^∞ e^{−zs} g(s) ds with g from [`laplace_density`] for s ≥ 0.1; the
/// piece s < 0.1 is ∫ k(t)(1 − e^{−(z+t)/10})/(z+t) dt by Fubini.
pub fn two_fold_laplace(rec: &IdentityRecord, z: f64, tol: f64) -> Result<QuadResult> {
    check_z("two_fold_laplace", z)?;
    if !rec.id.has_laplace_density() {
        return Err(Error::Unsupported(format!("two_fold_laplace for {}", rec.id.name())));
    }
    let inner_tol = tol * 1e-2;
    let outer = |sg: f64| -> f64 {
        let s = FOLD_S + sg;
        let e = -z * s;
        if e < -745.0 {
            return 0.0;
        }
        match laplace_density(rec, s, inner_tol) {
            Ok(g) => e.exp() * g.value,
            Err(_) => f64::NAN,
        }
    };
    let tail = exp_sinh(&outer, 1.0 / z, tol)?;
    let head_f = |t: f64| -> f64 {
        if t == 0.0 {
            return 0.0;
        }
        let w = -(-(z + t) * FOLD_S).exp_m1() / (z + t);
        match kernel_raw(rec, t) {
            Ok(k) => k * w,
            Err(_) => f64::NAN,
        }
    };
    let head = integrate_kernel_form(rec, head_f, tol)?;
    Ok(QuadResult::new(
        head.value + tail.value,
        head.err_estimate + tail.err_estimate,
        head.n_evals + tail.n_evals,
        tol,
    )
    .with("fold_s", FOLD_S))
}

fn cispi(x: f64) -> C {
    C::new(cospi(x), sinpi(x))
}

/// I_ν(ix) = e^{iνπ/2} J_ν(x).
fn i_cut(nu: f64, x: f64) -> Result<C> {
    Ok(cispi(0.5 * nu) * bessel_jy(nu, x)?.0)
}

/// K_ν(ix) = (π/2) e^{−iπ(ν+1)/2} (J_ν(x) − iY_ν(x)).
fn k_cut(nu: f64, x: f64) -> Result<C> {
    let (j, y) = bessel_jy(nu, x)?;
    Ok(cispi(-0.5 * (nu + 1.0)) * C::new(j, -y) * (0.5 * PI))
}

/// z^p at z = te^{iπ}.
fn pow_cut(t: f64, p: f64) -> C {
    cispi(p) * t.powf(p)
}

/// e^{−c√z} at z = te^{iπ}.
fn exp_cut(c: f64, t: f64) -> C {
    let x = c * t.sqrt();
    C::new(x.cos(), -x.sin())
}

fn psi_cut(a: f64, c: f64, t: f64) -> Result<C> {
    let p = if c < 1.0 {
        tricomi_psi_boundary(a, c, t)?
    } else {
        tricomi_psi_boundary_contour(a, c, t)?
    };
    Ok(C::new(p.re_part, p.im_part))
}

/// F(te^{iπ}), the boundary value of the left-hand side from the upper
/// half-plane, built from real J, Y and the Tricomi boundary pair.
pub fn boundary_value(rec: &IdentityRecord, t: f64) -> Result<C> {
    if !(t > 0.0) {
        return Err(domain("boundary_value", format!("t = {t} must be positive")));
    }
    let r = t.sqrt();
    use IdentityId::*;
    let v = match rec.id {
        IExp { mu, a } => exp_cut(a, t) * pow_cut(t, -0.5 * mu) * i_cut(mu, a * r)?,
        IkProd { mu, nu, a, b } => pow_cut(t, 0.5 * (nu - mu)) * i_cut(mu, a * r)? * k_cut(nu, b * r)?,
        IkEqual { mu } => i_cut(mu, r)? * k_cut(mu, r)? * 2.0,
        IkExp { mu, nu, a, b } => pow_cut(t, 0.5 * (nu - mu)) * exp_cut(a, t) * i_cut(mu, a * r)? * k_cut(nu, b * r)?,
        KkProd { mu, nu, a, b } => pow_cut(t, 0.5 * (mu + nu)) * k_cut(mu, a * r)? * k_cut(nu, b * r)?,
        IiExp { mu, nu, a, b } => {
            exp_cut(a + b, t) * pow_cut(t, -0.5 * (mu + nu)) * i_cut(mu, a * r)? * i_cut(nu, b * r)?
        }
        KkRecip { mu, nu, a, b } => {
            exp_cut(a + b, t) / (pow_cut(t, 0.5 * (mu + nu)) * k_cut(mu, a * r)? * k_cut(nu, b * r)?)
        }
        IkQuot { mu, nu, a, b } => {
            pow_cut(t, -0.5 * (mu + nu)) * exp_cut(a + b, t) * i_cut(mu, a * r)? / k_cut(nu, b * r)?
        }
        KRecip { nu, b } => pow_cut(t, -0.5 * nu) * exp_cut(b, t) / k_cut(nu, b * r)?,
        KRatio { mu } => k_cut(mu - 1.0, r)? / (C::new(0.0, r) * k_cut(mu, r)?),
        TricomiRatio { a, c }
        | TricomiCm1 { a, c }
        | TricomiAp1 { a, c }
        | TricomiCp1 { a, c }
        | TricomiAm1 { a, c } => {
            let rr = psi_cut(a + 1.0, c + 1.0, t)? / psi_cut(a, c, t)?;
            let z = -t;
            match rec.id {
                TricomiRatio { .. } => rr,
                TricomiCm1 { .. } => (rr * (a * z) + (1.0 - c)) / (a - c + 1.0),
                TricomiAp1 { .. } => (C::new(1.0, 0.0) - rr * z) / (a - c + 1.0),
                TricomiCp1 { .. } => rr * a + 1.0,
                _ => rr * (a * z) + (z - c + a),
            }
        }
        McDonald { .. } | IProductAngle { .. } => {
            return Err(Error::Unsupported(format!(
                "{} is not a Stieltjes transform",
                rec.id.name()
            )))
        }
    };
    Ok(v)
}

/// Jump [F(−t−iη) − F(−t+iη)]/(2πi) for each η of the ladder, then
/// Richardson-extrapolated to η = 0 and divided by −t for the z-weighted
/// shapes, so the result is comparable with [`kernel_density`].
///
/// Values off the cut come from the Taylor continuation
/// F(−t+iη) = B(t − iη) ≈ B − iηB′ − η²B″/2 of the boundary function
/// B(t) = F(te^{iπ}), with B′ and B″ by central differences.
pub fn inversion_check(rec: &IdentityRecord, t: f64, eta_ladder: &[f64]) -> Result<f64> {
    if eta_ladder.len() < 2 || eta_ladder.windows(2).any(|w| !(w[1] < w[0] && w[1] > 0.0)) {
        return Err(Error::Param(
            "eta ladder must be positive and strictly decreasing, length >= 2".into(),
        ));
    }
    let h = 1e-3 * t;
    let b0 = boundary_value(rec, t)?;
    let bp = boundary_value(rec, t + h)?;
    let bm = boundary_value(rec, t - h)?;
    let d1 = (bp - bm) / (2.0 * h);
    let d2 = (bp - b0 * 2.0 + bm) / (h * h);
    let mut row: Vec<f64> = eta_ladder
        .iter()
        .map(|&eta| {
            let up = b0 - C::new(0.0, eta) * d1 - d2 * (0.5 * eta * eta);
            // F(−t−iη) is the conjugate of F(−t+iη)
            (up.conj() - up).im / (2.0 * PI)
        })
        .collect();
    // error terms O(η), O(η²), … eliminated column by column
    let mut order = 1;
    while row.len() > 1 {
        row = row
            .windows(2)
            .zip(eta_ladder.windows(2))
            .map(|(v, e)| {
                let q = (e[0] / e[1]).powi(order);
                (q * v[1] - v[0]) / (q - 1.0)
            })
            .collect();
        order += 1;
    }
    let j = row[0];
    if !j.is_finite() {
        return Err(Error::Convergence {
            func: "inversion_check",
            msg: format!("non-finite jump at t = {t}"),
        });
    }
    Ok(if rec.shape.z_weighted { j / (-t) } else { j })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in IdentityId::defaults() {
            let m: BTreeMap<String, f64> = id.params().into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            assert_eq!(IdentityId::from_params(id.name(), &m).unwrap(), id);
        }
        assert_eq!(IdentityId::defaults().len(), CATALOG_NAMES.len());
    }

    #[test]
    fn domains_enforced() {
        let bad = IdentityId::IkProd {
            mu: 0.0,
            nu: 1.5,
            a: 1.0,
            b: 1.0,
        };
        assert!(IdentityRecord::new(bad).is_err());
        let r = IdentityRecord::new_extended(bad).unwrap();
        assert!(r.exploratory);
        assert!(IdentityRecord::new(IdentityId::KRecip { nu: 0.5, b: 1.0 }).is_err());
        assert!(IdentityRecord::new(IdentityId::TricomiRatio { a: 1.0, c: 1.0 }).is_err());
    }

    #[test]
    fn ik_equal_lhs() {
        let r = IdentityRecord::new(IdentityId::IkEqual { mu: 0.0 }).unwrap();
        let e = 2.0 * bessel_i(0.0, 1.0, false).unwrap() * bessel_k(0.0, 1.0, false).unwrap();
        assert!((lhs_value(&r, 1.0).unwrap() - e).abs() < 1e-14);
    }
}
