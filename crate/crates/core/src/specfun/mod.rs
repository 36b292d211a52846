//! Real-valued special-function kernel.
//!
//! Regimes: ascending series / Temme series for small argument, Steed
//! continued fractions in between, Hankel asymptotics for large argument.
//! Switch points are carried by [`EvalPolicy`] so tests can exercise every
//! branch.

mod bessel;
mod gamma;
mod hyper;
mod tricomi;
mod zeros;

pub use bessel::{
    bessel_i, bessel_i_ratio, bessel_j, bessel_jy, bessel_k, bessel_k_ratio, bessel_y, hankel1_reduced, jy_modulus_sq,
    ln_bessel_i, ln_bessel_k,
};
pub use gamma::{cospi, gamma, ln_gamma, ln_gamma_abs, rgamma, sinpi};
pub use hyper::{gauss_2f1, kummer_m};
pub use tricomi::{tricomi_psi, tricomi_psi_boundary, tricomi_psi_boundary_contour, tricomi_psi_scaled, whittaker_w};
pub(crate) use zeros::zeros_any;
pub use zeros::{bessel_zero, bessel_zeros};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Accuracy and regime-switch settings for the series/asymptotic kernels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalPolicy {
    /// Relative stopping tolerance for series, in (0, 1e-6].
    pub rel_tol: f64,
    /// Term cap for hypergeometric series, at least 50.
    pub max_terms: usize,
    /// Argument beyond which Bessel evaluation uses Hankel asymptotics
    /// (the order condition `x > ν²` also has to hold).
    pub series_asymptotic_switch: f64,
}

impl Default for EvalPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_terms: 500,
            series_asymptotic_switch: 25.0,
        }
    }
}

impl EvalPolicy {
    pub fn new(rel_tol: f64, max_terms: usize, series_asymptotic_switch: f64) -> Result<Self> {
        let p = Self {
            rel_tol,
            max_terms,
            series_asymptotic_switch,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-6) {
            return Err(Error::Param(format!(
                "rel_tol must lie in (0, 1e-6], got {}",
                self.rel_tol
            )));
        }
        if self.max_terms < 50 {
            return Err(Error::Param(format!(
                "max_terms must be at least 50, got {}",
                self.max_terms
            )));
        }
        if !(self.series_asymptotic_switch > 0.0) {
            return Err(Error::Param("series_asymptotic_switch must be positive".into()));
        }
        Ok(())
    }
}

/// Boundary value ψ(a, c, t·e^{iπ}) split into real and imaginary parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPsiPair {
    pub re_part: f64,
    pub im_part: f64,
}

impl BoundaryPsiPair {
    pub fn modulus_sq(&self) -> f64 {
        self.re_part * self.re_part + self.im_part * self.im_part
    }
}
