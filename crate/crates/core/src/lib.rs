//! Modified-Bessel probability distributions, Stieltjes-transform identities
//! and numerical infinite-divisibility checks.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`specfun`] | Gamma, Bessel J/Y/I/K, Bessel zeros, ₂F₁, Kummer M, Tricomi ψ, Whittaker W |
//! | [`quad`] | Gauss–Kronrod, double-exponential and oscillatory quadrature |
//! | [`distributions`] | Eight densities with normalizers and Laplace transforms |
//! | [`stieltjes`] | Catalog of Stieltjes representations with forward verification |
//! | [`idtests`] | CM ladders, Bernstein, self-decomposability, Pick, HCM, Landau constant |
//! | [`config`] | Key-value parameter and run-configuration parsing |
//!
//! Every check here is numerical evidence on a finite grid, not a proof.

pub mod config;
pub mod distributions;
pub mod error;
pub mod idtests;
pub mod quad;
pub mod specfun;
pub mod stieltjes;

pub use error::{Error, Result};
