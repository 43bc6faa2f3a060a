//! Numerical kernels for the Prabhakar function E^γ_{α,β}(z), the discrete
//! `ML(α, β, γ)` counting law it induces, and grid certification of the
//! Turán- and Laguerre-type inequalities built from it.
//!
//! The crate is organised bottom-up:
//!
//! - [`specfun`]: log-gamma, Pochhammer symbols, the Prabhakar series and
//!   its reductions, Kummer's ₁F₁ and the extended Hurwitz–Lerch zeta series,
//!   all sharing one truncation policy ([`EvalConfig`], [`SeriesResult`]).
//! - [`combinatorics`]: exact Stirling numbers and elementary symmetric
//!   polynomials used by the moment formulas.
//! - [`distribution`]: pmf/cdf, sampling, raw, factorial and fractional
//!   moments, and the characteristic function of `X ~ ML(α, β, γ)`.
//! - [`certify`]: margin checks for every bound and identity and a parallel
//!   grid sweep producing [`certify::CertificateReport`]s.
//!
//! Everything is a pure function of its inputs and safe to share across
//! threads.

pub mod certify;
pub mod combinatorics;
pub mod distribution;
mod error;
pub mod specfun;

pub use error::{Error, Result};
pub use specfun::{EvalConfig, MLParams, SeriesResult};
