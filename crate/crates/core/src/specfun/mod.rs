//! Series evaluators for the special functions behind the distribution.
//!
//! Every evaluator returns a [`SeriesResult`] carrying the value, the number
//! of terms summed, an estimate of the discarded tail and a convergence flag.
//! A series that runs out of terms (see [`EvalConfig::max_terms`]) is never
//! reported as converged.
//!
//! No asymptotic expansions are used. With the default configuration the
//! Prabhakar series is usable for |z| up to roughly 100. Past that it reports
//! non-convergence or overflow instead of returning an inaccurate value.

mod gamma;
mod hlz;
mod kummer;
mod prabhakar;
pub(crate) mod series;

use serde::Serialize;

use crate::{Error, Result};

pub use gamma::{gamma, log_gamma, pochhammer};
pub(crate) use gamma::{ln_gamma, ln_pochhammer};
pub use hlz::{hlz_phi, ConvergenceRegion, HLZParams};
pub use kummer::kummer_1f1;
pub use prabhakar::{
    classical_ml, prabhakar_derivative, prabhakar_e, prabhakar_e_polar, two_param_ml,
};

/// Truncation controls shared by every series evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalConfig {
    rel_tol: f64,
    max_terms: usize,
}

impl EvalConfig {
    pub const DEFAULT_REL_TOL: f64 = 1e-13;
    pub const DEFAULT_MAX_TERMS: usize = 10_000;

    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(Error::domain(format!("rel_tol must lie in (0, 1), got {rel_tol}")));
        }
        if max_terms == 0 {
            return Err(Error::domain("max_terms must be at least 1"));
        }
        Ok(Self { rel_tol, max_terms })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            rel_tol: Self::DEFAULT_REL_TOL,
            max_terms: Self::DEFAULT_MAX_TERMS,
        }
    }
}

/// Outcome of a truncated series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesResult<T = f64> {
    pub value: T,
    pub terms_used: usize,
    /// Estimated magnitude of the discarded tail.
    pub tail_bound: f64,
    pub converged: bool,
}

impl<T> SeriesResult<T> {
    /// Turns a non-converged result into [`Error::NonConvergence`].
    pub fn require_converged(self, what: &str) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence {
                what: what.to_string(),
                terms: self.terms_used,
                tail_bound: self.tail_bound,
            })
        }
    }
}

impl SeriesResult<f64> {
    pub(crate) fn scaled(self, c: f64) -> Self {
        Self {
            value: self.value * c,
            tail_bound: self.tail_bound * c.abs(),
            ..self
        }
    }
}

/// The Prabhakar parameter triple `(α, β, γ)`, all strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MLParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl MLParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(format!("{name} must be a positive finite real, got {v}")));
            }
        }
        Ok(Self { alpha, beta, gamma })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `(α, β + dβ, γ + dγ)`; shifts are non-negative so validity is kept.
    pub fn shifted(&self, d_beta: f64, d_gamma: f64) -> Self {
        debug_assert!(d_beta >= 0.0 && d_gamma >= 0.0);
        Self {
            alpha: self.alpha,
            beta: self.beta + d_beta,
            gamma: self.gamma + d_gamma,
        }
    }
}

impl std::fmt::Display for MLParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(α={}, β={}, γ={})", self.alpha, self.beta, self.gamma)
    }
}
