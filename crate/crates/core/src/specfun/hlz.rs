//! The extended Hurwitz–Lerch zeta series
//!
//! ```text
//! Φ^{(ρ,σ,κ)}_{λ,μ;ν}(z, s, a) = Σ_{n≥0} (λ)_{ρn} (μ)_{σn} / (n! (ν)_{κn}) · z^n / (n+a)^s
//! ```
//!
//! With `σ = 0` the `μ` factor drops out and this is `Φ^{(ρ,κ)}_{λ;ν}`.

use serde::Serialize;

use super::gamma::is_nonpositive_integer;
use super::series::{k_ln, sum_series, Neumaier};
use super::{ln_gamma, ln_pochhammer, EvalConfig, SeriesResult};
use crate::{Error, Result};

const EXPONENT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HLZParams {
    pub lambda: f64,
    /// Ignored when `sigma == 0`.
    pub mu: f64,
    pub nu: f64,
    pub rho: f64,
    pub sigma: f64,
    pub kappa: f64,
    pub a: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConvergenceRegion {
    /// `κ − ρ − σ + 1 > 0`: entire in `z`.
    AllZ,
    /// `κ − ρ − σ = −1` and `|z| < δ`.
    Disk,
    /// `κ − ρ − σ = −1`, `|z| = δ` and `s + ν − λ − μ > 1`.
    Boundary,
    Divergent,
}

impl HLZParams {
    /// The reduced two-parameter form `Φ^{(ρ,κ)}_{λ;ν}` (`σ = 0`).
    pub fn reduced(lambda: f64, nu: f64, rho: f64, kappa: f64, a: f64) -> Result<Self> {
        let h = Self {
            lambda,
            mu: 0.0,
            nu,
            rho,
            sigma: 0.0,
            kappa,
            a,
        };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.lambda, self.mu, self.nu, self.rho, self.sigma, self.kappa, self.a];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("HLZ parameters must be finite"));
        }
        if is_nonpositive_integer(self.nu) {
            return Err(Error::domain(format!("HLZ: ν must not be a non-positive integer, got {}", self.nu)));
        }
        if self.rho <= 0.0 {
            return Err(Error::domain(format!("HLZ: ρ must be positive, got {}", self.rho)));
        }
        if self.sigma < 0.0 {
            return Err(Error::domain(format!("HLZ: σ must be non-negative, got {}", self.sigma)));
        }
        if self.kappa <= 0.0 {
            return Err(Error::domain(format!("HLZ: κ must be positive, got {}", self.kappa)));
        }
        if self.a <= 0.0 {
            return Err(Error::domain(format!("HLZ: a must be positive, got {}", self.a)));
        }
        Ok(())
    }

    /// Radius `δ = ρ^{−ρ} σ^{−σ} κ^κ` of the disk case, reading `σ^{−σ}` as 1 at `σ = 0`.
    pub fn delta(&self) -> f64 {
        let sigma_factor = if self.sigma > 0.0 {
            self.sigma.powf(-self.sigma)
        } else {
            1.0
        };
        self.rho.powf(-self.rho) * sigma_factor * self.kappa.powf(self.kappa)
    }

    fn effective_mu(&self) -> f64 {
        if self.sigma > 0.0 {
            self.mu
        } else {
            0.0
        }
    }

    pub fn classify(&self, z: f64, s: f64) -> ConvergenceRegion {
        let excess = self.kappa - self.rho - self.sigma + 1.0;
        if excess > EXPONENT_EPS {
            return ConvergenceRegion::AllZ;
        }
        if excess.abs() > EXPONENT_EPS {
            return ConvergenceRegion::Divergent;
        }
        let delta = self.delta();
        let r = z.abs();
        if r < delta * (1.0 - EXPONENT_EPS) {
            ConvergenceRegion::Disk
        } else if r <= delta * (1.0 + EXPONENT_EPS)
            && s + self.nu - self.lambda - self.effective_mu() > 1.0
        {
            ConvergenceRegion::Boundary
        } else {
            ConvergenceRegion::Divergent
        }
    }

    fn explain_divergence(&self, z: f64, s: f64) -> String {
        let excess = self.kappa - self.rho - self.sigma + 1.0;
        if excess < -EXPONENT_EPS {
            return format!("κ − ρ − σ + 1 = {excess} < 0 (series has zero radius)");
        }
        let delta = self.delta();
        if z.abs() > delta * (1.0 + EXPONENT_EPS) {
            format!("κ − ρ − σ = −1 requires |z| ≤ δ = {delta}, got |z| = {}", z.abs())
        } else {
            format!(
                "on |z| = δ = {delta} the series needs s + ν − λ − μ > 1, got {}",
                s + self.nu - self.lambda - self.effective_mu()
            )
        }
    }
}

/// Evaluates the extended Hurwitz–Lerch zeta series at real `z` and `s`.
pub fn hlz_phi(h: &HLZParams, z: f64, s: f64, cfg: &EvalConfig) -> Result<SeriesResult> {
    h.validate()?;
    if !(z.is_finite() && s.is_finite()) {
        return Err(Error::domain("HLZ: z and s must be finite"));
    }
    if h.classify(z, s) == ConvergenceRegion::Divergent {
        return Err(Error::Domain(format!("HLZ series diverges: {}", h.explain_divergence(z, s))));
    }
    let ln_z = z.abs().ln();
    let use_mu = h.sigma > 0.0;
    let mut failure: Option<Error> = None;
    let res = sum_series::<Neumaier, _>(cfg, |n| {
        let nf = n as f64;
        let pieces = || -> Result<(f64, f64)> {
            let (l_lam, s_lam) = ln_pochhammer(h.lambda, h.rho * nf)?;
            let (l_mu, s_mu) = if use_mu {
                ln_pochhammer(h.mu, h.sigma * nf)?
            } else {
                (0.0, 1.0)
            };
            let (l_nu, s_nu) = ln_pochhammer(h.nu, h.kappa * nf)?;
            let ln_abs = l_lam + l_mu - l_nu - ln_gamma(nf + 1.0) + k_ln(n, ln_z) - s * (nf + h.a).ln();
            let z_sign = if z < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
            Ok((ln_abs, s_lam * s_mu * s_nu * z_sign))
        };
        match pieces() {
            Ok(t) => t,
            Err(e) => {
                failure.get_or_insert(e);
                (f64::NAN, 1.0)
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(res),
    }
}
