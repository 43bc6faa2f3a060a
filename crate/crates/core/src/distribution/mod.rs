//! The discrete law `X ~ ML(α, β, γ)` at time `t`:
//!
//! ```text
//! P(X = k) = (γ)_k t^{αk} / (k! Γ(αk+β) E^γ_{α,β}(t^α)),   k = 0, 1, 2, …
//! ```
//!
//! The intensity is fixed to 1. A general intensity `λ` is recovered by
//! evaluating at time `λ^{1/α} t`.

mod moments;
mod sampling;

use num_complex::Complex64;

use crate::specfun::series::{sum_series, Accumulator, Neumaier};
use crate::specfun::{ln_gamma, prabhakar_derivative, prabhakar_e, prabhakar_e_polar};
use crate::{Error, EvalConfig, MLParams, Result, SeriesResult};

pub use moments::{MomentMethod, MomentResult, MAX_INTEGER_ORDER};

/// Tail mass the distribution must certify at its truncation point.
pub const NORMALIZATION_TAIL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct MLDistribution {
    params: MLParams,
    t: f64,
    /// `t^α`, the argument of every Prabhakar function in the model.
    z: f64,
    ln_z: f64,
    norm: SeriesResult,
    ln_norm: f64,
    ln_gamma_gamma: f64,
    cfg: EvalConfig,
}

impl MLDistribution {
    pub fn new(params: MLParams, t: f64, cfg: EvalConfig) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::domain(format!("time t must be a positive finite real, got {t}")));
        }
        let z = t.powf(params.alpha());
        let norm = prabhakar_e(&params, z, &cfg).require_converged("normalizer E^γ_{α,β}(t^α)")?;
        if !(norm.value > 0.0 && norm.value.is_finite()) {
            return Err(Error::domain(format!("normalizer is not a positive finite number: {}", norm.value)));
        }
        Ok(Self {
            params,
            t,
            z,
            ln_z: z.ln(),
            ln_norm: norm.value.ln(),
            norm,
            ln_gamma_gamma: ln_gamma(params.gamma()),
            cfg,
        })
    }

    pub fn params(&self) -> &MLParams {
        &self.params
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// `t^α`.
    pub fn time_power(&self) -> f64 {
        self.z
    }

    /// `E^γ_{α,β}(t^α)` together with its truncation data.
    pub fn normalizer(&self) -> &SeriesResult {
        &self.norm
    }

    pub fn config(&self) -> &EvalConfig {
        &self.cfg
    }

    /// `ln [(γ)_k z^k / (k! Γ(αk+β))]`, the unnormalised log-mass.
    fn ln_weight(&self, k: u64) -> f64 {
        let kf = k as f64;
        let p = &self.params;
        ln_gamma(p.gamma() + kf) - self.ln_gamma_gamma - ln_gamma(kf + 1.0) - ln_gamma(p.alpha() * kf + p.beta())
            + if k == 0 { 0.0 } else { kf * self.ln_z }
    }

    /// `P(X = k)`; underflows to 0 far in the tail.
    pub fn pmf(&self, k: u64) -> f64 {
        (self.ln_weight(k) - self.ln_norm).exp()
    }

    /// `P(X ≤ k)`, clamped to `[0, 1]`.
    pub fn cdf(&self, k: u64) -> f64 {
        let mut acc = Neumaier::default();
        let mut prev = f64::INFINITY;
        for j in 0..=k {
            let m = self.pmf(j);
            acc.add(m);
            // past the mode the masses only shrink; stop once they underflow
            if m == 0.0 && prev == 0.0 {
                break;
            }
            prev = m;
        }
        acc.total().clamp(0.0, 1.0)
    }

    /// `pmf(k) / pmf(k-1)` for `k ≥ 1`.
    pub(crate) fn mass_ratio(&self, k: u64) -> f64 {
        let kf = k as f64;
        let p = &self.params;
        let gamma_ratio = (ln_gamma(p.alpha() * (kf - 1.0) + p.beta()) - ln_gamma(p.alpha() * kf + p.beta())).exp();
        (p.gamma() + kf - 1.0) / kf * self.z * gamma_ratio
    }

    /// Smallest `K` such that `P(X > K) < eps`, certified by a geometric bound
    /// on the decreasing mass ratios beyond the mode.
    pub fn tail_cutoff(&self, eps: f64) -> Result<u64> {
        let max = self.cfg.max_terms() as u64;
        let mut mass = self.pmf(0);
        let mut prev_ratio = f64::INFINITY;
        for k in 1..=max {
            let r = self.mass_ratio(k);
            mass *= r;
            if k >= 2 && r < 1.0 && r <= prev_ratio {
                let tail = mass * r / (1.0 - r);
                if tail < eps {
                    return Ok(k);
                }
            }
            prev_ratio = r;
        }
        Err(Error::NonConvergence {
            what: format!("tail mass below {eps:e}"),
            terms: max as usize,
            tail_bound: f64::INFINITY,
        })
    }

    /// Alternative construction: reweight non-homogeneous Poisson(t^α) masses by
    /// `(γ)_k / Γ(αk+β)` and renormalise by direct summation.
    pub fn poisson_reweight_pmf(&self, k: u64) -> f64 {
        let p = self.params;
        let lam = self.z;
        let ln_lam = self.ln_z;
        let ln_reweighted = |n: usize| -> f64 {
            let nf = n as f64;
            let ln_poisson = -lam + if n == 0 { 0.0 } else { nf * ln_lam } - ln_gamma(nf + 1.0);
            let ln_factor = ln_gamma(p.gamma() + nf) - ln_gamma(p.gamma()) - ln_gamma(p.alpha() * nf + p.beta());
            ln_factor + ln_poisson
        };
        let denom = sum_series::<Neumaier, _>(&self.cfg, |n| (ln_reweighted(n), 1.0));
        (ln_reweighted(k as usize) - denom.value.ln()).exp()
    }

    /// Characteristic function `E[e^{ixX}] = E^γ_{α,β}(t^α e^{ix}) / E^γ_{α,β}(t^α)`.
    pub fn chf(&self, x: f64) -> Result<Complex64> {
        let num = prabhakar_e_polar(&self.params, self.z, x, &self.cfg).require_converged("CHF numerator")?;
        Ok(num.value / self.norm.value)
    }

    /// `(E X, E X²)` from the derivative identities
    /// `E X = z E'(z)/E(z)` and `E X² = (z E'(z) + z² E''(z))/E(z)` at `z = t^α`.
    pub fn chf_moments(&self) -> Result<(f64, f64)> {
        let d1 = prabhakar_derivative(&self.params, self.z, 1, &self.cfg)?.require_converged("E'")?;
        let d2 = prabhakar_derivative(&self.params, self.z, 2, &self.cfg)?.require_converged("E''")?;
        let e = self.norm.value;
        let first = self.z * d1.value / e;
        let second = (self.z * d1.value + self.z * self.z * d2.value) / e;
        Ok((first, second))
    }
}
