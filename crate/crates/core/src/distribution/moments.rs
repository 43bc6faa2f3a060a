use serde::Serialize;

use super::MLDistribution;
use crate::combinatorics::{factorial_moment_weights, falling_factorial_expansion, stirling2};
use crate::specfun::{hlz_phi, ln_gamma, pochhammer, prabhakar_e, HLZParams};
use crate::{Error, Result};

/// Largest integer moment order with exact Stirling coefficients.
pub const MAX_INTEGER_ORDER: u32 = crate::combinatorics::MAX_ORDER as u32;

/// Brute-force sums stop no earlier than this many terms.
const BRUTE_MIN_TERMS: u64 = 50;
const BRUTE_REL_CUTOFF: f64 = 1e-16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MomentMethod {
    /// Finite Stirling combination of shifted Prabhakar functions.
    ClosedFormN3,
    /// Extended Hurwitz–Lerch zeta representation, valid for real order.
    HlzN7,
    /// Direct summation against the pmf.
    BruteForce,
}

impl MomentMethod {
    pub fn tag(&self) -> &'static str {
        match self {
            MomentMethod::ClosedFormN3 => "CLOSED_FORM_N3",
            MomentMethod::HlzN7 => "HLZ_N7",
            MomentMethod::BruteForce => "BRUTE_FORCE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentResult {
    pub order: f64,
    pub value: f64,
    pub method: MomentMethod,
    /// Non-negative estimate of the absolute error, from series tails.
    pub est_error: f64,
}

impl MLDistribution {
    fn check_integer_order(s: u32) -> Result<()> {
        if s > MAX_INTEGER_ORDER {
            return Err(Error::domain(format!(
                "moment order {s} exceeds the exact Stirling range (≤ {MAX_INTEGER_ORDER})"
            )));
        }
        Ok(())
    }

    /// `Σ_j w_j (γ)_j z^j E^{γ+j}_{α,αj+β}(z) / E^γ_{α,β}(z)` over the non-zero
    /// integer weights `w_j`.
    fn stirling_combination(&self, weights: &[(usize, f64)], order: f64) -> Result<MomentResult> {
        let p = self.params;
        let norm = self.norm.value;
        let mut value = 0.0;
        let mut abs_err = 0.0;
        for &(j, w) in weights {
            let jf = j as f64;
            let basis = if j == 0 {
                self.norm
            } else {
                prabhakar_e(&p.shifted(p.alpha() * jf, jf), self.z, &self.cfg)
                    .require_converged("shifted Prabhakar function in moment formula")?
            };
            let coef = w * pochhammer(p.gamma(), jf)? * self.z.powi(j as i32);
            value += coef * basis.value;
            abs_err += (coef * basis.tail_bound).abs();
        }
        let value = value / norm;
        let est_error = abs_err / norm + value.abs() * self.norm.tail_bound / norm;
        Ok(MomentResult {
            order,
            value,
            method: MomentMethod::ClosedFormN3,
            est_error,
        })
    }

    /// Raw moment `E X^s` from the finite Stirling-number expansion.
    pub fn moment_raw(&self, s: u32) -> Result<MomentResult> {
        Self::check_integer_order(s)?;
        let s = s as usize;
        let mut weights = Vec::with_capacity(s + 1);
        for j in 0..=s {
            let st = stirling2(s, j)?;
            if st != 0 {
                weights.push((j, st as f64));
            }
        }
        self.stirling_combination(&weights, s as f64)
    }

    /// Factorial moment `Φ_s = E[X(X−1)⋯(X−s+1)]`.
    ///
    /// The falling-factorial coefficients are combined with the Stirling
    /// expansion of each raw moment in exact integer arithmetic before any
    /// floating-point work, so no cancellation between raw moments occurs.
    pub fn moment_factorial(&self, s: u32) -> Result<MomentResult> {
        if s == 0 {
            return Err(Error::domain("factorial moment order must be at least 1"));
        }
        Self::check_integer_order(s)?;
        let weights: Vec<(usize, f64)> = factorial_moment_weights(s as usize)?
            .into_iter()
            .enumerate()
            .filter(|&(_, w)| w != 0)
            .map(|(j, w)| (j, w as f64))
            .collect();
        self.stirling_combination(&weights, s as f64)
    }

    /// `Σ_r c_r E X^r` with floating-point raw moments. Kept for comparison;
    /// it loses every digit to cancellation when `t^α` is small.
    pub fn moment_factorial_via_raw(&self, s: u32) -> Result<MomentResult> {
        if s == 0 {
            return Err(Error::domain("factorial moment order must be at least 1"));
        }
        Self::check_integer_order(s)?;
        let c = falling_factorial_expansion(s as usize)?;
        let mut value = 0.0;
        let mut err = 0.0;
        for (r, &cr) in c.iter().enumerate().skip(1) {
            if cr == 0 {
                continue;
            }
            let m = self.moment_raw(r as u32)?;
            value += cr as f64 * m.value;
            err += (cr as f64).abs() * (m.est_error + m.value.abs() * f64::EPSILON);
        }
        Ok(MomentResult {
            order: s as f64,
            value,
            method: MomentMethod::ClosedFormN3,
            est_error: err,
        })
    }

    /// Real-order moment `E X^s`, `s > 0`, through
    /// `γ z Φ^{(1,α)}_{γ+1;α+β}(z, 1−s, 1) / (E^γ_{α,β}(z) Γ(α+β))`.
    pub fn moment_fractional(&self, s: f64) -> Result<MomentResult> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::domain(format!(
                "fractional moment order must be a positive finite real, got {s}"
            )));
        }
        let p = self.params;
        let h = HLZParams::reduced(p.gamma() + 1.0, p.alpha() + p.beta(), 1.0, p.alpha(), 1.0)?;
        let phi = hlz_phi(&h, self.z, 1.0 - s, &self.cfg)?.require_converged("HLZ series for fractional moment")?;
        let ln_prefactor = p.gamma().ln() + self.ln_z - self.ln_norm - ln_gamma(p.alpha() + p.beta());
        let prefactor = ln_prefactor.exp();
        let value = prefactor * phi.value;
        let est_error = prefactor * phi.tail_bound + value.abs() * self.norm.tail_bound / self.norm.value;
        Ok(MomentResult {
            order: s,
            value,
            method: MomentMethod::HlzN7,
            est_error,
        })
    }

    fn brute_force(&self, order: f64, weight: impl Fn(u64) -> f64) -> Result<MomentResult> {
        let max = self.cfg.max_terms() as u64;
        let mut sum = 0.0;
        let mut prev = 0.0;
        for k in 0..max {
            let term = weight(k) * self.pmf(k);
            sum += term;
            if k >= BRUTE_MIN_TERMS && term <= prev && term < BRUTE_REL_CUTOFF * sum {
                let r = if prev > 0.0 { term / prev } else { 0.0 };
                let tail = if r < 1.0 { term * r / (1.0 - r) } else { term };
                return Ok(MomentResult {
                    order,
                    value: sum,
                    method: MomentMethod::BruteForce,
                    est_error: tail,
                });
            }
            prev = term;
        }
        Err(Error::NonConvergence {
            what: "brute-force moment sum".into(),
            terms: max as usize,
            tail_bound: f64::INFINITY,
        })
    }

    /// `Σ_k k^s P(X = k)` for real `s ≥ 0` (with `0^0 = 1`).
    pub fn brute_force_power_moment(&self, s: f64) -> Result<MomentResult> {
        if !(s >= 0.0 && s.is_finite()) {
            return Err(Error::domain(format!("moment order must be a non-negative real, got {s}")));
        }
        self.brute_force(s, |k| if k == 0 && s == 0.0 { 1.0 } else { (k as f64).powf(s) })
    }

    /// `Σ_k k(k−1)⋯(k−s+1) P(X = k)`.
    pub fn brute_force_factorial_moment(&self, s: u32) -> Result<MomentResult> {
        self.brute_force(f64::from(s), |k| (0..u64::from(s)).map(|i| k as f64 - i as f64).product())
    }
}
