//! Pointwise margins for each certified claim.
//!
//! Every check returns a [`Margin`]: the signed slack `bound − quantity`
//! (or `−|residual|` for identities) together with the natural scale the
//! slack is judged against.

use serde::Serialize;

use super::gamma_min::{gamma_min, t0};
use crate::combinatorics::stirling2;
use crate::specfun::{gamma, hlz_phi, kummer_1f1, pochhammer, prabhakar_derivative, prabhakar_e, HLZParams};
use crate::{Error, EvalConfig, MLParams, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Margin {
    /// Signed slack; negative means the claim is violated at this point.
    pub value: f64,
    /// Positive magnitude the slack is measured against.
    pub scale: f64,
}

impl Margin {
    fn new(value: f64, scale: f64) -> Self {
        Self {
            value,
            scale: scale.abs(),
        }
    }

    /// `value / scale`; a zero scale leaves the absolute value.
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.value / self.scale
        } else {
            self.value
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Lemma1Bound {
    /// `E ≤ (1 − t^α)^{−γ} / Γ_0` for `t ∈ (0, 1)`.
    N10,
    /// `E ≤ ₁F₁(γ; β; t^α) / Γ(β)` for `α ≥ 1`, `β ≥ t₀`.
    N11,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Branch {
    /// Bounds built from lattice minima of Γ, valid for `t ∈ (0, 1)`.
    TIn01,
    /// Bounds built from Kummer functions, valid for `α ≥ 1`, `β ≥ t₀`.
    Kummer,
}

fn e(p: &MLParams, d_beta: f64, d_gamma: f64, z: f64, cfg: &EvalConfig) -> Result<f64> {
    Ok(prabhakar_e(&p.shifted(d_beta, d_gamma), z, cfg)
        .require_converged("Prabhakar series")?
        .value)
}

fn f11(a: f64, b: f64, z: f64, cfg: &EvalConfig) -> Result<f64> {
    Ok(kummer_1f1(a, b, z, cfg)?.require_converged("Kummer series")?.value)
}

fn require_unit_interval(t: f64) -> Result<()> {
    if t > 0.0 && t < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("hypothesis t ∈ (0, 1) violated: t = {t}")))
    }
}

fn require_kummer_hypothesis(p: &MLParams) -> Result<()> {
    if p.alpha() < 1.0 {
        return Err(Error::domain(format!("hypothesis α ≥ 1 violated: α = {}", p.alpha())));
    }
    if p.beta() < t0() {
        return Err(Error::domain(format!(
            "hypothesis β ≥ t₀ ≈ {:.6} violated: β = {}",
            t0(),
            p.beta()
        )));
    }
    Ok(())
}

fn require_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("time t must be a positive finite real, got {t}")))
    }
}

/// `Δ_T(t) = [E^{γ+1}_{α,α+β}]² − E^γ_{α,β} E^{γ+2}_{α,2α+β}`, all at `t^α`.
pub fn turan_difference(p: &MLParams, t: f64, cfg: &EvalConfig) -> Result<f64> {
    require_time(t)?;
    let z = t.powf(p.alpha());
    let a = p.alpha();
    let e1 = e(p, a, 1.0, z, cfg)?;
    let e0 = e(p, 0.0, 0.0, z, cfg)?;
    let e2 = e(p, 2.0 * a, 2.0, z, cfg)?;
    Ok(e1 * e1 - e0 * e2)
}

/// `E [E^{γ+1}_{α,α+β} + t^α E^{γ+2}_{α,2α+β}] − γ t^α Δ_T(t)`, scaled by the
/// left-hand side.
pub fn check_moment_ineq_n9(p: &MLParams, t: f64, cfg: &EvalConfig) -> Result<Margin> {
    require_time(t)?;
    let z = t.powf(p.alpha());
    let a = p.alpha();
    let e0 = e(p, 0.0, 0.0, z, cfg)?;
    let e1 = e(p, a, 1.0, z, cfg)?;
    let e2 = e(p, 2.0 * a, 2.0, z, cfg)?;
    let lhs = e0 * (e1 + z * e2);
    let rhs = p.gamma() * z * turan_difference(p, t, cfg)?;
    Ok(Margin::new(lhs - rhs, lhs))
}

pub fn check_lemma1_bounds(p: &MLParams, t: f64, which: Lemma1Bound, cfg: &EvalConfig) -> Result<Margin> {
    require_time(t)?;
    let z = t.powf(p.alpha());
    let bound = match which {
        Lemma1Bound::N10 => {
            require_unit_interval(t)?;
            let g0 = gamma_min(p.alpha(), p.beta(), 0).value;
            (1.0 - z).powf(-p.gamma()) / g0
        }
        Lemma1Bound::N11 => {
            require_kummer_hypothesis(p)?;
            f11(p.gamma(), p.beta(), z, cfg)? / gamma(p.beta())
        }
    };
    let value = e(p, 0.0, 0.0, z, cfg)?;
    Ok(Margin::new(bound - value, bound))
}

/// Upper bound on `Δ_T(t)` minus `Δ_T(t)`.
pub fn check_turan_bound_thm3(p: &MLParams, t: f64, branch: Branch, cfg: &EvalConfig) -> Result<Margin> {
    require_time(t)?;
    let (a, b, g) = (p.alpha(), p.beta(), p.gamma());
    let z = t.powf(a);
    let bound = match branch {
        Branch::TIn01 => {
            require_unit_interval(t)?;
            let g0 = gamma_min(a, b, 0).value;
            let g1 = gamma_min(a, b, 1).value;
            let g2 = gamma_min(a, b, 2).value;
            let w = 1.0 - z;
            (1.0 / g1 + z / (g2 * w)) / (g * g0 * z * w.powf(2.0 * g + 1.0))
        }
        Branch::Kummer => {
            require_kummer_hypothesis(p)?;
            let outer = f11(g, b, z, cfg)? / (g * gamma(b) * z);
            let first = f11(g + 1.0, a + b, z, cfg)? / gamma(a + b);
            let second = z * f11(g + 2.0, 2.0 * a + b, z, cfg)? / gamma(2.0 * a + b);
            outer * (first + second)
        }
    };
    let delta = turan_difference(p, t, cfg)?;
    Ok(Margin::new(bound - delta, bound))
}

/// `(E, E', E'')` of `E^γ_{α,β}` at `t` itself (the transformed variable).
fn e_with_derivatives(p: &MLParams, t: f64, cfg: &EvalConfig) -> Result<(f64, f64, f64)> {
    let e0 = prabhakar_e(p, t, cfg).require_converged("E")?.value;
    let d1 = prabhakar_derivative(p, t, 1, cfg)?.require_converged("E'")?.value;
    let d2 = prabhakar_derivative(p, t, 2, cfg)?.require_converged("E''")?.value;
    Ok((e0, d1, d2))
}

/// `Δ_L(t) = −t² (E')² + E (t E' + t² E'')` with `E = E^γ_{α,β}(t)`.
pub fn laguerre_difference(p: &MLParams, t: f64, cfg: &EvalConfig) -> Result<f64> {
    require_time(t)?;
    let (e0, d1, d2) = e_with_derivatives(p, t, cfg)?;
    Ok(-t * t * d1 * d1 + e0 * (t * d1 + t * t * d2))
}

/// Positivity of `Δ_L(t)`, measured against its largest constituent term.
pub fn check_laguerre(p: &MLParams, t: f64, cfg: &EvalConfig) -> Result<Margin> {
    require_time(t)?;
    let (e0, d1, d2) = e_with_derivatives(p, t, cfg)?;
    let square = t * t * d1 * d1;
    let rest = e0 * (t * d1 + t * t * d2);
    Ok(Margin::new(rest - square, square.max(rest)))
}

/// Upper bound on `Δ_L(t)` minus `Δ_L(t)`.
pub fn check_laguerre_bound_thm4(p: &MLParams, t: f64, branch: Branch, cfg: &EvalConfig) -> Result<Margin> {
    require_time(t)?;
    let (a, b, g) = (p.alpha(), p.beta(), p.gamma());
    let bound = match branch {
        Branch::TIn01 => {
            require_unit_interval(t)?;
            let g0 = gamma_min(a, b, 0).value;
            let g1 = gamma_min(a, b, 1).value;
            g / (g0 * g1 * t * (1.0 - t).powf(2.0 * g + 1.0))
        }
        Branch::Kummer => {
            require_kummer_hypothesis(p)?;
            g * f11(g, b, t, cfg)? * f11(g + 1.0, a + b, t, cfg)? / (t * gamma(b) * gamma(a + b))
        }
    };
    let delta = laguerre_difference(p, t, cfg)?;
    Ok(Margin::new(bound - delta, bound))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RecurrenceResiduals {
    pub residual1: f64,
    pub scale1: f64,
    pub residual2: f64,
    pub scale2: f64,
}

impl RecurrenceResiduals {
    /// `−max_i |residual_i| / scale_i`.
    pub fn margin(&self) -> Margin {
        let r1 = Margin::new(-self.residual1.abs(), self.scale1).relative();
        let r2 = Margin::new(-self.residual2.abs(), self.scale2).relative();
        Margin::new(r1.min(r2), 1.0)
    }
}

/// Residuals of the two three-term recurrences in `β`, each with the sum of
/// the absolute values of its terms as scale.
pub fn check_recurrences_prop2(p: &MLParams, t: f64, cfg: &EvalConfig) -> Result<RecurrenceResiduals> {
    require_time(t)?;
    let (a, b, g) = (p.alpha(), p.beta(), p.gamma());
    let e0 = e(p, 0.0, 0.0, t, cfg)?;
    let e_b1 = e(p, 1.0, 0.0, t, cfg)?;
    let e_b2 = e(p, 2.0, 0.0, t, cfg)?;

    let t1 = a * g * t * e(p, a + 1.0, 1.0, t, cfg)?;
    let t3 = b * e_b1;
    let residual1 = t1 - e0 + t3;

    let u1 = a * a * g * (g + 1.0) * t * t * e(p, 2.0 * a + 2.0, 2.0, t, cfg)?;
    let u3 = (a + 2.0 * b + 1.0) * e_b1;
    let u4 = (a + b + 1.0) * (b + 1.0) * e_b2;
    let residual2 = u1 - e0 + u3 - u4;

    Ok(RecurrenceResiduals {
        residual1,
        scale1: t1.abs() + e0.abs() + t3.abs(),
        residual2,
        scale2: u1.abs() + e0.abs() + u3.abs() + u4.abs(),
    })
}

/// Agreement of the Hurwitz–Lerch and Stirling-sum sides of the summation
/// formula for integer order `s ≥ 1`.
pub fn check_corollary1(p: &MLParams, t: f64, s: u32, cfg: &EvalConfig) -> Result<Margin> {
    require_time(t)?;
    if s == 0 {
        return Err(Error::domain("summation formula is certified for s ≥ 1 only"));
    }
    let (a, b, g) = (p.alpha(), p.beta(), p.gamma());
    let z = t.powf(a);
    let h = HLZParams::reduced(g + 1.0, a + b, 1.0, a, 1.0)?;
    let lhs = hlz_phi(&h, z, 1.0 - f64::from(s), cfg)?
        .require_converged("HLZ side")?
        .value;
    let mut sum = 0.0;
    for j in 0..=s as usize {
        let st = stirling2(s as usize, j)?;
        if st == 0 {
            continue;
        }
        let jf = j as f64;
        sum += pochhammer(g, jf)? * st as f64 * z.powi(j as i32) * e(p, a * jf, jf, z, cfg)?;
    }
    let rhs = gamma(a + b) / (g * z) * sum;
    Ok(Margin::new(-(lhs - rhs).abs(), lhs))
}

/// Consistency between the `N9` margin at `τ = t^{1/α}` and the derivative
/// form `E (E' + t E'') − t (E')²` at `t`: the latter equals `γ` times the
/// former identically.
pub fn check_remark3(p: &MLParams, t: f64, cfg: &EvalConfig) -> Result<Margin> {
    require_time(t)?;
    let (e0, d1, d2) = e_with_derivatives(p, t, cfg)?;
    let x2 = e0 * (d1 + t * d2) - t * d1 * d1;
    let scale = e0 * d1 + t * e0 * d2 + t * d1 * d1;
    let tau = t.powf(1.0 / p.alpha());
    let n9 = check_moment_ineq_n9(p, tau, cfg)?.value;
    Ok(Margin::new(-(x2 - p.gamma() * n9).abs(), scale))
}
