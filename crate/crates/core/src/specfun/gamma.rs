//! Gamma-function plumbing and Pochhammer symbols.

use crate::{Error, Result};

/// `ln Γ(x)` for `x > 0`.
///
/// Backed by the fdlibm-derived `lgamma_r` from `libm`, which is accurate to
/// about one ulp of the result across the positive axis.
pub fn log_gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain(format!("log_gamma requires x > 0, got {x}")));
    }
    Ok(ln_gamma(x))
}

/// Unchecked `ln |Γ(x)|`; callers guarantee `x > 0` or accept the `|·|`.
#[inline]
pub(crate) fn ln_gamma(x: f64) -> f64 {
    libm::lgamma_r(x).0
}

/// `Γ(x)`. Overflows to `+inf` beyond x ≈ 171.6.
#[inline]
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

fn as_small_count(mu: f64) -> Option<u64> {
    (mu >= 0.0 && mu.fract() == 0.0 && mu <= 1e9).then_some(mu as u64)
}

/// Generalized Pochhammer symbol `(λ)_μ = Γ(λ+μ)/Γ(λ)`.
///
/// `(λ)_0 = 1` for every `λ`, including the conventional `(0)_0 = 1`. For a
/// non-negative integer `μ = n` and `λ ≤ 0` (or small `n`) the rising product
/// `λ(λ+1)⋯(λ+n-1)` is used, which is valid at the poles of Γ. Otherwise the
/// value is the Γ ratio and both arguments must avoid non-positive integers.
pub fn pochhammer(lambda: f64, mu: f64) -> Result<f64> {
    if lambda.is_nan() || mu.is_nan() {
        return Err(Error::domain("pochhammer: NaN argument"));
    }
    if mu == 0.0 {
        return Ok(1.0);
    }
    if let Some(n) = as_small_count(mu) {
        if lambda <= 0.0 || n <= 64 {
            return Ok((0..n).map(|j| lambda + j as f64).product());
        }
    }
    let (ln_abs, sign) = ln_pochhammer(lambda, mu)?;
    Ok(sign * ln_abs.exp())
}

/// `(ln |(λ)_μ|, sign (λ)_μ)`. A zero value is reported as `(-inf, 1)`.
pub(crate) fn ln_pochhammer(lambda: f64, mu: f64) -> Result<(f64, f64)> {
    if mu == 0.0 {
        return Ok((0.0, 1.0));
    }
    if lambda > 0.0 && lambda + mu > 0.0 {
        return Ok((ln_gamma(lambda + mu) - ln_gamma(lambda), 1.0));
    }
    if let Some(n) = as_small_count(mu) {
        let mut ln_abs = 0.0;
        let mut sign = 1.0;
        for j in 0..n {
            let f = lambda + j as f64;
            if f == 0.0 {
                return Ok((f64::NEG_INFINITY, 1.0));
            }
            ln_abs += f.abs().ln();
            if f < 0.0 {
                sign = -sign;
            }
        }
        return Ok((ln_abs, sign));
    }
    if is_nonpositive_integer(lambda) {
        return Err(Error::domain(format!(
            "pochhammer({lambda}, {mu}): Γ(λ) has a pole at λ = {lambda}"
        )));
    }
    if is_nonpositive_integer(lambda + mu) {
        return Err(Error::domain(format!(
            "pochhammer({lambda}, {mu}): Γ(λ+μ) has a pole at λ+μ = {}",
            lambda + mu
        )));
    }
    let (num, s_num) = libm::lgamma_r(lambda + mu);
    let (den, s_den) = libm::lgamma_r(lambda);
    Ok((num - den, f64::from(s_num * s_den)))
}
