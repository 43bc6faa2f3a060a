use super::gamma::is_nonpositive_integer;
use super::series::{k_ln, sum_series, Neumaier};
use super::{EvalConfig, SeriesResult};
use crate::{Error, Result};

/// Kummer's confluent hypergeometric function `₁F₁(a; b; z) = Σ (a)_k z^k / ((b)_k k!)`.
///
/// Rising factorials are accumulated as running log-magnitudes with explicit
/// signs, so any real `a` is accepted; `a = -n` terminates after `n + 1`
/// terms.
pub fn kummer_1f1(a: f64, b: f64, z: f64, cfg: &EvalConfig) -> Result<SeriesResult> {
    if !(a.is_finite() && b.is_finite() && z.is_finite()) {
        return Err(Error::domain("kummer_1f1: arguments must be finite"));
    }
    if is_nonpositive_integer(b) {
        return Err(Error::domain(format!(
            "kummer_1f1: b must not be a non-positive integer, got {b}"
        )));
    }
    let ln_z = z.abs().ln();
    let mut ln_coef = 0.0;
    let mut sign = 1.0;
    Ok(sum_series::<Neumaier, _>(cfg, |k| {
        if k > 0 {
            let j = (k - 1) as f64;
            let (fa, fb) = (a + j, b + j);
            if fa == 0.0 {
                ln_coef = f64::NEG_INFINITY;
            } else {
                ln_coef += fa.abs().ln() - fb.abs().ln() - (j + 1.0).ln();
            }
            if fa < 0.0 {
                sign = -sign;
            }
            if fb < 0.0 {
                sign = -sign;
            }
            if z < 0.0 {
                sign = -sign;
            }
        }
        (ln_coef + k_ln(k, ln_z), sign)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_sum_at_zero() {
        let r = kummer_1f1(2.5, 1.5, 0.0, &EvalConfig::default()).unwrap();
        assert_eq!(r.value, 1.0);
        assert!(r.converged);
    }

    #[test]
    fn exponential_reduction() {
        let r = kummer_1f1(1.0, 1.0, 1.0, &EvalConfig::default()).unwrap();
        assert!((r.value - std::f64::consts::E).abs() < 1e-13 * r.value);
        let tight = EvalConfig::new(1e-16, 100).unwrap();
        let r = kummer_1f1(1.0, 1.0, 1.0, &tight).unwrap();
        assert!((r.value - std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn thirty_term_partial_sums_bracket_value() {
        // direct partial sums with rational-style term recurrence
        let (a, b, z) = (2.0, 3.0, 0.5);
        let mut term = 1.0;
        let mut s30 = 0.0;
        for k in 0..30 {
            s30 += term;
            term *= (a + k as f64) / (b + k as f64) * z / (k as f64 + 1.0);
        }
        // all later terms are positive and ratio-bounded by z/…< 1/2
        let upper = s30 + term * 2.0;
        let r = kummer_1f1(a, b, z, &EvalConfig::new(1e-16, 100).unwrap()).unwrap();
        assert!(r.value >= s30 - 1e-15 && r.value <= upper + 1e-15);
        assert!((r.value - 1.405_114_917_199_487_4).abs() < 1e-14);
    }

    #[test]
    fn terminating_polynomial() {
        // ₁F₁(-2; b; z) = 1 - 2z/b + z²/(b(b+1))
        let (b, z) = (1.5, 0.7);
        let r = kummer_1f1(-2.0, b, z, &EvalConfig::default()).unwrap();
        assert!(r.converged);
        assert_eq!(r.terms_used, 3);
        let expect = 1.0 - 2.0 * z / b + z * z / (b * (b + 1.0));
        assert!((r.value - expect).abs() < 1e-15);
    }

    #[test]
    fn kummer_transformation_negative_z() {
        // ₁F₁(a; b; -z) = e^{-z} ₁F₁(b-a; b; z)
        let cfg = EvalConfig::default();
        let (a, b, z) = (0.7, 2.3, 2.0);
        let lhs = kummer_1f1(a, b, -z, &cfg).unwrap().value;
        let rhs = (-z).exp() * kummer_1f1(b - a, b, z, &cfg).unwrap().value;
        assert!(((lhs - rhs) / rhs).abs() < 1e-12);
    }

    #[test]
    fn rejects_pole_in_b() {
        assert!(kummer_1f1(1.0, 0.0, 1.0, &EvalConfig::default()).is_err());
        assert!(kummer_1f1(1.0, -3.0, 1.0, &EvalConfig::default()).is_err());
    }
}
