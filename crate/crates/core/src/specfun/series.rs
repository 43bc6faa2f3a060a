//! The shared truncation policy for every power series in the crate.
//!
//! Terms are supplied as `(ln |t_k|, unit_k)` where `unit_k` is a sign (real
//! series) or a unit phase (complex series). Summation is error-compensated.
//! The loop stops once
//!
//! ```text
//! |t_k| <= rel_tol * |S_k|,  r = |t_k| / |t_{k-1}| < 1,  |t_k| r / (1 - r) <= rel_tol * |S_k|
//! ```
//!
//! and the last quantity is reported as the tail bound. A term with
//! `ln |t_k| = -inf` is an exact zero and ends a terminating series.

use std::ops::Mul;

use num_complex::Complex64;

use super::{EvalConfig, SeriesResult};

/// Compensated running sum.
pub(crate) trait Accumulator: Default {
    type Value: Copy + Mul<f64, Output = Self::Value>;
    fn add(&mut self, x: Self::Value);
    fn total(&self) -> Self::Value;
    fn magnitude(&self) -> f64;
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Accumulator for Neumaier {
    type Value = f64;

    #[inline]
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }

    fn magnitude(&self) -> f64 {
        self.total().abs()
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct ComplexNeumaier {
    re: Neumaier,
    im: Neumaier,
}

impl Accumulator for ComplexNeumaier {
    type Value = Complex64;

    #[inline]
    fn add(&mut self, x: Complex64) {
        self.re.add(x.re);
        self.im.add(x.im);
    }

    fn total(&self) -> Complex64 {
        Complex64::new(self.re.total(), self.im.total())
    }

    fn magnitude(&self) -> f64 {
        self.total().norm()
    }
}

/// `k * ln|z|` with the convention `0 * ln 0 = 0`.
#[inline]
pub(crate) fn k_ln(k: usize, ln_abs_z: f64) -> f64 {
    if k == 0 {
        0.0
    } else {
        k as f64 * ln_abs_z
    }
}

pub(crate) fn sum_series<A, F>(cfg: &EvalConfig, mut term: F) -> SeriesResult<A::Value>
where
    A: Accumulator,
    F: FnMut(usize) -> (f64, A::Value),
{
    let tol = cfg.rel_tol();
    let mut acc = A::default();
    let mut prev_ln: Option<f64> = None;
    let mut last_ratio = f64::INFINITY;
    let mut last_mag = f64::INFINITY;

    for k in 0..cfg.max_terms() {
        let (ln_abs, unit) = term(k);
        if ln_abs == f64::NEG_INFINITY {
            return SeriesResult {
                value: acc.total(),
                terms_used: k,
                tail_bound: 0.0,
                converged: true,
            };
        }
        if ln_abs.is_nan() || ln_abs == f64::INFINITY {
            break;
        }
        let mag = ln_abs.exp();
        acc.add(unit * mag);
        let total_abs = acc.magnitude();
        if !total_abs.is_finite() {
            return SeriesResult {
                value: acc.total(),
                terms_used: k + 1,
                tail_bound: f64::INFINITY,
                converged: false,
            };
        }
        if let Some(p) = prev_ln {
            let r = (ln_abs - p).exp();
            last_ratio = r;
            if r < 1.0 && mag <= tol * total_abs {
                let tail = mag * r / (1.0 - r);
                if tail <= tol * total_abs {
                    return SeriesResult {
                        value: acc.total(),
                        terms_used: k + 1,
                        tail_bound: tail,
                        converged: true,
                    };
                }
            }
        }
        last_mag = mag;
        prev_ln = Some(ln_abs);
    }

    let tail_bound = if last_ratio < 1.0 {
        last_mag * last_ratio / (1.0 - last_ratio)
    } else {
        f64::INFINITY
    };
    SeriesResult {
        value: acc.total(),
        terms_used: cfg.max_terms(),
        tail_bound,
        converged: false,
    }
}
