use std::sync::OnceLock;

use serde::Serialize;

use crate::specfun::gamma;

/// Lattice minimum `Γ_p = min_{n ≥ p} Γ(αn + β)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaMin {
    pub p: u32,
    pub value: f64,
    pub argmin_n: u64,
}

/// The positive minimiser of Γ, found once by golden-section search on `(1, 2)`.
///
/// Γ is flat at its minimum, so the abscissa is only resolved to roughly
/// `sqrt(ε)`; `Γ(t₀)` itself is accurate to machine precision.
pub fn t0() -> f64 {
    static T0: OnceLock<f64> = OnceLock::new();
    *T0.get_or_init(|| golden_section_min(gamma, 1.0, 2.0, 1e-12))
}

fn golden_section_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Since Γ is strictly convex on `(0, ∞)`, the lattice minimum sits at the
/// lattice point nearest `t₀` on one side or the other; only the rounded
/// index and its two neighbours need to be compared.
pub fn gamma_min(alpha: f64, beta: f64, p: u32) -> GammaMin {
    let p64 = u64::from(p);
    let centre = ((t0() - beta) / alpha).round();
    let centre = if centre.is_finite() && centre > p64 as f64 { centre as u64 } else { p64 };
    let lo = centre.saturating_sub(1).max(p64);
    let mut best = GammaMin {
        p,
        value: f64::INFINITY,
        argmin_n: lo,
    };
    for n in lo..=centre + 1 {
        let v = gamma(alpha * n as f64 + beta);
        if v < best.value {
            best.value = v;
            best.argmin_n = n;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t0_location() {
        assert!((t0() - 1.461_632_144_968_362_3).abs() < 1e-7);
        assert!((gamma(t0()) - 0.885_603_194_410_888_7).abs() < 1e-15);
    }

    #[test]
    fn examples() {
        let g = gamma_min(1.0, 1.0, 0);
        assert_eq!(g.value, 1.0);
        assert!(g.argmin_n <= 1);
        let g = gamma_min(1.0, 1.0, 2);
        assert_eq!((g.value, g.argmin_n), (2.0, 2));
        let g = gamma_min(0.5, 1.0, 0);
        assert!((g.value - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(g.argmin_n, 1);
    }

    #[test]
    fn large_beta_uses_lower_end() {
        let g = gamma_min(0.7, 3.5, 1);
        assert_eq!(g.argmin_n, 1);
        assert_eq!(g.value, gamma(4.2));
    }
}
