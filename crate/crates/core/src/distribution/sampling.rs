use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::MLDistribution;
use crate::Result;

/// Tail mass allowed beyond the sampler's search cap.
pub const SAMPLING_TAIL: f64 = 1e-12;

impl MLDistribution {
    /// `n` independent draws by inverse-CDF search, deterministic in `seed`.
    ///
    /// The masses are generated on the fly from the running product of
    /// consecutive mass ratios. The search stops at a cap `K` with
    /// `P(X > K) < 1e-12`; if no such cap exists within `max_terms`, this
    /// returns an error instead of sampling with a biased truncation.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<u64>> {
        if n == 0 {
            return Ok(Vec::new());
        }
        let cap = self.tail_cutoff(SAMPLING_TAIL)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p0 = self.pmf(0);
        let draws = (0..n)
            .map(|_| {
                let u: f64 = rng.random();
                let mut k = 0u64;
                let mut mass = p0;
                let mut cdf = p0;
                while cdf < u && k < cap {
                    k += 1;
                    mass *= self.mass_ratio(k);
                    cdf += mass;
                }
                k
            })
            .collect();
        Ok(draws)
    }
}

#[cfg(test)]
mod tests {
    use crate::distribution::MLDistribution;
    use crate::{EvalConfig, MLParams};

    fn dist(a: f64, b: f64, g: f64, t: f64) -> MLDistribution {
        MLDistribution::new(MLParams::new(a, b, g).unwrap(), t, EvalConfig::default()).unwrap()
    }

    #[test]
    fn empty_request() {
        assert!(dist(1.0, 1.0, 1.0, 2.0).sample(0, 1).unwrap().is_empty());
    }

    #[test]
    fn deterministic_in_seed() {
        let d = dist(0.8, 1.2, 2.0, 1.0);
        assert_eq!(d.sample(500, 7).unwrap(), d.sample(500, 7).unwrap());
        assert_ne!(d.sample(500, 7).unwrap(), d.sample(500, 8).unwrap());
    }

    #[test]
    fn small_poisson_mean() {
        let d = dist(1.0, 1.0, 1.0, 2.0);
        let n = 100_000;
        let xs = d.sample(n, 42).unwrap();
        let mean = xs.iter().sum::<u64>() as f64 / n as f64;
        let se = (2.0 / n as f64).sqrt();
        assert!((mean - 2.0).abs() < 4.0 * se, "mean {mean}");
    }

    #[test]
    fn cap_failure_is_an_error() {
        let d = MLDistribution::new(
            MLParams::new(1.0, 1.0, 1.0).unwrap(),
            30.0,
            EvalConfig::new(1e-13, 500).unwrap(),
        )
        .unwrap();
        let tight = MLDistribution::new(*d.params(), 30.0, EvalConfig::new(1e-13, 40).unwrap());
        // the normaliser itself already needs more than 40 terms
        assert!(tight.is_err());
        assert!(d.sample(10, 1).is_ok());
    }
}
