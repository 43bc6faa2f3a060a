//! Exact integer kernels for converting between raw and factorial moments.
//!
//! All values are exact `u128`/`i128`; construction fails loudly on overflow
//! instead of wrapping.

use std::sync::OnceLock;

use crate::{Error, Result};

/// Highest moment order served by the shared table.
pub const MAX_ORDER: usize = 20;

/// Triangular table of Stirling numbers of the second kind `{s over j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    max_n: usize,
    rows: Vec<Vec<u128>>,
}

impl StirlingTable {
    /// Builds rows `0..=max_n` by `{s, j} = j {s-1, j} + {s-1, j-1}`.
    pub fn new(max_n: usize) -> Result<Self> {
        let mut rows: Vec<Vec<u128>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![1]);
        for s in 1..=max_n {
            let prev = &rows[s - 1];
            let mut row = vec![0u128; s + 1];
            for j in 1..=s {
                let stay = if j < s {
                    (j as u128)
                        .checked_mul(prev[j])
                        .ok_or_else(|| Error::Overflow(format!("Stirling row {s}")))?
                } else {
                    0
                };
                row[j] = stay
                    .checked_add(prev[j - 1])
                    .ok_or_else(|| Error::Overflow(format!("Stirling row {s}")))?;
            }
            rows.push(row);
        }
        Ok(Self { max_n, rows })
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn get(&self, s: usize, j: usize) -> Result<u128> {
        if s > self.max_n {
            return Err(Error::OutOfRange(format!("Stirling order {s} exceeds table size {}", self.max_n)));
        }
        if j > s {
            return Err(Error::OutOfRange(format!("Stirling index j = {j} exceeds s = {s}")));
        }
        Ok(self.rows[s][j])
    }

    pub fn row(&self, s: usize) -> Result<&[u128]> {
        self.rows
            .get(s)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::OutOfRange(format!("Stirling order {s} exceeds table size {}", self.max_n)))
    }
}

fn shared_table() -> &'static StirlingTable {
    static TABLE: OnceLock<StirlingTable> = OnceLock::new();
    TABLE.get_or_init(|| StirlingTable::new(MAX_ORDER).expect("u128 holds Stirling numbers up to order 20"))
}

/// `{s over j}` for `j ≤ s ≤ MAX_ORDER`.
pub fn stirling2(s: usize, j: usize) -> Result<u128> {
    shared_table().get(s, j)
}

/// Coefficients `e_0..e_{s-1}` of `Π_{j=1}^{s-1} (x + j)`, i.e. the elementary
/// symmetric polynomials of `{1, …, s-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricPolyVector {
    pub s: usize,
    pub e: Vec<i128>,
}

impl SymmetricPolyVector {
    /// Evaluates `Π_{j=1}^{s-1} (x + j) = Σ_r e_r x^{s-1-r}`.
    pub fn eval(&self, x: i128) -> Option<i128> {
        self.e
            .iter()
            .try_fold(0i128, |acc, &c| acc.checked_mul(x)?.checked_add(c))
    }
}

pub fn elementary_symmetric(s: usize) -> Result<SymmetricPolyVector> {
    if s == 0 {
        return Err(Error::domain("elementary_symmetric requires s ≥ 1"));
    }
    // coefficients of x^0..x^d, highest degree last
    let mut poly: Vec<i128> = vec![1];
    for j in 1..s {
        let j = j as i128;
        let mut next = vec![0i128; poly.len() + 1];
        for (r, &c) in poly.iter().enumerate() {
            next[r + 1] = next[r + 1]
                .checked_add(c)
                .ok_or_else(|| Error::Overflow(format!("symmetric polynomial s = {s}")))?;
            let scaled = c
                .checked_mul(j)
                .ok_or_else(|| Error::Overflow(format!("symmetric polynomial s = {s}")))?;
            next[r] = next[r]
                .checked_add(scaled)
                .ok_or_else(|| Error::Overflow(format!("symmetric polynomial s = {s}")))?;
        }
        poly = next;
    }
    // poly[d] is the coefficient of x^d; e_r multiplies x^{s-1-r}
    let e: Vec<i128> = poly.iter().rev().copied().collect();
    Ok(SymmetricPolyVector { s, e })
}

/// Coefficients `c_0..c_s` with `X(X−1)⋯(X−s+1) = Σ_r c_r X^r`.
///
/// These are the signed Stirling numbers of the first kind,
/// `c_r = (−1)^{s−r} e_{s−r}(1, …, s−1)`; `c_0 = 0` for `s ≥ 1`.
pub fn falling_factorial_expansion(s: usize) -> Result<Vec<i128>> {
    let sym = elementary_symmetric(s)?;
    let mut c = vec![0i128; s + 1];
    for (r, slot) in c.iter_mut().enumerate().skip(1) {
        let e = sym.e[s - r];
        *slot = if (s - r) % 2 == 0 { e } else { -e };
    }
    Ok(c)
}

/// `w_j = Σ_{r=j}^{s} c_r {r over j}`: the weight of the `j`-th raw-moment
/// basis term in the `s`-th factorial moment, contracted exactly.
pub(crate) fn factorial_moment_weights(s: usize) -> Result<Vec<i128>> {
    let c = falling_factorial_expansion(s)?;
    let table = shared_table();
    let mut w = vec![0i128; s + 1];
    for (j, slot) in w.iter_mut().enumerate() {
        let mut acc = 0i128;
        for (r, &cr) in c.iter().enumerate().skip(j.max(1)) {
            let st = i128::try_from(table.get(r, j)?).map_err(|_| Error::Overflow("Stirling value".into()))?;
            acc = cr
                .checked_mul(st)
                .and_then(|v| acc.checked_add(v))
                .ok_or_else(|| Error::Overflow(format!("factorial moment weights s = {s}")))?;
        }
        *slot = acc;
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u128, k: u128) -> u128 {
        (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
    }

    /// `(1/j!) Σ_m (−1)^{j−m} C(j,m) m^s`
    fn stirling2_alternating(s: u32, j: u32) -> i128 {
        let mut acc: i128 = 0;
        for m in 0..=j {
            let term = binom(j as u128, m as u128) as i128 * (m as i128).pow(s);
            if (j - m) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let jf: i128 = (1..=j as i128).product();
        assert_eq!(acc % jf, 0);
        acc / jf
    }

    /// Number of surjections-mod-relabelling: brute force over block labellings.
    fn count_set_partitions(n: usize, blocks: usize) -> u64 {
        // restricted growth strings
        fn go(i: usize, n: usize, max: usize, blocks: usize) -> u64 {
            if i == n {
                return u64::from(max == blocks);
            }
            (0..=max.min(blocks - 1))
                .map(|b| go(i + 1, n, max.max(b + 1), blocks))
                .sum()
        }
        go(0, n, 0, blocks)
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling2(3, 2).unwrap(), 3);
        assert_eq!(stirling2(5, 2).unwrap(), 15);
        for s in 0..=MAX_ORDER {
            assert_eq!(stirling2(s, s).unwrap(), 1);
        }
        assert_eq!(stirling2(0, 0).unwrap(), 1);
        assert_eq!(stirling2(4, 0).unwrap(), 0);
    }

    #[test]
    fn stirling_matches_explicit_sum() {
        for s in 0..=12u32 {
            for j in 0..=s {
                assert_eq!(stirling2(s as usize, j as usize).unwrap() as i128, stirling2_alternating(s, j));
            }
        }
    }

    #[test]
    fn stirling_matches_partition_count() {
        for n in 1..=8 {
            for k in 1..=n {
                assert_eq!(stirling2(n, k).unwrap() as u64, count_set_partitions(n, k));
            }
        }
    }

    #[test]
    fn row_sums_are_bell_numbers() {
        // Bell triangle
        let mut bell = vec![1u128];
        let mut row = vec![1u128];
        for _ in 1..=12 {
            let mut next = vec![*row.last().unwrap()];
            for &x in &row {
                let v = next.last().unwrap() + x;
                next.push(v);
            }
            bell.push(next[0]);
            row = next;
        }
        for (s, &b) in bell.iter().enumerate() {
            let sum: u128 = shared_table().row(s).unwrap().iter().sum();
            assert_eq!(sum, b, "s = {s}");
        }
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(stirling2(3, 4), Err(Error::OutOfRange(_))));
        assert!(matches!(stirling2(MAX_ORDER + 1, 1), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn large_tables_are_exact_or_refused() {
        let t = StirlingTable::new(40).unwrap();
        // {40 over 39} = C(40, 2)
        assert_eq!(t.get(40, 39).unwrap(), 780);
        assert!(matches!(StirlingTable::new(120), Err(Error::Overflow(_))));
    }

    #[test]
    fn symmetric_examples() {
        assert_eq!(elementary_symmetric(1).unwrap().e, vec![1]);
        assert_eq!(elementary_symmetric(3).unwrap().e, vec![1, 3, 2]);
        assert_eq!(elementary_symmetric(4).unwrap().e, vec![1, 6, 11, 6]);
        assert!(elementary_symmetric(0).is_err());
    }

    #[test]
    fn symmetric_invariants() {
        for s in 1..=20usize {
            let v = elementary_symmetric(s).unwrap();
            assert_eq!(v.e[0], 1);
            let fact: i128 = (1..s as i128).product();
            assert_eq!(v.e[s - 1], fact);
            // Σ_r e_r x^{s-1-r} = Π (x + j); at x = 1 both sides give s!
            let at1: i128 = v.e.iter().sum();
            assert_eq!(at1, (1..=s as i128).product::<i128>());
            // x = 2: Π_{j=1}^{s-1} (2 + j) = (s+1)!/2
            let at2: i128 = v.e.iter().enumerate().map(|(r, &c)| c * 2i128.pow((s - 1 - r) as u32)).sum();
            assert_eq!(at2, (1..=s as i128 + 1).product::<i128>() / 2);
        }
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial_expansion(1).unwrap(), vec![0, 1]);
        assert_eq!(falling_factorial_expansion(2).unwrap(), vec![0, -1, 1]);
        assert_eq!(falling_factorial_expansion(3).unwrap(), vec![0, 2, -3, 1]);
    }

    #[test]
    fn falling_factorial_reproduces_products() {
        for s in 1..=10usize {
            let c = falling_factorial_expansion(s).unwrap();
            for k in 0..=20i128 {
                let via_powers: i128 = c.iter().enumerate().map(|(r, &cr)| cr * k.pow(r as u32)).sum();
                let direct: i128 = (0..s as i128).map(|i| k - i).product();
                assert_eq!(via_powers, direct, "s = {s}, k = {k}");
            }
        }
    }

    #[test]
    fn stirling_duality_is_identity() {
        for s in 1..=10 {
            let w = factorial_moment_weights(s).unwrap();
            for (j, &wj) in w.iter().enumerate() {
                assert_eq!(wj, i128::from(j == s), "s = {s}, j = {j}");
            }
        }
    }

    #[test]
    fn symmetric_eval_helper() {
        let v = elementary_symmetric(4).unwrap();
        assert_eq!(v.eval(1), Some(24));
        assert_eq!(v.eval(2), Some(60));
        assert_eq!(elementary_symmetric(1).unwrap().eval(7), Some(1));
    }
}
