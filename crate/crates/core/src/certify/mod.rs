//! Grid-sweep verification of the moment inequality, the two-sided bounds
//! on `E^γ_{α,β}`, the Turán and Laguerre differences with their upper
//! bounds, the `β`-recurrences and the Hurwitz–Lerch summation formula.
//!
//! A sweep evaluates each [`Claim`] at every point of a [`GridSpec`] that
//! satisfies the claim's hypotheses, in parallel, and folds the signed
//! relative margins into one [`CertificateReport`] per claim.

mod checks;
mod gamma_min;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

pub use checks::{
    check_corollary1, check_laguerre, check_laguerre_bound_thm4, check_lemma1_bounds, check_moment_ineq_n9,
    check_recurrences_prop2, check_remark3, check_turan_bound_thm3, laguerre_difference, turan_difference, Branch,
    Lemma1Bound, Margin, RecurrenceResiduals,
};
pub use gamma_min::{gamma_min, t0, GammaMin};

use crate::{Error, EvalConfig, MLParams, Result};

/// Points closer than this to `t = 1` are dropped by [`ConstraintFilter::TIn01`].
pub const UNIT_INTERVAL_GAP: f64 = 1e-3;
/// Relative tolerance for the `β`-recurrences.
pub const RECURRENCE_TOL: f64 = 1e-10;
/// Relative tolerance for the summation formula and the `N9`/derivative equivalence.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Integer orders exercised by the summation-formula claim.
pub const COROLLARY_ORDERS: [u32; 3] = [1, 2, 3];

/// `steps` equally spaced values from `lo` to `hi` inclusive; one step means
/// the single value `lo`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(lo: f64, hi: f64, steps: usize) -> Result<Self> {
        let axis = Self { lo, hi, steps };
        axis.validate("axis")?;
        Ok(axis)
    }

    pub fn point(value: f64) -> Self {
        Self {
            lo: value,
            hi: value,
            steps: 1,
        }
    }

    fn validate(&self, name: &str) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::domain(format!("{name}: steps must be at least 1")));
        }
        if !(self.lo > 0.0 && self.lo.is_finite() && self.hi.is_finite()) {
            return Err(Error::domain(format!("{name}: bounds must be positive and finite")));
        }
        if self.steps > 1 && self.lo >= self.hi {
            return Err(Error::domain(format!(
                "{name}: need lo < hi for {} steps, got [{}, {}]",
                self.steps, self.lo, self.hi
            )));
        }
        if self.lo > self.hi {
            return Err(Error::domain(format!("{name}: lo {} exceeds hi {}", self.lo, self.hi)));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        let h = (self.hi - self.lo) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.hi } else { self.lo + h * i as f64 })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConstraintFilter {
    /// `0 < t ≤ 1 − 10⁻³`.
    TIn01,
    /// `α ≥ 1` and `β ≥ t₀`.
    AlphaGe1BetaGeT0,
    None,
}

impl ConstraintFilter {
    pub fn admits(&self, pt: &GridPoint) -> bool {
        match self {
            ConstraintFilter::TIn01 => pt.t > 0.0 && pt.t <= 1.0 - UNIT_INTERVAL_GAP,
            ConstraintFilter::AlphaGe1BetaGeT0 => pt.alpha >= 1.0 && pt.beta >= t0(),
            ConstraintFilter::None => true,
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            ConstraintFilter::TIn01 => "t ∈ (0, 1)",
            ConstraintFilter::AlphaGe1BetaGeT0 => "α ≥ 1, β ≥ t₀",
            ConstraintFilter::None => "none",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridPoint {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub t: f64,
}

impl GridPoint {
    pub fn params(&self) -> Result<MLParams> {
        MLParams::new(self.alpha, self.beta, self.gamma)
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(α={}, β={}, γ={}, t={})", self.alpha, self.beta, self.gamma, self.t)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub alpha_range: Axis,
    pub beta_range: Axis,
    pub gamma_range: Axis,
    pub t_range: Axis,
    /// Extra filter applied on top of each claim's own hypotheses.
    pub constraint_filter: ConstraintFilter,
}

impl Default for GridSpec {
    /// 8 × 8 × 5 × 12 points over `α ∈ [0.3, 3]`, `β ∈ [0.3, 3.5]`,
    /// `γ ∈ [0.3, 3]`, `t ∈ [0.05, 4]`.
    fn default() -> Self {
        Self {
            alpha_range: Axis { lo: 0.3, hi: 3.0, steps: 8 },
            beta_range: Axis { lo: 0.3, hi: 3.5, steps: 8 },
            gamma_range: Axis { lo: 0.3, hi: 3.0, steps: 5 },
            t_range: Axis { lo: 0.05, hi: 4.0, steps: 12 },
            constraint_filter: ConstraintFilter::None,
        }
    }
}

impl GridSpec {
    pub fn single(alpha: f64, beta: f64, gamma: f64, t: f64) -> Self {
        Self {
            alpha_range: Axis::point(alpha),
            beta_range: Axis::point(beta),
            gamma_range: Axis::point(gamma),
            t_range: Axis::point(t),
            constraint_filter: ConstraintFilter::None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.alpha_range.validate("alpha")?;
        self.beta_range.validate("beta")?;
        self.gamma_range.validate("gamma")?;
        self.t_range.validate("t")
    }

    /// All points in `α`-major, `t`-minor order.
    pub fn points(&self) -> Vec<GridPoint> {
        let (al, be, ga, ts) = (
            self.alpha_range.values(),
            self.beta_range.values(),
            self.gamma_range.values(),
            self.t_range.values(),
        );
        let mut out = Vec::with_capacity(al.len() * be.len() * ga.len() * ts.len());
        for &alpha in &al {
            for &beta in &be {
                for &gamma in &ga {
                    for &t in &ts {
                        out.push(GridPoint { alpha, beta, gamma, t });
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Claim {
    N9,
    N10,
    N11,
    Thm3a,
    Thm3b,
    Laguerre,
    O6a,
    O6b,
    Prop2,
    Cor1,
    Remark3,
}

impl Claim {
    pub const ALL: [Claim; 11] = [
        Claim::N9,
        Claim::N10,
        Claim::N11,
        Claim::Thm3a,
        Claim::Thm3b,
        Claim::Laguerre,
        Claim::O6a,
        Claim::O6b,
        Claim::Prop2,
        Claim::Cor1,
        Claim::Remark3,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Claim::N9 => "n9",
            Claim::N10 => "n10",
            Claim::N11 => "n11",
            Claim::Thm3a => "thm3a",
            Claim::Thm3b => "thm3b",
            Claim::Laguerre => "laguerre",
            Claim::O6a => "o6a",
            Claim::O6b => "o6b",
            Claim::Prop2 => "prop2",
            Claim::Cor1 => "cor1",
            Claim::Remark3 => "remark3",
        }
    }

    pub fn hypothesis(&self) -> ConstraintFilter {
        match self {
            Claim::N10 | Claim::Thm3a | Claim::O6a => ConstraintFilter::TIn01,
            Claim::N11 | Claim::Thm3b | Claim::O6b => ConstraintFilter::AlphaGe1BetaGeT0,
            _ => ConstraintFilter::None,
        }
    }

    /// Inequalities are judged at the caller's tolerance; identities carry
    /// their own fixed relative tolerance.
    pub fn tolerance(&self, tol: f64) -> f64 {
        match self {
            Claim::Prop2 => RECURRENCE_TOL,
            Claim::Cor1 | Claim::Remark3 => IDENTITY_TOL,
            _ => tol,
        }
    }

    /// Signed margin of this claim at one point.
    pub fn margin(&self, p: &MLParams, t: f64, cfg: &EvalConfig) -> Result<Margin> {
        match self {
            Claim::N9 => check_moment_ineq_n9(p, t, cfg),
            Claim::N10 => check_lemma1_bounds(p, t, Lemma1Bound::N10, cfg),
            Claim::N11 => check_lemma1_bounds(p, t, Lemma1Bound::N11, cfg),
            Claim::Thm3a => check_turan_bound_thm3(p, t, Branch::TIn01, cfg),
            Claim::Thm3b => check_turan_bound_thm3(p, t, Branch::Kummer, cfg),
            Claim::Laguerre => check_laguerre(p, t, cfg),
            Claim::O6a => check_laguerre_bound_thm4(p, t, Branch::TIn01, cfg),
            Claim::O6b => check_laguerre_bound_thm4(p, t, Branch::Kummer, cfg),
            Claim::Prop2 => Ok(check_recurrences_prop2(p, t, cfg)?.margin()),
            Claim::Cor1 => {
                let mut worst: Option<Margin> = None;
                for s in COROLLARY_ORDERS {
                    let m = check_corollary1(p, t, s, cfg)?;
                    if worst.is_none_or(|w| m.relative() < w.relative()) {
                        worst = Some(m);
                    }
                }
                Ok(worst.expect("at least one order"))
            }
            Claim::Remark3 => check_remark3(p, t, cfg),
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        Claim::ALL.into_iter().find(|c| c.name() == lower).ok_or_else(|| {
            let names: Vec<_> = Claim::ALL.iter().map(Claim::name).collect();
            Error::domain(format!("unknown claim `{s}`; valid claims: {}", names.join(", ")))
        })
    }
}

/// Most point errors a report keeps verbatim.
const MAX_REPORTED_ERRORS: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateReport {
    pub name: String,
    pub points_checked: usize,
    pub points_passed: usize,
    /// Minimum over points of `margin / scale`; negative means violated.
    pub worst_margin: f64,
    /// The unscaled margin at the worst point.
    pub worst_abs_margin: f64,
    pub worst_point: Option<GridPoint>,
    pub tolerance: f64,
    pub passed: bool,
    pub error_count: usize,
    pub errors: Vec<String>,
}

fn evaluate_claim(claim: Claim, points: &[GridPoint], tol: f64, cfg: &EvalConfig) -> CertificateReport {
    let tolerance = claim.tolerance(tol);
    let results: Vec<Result<Margin>> = points
        .par_iter()
        .map(|pt| claim.margin(&pt.params()?, pt.t, cfg))
        .collect();

    let mut report = CertificateReport {
        name: claim.name().to_string(),
        points_checked: points.len(),
        points_passed: 0,
        worst_margin: f64::INFINITY,
        worst_abs_margin: f64::INFINITY,
        worst_point: None,
        tolerance,
        passed: false,
        error_count: 0,
        errors: Vec::new(),
    };
    let mut worst_key = f64::INFINITY;
    for (pt, res) in points.iter().zip(results) {
        match res {
            Ok(m) => {
                let rel = m.relative();
                if rel >= -tolerance {
                    report.points_passed += 1;
                }
                // a NaN margin ranks below every number
                let key = if rel.is_nan() { f64::NEG_INFINITY } else { rel };
                if report.worst_point.is_none() || key < worst_key {
                    worst_key = key;
                    report.worst_margin = rel;
                    report.worst_abs_margin = m.value;
                    report.worst_point = Some(*pt);
                }
            }
            Err(e) => {
                report.error_count += 1;
                if report.errors.len() < MAX_REPORTED_ERRORS {
                    report.errors.push(format!("{pt}: {e}"));
                }
            }
        }
    }
    report.passed = report.error_count == 0 && report.points_passed == report.points_checked;
    report
}

/// One report per claim, in the order given.
///
/// `threads` bounds the worker pool (`None` uses every core). A claim whose
/// hypotheses exclude every grid point is an error rather than a vacuous
/// pass.
pub fn run_certification(
    grid: &GridSpec,
    claims: &[Claim],
    tol: f64,
    threads: Option<usize>,
    cfg: &EvalConfig,
) -> Result<Vec<CertificateReport>> {
    grid.validate()?;
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(Error::domain(format!("tolerance must be a non-negative finite real, got {tol}")));
    }
    let all = grid.points();
    let mut per_claim = Vec::with_capacity(claims.len());
    for &claim in claims {
        let hyp = claim.hypothesis();
        let pts: Vec<GridPoint> = all
            .iter()
            .copied()
            .filter(|pt| grid.constraint_filter.admits(pt) && hyp.admits(pt))
            .collect();
        if pts.is_empty() {
            let hypothesis = match (grid.constraint_filter, hyp) {
                (ConstraintFilter::None, h) => h.describe().to_string(),
                (g, ConstraintFilter::None) => g.describe().to_string(),
                (g, h) => format!("{} and {}", g.describe(), h.describe()),
            };
            return Err(Error::FilteredEmpty {
                claim: claim.name().to_string(),
                hypothesis,
            });
        }
        per_claim.push((claim, pts));
    }

    let sweep = || {
        per_claim
            .iter()
            .map(|(claim, pts)| evaluate_claim(*claim, pts, tol, cfg))
            .collect::<Vec<_>>()
    };
    match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::domain(format!("cannot build a {n}-thread pool: {e}")))?;
            Ok(pool.install(sweep))
        }
        None => Ok(sweep()),
    }
}
