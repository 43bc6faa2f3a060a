use std::time::Instant;

use prabhakar::certify::{run_certification, Axis, CertificateReport, Claim, ConstraintFilter, GridSpec};
use prabhakar::distribution::{MLDistribution, MomentResult, NORMALIZATION_TAIL};
use prabhakar::specfun::{
    classical_ml, hlz_phi, kummer_1f1, prabhakar_derivative, prabhakar_e, two_param_ml, HLZParams,
};
use prabhakar::{EvalConfig, MLParams, SeriesResult};

use crate::args::{CertifyArgs, DistCmd, DistParams, EvalCmd, FilterArg, GridArgs, Method};
use crate::output::{num, OutputRecord};
use crate::CliError;

/// Records to print plus the exit status the run earned.
pub struct Outcome {
    pub records: Vec<OutputRecord>,
    pub exit: u8,
}

impl Outcome {
    fn ok(records: Vec<OutputRecord>) -> Self {
        Self { records, exit: 0 }
    }
}

pub const EXIT_NON_CONVERGENCE: u8 = 3;
pub const EXIT_FAIL: u8 = 4;

fn series_outcome(rec: OutputRecord, r: &SeriesResult, start: Instant) -> Outcome {
    let mut rec = rec
        .field("value", num(r.value))
        .field("terms_used", r.terms_used as u64)
        .field("tail_bound", num(r.tail_bound))
        .field("converged", r.converged)
        .error_estimate(r.tail_bound);
    rec.elapsed_s = start.elapsed().as_secs_f64();
    Outcome {
        records: vec![rec],
        exit: if r.converged { 0 } else { EXIT_NON_CONVERGENCE },
    }
}

pub fn eval(cmd_line: &str, cmd: &EvalCmd, cfg: &EvalConfig) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let (params, result): (Vec<(&str, f64)>, SeriesResult) = match *cmd {
        EvalCmd::Prabhakar { alpha, beta, gamma, z, derivative } => {
            let p = MLParams::new(alpha, beta, gamma)?;
            let r = if derivative == 0 {
                prabhakar_e(&p, z, cfg)
            } else {
                prabhakar_derivative(&p, z, derivative, cfg)?
            };
            let mut ps = vec![("alpha", alpha), ("beta", beta), ("gamma", gamma), ("z", z)];
            if derivative > 0 {
                ps.push(("derivative", f64::from(derivative)));
            }
            (ps, r)
        }
        EvalCmd::Ml2 { alpha, beta, z } => (
            vec![("alpha", alpha), ("beta", beta), ("z", z)],
            two_param_ml(alpha, beta, z, cfg)?,
        ),
        EvalCmd::Ml1 { alpha, z } => (vec![("alpha", alpha), ("z", z)], classical_ml(alpha, z, cfg)?),
        EvalCmd::Kummer { a, b, z } => (vec![("a", a), ("b", b), ("z", z)], kummer_1f1(a, b, z, cfg)?),
        EvalCmd::Hlz { lambda, mu, nu, rho, sigma, kappa, a, z, s } => {
            let h = HLZParams { lambda, mu, nu, rho, sigma, kappa, a };
            h.validate()?;
            (
                vec![
                    ("lambda", lambda),
                    ("mu", mu),
                    ("nu", nu),
                    ("rho", rho),
                    ("sigma", sigma),
                    ("kappa", kappa),
                    ("a", a),
                    ("z", z),
                    ("s", s),
                ],
                hlz_phi(&h, z, s, cfg)?,
            )
        }
    };
    let rec = params
        .into_iter()
        .fold(OutputRecord::new(cmd_line), |rec, (k, v)| rec.param(k, num(v)));
    Ok(series_outcome(rec, &result, start))
}

fn dist_record(cmd: &str, p: &DistParams) -> OutputRecord {
    OutputRecord::new(cmd)
        .param("alpha", num(p.alpha))
        .param("beta", num(p.beta))
        .param("gamma", num(p.gamma))
        .param("t", num(p.t))
}

fn moment_record(cmd: &str, p: &DistParams, m: &MomentResult, start: Instant) -> OutputRecord {
    let mut rec = dist_record(cmd, p)
        .param("s", num(m.order))
        .field("value", num(m.value))
        .field("method", m.method.tag())
        .error_estimate(m.est_error);
    rec.elapsed_s = start.elapsed().as_secs_f64();
    rec
}

fn masses(
    cmd: &str,
    p: &DistParams,
    d: &MLDistribution,
    k: Option<u64>,
    kmax: Option<u64>,
    f: impl Fn(&MLDistribution, u64) -> f64,
) -> Result<Vec<OutputRecord>, CliError> {
    let ks: Vec<u64> = match (k, kmax) {
        (Some(k), _) => vec![k],
        (None, Some(m)) => (0..=m).collect(),
        (None, None) => (0..=d.tail_cutoff(NORMALIZATION_TAIL)?).collect(),
    };
    Ok(ks
        .into_iter()
        .map(|k| {
            let start = Instant::now();
            let mut rec = dist_record(cmd, p).param("k", k).field("value", num(f(d, k)));
            rec.elapsed_s = start.elapsed().as_secs_f64();
            rec
        })
        .collect())
}

pub fn dist(cmd_line: &str, cmd: &DistCmd, cfg: &EvalConfig) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let p = match cmd {
        DistCmd::Pmf { params, .. }
        | DistCmd::Cdf { params, .. }
        | DistCmd::Moment { params, .. }
        | DistCmd::Fracmoment { params, .. }
        | DistCmd::Factorial { params, .. }
        | DistCmd::Sample { params, .. } => *params,
    };
    let d = MLDistribution::new(MLParams::new(p.alpha, p.beta, p.gamma)?, p.t, *cfg)?;
    let records = match *cmd {
        DistCmd::Pmf { k, kmax, .. } => masses(cmd_line, &p, &d, k, kmax, MLDistribution::pmf)?,
        DistCmd::Cdf { k, kmax, .. } => masses(cmd_line, &p, &d, k, kmax, MLDistribution::cdf)?,
        DistCmd::Moment { s, method, .. } => {
            let m = match method {
                Method::Closed => d.moment_raw(s)?,
                Method::Brute => d.brute_force_power_moment(f64::from(s))?,
            };
            vec![moment_record(cmd_line, &p, &m, start)]
        }
        DistCmd::Fracmoment { s, method, .. } => {
            let m = match method {
                Method::Closed => d.moment_fractional(s)?,
                Method::Brute => d.brute_force_power_moment(s)?,
            };
            vec![moment_record(cmd_line, &p, &m, start)]
        }
        DistCmd::Factorial { s, method, .. } => {
            let m = match method {
                Method::Closed => d.moment_factorial(s)?,
                Method::Brute => d.brute_force_factorial_moment(s)?,
            };
            vec![moment_record(cmd_line, &p, &m, start)]
        }
        DistCmd::Sample { n, seed, .. } => {
            let draws = d.sample(n, seed)?;
            let elapsed = start.elapsed().as_secs_f64();
            draws
                .into_iter()
                .enumerate()
                .map(|(i, k)| {
                    let mut rec = dist_record(cmd_line, &p)
                        .param("seed", seed)
                        .field("index", i as u64)
                        .field("k", k);
                    rec.elapsed_s = elapsed;
                    rec
                })
                .collect()
        }
    };
    Ok(Outcome::ok(records))
}

fn axis(name: &str, default: Axis, fixed: Option<f64>, lo: Option<f64>, hi: Option<f64>, steps: Option<usize>) -> Result<Axis, CliError> {
    if let Some(v) = fixed {
        return Ok(Axis::point(v));
    }
    let lo = lo.unwrap_or(default.lo);
    let hi = hi.unwrap_or(default.hi);
    let steps = steps.unwrap_or(if lo == hi { 1 } else { default.steps });
    Axis::new(lo, hi, steps).map_err(|e| CliError::Usage(format!("--{name} axis: {e}")))
}

fn build_grid(g: &GridArgs, filter: FilterArg) -> Result<GridSpec, CliError> {
    let d = GridSpec::default();
    Ok(GridSpec {
        alpha_range: axis("alpha", d.alpha_range, g.alpha, g.alpha_min, g.alpha_max, g.alpha_steps)?,
        beta_range: axis("beta", d.beta_range, g.beta, g.beta_min, g.beta_max, g.beta_steps)?,
        gamma_range: axis("gamma", d.gamma_range, g.gamma, g.gamma_min, g.gamma_max, g.gamma_steps)?,
        t_range: axis("t", d.t_range, g.t, g.t_min, g.t_max, g.t_steps)?,
        constraint_filter: match filter {
            FilterArg::TIn01 => ConstraintFilter::TIn01,
            FilterArg::AlphaGe1BetaGeT0 => ConstraintFilter::AlphaGe1BetaGeT0,
            FilterArg::None => ConstraintFilter::None,
        },
    })
}

fn report_record(cmd: &str, r: &CertificateReport, elapsed: f64) -> OutputRecord {
    let pt = r.worst_point;
    let coord = |f: fn(&prabhakar::certify::GridPoint) -> f64| pt.as_ref().map_or(num(f64::NAN), |p| num(f(p)));
    let mut rec = OutputRecord::new(cmd)
        .field("claim", r.name.as_str())
        .field("verdict", if r.passed { "PASS" } else { "FAIL" })
        .field("points_checked", r.points_checked as u64)
        .field("points_passed", r.points_passed as u64)
        .field("worst_margin", num(r.worst_margin))
        .field("worst_abs_margin", num(r.worst_abs_margin))
        .field("worst_alpha", coord(|p| p.alpha))
        .field("worst_beta", coord(|p| p.beta))
        .field("worst_gamma", coord(|p| p.gamma))
        .field("worst_t", coord(|p| p.t))
        .field("tolerance", num(r.tolerance))
        .field("error_count", r.error_count as u64)
        .field("first_error", r.errors.first().cloned().unwrap_or_default());
    rec.elapsed_s = elapsed;
    rec
}

pub fn certify(cmd_line: &str, args: &CertifyArgs, cfg: &EvalConfig) -> Result<Outcome, CliError> {
    if args.default_grid && !args.grid.is_empty() {
        return Err(CliError::Usage("--default-grid cannot be combined with axis flags".into()));
    }
    let claims: Vec<Claim> = if args.claims.is_empty() {
        Claim::ALL.to_vec()
    } else {
        args.claims
            .iter()
            .map(|c| {
                c.parse::<Claim>().map_err(|_| {
                    let names: Vec<_> = Claim::ALL.iter().map(Claim::name).collect();
                    CliError::Usage(format!("unknown claim `{c}`; valid claims: {}", names.join(", ")))
                })
            })
            .collect::<Result<_, _>>()?
    };
    if args.threads == Some(0) {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    let grid = build_grid(&args.grid, args.filter)?;
    let start = Instant::now();
    let reports = run_certification(&grid, &claims, args.tol, args.threads, cfg)?;
    let elapsed = start.elapsed().as_secs_f64();
    let all_pass = reports.iter().all(|r| r.passed);
    Ok(Outcome {
        records: reports.iter().map(|r| report_record(cmd_line, r, elapsed)).collect(),
        exit: if all_pass { 0 } else { EXIT_FAIL },
    })
}
