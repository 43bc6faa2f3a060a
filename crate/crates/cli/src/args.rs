use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "prabhakar", version, about = "Prabhakar function, ML(α, β, γ) distribution and inequality certification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Relative truncation tolerance of every series
    #[arg(long, default_value_t = prabhakar::EvalConfig::DEFAULT_REL_TOL, global = true)]
    pub rel_tol: f64,

    /// Maximum number of series terms
    #[arg(long, env = "ML_MAX_TERMS", global = true)]
    pub max_terms: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned human-readable table
    Table,
    /// One JSON object per line
    Jsonl,
    /// Comma-separated values with a header row
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a special function
    #[command(subcommand)]
    Eval(EvalCmd),
    /// Query the ML(α, β, γ) distribution at time t
    #[command(subcommand)]
    Dist(DistCmd),
    /// Sweep a parameter grid and certify inequalities and identities
    Certify(CertifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum EvalCmd {
    /// Three-parameter Mittag-Leffler function E^γ_{α,β}(z)
    #[command(allow_negative_numbers = true)]
    Prabhakar {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        z: f64,
        /// Derivative order in z (0, 1 or 2)
        #[arg(long, default_value_t = 0)]
        derivative: u32,
    },
    /// Two-parameter Mittag-Leffler function E_{α,β}(z)
    #[command(allow_negative_numbers = true)]
    Ml2 {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        z: f64,
    },
    /// Classical Mittag-Leffler function E_α(z)
    #[command(allow_negative_numbers = true)]
    Ml1 {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        z: f64,
    },
    /// Kummer confluent hypergeometric function ₁F₁(a; b; z)
    #[command(allow_negative_numbers = true)]
    Kummer {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        z: f64,
    },
    /// Extended Hurwitz-Lerch zeta function Φ^{(ρ,σ,κ)}_{λ,μ;ν}(z, s, a)
    #[command(allow_negative_numbers = true)]
    Hlz {
        #[arg(long)]
        lambda: f64,
        /// Only used when --sigma is positive
        #[arg(long, default_value_t = 0.0)]
        mu: f64,
        #[arg(long)]
        nu: f64,
        #[arg(long)]
        rho: f64,
        #[arg(long, default_value_t = 0.0)]
        sigma: f64,
        #[arg(long)]
        kappa: f64,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        z: f64,
        #[arg(long)]
        s: f64,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct DistParams {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long)]
    pub gamma: f64,
    /// Time t > 0
    #[arg(long)]
    pub t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Closed-form (Stirling or Hurwitz-Lerch) representation
    Closed,
    /// Direct summation against the pmf
    Brute,
}

#[derive(Debug, Subcommand)]
pub enum DistCmd {
    /// Probability masses P(X = k)
    #[command(allow_negative_numbers = true)]
    Pmf {
        #[command(flatten)]
        params: DistParams,
        /// A single k; without --k or --kmax, rows run up to the tail cutoff
        #[arg(long, conflicts_with = "kmax")]
        k: Option<u64>,
        #[arg(long)]
        kmax: Option<u64>,
    },
    /// Cumulative probabilities P(X ≤ k)
    #[command(allow_negative_numbers = true)]
    Cdf {
        #[command(flatten)]
        params: DistParams,
        #[arg(long, conflicts_with = "kmax")]
        k: Option<u64>,
        #[arg(long)]
        kmax: Option<u64>,
    },
    /// Raw moment E X^s for integer s
    #[command(allow_negative_numbers = true)]
    Moment {
        #[command(flatten)]
        params: DistParams,
        #[arg(long)]
        s: u32,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
    },
    /// Moment E X^s for real s > 0
    #[command(allow_negative_numbers = true)]
    Fracmoment {
        #[command(flatten)]
        params: DistParams,
        #[arg(long)]
        s: f64,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
    },
    /// Factorial moment E[X(X-1)...(X-s+1)]
    #[command(allow_negative_numbers = true)]
    Factorial {
        #[command(flatten)]
        params: DistParams,
        #[arg(long)]
        s: u32,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
    },
    /// Draw samples by inverse-CDF search
    #[command(allow_negative_numbers = true)]
    Sample {
        #[command(flatten)]
        params: DistParams,
        /// Number of draws
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// RNG seed; required so every run is reproducible
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FilterArg {
    TIn01,
    AlphaGe1BetaGeT0,
    None,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Claims to certify (default: all). Valid names: n9, n10, n11, thm3a,
    /// thm3b, laguerre, o6a, o6b, prop2, cor1, remark3
    pub claims: Vec<String>,

    /// Use the built-in 8×8×5×12 grid (the default when no axis flag is given)
    #[arg(long)]
    pub default_grid: bool,

    #[command(flatten)]
    pub grid: GridArgs,

    /// Extra hypothesis filter applied to every claim
    #[arg(long, value_enum, default_value_t = FilterArg::None)]
    pub filter: FilterArg,

    /// Pass tolerance on the relative margin of inequality claims
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,

    /// Worker threads (default: all available cores)
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Default, Args)]
pub struct GridArgs {
    /// Fix α to one value
    #[arg(long, conflicts_with_all = ["alpha_min", "alpha_max", "alpha_steps"])]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub alpha_min: Option<f64>,
    #[arg(long)]
    pub alpha_max: Option<f64>,
    #[arg(long)]
    pub alpha_steps: Option<usize>,

    /// Fix β to one value
    #[arg(long, conflicts_with_all = ["beta_min", "beta_max", "beta_steps"])]
    pub beta: Option<f64>,
    #[arg(long)]
    pub beta_min: Option<f64>,
    #[arg(long)]
    pub beta_max: Option<f64>,
    #[arg(long)]
    pub beta_steps: Option<usize>,

    /// Fix γ to one value
    #[arg(long, conflicts_with_all = ["gamma_min", "gamma_max", "gamma_steps"])]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub gamma_min: Option<f64>,
    #[arg(long)]
    pub gamma_max: Option<f64>,
    #[arg(long)]
    pub gamma_steps: Option<usize>,

    /// Fix t to one value
    #[arg(long, conflicts_with_all = ["t_min", "t_max", "t_steps"])]
    pub t: Option<f64>,
    #[arg(long)]
    pub t_min: Option<f64>,
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub t_steps: Option<usize>,
}

impl GridArgs {
    pub fn is_empty(&self) -> bool {
        [self.alpha, self.alpha_min, self.alpha_max, self.beta, self.beta_min, self.beta_max]
            .iter()
            .chain(&[self.gamma, self.gamma_min, self.gamma_max, self.t, self.t_min, self.t_max])
            .all(Option::is_none)
            && [self.alpha_steps, self.beta_steps, self.gamma_steps, self.t_steps]
                .iter()
                .all(Option::is_none)
    }
}
