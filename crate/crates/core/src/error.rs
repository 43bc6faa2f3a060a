use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series hit `max_terms` (or overflowed) before meeting its tolerance.
    #[error("{what}: series did not converge after {terms} terms (tail bound {tail_bound:e})")]
    NonConvergence {
        what: String,
        terms: usize,
        tail_bound: f64,
    },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("integer overflow: {0}")]
    Overflow(String),

    /// A claim's hypothesis removed every point of the requested grid.
    #[error("claim `{claim}`: no grid point satisfies the hypothesis ({hypothesis})")]
    FilteredEmpty { claim: String, hypothesis: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
