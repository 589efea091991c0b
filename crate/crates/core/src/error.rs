use thiserror::Error;

/// Failures reported by the evaluators and checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of the requested function.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested sum or integral does not converge absolutely at this argument.
    #[error("divergent: {0}")]
    Divergent(String),

    /// The argument is a pole of the function.
    #[error("pole: {0}")]
    Pole(String),

    /// A truncated series was used in a way that needs a zero constant term.
    #[error("series has nonzero constant coefficient: {0}")]
    NonzeroConstant(&'static str),

    /// The tail of a truncated summation is larger than the requested tolerance.
    #[error("cutoff {cutoff} too small: tail bound {tail:e} exceeds tolerance {tolerance:e}")]
    CutoffTooSmall {
        cutoff: usize,
        tail: f64,
        tolerance: f64,
    },

    /// The evaluator could not reach the requested precision.
    #[error("precision unreachable: {reason}{}", .suggested_mmax.map(|m| format!(" (try --mmax {m})")).unwrap_or_default())]
    PrecisionUnreachable {
        reason: String,
        suggested_mmax: Option<usize>,
    },

    /// Invalid multi-index.
    #[error("invalid index: {0}")]
    InvalidIndex(String),

    /// Parity condition violated (odd weight required).
    #[error("parity error: {0}")]
    Parity(String),

    /// Unknown identity id passed to the suite runner.
    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
