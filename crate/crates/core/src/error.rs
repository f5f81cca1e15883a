//! Error type shared by every module of the toolkit.

use thiserror::Error;

/// Everything that can go wrong while parsing, evaluating or analyzing.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Malformed expression text. `offset` is a 0-based character offset.
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    /// Evaluation left the real domain (log/sqrt of a negative, division by
    /// zero, fractional power of a negative base). `context` is the
    /// pretty-printed offending subexpression.
    #[error("domain error in `{context}`: {message}")]
    Domain { context: String, message: String },

    /// Curve speed dropped below the regularity threshold.
    #[error("curve not regular at t = {t}: |velocity| = {speed:e}")]
    NonRegular { t: f64, speed: f64 },

    /// The moving frame could not be extended past the given stage.
    #[error("frame degenerate at stage {stage} (valid depth {valid_depth})")]
    DegenerateFrame { stage: usize, valid_depth: usize },

    /// Surface Jacobian lost rank at the given parameters.
    #[error(
        "surface rank-deficient at parameters {params:?}: smallest singular value {sigma_min:e}"
    )]
    RankDeficient { params: Vec<f64>, sigma_min: f64 },

    /// The independent re-check of a fitted subspace exceeded its budget,
    /// which signals under-sampling or an inconsistent field.
    #[error("independent re-verification failed: residual {residual:e} exceeds {limit:e}")]
    VerificationFailed { residual: f64, limit: f64 },

    /// Per-step speed drift of the integrator exceeded its budget.
    #[error("integration step too large: speed drift {drift:e} per step exceeds {limit:e}")]
    StepTooLarge { drift: f64, limit: f64 },

    /// Scene file rejected. `pointer` is a JSON pointer to the bad field.
    #[error("scene error at `{pointer}`: {message}")]
    Scene { pointer: String, message: String },

    /// An operation was called on inputs that fail its stated precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    pub fn scene(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Scene {
            pointer: pointer.into(),
            message: message.into(),
        }
    }

    pub fn domain(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Domain {
            context: context.into(),
            message: message.into(),
        }
    }

    /// Machine-readable kind tag, used by the CLI error object and for
    /// mapping to exit codes.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::Domain { .. } => "domain",
            Error::NonRegular { .. } => "non_regular",
            Error::DegenerateFrame { .. } => "degenerate_frame",
            Error::RankDeficient { .. } => "rank_deficient",
            Error::VerificationFailed { .. } => "verification_failed",
            Error::StepTooLarge { .. } => "step_too_large",
            Error::Scene { .. } => "scene",
            Error::Precondition(_) => "precondition",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
