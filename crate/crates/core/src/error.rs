use thiserror::Error;

use crate::conditions::BdcParams;
use crate::time::TimePoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("signal support must lie in [0, inf): {0}")]
    NegativeSupport(String),

    #[error("invalid window (d = {d}, m = {m}): need 0 <= m <= d")]
    InvalidWindow { d: Box<TimePoint>, m: Box<TimePoint> },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("delay must be non-negative, got {0}")]
    NegativeDelay(TimePoint),

    #[error("CC violated: {0}")]
    ConsistencyViolated(String),

    #[error("NZC violated: {0}")]
    NonZenonessViolated(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("{0} is not deterministic; use sampling or membership instead")]
    Nondeterministic(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("serial connection is not closed in this class{}", envelope_note(.envelope))]
    NotClosed { envelope: Option<Box<BdcParams>> },

    #[error("no parameter arithmetic for composing {0} with {1}")]
    NotComposable(String, String),

    #[error("parse error: {0}")]
    Parse(String),
}

fn envelope_note(envelope: &Option<Box<BdcParams>>) -> String {
    match envelope {
        Some(p) => format!(" (bounded envelope {p})"),
        None => String::new(),
    }
}
