use thiserror::Error;

use crate::diagram::RowType;
use crate::scheme::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid step character {0:?} (expected 'V' or 'H')")]
    InvalidStep(char),

    #[error("invalid n-tuple {tuple:?}: {reason}")]
    InvalidTuple { tuple: Vec<usize>, reason: String },

    #[error("diagram {diagram} does not have row type {required:?}")]
    RowTypeMismatch { diagram: String, required: RowType },

    #[error("operation is undefined on the empty frame")]
    EmptyFrame,

    #[error("frame {n} is below the minimum {min} for this operation")]
    FrameTooSmall { n: usize, min: usize },

    #[error("selection rule given for segment {segment}, which is not a horizontal segment of the boundary (tau = {tau})")]
    RuleSegment { segment: usize, tau: usize },

    #[error("no selection rule given for horizontal segment {0}")]
    MissingRule(usize),

    #[error("diagram {0} has no horizontal segment s_2")]
    NoSecondSegment(String),

    #[error("descriptor construction failed: {}", format_violations(.0))]
    Construction(Vec<Violation>),

    #[error("invalid descriptor: {}", format_violations(.0))]
    InvalidDescriptor(Vec<Violation>),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("unknown scheme name {0:?}")]
    UnknownScheme(String),

    #[error("unknown strategy {0:?}")]
    UnknownStrategy(String),

    #[error("map {map} does not apply to diagram {diagram}: {reason}")]
    VariantMismatch {
        map: String,
        diagram: String,
        reason: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

fn format_violations(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
