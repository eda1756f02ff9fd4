use crate::presentation::Case;
use crate::scalar::Scalar;
use crate::terms::Letter;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The bracket oracle has no rule for this pair under its policy.
    #[error("bracket [{left}, {right}] is not determined by the oracle")]
    OracleIncomplete { left: Letter, right: Letter },
    #[error("the zero element has no leading word")]
    ZeroElement,
    #[error("weight {lambda} is not allowed in the {case} case")]
    InvalidWeight { case: Case, lambda: Scalar },
    #[error("the dot product needs a nonzero weight")]
    DotInPreCase,
    /// A defining identity of the input algebra fails on basis elements.
    #[error("{identity} fails on ({})", args.join(", "))]
    AxiomViolation { identity: String, args: Vec<String> },
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("elements come from different envelopes")]
    EnvelopeMismatch,
    #[error("generator index {0} is outside the alphabet")]
    UnknownGenerator(u32),
    #[error("malformed presentation: {0}")]
    Presentation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
