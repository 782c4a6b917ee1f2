use thiserror::Error;

use crate::garside::GarsideConditions;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the library.
///
/// Mathematical *findings* (a solution that is not braided, a failing
/// coherence triple) are reported through return values. Errors are kept for
/// malformed input, violated preconditions and broken internal invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("generator index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("presentation rejected: {0}")]
    Condition(#[from] ConditionViolation),

    #[error("monoid fails the Garside criteria: {0}")]
    NotGarside(GarsideConditions),

    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// True for errors caused by unreadable or malformed input, as opposed
    /// to a well-formed object that was mathematically rejected.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Input(_) | Error::IndexOutOfRange { .. } | Error::Parse { .. }
        )
    }
}

/// Reasons a tableau presentation cannot be turned into a solution.
///
/// Indices in the payloads are 1-based so messages read like the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionViolation {
    #[error("condition (3): relation side `{side}` does not have length 2")]
    SideLength { side: String },

    #[error("condition (4): word x{0} x{1} appears in more than one relation side")]
    DuplicateWord(usize, usize),

    #[error("condition (2): expected {expected} relations for n = {n}, found {found}")]
    RelationCount {
        n: usize,
        expected: usize,
        found: usize,
    },

    #[error("x{left} and x{right} have two different right lcms: x{left} x{a} and x{left} x{b}")]
    TwoRightLcms {
        left: usize,
        right: usize,
        a: usize,
        b: usize,
    },

    #[error("x{left} and x{right} have two different left lcms: x{a} x{left} and x{b} x{left}")]
    TwoLeftLcms {
        left: usize,
        right: usize,
        a: usize,
        b: usize,
    },

    #[error("right cube condition fails at (x{0}, x{1}, x{2})")]
    RightCoherence(usize, usize, usize),

    #[error("left cube condition fails at (x{0}, x{1}, x{2})")]
    LeftCoherence(usize, usize, usize),
}
