use alloc::string::String;

/// Kinds of diagram-text diagnostics. Each parse failure carries exactly one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    MalformedToken,
    WidthInconsistency,
    OrientationViolation,
    ArcLabel,
    SignMismatch,
}

impl core::fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let s = match self {
            ParseErrorKind::MalformedToken => "malformed token",
            ParseErrorKind::WidthInconsistency => "width inconsistency",
            ParseErrorKind::OrientationViolation => "orientation violation",
            ParseErrorKind::ArcLabel => "arc label violation",
            ParseErrorKind::SignMismatch => "crossing sign mismatch",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degree of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("inexact division: quotient is not a Laurent polynomial")]
    InexactDivision,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("series truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("{kind} at line {line}, column {column}: {message}")]
    Parse {
        kind: ParseErrorKind,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("diagram has more than one component")]
    MultiComponent,
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("could not schedule diagram into Morse position: {0}")]
    Schedule(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = core::result::Result<T, Error>;
