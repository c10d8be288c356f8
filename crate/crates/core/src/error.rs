use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid letter {0:?}: words are strings over {{0,1}}")]
    InvalidLetter(char),

    #[error("factor must be nonempty")]
    EmptyFactor,

    #[error("factor {factor} occurs {found} time(s); at least two occurrences are needed")]
    TooFewOccurrences { factor: String, found: usize },

    #[error("invalid grid line {a}:{b}:{c}: {reason}")]
    InvalidGridLine {
        a: i64,
        b: i64,
        c: i64,
        reason: &'static str,
    },

    #[error("cannot parse {0:?} as a:b:c")]
    GridLineSyntax(String),

    #[error("cannot parse {0:?} as an exact rational p/q")]
    RationalSyntax(String),

    #[error("defining line needs 0 < alpha < 1 and 0 < rho < 1, got alpha={alpha}, rho={rho}")]
    DefiningLineRange { alpha: String, rho: String },

    #[error("line {line} has fewer than two grid points with 0 <= x <= {n}")]
    NotInLineSet { line: String, n: usize },

    #[error("{0} is not a finite Sturmian word")]
    NotSturmian(String),

    #[error("word length {got} does not match n = {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("{what}: n = {n} exceeds the exhaustive bound {limit}")]
    AboveLimit {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("cannot shift line {0} upwards: intercept is already 1")]
    CannotShift(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}
