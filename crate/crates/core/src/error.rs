use thiserror::Error;

/// Every failure the library can report.
///
/// The `Display` form always starts with the variant name so the CLI can
/// surface it verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("EmptyInput: a permutation needs at least one entry")]
    EmptyInput,
    #[error("NotABijection: {0}")]
    NotABijection(String),
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("SelectorOutOfRange: {0}")]
    SelectorOutOfRange(String),
    #[error("LengthTooLargeForRank: length {0} exceeds the rank limit")]
    LengthTooLargeForRank(usize),
    #[error("PatternLongerThanHost: pattern length {pattern} > host length {host}")]
    PatternLongerThanHost { pattern: usize, host: usize },
    #[error("MismatchedLengths: selectors of length {0} and {1}")]
    MismatchedLengths(usize, usize),
    #[error("KOutOfRange: k = {k} must satisfy 1 <= k <= n = {n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("InstanceTooLarge: n = {n} exceeds the limit {limit}")]
    InstanceTooLarge { n: usize, limit: usize },
    #[error("NonPositiveDimensions: checkerboard needs r, s >= 1 (got {0} x {1})")]
    NonPositiveDimensions(usize, usize),
    #[error("CellNotInLayout: ({0}, {1})")]
    CellNotInLayout(usize, usize),
    #[error("KTooSmall: k = {0} (need k >= 2)")]
    KTooSmall(usize),
    #[error("ConstructionInvalid: {0}")]
    ConstructionInvalid(String),
    #[error("ValueOutOfRange: {value} not in [1, {n}]")]
    ValueOutOfRange { value: usize, n: usize },
    #[error("PositionOutOfRange: {position} not in [1, {n}]")]
    PositionOutOfRange { position: usize, n: usize },
    #[error("EqualValues: between-count needs i != j (got {0})")]
    EqualValues(usize),
    #[error("OracleTooLarge: brute force limited to m <= {limit} (got {m})")]
    OracleTooLarge { m: usize, limit: usize },
    #[error("NonPositive: argument must be >= 1")]
    NonPositive,
    #[error("PoleAtTwo: f_k has a pole at m = 2")]
    PoleAtTwo,
    #[error("MOutOfRange: m = {0} (need m >= 3)")]
    MOutOfRange(usize),
    #[error("BudgetExhausted: node budget {budget} spent after {explored} nodes")]
    BudgetExhausted { budget: u64, explored: u64 },
    #[error("InfeasibleSize: n = {n} exceeds the feasible limit {limit}; set a node budget")]
    InfeasibleSize { n: usize, limit: usize },
    #[error("BoundViolated: {0}")]
    BoundViolated(String),
    #[error("Io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
