use thiserror::Error;

/// Errors raised by the library. Row, column and square indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid type signature: {0}")]
    InvalidSignature(String),
    #[error("expected a {expected}x{expected} array, found {found}")]
    ShapeMismatch { expected: usize, found: String },
    #[error("row {row} has the wrong number of copies of symbol {symbol}")]
    RowCountViolation { row: usize, symbol: usize },
    #[error("column {col} has the wrong number of copies of symbol {symbol}")]
    ColCountViolation { col: usize, symbol: usize },
    #[error("cell ({row}, {col}) holds a symbol outside the signature")]
    SymbolOutOfRange { row: usize, col: usize },
    #[error("operation requires binary squares")]
    NotBinary,
    #[error("{k} squares do not fit in a {max}-bit superimposed entry")]
    TooManySquares { k: usize, max: usize },
    #[error("entry ({row}, {col}) does not fit in the declared number of squares")]
    EntryTooLarge { row: usize, col: usize },
    #[error("square {square} failed validation: {reason}")]
    ValidationFailure { square: usize, reason: Box<Error> },
    #[error("squares of different orders")]
    OrderMismatch,
    #[error("single-symbol squares cannot belong to a set of MOFS")]
    SingleSymbolSquare,
    #[error("order {0} is not supported (1..=64)")]
    UnsupportedOrder(usize),
    #[error("subset of squares is empty")]
    EmptySubset,
    #[error("subset search over {k} squares exceeds the budget of {max}")]
    SubsetBudgetExceeded { k: usize, max: usize },
    #[error("relation has {found} sets, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("set {column} of the relation is not contained in its column's symbols")]
    NotSubset { column: usize },
    #[error("index {0} out of range or repeated")]
    IndexError(usize),
    #[error("block structure does not satisfy x1 + x4 = x2 + x3 (mod w)")]
    IncompatibleBlocks,
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("invalid enumeration spec: {0}")]
    InvalidSpec(String),
    #[error("square {0} is not a permutation matrix")]
    WrongType(usize),
    #[error("seed catalogue is empty")]
    EmptyCatalogue,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
