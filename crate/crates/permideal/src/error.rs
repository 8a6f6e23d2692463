//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong outside of plain programming errors.
///
/// Arithmetic on mismatched ambients is a bug in the caller and panics;
/// these variants cover conditions a user of the library can trigger.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix shapes must have at least two rows and two columns, got {m}x{n}")]
    ShapeTooSmall { m: u16, n: u16 },

    #[error("variable x[{row},{col}] is outside the {m}x{n} matrix")]
    IndexOutOfRange { row: u16, col: u16, m: u16, n: u16 },

    #[error("operands live in different ambients")]
    AmbientMismatch,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("coefficient denominator is zero")]
    ZeroDenominator,

    #[error("division by zero scalar")]
    DivisionByZero,

    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,

    #[error("row and column selections must have equal, nonzero length")]
    NonSquareSelection,

    #[error("selection indices must be strictly increasing and in range")]
    BadSelection,

    #[error("subpermanent size {r} is out of range for a {m}x{n} matrix")]
    RankOutOfRange { r: u16, m: u16, n: u16 },

    #[error("{what} is not defined at {m}x{n}")]
    NotDefinedAtShape { what: &'static str, m: u16, n: u16 },

    #[error("operation requires an elimination order")]
    NotEliminationOrder,

    #[error("input already mentions the elimination variable t")]
    EliminationVariablePresent,

    #[error("operation is not defined in characteristic two")]
    CharacteristicTwo,

    #[error("entry pattern does not match: {0}")]
    Pattern(String),

    #[error("unmixed part index must be 1, 2 or 3: got {0}")]
    UnmixedIndex(u8),

    #[error("unmixed part {index} is undefined at {m}x{n}")]
    UnmixedUndefined { index: u8, m: u16, n: u16 },

    #[error("first ideal is not contained in the second (generator {index} does not reduce to zero)")]
    NotASubideal { index: usize },

    #[error("quotient is not visibly finite within degree cap {cap}")]
    NotFiniteWithinCap { cap: u32 },

    #[error("hypothesis fails: a generator of summand {i} is not in cosummand {j}")]
    HypothesisViolated { i: usize, j: usize },

    #[error("budget exceeded after {s_pairs_processed} S-pairs ({reductions_to_zero} zero reductions)")]
    BudgetExceeded {
        s_pairs_processed: u64,
        reductions_to_zero: u64,
    },

    #[error("parse error at line {line}, column {col}: {message}")]
    Parse { line: u32, col: u32, message: String },

    #[error("unknown ideal family '{0}'")]
    UnknownFamily(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
