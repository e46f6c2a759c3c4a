use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed `.gpd` document.
    #[error("line {line}: {msg}")]
    Table { line: usize, msg: String },

    /// Malformed term, identity or bracketing text. `pos` is a byte offset.
    #[error("at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    /// A size or enumeration guard was exceeded.
    #[error("{what}: {got} exceeds the limit of {limit}")]
    Guard {
        what: &'static str,
        limit: u64,
        got: u64,
    },

    /// The evaluation budget of a spectrum computation was exhausted.
    /// `completed` holds s(1), …, s(k) for the largest completed k.
    #[error("budget exceeded at n = {}: needs {needed} table entries, budget is {budget}", completed.len() + 1)]
    BudgetExceeded {
        needed: u64,
        budget: u64,
        completed: Vec<usize>,
    },

    #[error("element index {index} out of range for a groupoid of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition is not a congruence")]
    NotCongruence,

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("not a Szász–Hájek groupoid: ns = {0}")]
    NotSh(usize),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn table(line: usize, msg: impl Into<String>) -> Self {
        Error::Table {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn guard(what: &'static str, limit: u64, got: u64) -> Self {
        Error::Guard { what, limit, got }
    }
}
