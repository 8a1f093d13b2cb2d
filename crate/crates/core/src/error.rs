use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-range input (graph files, family parameters, vertex sets).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A family was asked for something it has no closed form for.
    #[error("unsupported family: {0}")]
    Unsupported(String),

    /// A Betti table did not have the two-diagonal shape required by the recursion.
    #[error("shape error: {0}")]
    Shape(String),

    /// Exhaustive enumeration refused because the graph is too large.
    #[error("enumeration cap exceeded: n = {n} > {cap}")]
    EnumerationCap { n: usize, cap: usize },

    /// The Koszul oracle refused a strand whose matrix is larger than the budget.
    #[error("oracle out of budget at (i={i}, j={j}, d={d}): estimated {estimate} nonzeros > budget {budget}")]
    OutOfBudget {
        i: usize,
        j: usize,
        d: usize,
        estimate: u128,
        budget: u128,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
