use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent user input.
    #[error("input error: {0}")]
    Input(String),

    #[error("exponent vector has length {found}, ring has {expected} variables")]
    Arity { expected: usize, found: usize },

    #[error("field characteristic {0} is neither 0 nor a prime")]
    NotPrime(u64),

    /// A stated hypothesis of a check does not hold for the given instance.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("verification window too small: {0}")]
    Window(String),

    /// A chain map fails to commute with the differentials.
    #[error("chain map does not commute with differentials at index {index}")]
    NonCommuting { index: i64 },

    /// Consecutive maps of a complex do not compose to zero.
    #[error("differentials do not compose to zero at index {index}")]
    NotAComplex { index: i64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Carries serde's message, which includes the line and column.
    #[error("malformed JSON: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl Error {
    /// True for errors caused by the caller's data rather than by a construction bug.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Input(_)
                | Error::Arity { .. }
                | Error::NotPrime(_)
                | Error::Hypothesis(_)
                | Error::Window(_)
                | Error::Json(_)
        )
    }
}
