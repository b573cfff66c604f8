use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-contract input.
    #[error("input error: {0}")]
    Input(String),

    /// Pattern text that does not follow the grammar.
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    /// Theorem spec file problem, reported with its 1-based line.
    #[error("theorem spec error at line {line}: {message}")]
    Spec { line: usize, message: String },

    /// Exhaustive search asked to run beyond its supported size.
    #[error("refused: {0}")]
    Scale(String),

    #[error("profile infeasible: {0}")]
    Infeasible(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
