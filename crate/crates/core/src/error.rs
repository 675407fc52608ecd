use thiserror::Error;

use crate::quiver::GentleReport;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("arrow `{arrow}` references undeclared vertex `{vertex}`")]
    UndeclaredVertex { arrow: String, vertex: String },

    #[error("duplicate id `{0}`")]
    DuplicateId(String),

    #[error("relation `{first} {second}` is not composable: t({first}) != s({second})")]
    NonComposableRelation { first: String, second: String },

    #[error("duplicate relation `{0} {1}`")]
    DuplicateRelation(String, String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("words are not composable: target `{left_target}` != source `{right_source}`")]
    NonComposable {
        left_target: String,
        right_source: String,
    },

    #[error("junction violates string validity: {0}")]
    JunctionViolation(StringViolation),

    #[error("quiver is not gentle: {0}")]
    NotGentle(GentleReport),

    #[error("algebra is infinite-dimensional")]
    InfiniteDimensional,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant failed: {0}")]
    Internal(String),
}

/// Ways a letter sequence can fail to be a string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StringViolation {
    /// Consecutive letters do not compose: t(l_i) != s(l_{i+1}).
    NotComposable { position: usize },
    /// A letter is immediately followed by its inverse.
    NotReduced { position: usize },
    /// A consecutive pair traverses a path that lies in the ideal.
    ForbiddenPath { position: usize },
}

impl std::fmt::Display for StringViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StringViolation::NotComposable { position } => {
                write!(f, "letters {position} and {} do not compose", position + 1)
            }
            StringViolation::NotReduced { position } => {
                write!(f, "letter {} cancels letter {position}", position + 1)
            }
            StringViolation::ForbiddenPath { position } => {
                write!(f, "letters {position} and {} traverse a relation", position + 1)
            }
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
