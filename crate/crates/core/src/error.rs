use alloc::string::String;

use crate::word::Gen;

/// Everything that can go wrong in the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(Gen),
    #[error("unknown generator name `{0}`")]
    UnknownGeneratorName(String),
    #[error("invalid equality strategy: {0}")]
    Strategy(String),
    #[error("Knuth-Bendix completion gave up after {iterations} rounds with {rules} rules")]
    CompletionExhausted { iterations: usize, rules: usize },
    #[error("resource cap of {cap} elements exceeded")]
    CapExceeded { cap: usize },
    #[error("operands belong to a different group context: {0}")]
    ContextMismatch(String),
    #[error("operator has no column for {0}")]
    MissingColumn(String),
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("table does not cover {0}")]
    IncompleteCoverage(String),
    #[error("relator value is nonzero: {0}")]
    RelatorNonzero(String),
    #[error("stabilizer character: {0}")]
    Stabilizer(String),
    #[error("morphism outside the materialized fragment: {0}")]
    OutsideFragment(String),
    #[error("integer overflow during exact elimination")]
    Overflow,
}

pub type Result<T> = core::result::Result<T, Error>;
