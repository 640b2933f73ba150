//! File formats, exports and the command-line front end for `gderiv-core`.

pub mod cli;
pub mod demo;
pub mod export;
pub mod format;

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] gderiv_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Input(String),
}

impl Error {
    /// Stable machine-readable name used in error JSON.
    pub fn kind(&self) -> &'static str {
        use gderiv_core::Error as E;
        match self {
            Error::Core(e) => match e {
                E::Syntax { .. } => "syntax",
                E::UnknownGenerator(_) | E::UnknownGeneratorName(_) => "unknown-generator",
                E::Strategy(_) => "strategy",
                E::CompletionExhausted { .. } => "completion-exhausted",
                E::CapExceeded { .. } => "cap-exceeded",
                E::ContextMismatch(_) => "context-mismatch",
                E::MissingColumn(_) => "missing-column",
                E::NotComposable(_) => "not-composable",
                E::InvalidMorphism(_) => "invalid-morphism",
                E::IncompleteCoverage(_) => "incomplete-coverage",
                E::RelatorNonzero(_) => "relator-nonzero",
                E::Stabilizer(_) => "stabilizer",
                E::OutsideFragment(_) => "outside-fragment",
                E::Overflow => "overflow",
            },
            Error::Io { .. } => "io",
            Error::Json(_) => "json",
            Error::Input(_) => "input",
        }
    }
}
