//! File formats: dataset and prediction TSVs, the key = value run config and
//! the JSON evaluation report.

pub mod config;
pub mod dataset;
pub mod report;

use std::path::{Path, PathBuf};

use thiserror::Error;

pub use config::{ClassifierChoice, Config, ScorerSet, SimilarityChoice, StanceChoice};
pub use dataset::{parse_dataset, parse_predictions, to_predictions, to_samples, DatasetRow, PredictionRow};
pub use report::{ReportAggregate, ReportFile};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("row {row}: {message}")]
    Row { row: usize, message: String },
    #[error("{0} is empty")]
    Empty(String),
    #[error("dataset has {dataset} rows but predictions have {predictions}")]
    RowMismatch { dataset: usize, predictions: usize },
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error(transparent)]
    Vocab(#[from] crate::vocab::VocabError),
    #[error(transparent)]
    Scorer(#[from] crate::metrics::ScorerError),
}

pub fn read_text(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read { path: path.to_path_buf(), source })
}
