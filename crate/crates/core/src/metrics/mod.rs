//! Multi-level evaluation: stance accuracy gates structural correctness, which
//! in turn gates semantic correctness, matching F1, edit distance and edge
//! importance.

pub mod corpus;
pub mod ea;
pub mod gbs;
pub mod ged;
pub mod matching;
pub mod scorer;
pub mod seca;

use thiserror::Error;

pub use corpus::{
    evaluate_corpus, Aggregates, EvalConfig, GedAggregation, MetricReport, Prediction, Sample,
    SampleOutcome, Scorers,
};
pub use ea::{ea, important_edges};
pub use gbs::{gbs, match_edges, MatchScore};
pub use ged::{ged, ged_normalizer, ged_raw, GedError};
pub use matching::{hungarian, Assignment, ScoreMatrix};
pub use scorer::{
    EdgeSimilarityScorer, GraphLabel, GraphStanceClassifier, ScorerError, Stance, StanceScorer,
};
pub use seca::seca;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("no gold graphs")]
    NoGold,
    #[error(transparent)]
    Scorer(#[from] ScorerError),
    #[error(transparent)]
    Ged(#[from] GedError),
    #[error("prediction id {0:?} matches no sample")]
    UnknownId(String),
    #[error("duplicate id {0:?}")]
    DuplicateId(String),
    #[error("sample {0:?} has no prediction")]
    MissingPrediction(String),
    #[error("internal: {0}")]
    Internal(String),
}
