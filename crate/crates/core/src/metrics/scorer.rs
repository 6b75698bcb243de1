//! Pluggable scoring interfaces used by the evaluation levels.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScorerError {
    #[error("protocol error: {0}")]
    Protocol(String),
    #[error("scorer timed out after {0:?}")]
    Timeout(std::time::Duration),
    #[error("scorer process exited: {0}")]
    ChildExited(String),
    #[error("scorer i/o: {0}")]
    Io(String),
    #[error("scorer returned out-of-range value {0}")]
    OutOfRange(f64),
    #[error("{0}")]
    Other(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stance {
    Support,
    Counter,
}

impl Stance {
    pub fn as_str(self) -> &'static str {
        match self {
            Stance::Support => "support",
            Stance::Counter => "counter",
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Stance::Support => Stance::Counter,
            Stance::Counter => Stance::Support,
        }
    }
}

impl fmt::Display for Stance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Stance {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "support" => Ok(Stance::Support),
            "counter" => Ok(Stance::Counter),
            other => Err(format!("unknown stance {other:?} (support|counter)")),
        }
    }
}

/// Output of a belief/graph classifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphLabel {
    Incorrect,
    Support,
    Counter,
}

impl GraphLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphLabel::Incorrect => "incorrect",
            GraphLabel::Support => "support",
            GraphLabel::Counter => "counter",
        }
    }
}

impl From<Stance> for GraphLabel {
    fn from(s: Stance) -> Self {
        match s {
            Stance::Support => GraphLabel::Support,
            Stance::Counter => GraphLabel::Counter,
        }
    }
}

impl fmt::Display for GraphLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GraphLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "incorrect" => Ok(GraphLabel::Incorrect),
            "support" => Ok(GraphLabel::Support),
            "counter" => Ok(GraphLabel::Counter),
            other => Err(format!("unknown label {other:?}")),
        }
    }
}

/// Sentence similarity in `[0, 1]`; `score(s, s)` must be 1 and the score
/// must be symmetric.
pub trait EdgeSimilarityScorer: Send + Sync {
    fn score(&self, a: &str, b: &str) -> Result<f64, ScorerError>;

    /// Whether concurrent calls are safe to issue without serialization.
    fn is_reentrant(&self) -> bool {
        true
    }
}

/// Probability in `[0, 1]` that a stance holds given the texts and a graph.
pub trait StanceScorer: Send + Sync {
    fn probability(
        &self,
        belief: &str,
        argument: &str,
        graph_text: &str,
        target: Stance,
    ) -> Result<f64, ScorerError>;

    fn is_reentrant(&self) -> bool {
        true
    }
}

pub trait GraphStanceClassifier: Send + Sync {
    fn classify(&self, belief: &str, graph_text: &str) -> Result<GraphLabel, ScorerError>;

    fn is_reentrant(&self) -> bool {
        true
    }
}

pub(crate) fn check_unit(x: f64) -> Result<f64, ScorerError> {
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(ScorerError::OutOfRange(x))
    }
}
