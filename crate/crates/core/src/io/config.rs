//! Run configuration as `key = value` lines; `#` starts a comment.
//!
//! | key                    | values                          | default    |
//! |------------------------|---------------------------------|------------|
//! | `vocabulary`           | path to a relation list         | built in   |
//! | `similarity`           | `token-f1`, `sidecar`           | `token-f1` |
//! | `stance`               | `overlap`, `hash`, `sidecar`    | `overlap`  |
//! | `classifier`           | `rule`, `sidecar`               | `rule`     |
//! | `sidecar_command`      | shell command line              |            |
//! | `sidecar_timeout_secs` | positive number                 | `30`       |
//! | `ged_aggregation`      | `min`, `first`                  | `min`      |
//! | `parse_mode`           | `lenient`, `strict`             | `lenient`  |
//! | `parallel`             | `true`, `false`                 | `true`     |
//!
//! Relative vocabulary paths resolve against the config file's directory.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use crate::metrics::{
    EdgeSimilarityScorer, EvalConfig, GedAggregation, GraphStanceClassifier, Scorers, StanceScorer,
};
use crate::plugins::sidecar::DEFAULT_TIMEOUT;
use crate::plugins::{HashStanceScorer, OverlapStanceScorer, RuleClassifier, SidecarScorer, TokenF1Scorer};
use crate::vocab::RelationVocabulary;

use super::{read_text, IoError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimilarityChoice {
    TokenF1,
    Sidecar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StanceChoice {
    Overlap,
    Hash,
    Sidecar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassifierChoice {
    Rule,
    Sidecar,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub vocabulary: Option<PathBuf>,
    pub similarity: SimilarityChoice,
    pub stance: StanceChoice,
    pub classifier: ClassifierChoice,
    pub sidecar_command: Option<String>,
    pub sidecar_timeout: Duration,
    pub ged_aggregation: GedAggregation,
    pub strict_parse: bool,
    pub parallel: bool,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            vocabulary: None,
            similarity: SimilarityChoice::TokenF1,
            stance: StanceChoice::Overlap,
            classifier: ClassifierChoice::Rule,
            sidecar_command: None,
            sidecar_timeout: DEFAULT_TIMEOUT,
            ged_aggregation: GedAggregation::Min,
            strict_parse: false,
            parallel: true,
        }
    }
}

fn bad(line: usize, message: impl Into<String>) -> IoError {
    IoError::Config { line, message: message.into() }
}

impl Config {
    pub fn parse(text: &str, base_dir: Option<&Path>) -> Result<Self, IoError> {
        let mut cfg = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| bad(line, format!("expected key = value, got {content:?}")))?;
            let choice_err = |allowed: &str| bad(line, format!("{key}: expected {allowed}, got {value:?}"));
            match key {
                "vocabulary" => {
                    let p = PathBuf::from(value);
                    cfg.vocabulary = Some(match base_dir {
                        Some(dir) if p.is_relative() => dir.join(p),
                        _ => p,
                    });
                }
                "similarity" => {
                    cfg.similarity = match value {
                        "token-f1" => SimilarityChoice::TokenF1,
                        "sidecar" => SimilarityChoice::Sidecar,
                        _ => return Err(choice_err("token-f1|sidecar")),
                    }
                }
                "stance" => {
                    cfg.stance = match value {
                        "overlap" | "stub" => StanceChoice::Overlap,
                        "hash" => StanceChoice::Hash,
                        "sidecar" => StanceChoice::Sidecar,
                        _ => return Err(choice_err("overlap|hash|sidecar")),
                    }
                }
                "classifier" => {
                    cfg.classifier = match value {
                        "rule" | "stub" => ClassifierChoice::Rule,
                        "sidecar" => ClassifierChoice::Sidecar,
                        _ => return Err(choice_err("rule|sidecar")),
                    }
                }
                "sidecar_command" => cfg.sidecar_command = Some(value.to_string()),
                "sidecar_timeout_secs" => {
                    let secs: f64 = value.parse().map_err(|_| choice_err("a number"))?;
                    if !(secs > 0.0 && secs.is_finite()) {
                        return Err(choice_err("a positive number"));
                    }
                    cfg.sidecar_timeout = Duration::from_secs_f64(secs);
                }
                "ged_aggregation" => cfg.ged_aggregation = value.parse().map_err(|e: String| bad(line, e))?,
                "parse_mode" => {
                    cfg.strict_parse = match value {
                        "strict" => true,
                        "lenient" => false,
                        _ => return Err(choice_err("strict|lenient")),
                    }
                }
                "parallel" => cfg.parallel = value.parse().map_err(|_| choice_err("true|false"))?,
                _ => return Err(bad(line, format!("unknown key {key:?}"))),
            }
        }
        if cfg.uses_sidecar() && cfg.sidecar_command.is_none() {
            return Err(bad(0, "a sidecar scorer is selected but sidecar_command is unset"));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, IoError> {
        Self::parse(&read_text(path)?, path.parent())
    }

    pub fn uses_sidecar(&self) -> bool {
        self.similarity == SimilarityChoice::Sidecar
            || self.stance == StanceChoice::Sidecar
            || self.classifier == ClassifierChoice::Sidecar
    }

    pub fn vocab(&self) -> Result<RelationVocabulary, IoError> {
        match &self.vocabulary {
            Some(p) => Ok(RelationVocabulary::load(p)?),
            None => Ok(RelationVocabulary::default()),
        }
    }

    pub fn eval_config(&self) -> Result<EvalConfig, IoError> {
        Ok(EvalConfig {
            vocab: self.vocab()?,
            ged_aggregation: self.ged_aggregation,
            parallel: self.parallel,
        })
    }

    /// Instantiates the selected scorers. One sidecar process backs every
    /// role that asks for it.
    pub fn scorers(&self) -> Result<ScorerSet, IoError> {
        let sidecar = match (&self.sidecar_command, self.uses_sidecar()) {
            (Some(cmd), true) => Some(Arc::new(SidecarScorer::launch(cmd, self.sidecar_timeout)?)),
            _ => None,
        };
        let side = || sidecar.clone().expect("sidecar launched when selected");
        Ok(ScorerSet {
            similarity: match self.similarity {
                SimilarityChoice::TokenF1 => Arc::new(TokenF1Scorer),
                SimilarityChoice::Sidecar => side(),
            },
            stance: match self.stance {
                StanceChoice::Overlap => Arc::new(OverlapStanceScorer),
                StanceChoice::Hash => Arc::new(HashStanceScorer),
                StanceChoice::Sidecar => side(),
            },
            classifier: match self.classifier {
                ClassifierChoice::Rule => Arc::new(RuleClassifier),
                ClassifierChoice::Sidecar => side(),
            },
        })
    }
}

pub struct ScorerSet {
    pub similarity: Arc<dyn EdgeSimilarityScorer>,
    pub stance: Arc<dyn StanceScorer>,
    pub classifier: Arc<dyn GraphStanceClassifier>,
}

impl ScorerSet {
    pub fn scorers(&self) -> Scorers<'_> {
        Scorers {
            similarity: &*self.similarity,
            stance: &*self.stance,
            classifier: &*self.classifier,
        }
    }
}
