//! Deterministic stand-ins for the neural stance scorer and graph classifier.

use sha2::{Digest, Sha256};

use crate::graph::parse_graph;
use crate::metrics::scorer::{GraphLabel, GraphStanceClassifier, ScorerError, Stance, StanceScorer};
use crate::origin::{tokenize, OriginMatcher};

/// Maps a SHA-256 of its inputs to `[0, 1)`. Only useful as a reproducible
/// test double.
#[derive(Debug, Clone, Copy, Default)]
pub struct HashStanceScorer;

impl StanceScorer for HashStanceScorer {
    fn probability(
        &self,
        belief: &str,
        argument: &str,
        graph_text: &str,
        target: Stance,
    ) -> Result<f64, ScorerError> {
        let mut h = Sha256::new();
        for part in [belief, argument, graph_text, target.as_str()] {
            h.update(part.as_bytes());
            h.update([0u8]);
        }
        let digest = h.finalize();
        let mut word = [0u8; 8];
        word.copy_from_slice(&digest[..8]);
        Ok((u64::from_be_bytes(word) >> 11) as f64 / (1u64 << 53) as f64)
    }
}

fn is_negating(relation_key: &str) -> bool {
    relation_key.starts_with("not ") || relation_key == "antonym of"
}

/// Keyword/negation heuristic: a graph that fails to parse or never touches
/// the belief is `incorrect`; otherwise an odd number of negating relations
/// (`not ...`, `antonym of`) reads as `counter` and an even number as
/// `support`.
#[derive(Debug, Clone, Copy, Default)]
pub struct RuleClassifier;

impl RuleClassifier {
    pub fn label(belief: &str, graph_text: &str) -> GraphLabel {
        let Ok(g) = parse_graph(graph_text) else {
            return GraphLabel::Incorrect;
        };
        let matcher = OriginMatcher::new(belief, "");
        if !g.nodes().iter().any(|n| matcher.classify(n.label()).in_belief()) {
            return GraphLabel::Incorrect;
        }
        let negations = g.edges().iter().filter(|e| is_negating(e.relation_key())).count();
        if negations % 2 == 1 {
            GraphLabel::Counter
        } else {
            GraphLabel::Support
        }
    }
}

impl GraphStanceClassifier for RuleClassifier {
    fn classify(&self, belief: &str, graph_text: &str) -> Result<GraphLabel, ScorerError> {
        Ok(Self::label(belief, graph_text))
    }
}

/// Confidence grows with how much of the belief and argument the graph's
/// concepts cover; direction comes from [`RuleClassifier`].
#[derive(Debug, Clone, Copy, Default)]
pub struct OverlapStanceScorer;

impl StanceScorer for OverlapStanceScorer {
    fn probability(
        &self,
        belief: &str,
        argument: &str,
        graph_text: &str,
        target: Stance,
    ) -> Result<f64, ScorerError> {
        let label = RuleClassifier::label(belief, graph_text);
        if label == GraphLabel::Incorrect {
            return Ok(0.5);
        }
        let mut context: Vec<String> = tokenize(belief);
        context.extend(tokenize(argument));
        context.sort();
        context.dedup();
        if context.is_empty() {
            return Ok(0.5);
        }
        let g = parse_graph(graph_text).expect("parsed by the classifier");
        let covered: std::collections::HashSet<String> =
            g.nodes().iter().flat_map(|n| tokenize(n.label())).collect();
        let coverage = context.iter().filter(|t| covered.contains(*t)).count() as f64 / context.len() as f64;
        Ok(if label == GraphLabel::from(target) {
            0.5 + 0.5 * coverage
        } else {
            0.5 - 0.5 * coverage
        })
    }
}
