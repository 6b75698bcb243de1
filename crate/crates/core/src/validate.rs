use serde::{Deserialize, Serialize};

use crate::graph::ExplanationGraph;
use crate::origin::node_origins;
use crate::topology;
use crate::vocab::RelationVocabulary;

pub const MIN_EDGES: usize = 3;
pub const MAX_EDGES: usize = 8;
pub const MAX_CONCEPT_WORDS: usize = 3;
pub const MIN_INTERNAL_PER_TEXT: usize = 2;

/// Outcome of every structural check. Failures are data, not errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub relation_in_vocab: bool,
    pub concepts_max_three_words: bool,
    pub edge_count_in_range: bool,
    pub min_two_belief_concepts: bool,
    pub min_two_argument_concepts: bool,
    pub connected: bool,
    pub acyclic: bool,
    pub overall: bool,
}

impl ValidationReport {
    /// Names of the failed checks, in declaration order.
    pub fn failures(&self) -> Vec<&'static str> {
        [
            ("relation_in_vocab", self.relation_in_vocab),
            ("concepts_max_three_words", self.concepts_max_three_words),
            ("edge_count_in_range", self.edge_count_in_range),
            ("min_two_belief_concepts", self.min_two_belief_concepts),
            ("min_two_argument_concepts", self.min_two_argument_concepts),
            ("connected", self.connected),
            ("acyclic", self.acyclic),
        ]
        .into_iter()
        .filter_map(|(name, ok)| (!ok).then_some(name))
        .collect()
    }
}

pub fn validate(
    g: &ExplanationGraph,
    belief: &str,
    argument: &str,
    vocab: &RelationVocabulary,
) -> ValidationReport {
    let relation_in_vocab = g.edges().iter().all(|e| vocab.contains(e.relation()));
    let concepts_max_three_words = g
        .nodes()
        .iter()
        .all(|c| c.word_count() <= MAX_CONCEPT_WORDS);
    let edge_count_in_range = (MIN_EDGES..=MAX_EDGES).contains(&g.edge_count());

    let origins = node_origins(g, belief, argument);
    let min_two_belief_concepts =
        origins.iter().filter(|o| o.in_belief()).count() >= MIN_INTERNAL_PER_TEXT;
    let min_two_argument_concepts =
        origins.iter().filter(|o| o.in_argument()).count() >= MIN_INTERNAL_PER_TEXT;

    let pairs = g.index_pairs();
    let connected = topology::weakly_connected(g.node_count(), &pairs);
    let acyclic = topology::is_acyclic(g.node_count(), &pairs);

    let overall = relation_in_vocab
        && concepts_max_three_words
        && edge_count_in_range
        && min_two_belief_concepts
        && min_two_argument_concepts
        && connected
        && acyclic;
    ValidationReport {
        relation_in_vocab,
        concepts_max_three_words,
        edge_count_in_range,
        min_two_belief_concepts,
        min_two_argument_concepts,
        connected,
        acyclic,
        overall,
    }
}
