//! Edge importance: an edge matters when removing it lowers the stance
//! scorer's confidence in the gold stance.

use crate::graph::{serialize_edges, ExplanationGraph};
use crate::metrics::scorer::{check_unit, Stance, StanceScorer};
use crate::metrics::MetricError;

/// Per-edge importance flags, in edge order.
pub fn important_edges(
    belief: &str,
    argument: &str,
    gold_stance: Stance,
    pred: &ExplanationGraph,
    scorer: &dyn StanceScorer,
) -> Result<Vec<bool>, MetricError> {
    let full = check_unit(scorer.probability(belief, argument, &pred.serialize(), gold_stance)?)?;
    let edges = pred.edges();
    let mut flags = Vec::with_capacity(edges.len());
    for i in 0..edges.len() {
        let mut reduced = edges.to_vec();
        reduced.remove(i);
        let text = serialize_edges(&reduced);
        let p = check_unit(scorer.probability(belief, argument, &text, gold_stance)?)?;
        flags.push(p < full);
    }
    Ok(flags)
}

/// Fraction of edges that are important.
pub fn ea(
    belief: &str,
    argument: &str,
    gold_stance: Stance,
    pred: &ExplanationGraph,
    scorer: &dyn StanceScorer,
) -> Result<f64, MetricError> {
    let flags = important_edges(belief, argument, gold_stance, pred, scorer)?;
    Ok(flags.iter().filter(|&&f| f).count() as f64 / flags.len() as f64)
}
