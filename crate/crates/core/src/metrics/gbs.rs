//! Graph-level matching F1: edges are sentences, matched one-to-one by a
//! maximum-weight assignment under a sentence similarity scorer.

use crate::graph::{Edge, ExplanationGraph};
use crate::metrics::matching::{hungarian, ScoreMatrix};
use crate::metrics::scorer::{check_unit, EdgeSimilarityScorer};
use crate::metrics::MetricError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchScore {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

fn f1(precision: f64, recall: f64) -> f64 {
    if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    }
}

/// Precision/recall/F1 of `pred` against a single gold edge list.
pub fn match_edges(
    pred: &[Edge],
    gold: &[Edge],
    scorer: &dyn EdgeSimilarityScorer,
) -> Result<MatchScore, MetricError> {
    if pred.is_empty() || gold.is_empty() {
        return Ok(MatchScore { precision: 0.0, recall: 0.0, f1: 0.0 });
    }
    let pred_s: Vec<String> = pred.iter().map(Edge::sentence).collect();
    let gold_s: Vec<String> = gold.iter().map(Edge::sentence).collect();
    let mut rows = Vec::with_capacity(pred_s.len());
    for p in &pred_s {
        let mut row = Vec::with_capacity(gold_s.len());
        for g in &gold_s {
            row.push(check_unit(scorer.score(p, g)?)?);
        }
        rows.push(row);
    }
    let matrix = ScoreMatrix::new(&rows).map_err(|e| MetricError::Internal(e.to_string()))?;
    let total = hungarian(&matrix).weight;
    let precision = total / pred.len() as f64;
    let recall = total / gold.len() as f64;
    Ok(MatchScore { precision, recall, f1: f1(precision, recall) })
}

/// Best F1 over all gold graphs.
pub fn gbs(
    pred: &ExplanationGraph,
    gold_graphs: &[ExplanationGraph],
    scorer: &dyn EdgeSimilarityScorer,
) -> Result<f64, MetricError> {
    if gold_graphs.is_empty() {
        return Err(MetricError::NoGold);
    }
    let mut best = 0.0f64;
    for gold in gold_graphs {
        best = best.max(match_edges(pred.edges(), gold.edges(), scorer)?.f1);
    }
    Ok(best)
}
