use crate::graph::ExplanationGraph;
use crate::metrics::scorer::{GraphLabel, GraphStanceClassifier, Stance};
use crate::metrics::MetricError;

/// True when the classifier's label for (belief, graph) equals the gold stance.
pub fn seca(
    belief: &str,
    gold_stance: Stance,
    pred: &ExplanationGraph,
    classifier: &dyn GraphStanceClassifier,
) -> Result<bool, MetricError> {
    let label = classifier.classify(belief, &pred.serialize())?;
    Ok(label == GraphLabel::from(gold_stance))
}
