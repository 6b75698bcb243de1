use std::collections::{HashMap, HashSet};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{parse_graph, ExplanationGraph};
use crate::metrics::ged::ged;
use crate::metrics::scorer::{
    EdgeSimilarityScorer, GraphLabel, GraphStanceClassifier, Stance, StanceScorer,
};
use crate::metrics::{ea, gbs, MetricError};
use crate::validate::validate;
use crate::vocab::RelationVocabulary;

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub id: String,
    pub belief: String,
    pub argument: String,
    pub gold_stance: Stance,
    pub gold_graphs: Vec<ExplanationGraph>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub id: String,
    pub stance: Stance,
    /// Raw model output; may not parse.
    pub graph_text: String,
}

/// How per-sample edit distance is reduced over several gold graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GedAggregation {
    #[default]
    Min,
    First,
}

impl FromStr for GedAggregation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "min" => Ok(GedAggregation::Min),
            "first" => Ok(GedAggregation::First),
            other => Err(format!("unknown GED aggregation {other:?} (min|first)")),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct EvalConfig {
    pub vocab: RelationVocabulary,
    pub ged_aggregation: GedAggregation,
    /// Evaluate samples on the rayon pool when every scorer is reentrant.
    pub parallel: bool,
}

#[derive(Clone, Copy)]
pub struct Scorers<'a> {
    pub similarity: &'a dyn EdgeSimilarityScorer,
    pub stance: &'a dyn StanceScorer,
    pub classifier: &'a dyn GraphStanceClassifier,
}

impl Scorers<'_> {
    pub fn reentrant(&self) -> bool {
        self.similarity.is_reentrant() && self.stance.is_reentrant() && self.classifier.is_reentrant()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleOutcome {
    pub id: String,
    pub stance_correct: bool,
    pub structurally_correct: bool,
    /// Classifier label; absent when the sample was gated out.
    pub seca_label: Option<GraphLabel>,
    pub seca: bool,
    pub gbs: f64,
    pub ged: f64,
    pub ea: f64,
}

impl SampleOutcome {
    pub fn gated_in(&self) -> bool {
        self.stance_correct && self.structurally_correct
    }

    fn gated_out(id: &str, stance_correct: bool, structurally_correct: bool) -> Self {
        Self {
            id: id.to_string(),
            stance_correct,
            structurally_correct,
            seca_label: None,
            seca: false,
            gbs: 0.0,
            ged: 1.0,
            ea: 0.0,
        }
    }
}

/// Corpus means, all in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Aggregates {
    pub sa: f64,
    pub stca: f64,
    pub seca: f64,
    pub gbs: f64,
    pub ged: f64,
    pub ea: f64,
}

impl Aggregates {
    /// Means over outcomes, summed in id order so the result does not depend
    /// on input order.
    pub fn from_outcomes(outcomes: &[SampleOutcome]) -> Self {
        if outcomes.is_empty() {
            return Self::default();
        }
        let mut sorted: Vec<&SampleOutcome> = outcomes.iter().collect();
        sorted.sort_by(|a, b| a.id.cmp(&b.id));
        let n = sorted.len() as f64;
        let frac = |f: &dyn Fn(&SampleOutcome) -> bool| sorted.iter().filter(|o| f(o)).count() as f64 / n;
        let mean = |f: &dyn Fn(&SampleOutcome) -> f64| sorted.iter().map(|o| f(o)).sum::<f64>() / n;
        Self {
            sa: frac(&|o| o.stance_correct),
            stca: frac(&|o| o.gated_in()),
            seca: frac(&|o| o.gated_in() && o.seca),
            gbs: mean(&|o| o.gbs),
            ged: mean(&|o| o.ged),
            ea: mean(&|o| o.ea),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub per_sample: Vec<SampleOutcome>,
    pub aggregate: Aggregates,
}

fn evaluate_sample(
    sample: &Sample,
    pred: &Prediction,
    scorers: Scorers<'_>,
    config: &EvalConfig,
) -> Result<SampleOutcome, MetricError> {
    let stance_correct = pred.stance == sample.gold_stance;
    let graph = parse_graph(&pred.graph_text).ok();
    let structurally_correct = graph.as_ref().is_some_and(|g| {
        validate(g, &sample.belief, &sample.argument, &config.vocab).overall
    });
    let Some(graph) = graph.filter(|_| stance_correct && structurally_correct) else {
        return Ok(SampleOutcome::gated_out(&sample.id, stance_correct, structurally_correct));
    };
    if sample.gold_graphs.is_empty() {
        return Err(MetricError::NoGold);
    }

    let label = scorers.classifier.classify(&sample.belief, &graph.serialize())?;
    let gbs_value = gbs(&graph, &sample.gold_graphs, scorers.similarity)?;
    let ged_value = match config.ged_aggregation {
        GedAggregation::First => ged(&graph, &sample.gold_graphs[0])?,
        GedAggregation::Min => {
            let mut best = f64::INFINITY;
            for gold in &sample.gold_graphs {
                best = best.min(ged(&graph, gold)?);
            }
            best
        }
    };
    let ea_value = ea(&sample.belief, &sample.argument, sample.gold_stance, &graph, scorers.stance)?;
    Ok(SampleOutcome {
        id: sample.id.clone(),
        stance_correct,
        structurally_correct,
        seca_label: Some(label),
        seca: label == GraphLabel::from(sample.gold_stance),
        gbs: gbs_value,
        ged: ged_value,
        ea: ea_value,
    })
}

/// Runs every level over a corpus. Outcomes are returned in sample order.
pub fn evaluate_corpus(
    samples: &[Sample],
    predictions: &[Prediction],
    scorers: Scorers<'_>,
    config: &EvalConfig,
) -> Result<MetricReport, MetricError> {
    let mut seen = HashSet::new();
    for s in samples {
        if !seen.insert(s.id.as_str()) {
            return Err(MetricError::DuplicateId(s.id.clone()));
        }
    }
    let mut by_id: HashMap<&str, &Prediction> = HashMap::with_capacity(predictions.len());
    for p in predictions {
        if !seen.contains(p.id.as_str()) {
            return Err(MetricError::UnknownId(p.id.clone()));
        }
        if by_id.insert(p.id.as_str(), p).is_some() {
            return Err(MetricError::DuplicateId(p.id.clone()));
        }
    }
    let pairs: Vec<(&Sample, &Prediction)> = samples
        .iter()
        .map(|s| {
            by_id
                .get(s.id.as_str())
                .map(|p| (s, *p))
                .ok_or_else(|| MetricError::MissingPrediction(s.id.clone()))
        })
        .collect::<Result<_, _>>()?;

    let per_sample: Vec<SampleOutcome> = if config.parallel && scorers.reentrant() {
        pairs
            .par_iter()
            .map(|(s, p)| evaluate_sample(s, p, scorers, config))
            .collect::<Result<_, _>>()?
    } else {
        pairs
            .iter()
            .map(|(s, p)| evaluate_sample(s, p, scorers, config))
            .collect::<Result<_, _>>()?
    };
    let aggregate = Aggregates::from_outcomes(&per_sample);
    Ok(MetricReport { per_sample, aggregate })
}
