//! Tab-separated corpora.
//!
//! Dataset rows: `belief \t argument \t stance \t graph [\t graph2]`.
//! Prediction rows: `stance \t graph`, paired with dataset rows by position.
//! Blank lines are skipped; row numbers in errors are 1-based line numbers.

use crate::graph::{parse_graph, ExplanationGraph};
use crate::metrics::{Prediction, Sample, Stance};

use super::IoError;

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetRow {
    pub line: usize,
    pub belief: String,
    pub argument: String,
    pub stance: Stance,
    pub graphs: Vec<ExplanationGraph>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredictionRow {
    pub line: usize,
    pub stance: Stance,
    pub graph_text: String,
}

fn rows(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| (n, l.split('\t').collect()))
}

fn row_err(row: usize, message: impl Into<String>) -> IoError {
    IoError::Row { row, message: message.into() }
}

pub fn parse_dataset(text: &str) -> Result<Vec<DatasetRow>, IoError> {
    let mut out = Vec::new();
    for (line, cols) in rows(text) {
        if !(4..=5).contains(&cols.len()) {
            return Err(row_err(line, format!("expected 4 or 5 columns, got {}", cols.len())));
        }
        let stance = cols[2].parse().map_err(|e: String| row_err(line, e))?;
        let graphs = cols[3..]
            .iter()
            .map(|g| parse_graph(g).map_err(|e| row_err(line, e.to_string())))
            .collect::<Result<_, _>>()?;
        out.push(DatasetRow {
            line,
            belief: cols[0].trim().to_string(),
            argument: cols[1].trim().to_string(),
            stance,
            graphs,
        });
    }
    Ok(out)
}

/// With `strict`, a prediction graph that does not parse is an error;
/// otherwise it is kept and later scored as structurally incorrect.
pub fn parse_predictions(text: &str, strict: bool) -> Result<Vec<PredictionRow>, IoError> {
    let mut out = Vec::new();
    for (line, cols) in rows(text) {
        if cols.len() != 2 {
            return Err(row_err(line, format!("expected 2 columns, got {}", cols.len())));
        }
        let stance = cols[0].parse().map_err(|e: String| row_err(line, e))?;
        if strict {
            parse_graph(cols[1]).map_err(|e| row_err(line, e.to_string()))?;
        }
        out.push(PredictionRow { line, stance, graph_text: cols[1].to_string() });
    }
    Ok(out)
}

/// Zero-padded so that id order is row order.
pub fn row_id(index: usize) -> String {
    format!("{index:06}")
}

pub fn to_samples(rows: &[DatasetRow]) -> Vec<Sample> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| Sample {
            id: row_id(i),
            belief: r.belief.clone(),
            argument: r.argument.clone(),
            gold_stance: r.stance,
            gold_graphs: r.graphs.clone(),
        })
        .collect()
}

pub fn to_predictions(rows: &[PredictionRow]) -> Vec<Prediction> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| Prediction { id: row_id(i), stance: r.stance, graph_text: r.graph_text.clone() })
        .collect()
}

pub fn format_dataset_row(belief: &str, argument: &str, stance: Stance, graphs: &[ExplanationGraph]) -> String {
    let mut cols = vec![belief.to_string(), argument.to_string(), stance.to_string()];
    cols.extend(graphs.iter().map(ExplanationGraph::serialize));
    cols.join("\t")
}
