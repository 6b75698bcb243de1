//! Decoder input: nodes with origins plus, for each ordered pair `(m, n)` with
//! `m != n`, a probability vector over the relations followed by a final
//! no-edge entry.
//!
//! JSON form:
//!
//! ```json
//! {
//!   "nodes": [{"label": "factory farming", "origin": "belief"}, ...],
//!   "relations": ["causes", "not causes", ...],
//!   "probs": [[p_r0, p_r1, ..., p_none], ...]
//! }
//! ```
//!
//! `probs` is row-major over ordered pairs in node-index order, skipping the
//! diagonal: `(0,1), (0,2), ..., (1,0), (1,2), ...`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Concept;
use crate::origin::NodeOrigin;

pub const MIN_NODES: usize = 2;
pub const MAX_NODES: usize = 8;
const SUM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TensorError {
    #[error("tensor needs {MIN_NODES}..={MAX_NODES} nodes, got {0}")]
    NodeCount(usize),
    #[error("node {index}: {message}")]
    BadNode { index: usize, message: String },
    #[error("duplicate node label {0:?}")]
    DuplicateNode(String),
    #[error("relation list is empty")]
    NoRelations,
    #[error("duplicate relation {0:?}")]
    DuplicateRelation(String),
    #[error("expected {expected} probability vectors, got {got}")]
    PairCount { expected: usize, got: usize },
    #[error("vector for pair ({head}, {tail}) has length {got}, expected {expected}")]
    VectorLength { head: usize, tail: usize, got: usize, expected: usize },
    #[error("vector for pair ({head}, {tail}) has entry {value} outside [0, 1]")]
    Entry { head: usize, tail: usize, value: f64 },
    #[error("vector for pair ({head}, {tail}) sums to {sum}, not 1")]
    Sum { head: usize, tail: usize, sum: f64 },
    #[error("json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorNode {
    pub label: String,
    pub origin: NodeOrigin,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct TensorFile {
    nodes: Vec<TensorNode>,
    relations: Vec<String>,
    probs: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeProbTensor {
    nodes: Vec<TensorNode>,
    concepts: Vec<Concept>,
    relations: Vec<String>,
    probs: Vec<Vec<f64>>,
}

/// Position of the ordered pair `(m, n)` in the row-major, diagonal-free layout.
pub fn pair_index(node_count: usize, m: usize, n: usize) -> usize {
    debug_assert!(m != n && m < node_count && n < node_count);
    m * (node_count - 1) + if n < m { n } else { n - 1 }
}

impl EdgeProbTensor {
    pub fn new(
        nodes: Vec<TensorNode>,
        relations: Vec<String>,
        probs: Vec<Vec<f64>>,
    ) -> Result<Self, TensorError> {
        let n = nodes.len();
        if !(MIN_NODES..=MAX_NODES).contains(&n) {
            return Err(TensorError::NodeCount(n));
        }
        let mut concepts = Vec::with_capacity(n);
        let mut seen = HashSet::new();
        for (index, node) in nodes.iter().enumerate() {
            let c = Concept::new(&node.label).map_err(|e| TensorError::BadNode {
                index,
                message: e.to_string(),
            })?;
            if !seen.insert(c.normalized().to_string()) {
                return Err(TensorError::DuplicateNode(node.label.clone()));
            }
            concepts.push(c);
        }
        if relations.is_empty() {
            return Err(TensorError::NoRelations);
        }
        let mut rel_seen = HashSet::new();
        for r in &relations {
            if !rel_seen.insert(crate::graph::normalize_text(r)) {
                return Err(TensorError::DuplicateRelation(r.clone()));
            }
        }
        let expected = n * (n - 1);
        if probs.len() != expected {
            return Err(TensorError::PairCount { expected, got: probs.len() });
        }
        let width = relations.len() + 1;
        for m in 0..n {
            for t in (0..n).filter(|&t| t != m) {
                let v = &probs[pair_index(n, m, t)];
                if v.len() != width {
                    return Err(TensorError::VectorLength { head: m, tail: t, got: v.len(), expected: width });
                }
                if let Some(&value) = v.iter().find(|x| !(0.0..=1.0).contains(*x)) {
                    return Err(TensorError::Entry { head: m, tail: t, value });
                }
                let sum: f64 = v.iter().sum();
                if (sum - 1.0).abs() > SUM_TOLERANCE {
                    return Err(TensorError::Sum { head: m, tail: t, sum });
                }
            }
        }
        Ok(Self { nodes, concepts, relations, probs })
    }

    pub fn from_json(text: &str) -> Result<Self, TensorError> {
        let file: TensorFile = serde_json::from_str(text).map_err(|e| TensorError::Json(e.to_string()))?;
        Self::new(file.nodes, file.relations, file.probs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TensorFile {
            nodes: self.nodes.clone(),
            relations: self.relations.clone(),
            probs: self.probs.clone(),
        })
        .expect("tensor serializes")
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[TensorNode] {
        &self.nodes
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn relations(&self) -> &[String] {
        &self.relations
    }

    /// Probability vector for `m -> n`; the last entry is the no-edge mass.
    pub fn probs(&self, m: usize, n: usize) -> &[f64] {
        &self.probs[pair_index(self.node_count(), m, n)]
    }

    pub fn no_edge(&self, m: usize, n: usize) -> f64 {
        *self.probs(m, n).last().expect("non-empty vector")
    }

    /// Most likely relation for `m -> n` (lowest index on ties) and its probability.
    pub fn best_relation(&self, m: usize, n: usize) -> (usize, f64) {
        let v = self.probs(m, n);
        let mut best = (0, v[0]);
        for (r, &p) in v[..self.relations.len()].iter().enumerate().skip(1) {
            if p > best.1 {
                best = (r, p);
            }
        }
        best
    }

    /// Texts that make every node's origin reproducible by the matching rule:
    /// the belief- and argument-side labels joined into sentences.
    pub fn implied_texts(&self) -> (String, String) {
        let join = |pred: fn(NodeOrigin) -> bool| {
            self.nodes
                .iter()
                .filter(|n| pred(n.origin))
                .map(|n| n.label.as_str())
                .collect::<Vec<_>>()
                .join(". ")
        };
        (join(NodeOrigin::in_belief), join(NodeOrigin::in_argument))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(label: &str, origin: NodeOrigin) -> TensorNode {
        TensorNode { label: label.into(), origin }
    }

    #[test]
    fn pair_layout() {
        let order: Vec<usize> = (0..3)
            .flat_map(|m| (0..3).filter(move |&n| n != m).map(move |n| pair_index(3, m, n)))
            .collect();
        assert_eq!(order, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(pair_index(4, 2, 1), 7);
    }

    #[test]
    fn validates_invariants() {
        let nodes = vec![node("a", NodeOrigin::Belief), node("b", NodeOrigin::Argument)];
        let rels = vec!["causes".to_string()];
        let ok = vec![vec![0.3, 0.7], vec![0.5, 0.5]];
        assert!(EdgeProbTensor::new(nodes.clone(), rels.clone(), ok).is_ok());
        assert!(matches!(
            EdgeProbTensor::new(nodes.clone(), rels.clone(), vec![vec![0.3, 0.6], vec![0.5, 0.5]]),
            Err(TensorError::Sum { head: 0, tail: 1, .. })
        ));
        assert!(matches!(
            EdgeProbTensor::new(nodes.clone(), rels.clone(), vec![vec![0.3, 0.7]]),
            Err(TensorError::PairCount { expected: 2, got: 1 })
        ));
        assert!(matches!(
            EdgeProbTensor::new(nodes.clone(), rels.clone(), vec![vec![1.0], vec![0.5, 0.5]]),
            Err(TensorError::VectorLength { .. })
        ));
        assert!(matches!(
            EdgeProbTensor::new(nodes.clone(), rels.clone(), vec![vec![1.5, -0.5], vec![0.5, 0.5]]),
            Err(TensorError::Entry { .. })
        ));
        assert_eq!(
            EdgeProbTensor::new(vec![node("a", NodeOrigin::Belief)], rels.clone(), vec![]),
            Err(TensorError::NodeCount(1))
        );
        let dup = vec![node("a", NodeOrigin::Belief), node("A", NodeOrigin::Argument)];
        assert!(matches!(
            EdgeProbTensor::new(dup, rels, vec![vec![0.5, 0.5]; 2]),
            Err(TensorError::DuplicateNode(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"nodes":[{"label":"a","origin":"belief"},{"label":"b","origin":"external"}],
                       "relations":["causes","not causes"],
                       "probs":[[0.2,0.3,0.5],[0.1,0.1,0.8]]}"#;
        let t = EdgeProbTensor::from_json(text).unwrap();
        assert_eq!(t.best_relation(0, 1), (1, 0.3));
        assert_eq!(t.no_edge(1, 0), 0.8);
        assert_eq!(EdgeProbTensor::from_json(&t.to_json()).unwrap(), t);
        assert!(matches!(EdgeProbTensor::from_json("{"), Err(TensorError::Json(_))));
    }

    #[test]
    fn best_relation_prefers_lowest_index_on_ties() {
        let nodes = vec![node("a", NodeOrigin::Belief), node("b", NodeOrigin::Argument)];
        let rels = vec!["x".to_string(), "y".to_string()];
        let t = EdgeProbTensor::new(nodes, rels, vec![vec![0.4, 0.4, 0.2], vec![0.2, 0.4, 0.4]]).unwrap();
        assert_eq!(t.best_relation(0, 1).0, 0);
        assert_eq!(t.best_relation(1, 0).0, 1);
    }
}
