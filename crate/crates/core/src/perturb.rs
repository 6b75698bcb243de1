//! Structure-preserving random edits, used to synthesize "incorrect" graphs
//! for training a graph/stance classifier.
//!
//! Every operator keeps the node set unchanged, so checks that depend only on
//! nodes (word counts, belief/argument coverage) carry over from the input.
//! Operators that would break connectivity, acyclicity, the edge-count window
//! or the no-duplicate rule are re-sampled.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Edge, ExplanationGraph};
use crate::topology;
use crate::validate::{MAX_EDGES, MIN_EDGES};
use crate::vocab::RelationVocabulary;

const ATTEMPTS_PER_OP: usize = 100;
const RESTARTS: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PerturbError {
    #[error("operator count must be 1..=3, got {0}")]
    OpCount(usize),
    #[error("input graph is not a connected DAG with {MIN_EDGES}..={MAX_EDGES} edges")]
    InvalidInput,
    #[error("vocabulary needs at least two relations")]
    TinyVocabulary,
    #[error("no feasible perturbation found within the retry budget")]
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerturbOp {
    AddEdge,
    RemoveEdge,
    ReplaceRelation,
}

fn structurally_ok(edges: &[Edge]) -> bool {
    let Ok(g) = ExplanationGraph::new(edges.to_vec()) else {
        return false;
    };
    let pairs = g.index_pairs();
    (MIN_EDGES..=MAX_EDGES).contains(&g.edge_count())
        && topology::weakly_connected(g.node_count(), &pairs)
        && topology::is_acyclic(g.node_count(), &pairs)
}

fn try_op(
    op: PerturbOp,
    edges: &[Edge],
    nodes: &[crate::graph::Concept],
    vocab: &RelationVocabulary,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<Edge>> {
    let mut out = edges.to_vec();
    match op {
        PerturbOp::AddEdge => {
            let h = rng.gen_range(0..nodes.len());
            let t = rng.gen_range(0..nodes.len());
            let r = vocab.relations().choose(rng)?;
            let e = Edge::new(nodes[h].clone(), r.name(), nodes[t].clone()).ok()?;
            if out.contains(&e) {
                return None;
            }
            out.push(e);
        }
        PerturbOp::RemoveEdge => {
            let i = rng.gen_range(0..out.len());
            out.remove(i);
            let remaining: HashSet<&str> = out
                .iter()
                .flat_map(|e| [e.head.normalized(), e.tail.normalized()])
                .collect();
            if remaining.len() != nodes.len() {
                return None;
            }
        }
        PerturbOp::ReplaceRelation => {
            let i = rng.gen_range(0..out.len());
            let current = out[i].relation_key().to_string();
            let choices: Vec<_> = vocab
                .relations()
                .iter()
                .filter(|r| r.name() != current)
                .collect();
            let r = choices.choose(rng)?;
            let e = out[i].with_relation(r.name()).ok()?;
            if out.contains(&e) {
                return None;
            }
            out[i] = e;
        }
    }
    structurally_ok(&out).then_some(out)
}

fn edge_set(edges: &[Edge]) -> HashSet<&Edge> {
    edges.iter().collect()
}

/// Applies `ops` random operators (1..=3) drawn uniformly from add / remove /
/// replace. Deterministic for a given seed.
pub fn perturb(
    g: &ExplanationGraph,
    vocab: &RelationVocabulary,
    ops: usize,
    seed: u64,
) -> Result<ExplanationGraph, PerturbError> {
    if !(1..=3).contains(&ops) {
        return Err(PerturbError::OpCount(ops));
    }
    if vocab.len() < 2 {
        return Err(PerturbError::TinyVocabulary);
    }
    if !structurally_ok(g.edges()) {
        return Err(PerturbError::InvalidInput);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes = g.nodes();
    let original = edge_set(g.edges());

    'restart: for _ in 0..RESTARTS {
        let mut edges = g.edges().to_vec();
        for _ in 0..ops {
            let mut kinds = vec![PerturbOp::ReplaceRelation];
            if edges.len() < MAX_EDGES {
                kinds.push(PerturbOp::AddEdge);
            }
            if edges.len() > MIN_EDGES {
                kinds.push(PerturbOp::RemoveEdge);
            }
            let mut applied = false;
            for _ in 0..ATTEMPTS_PER_OP {
                let op = *kinds.choose(&mut rng).expect("non-empty");
                if let Some(next) = try_op(op, &edges, nodes, vocab, &mut rng) {
                    edges = next;
                    applied = true;
                    break;
                }
            }
            if !applied {
                continue 'restart;
            }
        }
        if edge_set(&edges) != original {
            return Ok(ExplanationGraph::new(edges).expect("checked by structurally_ok"));
        }
    }
    Err(PerturbError::Infeasible)
}
