//! Edge linearization orders used to build training targets.
//!
//! Tie-breaking: roots (in-degree 0) are taken in normalized-label order and
//! outgoing edges are explored by tail label, then relation. DFS and BFS emit
//! an edge when it is traversed, including edges into already visited nodes.
//! The topological order is Kahn's algorithm with a label-ordered ready queue;
//! each released node emits its outgoing edges sorted by tail.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Edge, ExplanationGraph};
use crate::topology;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ordering {
    Dfs,
    Bfs,
    Topological,
    Random,
}

impl FromStr for Ordering {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "dfs" => Ok(Ordering::Dfs),
            "bfs" => Ok(Ordering::Bfs),
            "topological" | "topo" => Ok(Ordering::Topological),
            "random" => Ok(Ordering::Random),
            other => Err(format!("unknown ordering {other:?} (dfs|bfs|topological|random)")),
        }
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ordering::Dfs => "dfs",
            Ordering::Bfs => "bfs",
            Ordering::Topological => "topological",
            Ordering::Random => "random",
        })
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum OrderError {
    #[error("graph has a directed cycle")]
    NotDag,
    #[error("graph is not connected")]
    Disconnected,
}

/// Per-node outgoing edge indices, sorted by (tail label, relation, position).
fn sorted_adjacency(g: &ExplanationGraph, pairs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); g.node_count()];
    for (i, &(h, _)) in pairs.iter().enumerate() {
        out[h].push(i);
    }
    let edges = g.edges();
    for list in &mut out {
        list.sort_by(|&a, &b| {
            edges[a]
                .tail
                .normalized()
                .cmp(edges[b].tail.normalized())
                .then_with(|| edges[a].relation_key().cmp(edges[b].relation_key()))
                .then(a.cmp(&b))
        });
    }
    out
}

fn sorted_roots(g: &ExplanationGraph, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut indeg = vec![0usize; g.node_count()];
    for &(_, t) in pairs {
        indeg[t] += 1;
    }
    let mut roots: Vec<usize> = (0..g.node_count()).filter(|&v| indeg[v] == 0).collect();
    roots.sort_by(|&a, &b| g.nodes()[a].cmp(&g.nodes()[b]));
    roots
}

fn dfs_order(g: &ExplanationGraph, pairs: &[(usize, usize)]) -> Vec<usize> {
    let adj = sorted_adjacency(g, pairs);
    let mut visited = vec![false; g.node_count()];
    let mut emitted = Vec::with_capacity(pairs.len());
    for root in sorted_roots(g, pairs) {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        // explicit stack of (node, next adjacency slot)
        let mut stack = vec![(root, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, slot) = *top;
            if slot == adj[v].len() {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let e = adj[v][slot];
            emitted.push(e);
            let t = pairs[e].1;
            if !visited[t] {
                visited[t] = true;
                stack.push((t, 0));
            }
        }
    }
    emitted
}

fn bfs_order(g: &ExplanationGraph, pairs: &[(usize, usize)]) -> Vec<usize> {
    let adj = sorted_adjacency(g, pairs);
    let mut visited = vec![false; g.node_count()];
    let mut emitted = Vec::with_capacity(pairs.len());
    for root in sorted_roots(g, pairs) {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in &adj[v] {
                emitted.push(e);
                let t = pairs[e].1;
                if !visited[t] {
                    visited[t] = true;
                    queue.push_back(t);
                }
            }
        }
    }
    emitted
}

fn topological_edge_order(g: &ExplanationGraph, pairs: &[(usize, usize)]) -> Vec<usize> {
    let adj = sorted_adjacency(g, pairs);
    let mut indeg = vec![0usize; g.node_count()];
    for &(_, t) in pairs {
        indeg[t] += 1;
    }
    let nodes = g.nodes();
    let mut ready: BinaryHeap<Reverse<(&str, usize)>> = (0..g.node_count())
        .filter(|&v| indeg[v] == 0)
        .map(|v| Reverse((nodes[v].normalized(), v)))
        .collect();
    let mut emitted = Vec::with_capacity(pairs.len());
    while let Some(Reverse((_, v))) = ready.pop() {
        for &e in &adj[v] {
            emitted.push(e);
            let t = pairs[e].1;
            indeg[t] -= 1;
            if indeg[t] == 0 {
                ready.push(Reverse((nodes[t].normalized(), t)));
            }
        }
    }
    emitted
}

/// Reorders the edges of a connected DAG. The output is always a permutation
/// of `g.edges()`; `seed` is only used by [`Ordering::Random`].
pub fn linearize(g: &ExplanationGraph, ordering: Ordering, seed: u64) -> Result<Vec<Edge>, OrderError> {
    let pairs = g.index_pairs();
    if !topology::is_acyclic(g.node_count(), &pairs) {
        return Err(OrderError::NotDag);
    }
    if !topology::weakly_connected(g.node_count(), &pairs) {
        return Err(OrderError::Disconnected);
    }
    let order = match ordering {
        Ordering::Dfs => dfs_order(g, &pairs),
        Ordering::Bfs => bfs_order(g, &pairs),
        Ordering::Topological => topological_edge_order(g, &pairs),
        Ordering::Random => {
            let mut idx: Vec<usize> = (0..pairs.len()).collect();
            idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            idx
        }
    };
    debug_assert_eq!(order.len(), pairs.len());
    Ok(order.into_iter().map(|i| g.edges()[i].clone()).collect())
}

/// Like [`linearize`] but returns a graph with the reordered edge list.
pub fn reorder(g: &ExplanationGraph, ordering: Ordering, seed: u64) -> Result<ExplanationGraph, OrderError> {
    let edges = linearize(g, ordering, seed)?;
    Ok(ExplanationGraph::new(edges).expect("a permutation of a valid edge list is valid"))
}
