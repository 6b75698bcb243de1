use serde::{Deserialize, Serialize};

use crate::graph::ExplanationGraph;
use crate::order::OrderError;
use crate::origin::node_origins;
use crate::topology;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub node_count: usize,
    pub edge_count: usize,
    pub external_node_count: usize,
    /// Edges on the longest directed path.
    pub depth: usize,
    /// True when the graph is a single directed chain.
    pub is_linear: bool,
}

/// A graph is linear when it is one directed chain: every node has at most one
/// incoming and one outgoing edge, and the whole thing is connected and acyclic.
fn is_chain(n: usize, pairs: &[(usize, usize)]) -> bool {
    if pairs.len() + 1 != n {
        return false;
    }
    let mut indeg = vec![0usize; n];
    let mut outdeg = vec![0usize; n];
    for &(a, b) in pairs {
        outdeg[a] += 1;
        indeg[b] += 1;
    }
    indeg.iter().all(|&d| d <= 1)
        && outdeg.iter().all(|&d| d <= 1)
        && topology::weakly_connected(n, pairs)
}

pub fn compute_stats(
    g: &ExplanationGraph,
    belief: &str,
    argument: &str,
) -> Result<GraphStats, OrderError> {
    let pairs = g.index_pairs();
    let depth = topology::longest_path_edges(g.node_count(), &pairs).ok_or(OrderError::NotDag)?;
    let external_node_count = node_origins(g, belief, argument)
        .into_iter()
        .filter(|o| o.is_external())
        .count();
    Ok(GraphStats {
        node_count: g.node_count(),
        edge_count: g.edge_count(),
        external_node_count,
        depth,
        is_linear: is_chain(g.node_count(), &pairs),
    })
}

/// Corpus-level averages in the layout of the usual graph statistics table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatsSummary {
    pub graphs: usize,
    pub mean_nodes: f64,
    pub mean_edges: f64,
    pub mean_external_nodes: f64,
    pub mean_depth: f64,
    pub pct_non_linear: f64,
    pub pct_with_external: f64,
}

impl StatsSummary {
    pub fn from_stats(stats: &[GraphStats]) -> Option<Self> {
        if stats.is_empty() {
            return None;
        }
        let n = stats.len() as f64;
        let mean = |f: fn(&GraphStats) -> usize| stats.iter().map(f).sum::<usize>() as f64 / n;
        let pct = |f: fn(&GraphStats) -> bool| 100.0 * stats.iter().filter(|s| f(s)).count() as f64 / n;
        Some(Self {
            graphs: stats.len(),
            mean_nodes: mean(|s| s.node_count),
            mean_edges: mean(|s| s.edge_count),
            mean_external_nodes: mean(|s| s.external_node_count),
            mean_depth: mean(|s| s.depth),
            pct_non_linear: pct(|s| !s.is_linear),
            pct_with_external: pct(|s| s.external_node_count > 0),
        })
    }
}
