//! Exact branch-and-bound over edge selections.
//!
//! Each ordered pair `(m, n)` either stays empty, scoring its no-edge
//! probability, or carries its most likely relation. The objective is the sum
//! of those scores over all pairs, rewritten as
//! `sum(no-edge) + sum(gain of selected pairs)` with
//! `gain = max_r p(m, n, r) - p(m, n, none)`.
//!
//! Feasible selections have 3..=8 edges, span every node, are weakly
//! connected and acyclic. Selections are enumerated as sorted pair lists in
//! lexicographic order (a list precedes its extensions), so among optima the
//! lexicographically smallest list wins.

use thiserror::Error;

use super::flow::{check_connectivity_flow, FlowCertificate};
use super::tensor::{pair_index, EdgeProbTensor};
use crate::graph::{Edge, ExplanationGraph, GraphError};
use crate::topology::UnionFind;
use crate::validate::{MAX_EDGES, MIN_EDGES, MIN_INTERNAL_PER_TEXT};
use crate::vocab::RelationVocabulary;

const EPS: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecodeError {
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("relation {0:?} is not in the vocabulary")]
    UnknownRelation(String),
    #[error("decoded graph rejected: {0}")]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodedGraph {
    pub graph: ExplanationGraph,
    pub objective_value: f64,
    /// Selected `(head, tail)` node indices in lexicographic order.
    pub selection: Vec<(usize, usize)>,
    pub certificate: FlowCertificate,
}

struct Search<'a> {
    n: usize,
    pairs: Vec<(usize, usize)>,
    gains: Vec<f64>,
    /// `topk[i][k]`: sum of the `k` largest gains among `pairs[i..]`.
    topk: Vec<Vec<f64>>,
    floor: f64,
    best: Option<(f64, Vec<usize>)>,
    selected: Vec<usize>,
    _tensor: &'a EdgeProbTensor,
}

impl Search<'_> {
    fn best_topk(&self, from: usize, kmin: usize, kmax: usize) -> Option<f64> {
        let kmax = kmax.min(self.pairs.len() - from);
        (kmin <= kmax).then(|| {
            self.topk[from][kmin..=kmax]
                .iter()
                .copied()
                .fold(f64::NEG_INFINITY, f64::max)
        })
    }

    fn hopeless(&self, bound: Option<f64>) -> bool {
        match (bound, &self.best) {
            (None, _) => true,
            (Some(b), Some((best, _))) => b <= best + EPS,
            (Some(b), None) => b < self.floor,
        }
    }

    fn components(&self, extra: Option<usize>) -> usize {
        let mut uf = UnionFind::new(self.n);
        for &p in self.selected.iter().chain(extra.iter()) {
            let (a, b) = self.pairs[p];
            uf.union(a, b);
        }
        uf.set_count()
    }

    fn explore(&mut self, start: usize, cur: f64, reach: [u16; 8]) {
        let s = self.selected.len();
        let comps = self.components(None);
        if s >= MIN_EDGES && comps == 1 {
            let better = match &self.best {
                Some((best, _)) => cur > best + EPS,
                None => cur >= self.floor,
            };
            if better {
                self.best = Some((cur, self.selected.clone()));
            }
        }
        if s == MAX_EDGES {
            return;
        }
        let kmax = MAX_EDGES - s;
        for next in start..self.pairs.len() {
            // later siblings only see a shorter suffix
            let kmin_any = 1.max(MIN_EDGES.saturating_sub(s)).max(comps - 1);
            if self.hopeless(self.best_topk(next, kmin_any, kmax).map(|t| cur + t)) {
                break;
            }
            let (a, b) = self.pairs[next];
            if reach[b] & (1 << a) != 0 {
                continue;
            }
            let child_comps = self.components(Some(next));
            let kmin = MIN_EDGES.saturating_sub(s + 1).max(child_comps - 1);
            let gain = self.gains[next];
            let bound = self.best_topk(next + 1, kmin, kmax - 1).map(|t| cur + gain + t);
            if self.hopeless(bound) {
                continue;
            }
            let mut child = reach;
            let into = child[b] | (1 << b);
            for u in 0..self.n {
                if u == a || reach[u] & (1 << a) != 0 {
                    child[u] |= into;
                }
            }
            self.selected.push(next);
            self.explore(next + 1, cur + gain, child);
            self.selected.pop();
        }
    }
}

/// Spanning tree by descending gain (either orientation), then extra edges with
/// positive gain. Only used to seed the pruning floor.
fn greedy_incumbent(n: usize, pairs: &[(usize, usize)], gains: &[f64]) -> Option<f64> {
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by(|&x, &y| gains[y].total_cmp(&gains[x]).then(x.cmp(&y)));
    let mut uf = UnionFind::new(n);
    let mut chosen = Vec::new();
    for &p in &order {
        let (a, b) = pairs[p];
        if uf.union(a, b) {
            chosen.push(p);
        }
    }
    if uf.set_count() != 1 {
        return None;
    }
    for &p in &order {
        if chosen.len() >= MAX_EDGES {
            break;
        }
        if chosen.contains(&p) || (chosen.len() >= MIN_EDGES && gains[p] <= 0.0) {
            continue;
        }
        let mut trial: Vec<(usize, usize)> = chosen.iter().map(|&q| pairs[q]).collect();
        trial.push(pairs[p]);
        if crate::topology::is_acyclic(n, &trial) {
            chosen.push(p);
        }
    }
    (MIN_EDGES..=MAX_EDGES)
        .contains(&chosen.len())
        .then(|| chosen.iter().map(|&p| gains[p]).sum())
}

/// Finds the highest-scoring valid graph over the tensor's nodes.
pub fn decode(t: &EdgeProbTensor, vocab: &RelationVocabulary) -> Result<DecodedGraph, DecodeError> {
    if let Some(r) = t.relations().iter().find(|r| !vocab.contains(r)) {
        return Err(DecodeError::UnknownRelation(r.clone()));
    }
    let n = t.node_count();
    if n < MIN_EDGES {
        return Err(DecodeError::Infeasible(format!(
            "{n} nodes cannot carry {MIN_EDGES} acyclic edges"
        )));
    }
    if n - 1 > MAX_EDGES {
        return Err(DecodeError::Infeasible(format!("{n} nodes need more than {MAX_EDGES} edges")));
    }
    let belief = t.nodes().iter().filter(|x| x.origin.in_belief()).count();
    let argument = t.nodes().iter().filter(|x| x.origin.in_argument()).count();
    if belief < MIN_INTERNAL_PER_TEXT || argument < MIN_INTERNAL_PER_TEXT {
        return Err(DecodeError::Infeasible(format!(
            "need {MIN_INTERNAL_PER_TEXT} belief and {MIN_INTERNAL_PER_TEXT} argument nodes, \
             got {belief} and {argument}"
        )));
    }

    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|m| (0..n).filter(move |&k| k != m).map(move |k| (m, k)))
        .collect();
    debug_assert!(pairs.iter().enumerate().all(|(i, &(m, k))| pair_index(n, m, k) == i));
    let gains: Vec<f64> = pairs
        .iter()
        .map(|&(m, k)| t.best_relation(m, k).1 - t.no_edge(m, k))
        .collect();
    let topk = (0..=pairs.len())
        .map(|i| {
            let mut suffix = gains[i..].to_vec();
            suffix.sort_by(|x, y| y.total_cmp(x));
            let mut sums = vec![0.0];
            for g in suffix {
                sums.push(sums.last().unwrap() + g);
            }
            sums
        })
        .collect();
    let floor = greedy_incumbent(n, &pairs, &gains).map_or(f64::NEG_INFINITY, |g| g - 1e-9);

    let mut search = Search {
        n,
        pairs,
        gains,
        topk,
        floor,
        best: None,
        selected: Vec::new(),
        _tensor: t,
    };
    search.explore(0, 0.0, [0; 8]);
    let Some((_, chosen)) = search.best.take() else {
        return Err(DecodeError::Infeasible("no connected acyclic selection".into()));
    };

    let selection: Vec<(usize, usize)> = chosen.iter().map(|&p| search.pairs[p]).collect();
    let certificate = check_connectivity_flow(&selection, n);
    if !certificate.connected {
        return Err(DecodeError::Infeasible("selection failed the flow certificate".into()));
    }
    let mut objective_value = 0.0;
    for (i, &(m, k)) in search.pairs.iter().enumerate() {
        objective_value += if chosen.contains(&i) {
            t.best_relation(m, k).1
        } else {
            t.no_edge(m, k)
        };
    }
    let concepts = t.concepts();
    let edges = selection
        .iter()
        .map(|&(m, k)| {
            let r = &t.relations()[t.best_relation(m, k).0];
            Edge::new(concepts[m].clone(), r, concepts[k].clone())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DecodedGraph {
        graph: ExplanationGraph::new(edges)?,
        objective_value,
        selection,
        certificate,
    })
}
