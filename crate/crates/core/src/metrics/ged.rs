//! Exact graph edit distance under unit costs.
//!
//! Edit operations: node insert/delete/relabel and edge insert/delete/relabel,
//! each costing 1. Node labels compare as normalized concepts, edge labels as
//! normalized relations. Between one ordered node pair the edges form a set of
//! relations, so mapping pair `A` onto pair `B` costs `max(|A|, |B|) - |A ∩ B|`.
//!
//! The search is A* over partial node mappings (nodes of the first graph taken
//! in decreasing degree). The heuristic is a linear assignment over the
//! unmapped nodes whose entries combine the label cost, the exact cost of
//! edges anchored to already mapped nodes, and half of a local lower bound on
//! the edges among unmapped nodes. Every edge operation touches two mapped
//! pairs, so halving keeps the bound admissible.

use std::cmp::Ordering as CmpOrdering;
use std::collections::{BinaryHeap, HashMap};

use thiserror::Error;

use crate::graph::ExplanationGraph;
use crate::metrics::matching::min_cost_assignment;

/// Largest edge count per graph for which the exact search is supported.
pub const MAX_EXACT_EDGES: usize = 8;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum GedError {
    #[error("graph has {edges} edges; exact edit distance supports at most {MAX_EXACT_EDGES}")]
    TooLarge { edges: usize },
}

/// Index form of a graph: node labels plus relation sets per ordered pair.
#[derive(Debug, Clone)]
struct IndexedGraph {
    labels: Vec<String>,
    pairs: HashMap<(usize, usize), Vec<String>>,
    /// (neighbor, outgoing?, relation) for every incident edge
    incident: Vec<Vec<(usize, bool, String)>>,
}

impl IndexedGraph {
    fn new(g: &ExplanationGraph) -> Self {
        let labels: Vec<String> = g.nodes().iter().map(|c| c.normalized().to_string()).collect();
        let mut pairs: HashMap<(usize, usize), Vec<String>> = HashMap::new();
        let mut incident = vec![Vec::new(); labels.len()];
        for (e, (h, t)) in g.edges().iter().zip(g.index_pairs()) {
            let rel = e.relation_key().to_string();
            pairs.entry((h, t)).or_default().push(rel.clone());
            incident[h].push((t, true, rel.clone()));
            incident[t].push((h, false, rel));
        }
        Self {
            labels,
            pairs,
            incident,
        }
    }

    fn rels(&self, a: usize, b: usize) -> &[String] {
        self.pairs.get(&(a, b)).map_or(&[], Vec::as_slice)
    }

    fn n(&self) -> usize {
        self.labels.len()
    }
}

fn pair_cost(a: &[String], b: &[String]) -> usize {
    let common = a.iter().filter(|r| b.contains(r)).count();
    a.len().max(b.len()) - common
}

/// Multiset of (direction, relation) tags; returns max(|x|,|y|) - |x ∩ y|.
fn tag_mismatch(x: &[(bool, &str)], y: &[(bool, &str)]) -> usize {
    let mut used = vec![false; y.len()];
    let mut common = 0;
    for t in x {
        if let Some(j) = (0..y.len()).find(|&j| !used[j] && y[j] == *t) {
            used[j] = true;
            common += 1;
        }
    }
    x.len().max(y.len()) - common
}

struct Search<'a> {
    g1: &'a IndexedGraph,
    g2: &'a IndexedGraph,
    order: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq)]
struct State {
    f: usize,
    g: usize,
    /// image of `order[i]` for i < depth; None = deleted
    images: Vec<Option<usize>>,
    used: u64,
    complete: bool,
}

impl Ord for State {
    fn cmp(&self, other: &Self) -> CmpOrdering {
        // min-heap on f, then prefer deeper / completed states
        other
            .f
            .cmp(&self.f)
            .then_with(|| self.complete.cmp(&other.complete))
            .then_with(|| self.images.len().cmp(&other.images.len()))
            .then_with(|| other.images.cmp(&self.images))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<CmpOrdering> {
        Some(self.cmp(other))
    }
}

impl<'a> Search<'a> {
    fn new(g1: &'a IndexedGraph, g2: &'a IndexedGraph) -> Self {
        let mut order: Vec<usize> = (0..g1.n()).collect();
        order.sort_by_key(|&u| (std::cmp::Reverse(g1.incident[u].len()), u));
        Self { g1, g2, order }
    }

    fn image_of(&self, images: &[Option<usize>]) -> Vec<Option<Option<usize>>> {
        let mut img = vec![None; self.g1.n()];
        for (i, &im) in images.iter().enumerate() {
            img[self.order[i]] = Some(im);
        }
        img
    }

    /// Cost added by mapping `u` to `v` given the already mapped nodes.
    fn step_cost(&self, img: &[Option<Option<usize>>], u: usize, v: Option<usize>) -> usize {
        let mut cost = match v {
            None => 1,
            Some(v) => usize::from(self.g1.labels[u] != self.g2.labels[v]),
        };
        cost += self.anchored(img, u, v);
        cost
    }

    /// Exact cost of edges between `u` and mapped nodes of the first graph,
    /// assuming `u ↦ v`.
    fn anchored(&self, img: &[Option<Option<usize>>], u: usize, v: Option<usize>) -> usize {
        let mut cost = 0;
        for (w, &slot) in img.iter().enumerate().take(self.g1.n()) {
            let Some(wi) = slot else { continue };
            if w == u {
                continue;
            }
            for (a, b) in [(u, w), (w, u)] {
                let rel1 = self.g1.rels(a, b);
                cost += match (v, wi) {
                    (Some(v), Some(wi)) => {
                        let (x, y) = if a == u { (v, wi) } else { (wi, v) };
                        pair_cost(rel1, self.g2.rels(x, y))
                    }
                    _ => rel1.len(),
                };
            }
        }
        cost
    }

    fn completion_cost(&self, used: u64) -> usize {
        let mut cost = 0;
        for v in 0..self.g2.n() {
            if used & (1 << v) == 0 {
                cost += 1;
            }
        }
        for &(a, b) in self.g2.pairs.keys() {
            if used & (1 << a) == 0 || used & (1 << b) == 0 {
                cost += self.g2.rels(a, b).len();
            }
        }
        cost
    }

    fn heuristic(&self, img: &[Option<Option<usize>>], used: u64) -> usize {
        let r1: Vec<usize> = (0..self.g1.n()).filter(|&u| img[u].is_none()).collect();
        let r2: Vec<usize> = (0..self.g2.n()).filter(|&v| used & (1 << v) == 0).collect();
        if r1.is_empty() {
            return self.completion_cost(used);
        }
        let local1: Vec<Vec<(bool, &str)>> = r1
            .iter()
            .map(|&u| {
                self.g1.incident[u]
                    .iter()
                    .filter(|(w, _, _)| img[*w].is_none())
                    .map(|(_, out, r)| (*out, r.as_str()))
                    .collect()
            })
            .collect();
        let local2: Vec<Vec<(bool, &str)>> = r2
            .iter()
            .map(|&v| {
                self.g2.incident[v]
                    .iter()
                    .filter(|(y, _, _)| used & (1 << *y) == 0)
                    .map(|(_, out, r)| (*out, r.as_str()))
                    .collect()
            })
            .collect();
        // edges from an unmapped node of the second graph into mapped nodes
        let anchored2: Vec<usize> = r2
            .iter()
            .map(|&v| {
                self.g2.incident[v]
                    .iter()
                    .filter(|(y, _, _)| used & (1 << *y) != 0)
                    .count()
            })
            .collect();

        const INF: f64 = 1e9;
        let (n1, n2) = (r1.len(), r2.len());
        let size = n1 + n2;
        let mut table = vec![0.0f64; size * size];
        for i in 0..size {
            for j in 0..size {
                let c = match (i < n1, j < n2) {
                    (true, true) => {
                        let (u, v) = (r1[i], r2[j]);
                        usize::from(self.g1.labels[u] != self.g2.labels[v]) as f64
                            + self.anchored(img, u, Some(v)) as f64
                            + 0.5 * tag_mismatch(&local1[i], &local2[j]) as f64
                    }
                    (true, false) => {
                        if j - n2 == i {
                            let u = r1[i];
                            1.0 + self.anchored(img, u, None) as f64 + 0.5 * local1[i].len() as f64
                        } else {
                            INF
                        }
                    }
                    (false, true) => {
                        if i - n1 == j {
                            1.0 + anchored2[j] as f64 + 0.5 * local2[j].len() as f64
                        } else {
                            INF
                        }
                    }
                    (false, false) => 0.0,
                };
                table[i * size + j] = c;
            }
        }
        let cols = min_cost_assignment(size, size, |i, j| table[i * size + j]);
        let total: f64 = cols.iter().enumerate().map(|(i, &j)| table[i * size + j]).sum();
        (total - 1e-9).ceil().max(0.0) as usize
    }

    fn run(&self) -> usize {
        let mut heap = BinaryHeap::new();
        let root_img = vec![None; self.g1.n()];
        let h0 = self.heuristic(&root_img, 0);
        heap.push(State {
            f: h0,
            g: 0,
            images: Vec::new(),
            used: 0,
            complete: self.g1.n() == 0,
        });
        while let Some(state) = heap.pop() {
            if state.complete {
                return state.f;
            }
            let depth = state.images.len();
            let img = self.image_of(&state.images);
            let u = self.order[depth];
            let candidates = (0..self.g2.n())
                .filter(|&v| state.used & (1 << v) == 0)
                .map(Some)
                .chain(std::iter::once(None));
            for v in candidates {
                let g = state.g + self.step_cost(&img, u, v);
                let mut images = state.images.clone();
                images.push(v);
                let used = state.used | v.map_or(0, |v| 1 << v);
                let child_img = self.image_of(&images);
                let (f, complete) = if images.len() == self.g1.n() {
                    (g + self.completion_cost(used), true)
                } else {
                    (g + self.heuristic(&child_img, used), false)
                };
                heap.push(State { f, g, images, used, complete });
            }
        }
        unreachable!("the deletion branch always yields a complete mapping")
    }
}

/// Minimum number of unit-cost edit operations turning `a` into `b`.
pub fn ged_raw(a: &ExplanationGraph, b: &ExplanationGraph) -> Result<usize, GedError> {
    for g in [a, b] {
        if g.edge_count() > MAX_EXACT_EDGES {
            return Err(GedError::TooLarge { edges: g.edge_count() });
        }
    }
    let (g1, g2) = (IndexedGraph::new(a), IndexedGraph::new(b));
    debug_assert!(g1.n() <= 64 && g2.n() <= 64);
    if g1.labels == g2.labels && g1.pairs == g2.pairs {
        return Ok(0);
    }
    Ok(Search::new(&g1, &g2).run())
}

/// Delete-everything-then-insert-everything upper bound.
pub fn ged_normalizer(a: &ExplanationGraph, b: &ExplanationGraph) -> usize {
    a.node_count() + b.node_count() + a.edge_count() + b.edge_count()
}

/// Edit distance divided by [`ged_normalizer`], in `[0, 1]`.
pub fn ged(pred: &ExplanationGraph, gold: &ExplanationGraph) -> Result<f64, GedError> {
    let raw = ged_raw(pred, gold)?;
    Ok(raw as f64 / ged_normalizer(pred, gold) as f64)
}
