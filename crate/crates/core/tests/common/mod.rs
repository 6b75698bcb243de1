//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use stancegraph::decoder::{EdgeProbTensor, TensorNode};
use stancegraph::metrics::{Prediction, Sample, Stance};
use stancegraph::origin::NodeOrigin;
use stancegraph::validate::validate;
use stancegraph::{Edge, ExplanationGraph, RelationVocabulary};

pub fn vocab_names() -> Vec<String> {
    RelationVocabulary::default().relations().iter().map(|r| r.name().to_string()).collect()
}

/// Ordered-pair relation multisets keyed by normalized labels.
type PairTable = BTreeMap<(String, String), Vec<String>>;

fn pair_table(g: &ExplanationGraph) -> PairTable {
    let mut t = PairTable::new();
    for e in g.edges() {
        t.entry((e.head.normalized().into(), e.tail.normalized().into()))
            .or_default()
            .push(e.relation_key().into());
    }
    t
}

fn pair_cost(a: &[String], b: &[String]) -> usize {
    let common = a.iter().filter(|r| b.contains(r)).count();
    a.len().max(b.len()) - common
}

/// Exact unit-cost edit distance by enumerating every partial injective node
/// mapping from `a` into `b`.
pub fn brute_force_ged(a: &ExplanationGraph, b: &ExplanationGraph) -> usize {
    let va: Vec<String> = a.nodes().iter().map(|c| c.normalized().to_string()).collect();
    let vb: Vec<String> = b.nodes().iter().map(|c| c.normalized().to_string()).collect();
    let (ta, tb) = (pair_table(a), pair_table(b));

    fn cost(
        map: &[Option<usize>],
        va: &[String],
        vb: &[String],
        ta: &PairTable,
        tb: &PairTable,
    ) -> usize {
        let mut c = 0;
        let mut hit = vec![false; vb.len()];
        for (i, m) in map.iter().enumerate() {
            match m {
                Some(j) => {
                    hit[*j] = true;
                    c += usize::from(va[i] != vb[*j]);
                }
                None => c += 1,
            }
        }
        c += hit.iter().filter(|h| !**h).count();
        let idx_a = |s: &str| va.iter().position(|x| x == s).unwrap();
        let mut covered = HashSet::new();
        for ((h, t), rels) in ta {
            match (map[idx_a(h)], map[idx_a(t)]) {
                (Some(x), Some(y)) => {
                    let key = (vb[x].clone(), vb[y].clone());
                    let other = tb.get(&key).map_or(&[][..], Vec::as_slice);
                    c += pair_cost(rels, other);
                    covered.insert(key);
                }
                _ => c += rels.len(),
            }
        }
        for (key, rels) in tb {
            // pairs of b never reached by an image of an a-pair
            if !covered.contains(key) {
                c += rels.len();
            }
        }
        c
    }

    fn go(
        i: usize,
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        best: &mut usize,
        ctx: (&[String], &[String], &PairTable, &PairTable),
    ) {
        if i == map.len() {
            *best = (*best).min(cost(map, ctx.0, ctx.1, ctx.2, ctx.3));
            return;
        }
        map[i] = None;
        go(i + 1, map, used, best, ctx);
        for j in 0..used.len() {
            if !used[j] {
                used[j] = true;
                map[i] = Some(j);
                go(i + 1, map, used, best, ctx);
                used[j] = false;
            }
        }
        map[i] = None;
    }

    let mut best = usize::MAX;
    go(0, &mut vec![None; va.len()], &mut vec![false; vb.len()], &mut best, (&va, &vb, &ta, &tb));
    best
}

/// Small random graph over at most `max_nodes` labels from a shared pool, so
/// that pairs of such graphs overlap.
pub fn random_small_graph(rng: &mut ChaCha8Rng, max_nodes: usize) -> ExplanationGraph {
    const LABELS: [&str; 5] = ["rain", "wet road", "accident", "traffic", "delay"];
    const RELS: [&str; 3] = ["causes", "not causes", "is a"];
    let k = rng.gen_range(2..=max_nodes.min(LABELS.len()));
    let mut pool = LABELS.to_vec();
    pool.shuffle(rng);
    let nodes = &pool[..k];
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    for _ in 0..rng.gen_range(1..=5) {
        let h = rng.gen_range(0..k);
        let mut t = rng.gen_range(0..k - 1);
        if t >= h {
            t += 1;
        }
        let r = RELS[rng.gen_range(0..RELS.len())];
        if seen.insert((h, t, r)) {
            edges.push(Edge::from_parts(nodes[h], r, nodes[t]).unwrap());
        }
    }
    ExplanationGraph::new(edges).unwrap()
}

const WORDS: [&str; 24] = [
    "energy", "school", "prices", "health", "freedom", "safety", "jobs", "nature", "cities", "family",
    "science", "music", "water", "trade", "sports", "voting", "privacy", "housing", "travel", "farming",
    "medicine", "media", "taxes", "policing",
];

/// A row whose graph passes every structural check: two belief nodes, two
/// argument nodes, up to three external nodes, edges oriented along a random
/// node permutation.
pub fn synthetic_sample(index: usize, rng: &mut ChaCha8Rng) -> Sample {
    let vocab = RelationVocabulary::default();
    let rels = vocab_names();
    let tag = |k: usize| format!("{} {}{}", WORDS[(index * 7 + k) % WORDS.len()], ["x", "y", "z", "w", "v", "u", "t"][k], index);
    let n = rng.gen_range(4..=7);
    let labels: Vec<String> = (0..n).map(tag).collect();
    let belief = format!("{} and {} should be protected", labels[0], labels[1]);
    let argument = format!("{} helps {} every day", labels[2], labels[3]);

    loop {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let pos: Vec<usize> = (0..n).map(|v| order.iter().position(|&x| x == v).unwrap()).collect();
        let orient = |a: usize, b: usize| if pos[a] < pos[b] { (a, b) } else { (b, a) };
        let mut pairs: Vec<(usize, usize)> = (1..n).map(|v| orient(v, rng.gen_range(0..v))).collect();
        let extra = rng.gen_range(0..=(8 - pairs.len()).min(2));
        for _ in 0..extra {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a != b && !pairs.contains(&orient(a, b)) {
                pairs.push(orient(a, b));
            }
        }
        if pairs.len() < 3 {
            continue;
        }
        let edges: Vec<Edge> = pairs
            .iter()
            .map(|&(a, b)| Edge::from_parts(&labels[a], &rels[rng.gen_range(0..rels.len())], &labels[b]).unwrap())
            .collect();
        let g = ExplanationGraph::new(edges).unwrap();
        let report = validate(&g, &belief, &argument, &vocab);
        assert!(report.overall, "generator produced {:?}: {g}", report.failures());
        return Sample {
            id: format!("{index:06}"),
            belief,
            argument,
            gold_stance: if rng.gen_bool(0.5) { Stance::Support } else { Stance::Counter },
            gold_graphs: vec![g],
        };
    }
}

pub fn synthetic_corpus(rows: usize, rng: &mut ChaCha8Rng) -> Vec<Sample> {
    (0..rows).map(|i| synthetic_sample(i, rng)).collect()
}

pub fn gold_predictions(samples: &[Sample]) -> Vec<Prediction> {
    samples
        .iter()
        .map(|s| Prediction { id: s.id.clone(), stance: s.gold_stance, graph_text: s.gold_graphs[0].serialize() })
        .collect()
}

pub fn dataset_tsv(samples: &[Sample]) -> String {
    samples
        .iter()
        .map(|s| {
            let graphs: Vec<String> = s.gold_graphs.iter().map(ExplanationGraph::serialize).collect();
            format!("{}\t{}\t{}\t{}\n", s.belief, s.argument, s.gold_stance, graphs.join("\t"))
        })
        .collect()
}

pub fn predictions_tsv(preds: &[Prediction]) -> String {
    preds.iter().map(|p| format!("{}\t{}\n", p.stance, p.graph_text)).collect()
}

/// Random tensor whose origins allow a feasible decode.
pub fn random_tensor(n: usize, rels: &[String], rng: &mut ChaCha8Rng) -> EdgeProbTensor {
    let origins: Vec<NodeOrigin> = match n {
        3 => vec![NodeOrigin::Both, NodeOrigin::Belief, NodeOrigin::Argument],
        _ => (0..n)
            .map(|i| [NodeOrigin::Belief, NodeOrigin::Argument][i % 2])
            .enumerate()
            .map(|(i, o)| if i >= 4 { NodeOrigin::External } else { o })
            .collect(),
    };
    let nodes = origins
        .into_iter()
        .enumerate()
        .map(|(i, origin)| TensorNode { label: format!("node {}", WORDS[i]), origin })
        .collect();
    let width = rels.len() + 1;
    let none_weight = rng.gen_range(0.5..4.0);
    let probs = (0..n * (n - 1))
        .map(|_| {
            let mut v: Vec<f64> = (0..width).map(|_| rng.gen::<f64>()).collect();
            v[width - 1] *= none_weight;
            let s: f64 = v.iter().sum();
            v.iter().map(|x| x / s).collect()
        })
        .collect();
    EdgeProbTensor::new(nodes, rels.to_vec(), probs).unwrap()
}

pub fn is_dag(n: usize, sel: &[(usize, usize)]) -> bool {
    // repeated removal of sources
    let mut alive = vec![true; n];
    for _ in 0..n {
        let Some(v) = (0..n).find(|&v| alive[v] && !sel.iter().any(|&(a, b)| b == v && alive[a])) else {
            return false;
        };
        alive[v] = false;
    }
    true
}

pub fn connected_by_search(n: usize, sel: &[(usize, usize)]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in sel {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Best objective over every selection with 3..=8 edges that is connected and
/// acyclic; ties keep the lexicographically smallest sorted pair list.
pub fn exhaustive_decode(t: &EdgeProbTensor) -> Option<(f64, Vec<(usize, usize)>)> {
    let n = t.node_count();
    let r = t.relations().len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|m| (0..n).filter(move |&k| k != m).map(move |k| (m, k))).collect();
    let score = |m: usize, k: usize, on: bool| {
        let v = t.probs(m, k);
        if on {
            v[..r].iter().copied().fold(f64::NEG_INFINITY, f64::max)
        } else {
            v[r]
        }
    };
    let mut best: Option<(f64, Vec<(usize, usize)>)> = None;
    for mask in 0u64..(1 << pairs.len()) {
        let count = mask.count_ones() as usize;
        if !(3..=8).contains(&count) {
            continue;
        }
        let sel: Vec<(usize, usize)> = (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        if !connected_by_search(n, &sel) || !is_dag(n, &sel) {
            continue;
        }
        let obj: f64 = pairs.iter().map(|&(m, k)| score(m, k, sel.contains(&(m, k)))).sum();
        let better = match &best {
            None => true,
            Some((b, bs)) => obj > b + 1e-12 || ((obj - b).abs() <= 1e-12 && sel < *bs),
        };
        if better {
            best = Some((obj, sel));
        }
    }
    best
}
