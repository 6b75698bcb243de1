//! Connectivity as a max-flow certificate.
//!
//! The selected graph is augmented with a source feeding `|N|` units into the
//! first node and a sink draining one unit from every node. Flow may cross a
//! node pair in either direction whenever at least one direction is selected.
//! The maximum flow equals the size of the first node's weakly connected
//! component, so it reaches `|N|` exactly when the selection is connected.

use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowCertificate {
    pub connected: bool,
    pub value: i64,
    /// Net flow between node pairs as `(from, to, amount)` with `amount > 0`.
    pub pair_flows: Vec<(usize, usize, i64)>,
}

/// `selection` lists the chosen ordered pairs over `node_count` nodes.
pub fn check_connectivity_flow(selection: &[(usize, usize)], node_count: usize) -> FlowCertificate {
    if node_count == 0 {
        return FlowCertificate { connected: true, value: 0, pair_flows: Vec::new() };
    }
    let n = node_count;
    let (source, sink) = (n, n + 1);
    let size = n + 2;
    let cap_n = n as i64;
    let mut cap = vec![vec![0i64; size]; size];
    cap[source][0] = cap_n;
    for row in cap.iter_mut().take(n) {
        row[sink] = 1;
    }
    for &(a, b) in selection {
        assert!(a < n && b < n && a != b, "pair ({a}, {b}) out of range");
        cap[a][b] = cap_n;
        cap[b][a] = cap_n;
    }
    let original = cap.clone();

    // Edmonds-Karp on the residual matrix
    let mut value = 0i64;
    loop {
        let mut prev = vec![usize::MAX; size];
        prev[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            if u == sink {
                break;
            }
            for v in 0..size {
                if prev[v] == usize::MAX && cap[u][v] > 0 {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[sink] == usize::MAX {
            break;
        }
        let mut bottleneck = i64::MAX;
        let mut v = sink;
        while v != source {
            let u = prev[v];
            bottleneck = bottleneck.min(cap[u][v]);
            v = u;
        }
        let mut v = sink;
        while v != source {
            let u = prev[v];
            cap[u][v] -= bottleneck;
            cap[v][u] += bottleneck;
            v = u;
        }
        value += bottleneck;
    }

    let mut pair_flows = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            // net flow a -> b from residual change on the symmetric arcs
            let net = (original[a][b] - cap[a][b] - (original[b][a] - cap[b][a])) / 2;
            match net.cmp(&0) {
                std::cmp::Ordering::Greater => pair_flows.push((a, b, net)),
                std::cmp::Ordering::Less => pair_flows.push((b, a, -net)),
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    FlowCertificate { connected: value == cap_n, value, pair_flows }
}
