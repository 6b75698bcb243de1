//! Index-based graph helpers shared by validation, ordering and decoding.

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when `a` and `b` were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.sets -= 1;
        true
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }
}

pub fn weakly_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return true;
    }
    let mut uf = UnionFind::new(n);
    for &(a, b) in edges {
        uf.union(a, b);
    }
    uf.set_count() == 1
}

/// Kahn's algorithm. Returns `None` when the directed graph has a cycle.
/// Ready nodes are released smallest index first.
pub fn topological_order(n: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        indeg[b] += 1;
        out[a].push(b);
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = ready.pop() {
        order.push(v);
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(Reverse(w));
            }
        }
    }
    (order.len() == n).then_some(order)
}

pub fn is_acyclic(n: usize, edges: &[(usize, usize)]) -> bool {
    topological_order(n, edges).is_some()
}

/// Number of edges on the longest directed path, or `None` if cyclic.
pub fn longest_path_edges(n: usize, edges: &[(usize, usize)]) -> Option<usize> {
    let order = topological_order(n, edges)?;
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        out[a].push(b);
    }
    let mut dist = vec![0usize; n];
    for &v in &order {
        for &w in &out[v] {
            dist[w] = dist[w].max(dist[v] + 1);
        }
    }
    Some(dist.into_iter().max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_find_counts_sets() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        assert!(uf.union(3, 4));
        assert!(!uf.union(1, 0));
        assert_eq!(uf.set_count(), 3);
    }

    #[test]
    fn cycles_and_paths() {
        assert!(is_acyclic(3, &[(0, 1), (1, 2), (0, 2)]));
        assert!(!is_acyclic(3, &[(0, 1), (1, 2), (2, 0)]));
        assert_eq!(longest_path_edges(4, &[(0, 1), (1, 2), (2, 3)]), Some(3));
        assert_eq!(longest_path_edges(3, &[(0, 2), (1, 2)]), Some(1));
        assert_eq!(longest_path_edges(2, &[(0, 1), (1, 0)]), None);
    }

    #[test]
    fn weak_connectivity_ignores_direction() {
        assert!(weakly_connected(3, &[(0, 2), (1, 2)]));
        assert!(!weakly_connected(4, &[(0, 1), (2, 3)]));
        assert!(weakly_connected(1, &[]));
    }
}
