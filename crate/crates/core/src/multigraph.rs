//! Abstract multi-graphs `(V, E, r)` with loops and parallel edges.

use std::collections::BTreeMap;

use crate::topology::{FinPoset, TopologyError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    pub vertices: Vec<String>,
    /// Edge endpoints as vertex positions; `(v, v)` is a loop.
    pub edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>) -> Self {
        Self { vertices, edges }
    }

    /// A graph on `n` vertices named `0..n`.
    pub fn with_vertex_count(n: usize, edges: Vec<(usize, usize)>) -> Self {
        Self::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    /// Exactly one vertex and no edges.
    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1 && self.edges.is_empty()
    }

    /// The empty graph counts as disconnected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let root = find(&mut parent, 0);
        (0..n).all(|v| find(&mut parent, v) == root)
    }

    /// Edge multiplicities keyed by sorted endpoint pair.
    fn multiplicity(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut m = vec![vec![0; n]; n];
        for &(a, b) in &self.edges {
            m[a][b] += 1;
            if a != b {
                m[b][a] += 1;
            }
        }
        m
    }

    /// Unlabeled isomorphism by backtracking over vertex bijections.
    pub fn is_isomorphic(&self, other: &MultiGraph) -> bool {
        let n = self.vertex_count();
        if n != other.vertex_count() || self.edge_count() != other.edge_count() {
            return false;
        }
        let mut da: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut db: Vec<usize> = (0..n).map(|v| other.degree(v)).collect();
        let (ma, mb) = (self.multiplicity(), other.multiplicity());
        let deg_a = da.clone();
        let deg_b = db.clone();
        da.sort_unstable();
        db.sort_unstable();
        if da != db {
            return false;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn extend(
            v: usize,
            map: &mut [usize],
            used: &mut [bool],
            ma: &[Vec<usize>],
            mb: &[Vec<usize>],
            deg_a: &[usize],
            deg_b: &[usize],
        ) -> bool {
            let n = map.len();
            if v == n {
                return true;
            }
            for w in 0..n {
                if used[w] || deg_a[v] != deg_b[w] || ma[v][v] != mb[w][w] {
                    continue;
                }
                if (0..v).any(|u| ma[v][u] != mb[w][map[u]]) {
                    continue;
                }
                map[v] = w;
                used[w] = true;
                if extend(v + 1, map, used, ma, mb, deg_a, deg_b) {
                    return true;
                }
                used[w] = false;
            }
            map[v] = usize::MAX;
            false
        }
        extend(0, &mut map, &mut used, &ma, &mb, &deg_a, &deg_b)
    }

    /// The multi-graph-like poset with vertices below their incident edges.
    /// Edges are named `e<i>`; vertex names must not collide with them.
    pub fn to_poset(&self) -> Result<FinPoset, TopologyError> {
        let mut elements = self.vertices.clone();
        let mut rel = Vec::new();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            let name = format!("e{i}");
            rel.push((self.vertices[a].clone(), name.clone()));
            rel.push((self.vertices[b].clone(), name.clone()));
            elements.push(name);
        }
        FinPoset::new(elements, rel)
    }
}

/// Every connected, non-trivial abstract multi-graph with
/// `|V| + |E| <= max_size`, one per isomorphism class.
pub fn connected_multigraphs(max_size: usize) -> Vec<MultiGraph> {
    let mut out: Vec<MultiGraph> = Vec::new();
    for n in 1..max_size {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        for m in 1..=max_size - n {
            let mut choice = Vec::with_capacity(m);
            multisets(&slots, m, 0, &mut choice, &mut |edges| {
                let g = MultiGraph::with_vertex_count(n, edges.to_vec());
                if g.is_connected() && !out.iter().any(|h| h.is_isomorphic(&g)) {
                    out.push(g);
                }
            });
        }
    }
    out
}

fn multisets<F: FnMut(&[(usize, usize)])>(
    slots: &[(usize, usize)],
    remaining: usize,
    start: usize,
    choice: &mut Vec<(usize, usize)>,
    f: &mut F,
) {
    if remaining == 0 {
        f(choice);
        return;
    }
    for i in start..slots.len() {
        choice.push(slots[i]);
        multisets(slots, remaining - 1, i, choice, f);
        choice.pop();
    }
}

/// Degree sequence summary, handy for quick comparisons and display.
pub fn degree_histogram(g: &MultiGraph) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for v in 0..g.vertex_count() {
        *h.entry(g.degree(v)).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_counts_twice() {
        let g = MultiGraph::with_vertex_count(1, vec![(0, 0)]);
        assert_eq!(g.degree(0), 2);
        assert!(g.is_connected());
    }

    #[test]
    fn isomorphism_respects_multiplicity() {
        let a = MultiGraph::with_vertex_count(2, vec![(0, 1), (0, 1), (0, 0)]);
        let b = MultiGraph::with_vertex_count(2, vec![(1, 1), (1, 0), (0, 1)]);
        let c = MultiGraph::with_vertex_count(2, vec![(0, 1), (0, 0), (1, 1)]);
        assert!(a.is_isomorphic(&b));
        assert!(!a.is_isomorphic(&c));
    }

    #[test]
    fn small_graph_counts() {
        // |V|+|E| <= 3: one loop; a single edge; two loops on one vertex.
        assert_eq!(connected_multigraphs(3).len(), 3);
        for g in connected_multigraphs(6) {
            assert!(g.is_connected());
            assert!(!g.is_trivial());
            assert!(g.vertex_count() + g.edge_count() <= 6);
        }
    }

    #[test]
    fn poset_round_trip() {
        let g = MultiGraph::with_vertex_count(3, vec![(0, 1), (1, 2), (2, 2)]);
        let p = g.to_poset().unwrap();
        assert!(p.is_multigraph_like().is_ok());
        assert!(p.to_multigraph().unwrap().is_isomorphic(&g));
    }
}
