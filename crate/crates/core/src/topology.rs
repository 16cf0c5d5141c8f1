//! Finite posets and finite topological spaces.
//!
//! A [`FinPoset`] carries the specialization-order side of the picture and a
//! [`FinSpace`] the open-set side. [`alexandroff_space`] and
//! [`specialization_order`] convert between the two; on finite posets the
//! round trip is the identity.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::multigraph::MultiGraph;

/// Largest number of points a [`FinSpace`] can hold (opens are stored as
/// 64-bit masks).
pub const MAX_SPACE_POINTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("relation is not antisymmetric: `{0}` <= `{1}` and `{1}` <= `{0}`")]
    NotAntisymmetric(String, String),
    #[error("relation is not transitive: `{0}` <= `{1}` <= `{2}` but not `{0}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("space is not T0: `{0}` and `{1}` have the same closure")]
    NotT0(String, String),
    #[error("open family is not a topology: {0}")]
    NotATopology(String),
    #[error("{0} points exceed the supported maximum of {MAX_SPACE_POINTS}")]
    TooManyPoints(usize),
}

/// A finite partially ordered set over opaque string ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPoset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    // leq[a][b] <=> a <= b
    leq: Vec<Vec<bool>>,
}

/// Why a poset fails to be multi-graph-like.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultigraphWitness {
    pub element: String,
    pub reason: MultigraphFailure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultigraphFailure {
    /// The element sits at height two or more.
    TooHigh { height: usize },
    /// The down-set of the element has more than three members.
    DownsetTooLarge { size: usize },
}

fn index_elements(elements: &[String]) -> Result<HashMap<String, usize>, TopologyError> {
    let mut index = HashMap::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        if index.insert(e.clone(), i).is_some() {
            return Err(TopologyError::DuplicateElement(e.clone()));
        }
    }
    Ok(index)
}

impl FinPoset {
    /// Builds a poset from `(lesser, greater)` pairs. Reflexive pairs are
    /// implied; the relation must already be transitive and antisymmetric.
    pub fn new<I, A, B>(elements: Vec<String>, relation: I) -> Result<Self, TopologyError>
    where
        I: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let index = index_elements(&elements)?;
        let n = elements.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in relation {
            let ia = *index
                .get(a.as_ref())
                .ok_or_else(|| TopologyError::UnknownElement(a.as_ref().to_string()))?;
            let ib = *index
                .get(b.as_ref())
                .ok_or_else(|| TopologyError::UnknownElement(b.as_ref().to_string()))?;
            leq[ia][ib] = true;
        }
        Self::from_matrix_checked(elements, index, leq)
    }

    /// Builds a poset from covering (or any generating) pairs, taking the
    /// reflexive-transitive closure first.
    pub fn from_generators<I, A, B>(
        elements: Vec<String>,
        generators: I,
    ) -> Result<Self, TopologyError>
    where
        I: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let index = index_elements(&elements)?;
        let n = elements.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in generators {
            let ia = *index
                .get(a.as_ref())
                .ok_or_else(|| TopologyError::UnknownElement(a.as_ref().to_string()))?;
            let ib = *index
                .get(b.as_ref())
                .ok_or_else(|| TopologyError::UnknownElement(b.as_ref().to_string()))?;
            leq[ia][ib] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_matrix_checked(elements, index, leq)
    }

    fn from_matrix_checked(
        elements: Vec<String>,
        index: HashMap<String, usize>,
        leq: Vec<Vec<bool>>,
    ) -> Result<Self, TopologyError> {
        let n = elements.len();
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(TopologyError::NotAntisymmetric(
                        elements[a].clone(),
                        elements[b].clone(),
                    ));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !leq[a][b] {
                    continue;
                }
                for c in 0..n {
                    if leq[b][c] && !leq[a][c] {
                        return Err(TopologyError::NotTransitive(
                            elements[a].clone(),
                            elements[b].clone(),
                            elements[c].clone(),
                        ));
                    }
                }
            }
        }
        Ok(Self {
            elements,
            index,
            leq,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// `a <= b` by index.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// `a <= b` by id; unknown ids compare as unrelated.
    pub fn le(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(a), Some(b)) => self.leq[a][b],
            _ => false,
        }
    }

    /// All `(lesser, greater)` pairs with `lesser != greater`.
    pub fn strict_pairs(&self) -> Vec<(String, String)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq[a][b] {
                    out.push((self.elements[a].clone(), self.elements[b].clone()));
                }
            }
        }
        out
    }

    /// Indices of `↓x`.
    pub fn down(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.leq[y][x]).collect()
    }

    /// Indices of `↑x`.
    pub fn up(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.leq[x][y]).collect()
    }

    /// Length of the longest chain whose maximum is `x`.
    pub fn height_of(&self, x: usize) -> usize {
        let mut memo = vec![None; self.len()];
        self.height_memo(x, &mut memo)
    }

    fn height_memo(&self, x: usize, memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(h) = memo[x] {
            return h;
        }
        let mut best = 0;
        for y in 0..self.len() {
            if y != x && self.leq[y][x] {
                best = best.max(self.height_memo(y, memo) + 1);
            }
        }
        memo[x] = Some(best);
        best
    }

    /// Heights of all elements, in element order.
    pub fn heights(&self) -> Vec<usize> {
        let mut memo = vec![None; self.len()];
        (0..self.len())
            .map(|x| self.height_memo(x, &mut memo))
            .collect()
    }

    /// Height of the poset; `None` for the empty poset, whose height is
    /// undefined.
    pub fn height(&self) -> Option<usize> {
        self.heights().into_iter().max()
    }

    /// The level `P_k`: elements of height exactly `k`.
    pub fn level(&self, k: usize) -> Vec<usize> {
        self.heights()
            .into_iter()
            .enumerate()
            .filter_map(|(i, h)| (h == k).then_some(i))
            .collect()
    }

    /// Height at most one and every down-set of size at most three.
    pub fn is_multigraph_like(&self) -> Result<(), MultigraphWitness> {
        let heights = self.heights();
        for (x, &h) in heights.iter().enumerate() {
            if h > 1 {
                return Err(MultigraphWitness {
                    element: self.elements[x].clone(),
                    reason: MultigraphFailure::TooHigh { height: h },
                });
            }
            let size = self.down(x).len();
            if size > 3 {
                return Err(MultigraphWitness {
                    element: self.elements[x].clone(),
                    reason: MultigraphFailure::DownsetTooLarge { size },
                });
            }
        }
        Ok(())
    }

    /// Connectivity of the comparability graph. The empty poset is
    /// disconnected.
    pub fn is_connected(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if !seen[y] && (self.leq[x][y] || self.leq[y][x]) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Order isomorphism, ignoring element names.
    pub fn is_isomorphic(&self, other: &FinPoset) -> bool {
        let n = self.len();
        if n != other.len() {
            return false;
        }
        let profile = |p: &FinPoset, x: usize| (p.down(x).len(), p.up(x).len());
        let mut a: Vec<_> = (0..n).map(|x| profile(self, x)).collect();
        let mut b: Vec<_> = (0..n).map(|x| profile(other, x)).collect();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return false;
        }
        fn extend(p: &FinPoset, q: &FinPoset, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
            let x = map.len();
            if x == p.len() {
                return true;
            }
            for y in 0..q.len() {
                if used[y] || p.down(x).len() != q.down(y).len() || p.up(x).len() != q.up(y).len() {
                    continue;
                }
                if (0..x)
                    .all(|z| p.leq(z, x) == q.leq(map[z], y) && p.leq(x, z) == q.leq(y, map[z]))
                {
                    used[y] = true;
                    map.push(y);
                    if extend(p, q, map, used) {
                        return true;
                    }
                    map.pop();
                    used[y] = false;
                }
            }
            false
        }
        extend(self, other, &mut Vec::new(), &mut vec![false; n])
    }

    /// Reads a multi-graph-like poset as an abstract multi-graph: height-0
    /// elements are vertices, height-1 elements are edges over
    /// `↓e - {e}`.
    pub fn to_multigraph(&self) -> Result<MultiGraph, MultigraphWitness> {
        self.is_multigraph_like()?;
        let heights = self.heights();
        let vertices: Vec<usize> = (0..self.len()).filter(|&x| heights[x] == 0).collect();
        let pos: HashMap<usize, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        for e in (0..self.len()).filter(|&x| heights[x] == 1) {
            let below: Vec<usize> = self.down(e).into_iter().filter(|&y| y != e).collect();
            let (a, b) = match below.as_slice() {
                [a] => (*a, *a),
                [a, b] => (*a, *b),
                _ => unreachable!("multi-graph-like edge with {} endpoints", below.len()),
            };
            edges.push((pos[&a], pos[&b]));
        }
        Ok(MultiGraph::new(
            vertices.iter().map(|&v| self.elements[v].clone()).collect(),
            edges,
        ))
    }
}

/// A finite topological space with an explicitly stored open family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSpace {
    points: Vec<String>,
    opens: BTreeSet<u64>,
}

impl FinSpace {
    /// Builds a space from open sets given as lists of point ids. The family
    /// must contain the empty set and the whole set and be closed under
    /// pairwise union and intersection.
    pub fn new(points: Vec<String>, opens: Vec<Vec<String>>) -> Result<Self, TopologyError> {
        let index = index_elements(&points)?;
        if points.len() > MAX_SPACE_POINTS {
            return Err(TopologyError::TooManyPoints(points.len()));
        }
        let mut masks = BTreeSet::new();
        for open in opens {
            let mut m = 0u64;
            for p in open {
                let i = *index.get(&p).ok_or(TopologyError::UnknownElement(p))?;
                m |= 1 << i;
            }
            masks.insert(m);
        }
        Self::from_masks(points, masks)
    }

    /// Same as [`FinSpace::new`] with opens given as bitmasks over point
    /// positions.
    pub fn from_masks(points: Vec<String>, opens: BTreeSet<u64>) -> Result<Self, TopologyError> {
        index_elements(&points)?;
        let n = points.len();
        if n > MAX_SPACE_POINTS {
            return Err(TopologyError::TooManyPoints(n));
        }
        let full = full_mask(n);
        if !opens.contains(&0) {
            return Err(TopologyError::NotATopology("missing the empty set".into()));
        }
        if !opens.contains(&full) {
            return Err(TopologyError::NotATopology(
                "missing the whole space".into(),
            ));
        }
        if let Some(m) = opens.iter().find(|&&m| m & !full != 0) {
            return Err(TopologyError::NotATopology(format!(
                "open {m:#x} has out-of-range points"
            )));
        }
        let list: Vec<u64> = opens.iter().copied().collect();
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[i + 1..] {
                if !opens.contains(&(a | b)) {
                    return Err(TopologyError::NotATopology("not closed under union".into()));
                }
                if !opens.contains(&(a & b)) {
                    return Err(TopologyError::NotATopology(
                        "not closed under intersection".into(),
                    ));
                }
            }
        }
        Ok(Self { points, opens })
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn opens(&self) -> impl Iterator<Item = u64> + '_ {
        self.opens.iter().copied()
    }

    pub fn open_count(&self) -> usize {
        self.opens.len()
    }

    pub fn is_open(&self, mask: u64) -> bool {
        self.opens.contains(&mask)
    }

    /// Whether the complement of `mask` is open.
    pub fn is_closed(&self, mask: u64) -> bool {
        self.opens.contains(&(full_mask(self.points.len()) & !mask))
    }

    /// Closure of the singleton `{x}` as a mask.
    pub fn closure_of_point(&self, x: usize) -> u64 {
        let full = full_mask(self.points.len());
        let bit = 1u64 << x;
        let outside = self
            .opens
            .iter()
            .filter(|&&u| u & bit == 0)
            .fold(0u64, |acc, &u| acc | u);
        full & !outside
    }

    /// Opens as sorted id lists, for display and tests.
    pub fn open_sets(&self) -> Vec<Vec<String>> {
        self.opens
            .iter()
            .map(|&m| {
                (0..self.points.len())
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| self.points[i].clone())
                    .collect()
            })
            .collect()
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// The specialization order: `x <= y` iff `x` lies in the closure of `{y}`.
pub fn specialization_order(space: &FinSpace) -> Result<FinPoset, TopologyError> {
    let n = space.points.len();
    let closures: Vec<u64> = (0..n).map(|x| space.closure_of_point(x)).collect();
    for a in 0..n {
        for b in a + 1..n {
            if closures[a] == closures[b] {
                return Err(TopologyError::NotT0(
                    space.points[a].clone(),
                    space.points[b].clone(),
                ));
            }
        }
    }
    let leq = (0..n)
        .map(|x| (0..n).map(|y| closures[y] >> x & 1 == 1).collect())
        .collect();
    let index = index_elements(&space.points)?;
    FinPoset::from_matrix_checked(space.points.clone(), index, leq)
}

/// The Alexandroff topology: opens are exactly the up-sets.
pub fn alexandroff_space(poset: &FinPoset) -> Result<FinSpace, TopologyError> {
    let n = poset.len();
    if n > MAX_SPACE_POINTS {
        return Err(TopologyError::TooManyPoints(n));
    }
    // Deciding elements from the top down, an element may join the up-set
    // only once everything strictly above it already has.
    let heights = poset.heights();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| heights[b].cmp(&heights[a]).then(a.cmp(&b)));
    let above: Vec<u64> = (0..n)
        .map(|x| {
            (0..n)
                .filter(|&y| y != x && poset.leq(x, y))
                .fold(0u64, |m, y| m | 1 << y)
        })
        .collect();
    let mut opens = BTreeSet::new();
    collect_upsets(&order, &above, 0, 0, &mut opens);
    Ok(FinSpace {
        points: poset.elements.clone(),
        opens,
    })
}

fn collect_upsets(
    order: &[usize],
    above: &[u64],
    depth: usize,
    current: u64,
    out: &mut BTreeSet<u64>,
) {
    if depth == order.len() {
        out.insert(current);
        return;
    }
    let x = order[depth];
    collect_upsets(order, above, depth + 1, current, out);
    if above[x] & !current == 0 {
        collect_upsets(order, above, depth + 1, current | 1 << x, out);
    }
}

/// Flags for the separation axioms T0, T1 and T2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Separation {
    pub t0: bool,
    pub t1: bool,
    pub t2: bool,
}

pub fn separation_axioms(space: &FinSpace) -> Separation {
    let n = space.points.len();
    let opens: Vec<u64> = space.opens().collect();
    let mut t0 = true;
    let mut t1 = true;
    let mut t2 = true;
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let (bx, by) = (1u64 << x, 1u64 << y);
            // some open contains x but not y
            let x_not_y = opens.iter().any(|&u| u & bx != 0 && u & by == 0);
            let y_not_x = opens.iter().any(|&u| u & by != 0 && u & bx == 0);
            if !x_not_y && !y_not_x {
                t0 = false;
            }
            if !x_not_y {
                t1 = false;
            }
            let hausdorff = opens.iter().any(|&u| {
                u & bx != 0 && u & by == 0 && opens.iter().any(|&w| w & by != 0 && w & u == 0)
            });
            if !hausdorff {
                t2 = false;
            }
        }
    }
    Separation { t0, t1, t2 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn sierpinski() -> FinSpace {
        FinSpace::new(
            ids(&["a", "b"]),
            vec![vec![], ids(&["b"]), ids(&["a", "b"])],
        )
        .unwrap()
    }

    fn discrete(n: usize) -> FinSpace {
        let pts: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let opens = (0..1u64 << n).collect();
        FinSpace::from_masks(pts, opens).unwrap()
    }

    fn indiscrete2() -> FinSpace {
        FinSpace::new(ids(&["a", "b"]), vec![vec![], ids(&["a", "b"])]).unwrap()
    }

    fn edge_poset() -> FinPoset {
        FinPoset::new(ids(&["v1", "v2", "e"]), [("v1", "e"), ("v2", "e")]).unwrap()
    }

    #[test]
    fn sierpinski_order() {
        let p = specialization_order(&sierpinski()).unwrap();
        assert!(p.le("a", "b"));
        assert!(!p.le("b", "a"));
    }

    #[test]
    fn discrete_order_is_antichain() {
        let p = specialization_order(&discrete(2)).unwrap();
        assert!(p.strict_pairs().is_empty());
    }

    #[test]
    fn indiscrete_is_not_t0() {
        assert!(matches!(
            specialization_order(&indiscrete2()),
            Err(TopologyError::NotT0(_, _))
        ));
    }

    #[test]
    fn multigraph_like_examples() {
        let chain =
            FinPoset::new(ids(&["a", "b", "c"]), [("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        let w = chain.is_multigraph_like().unwrap_err();
        assert_eq!(w.element, "c");
        assert_eq!(w.reason, MultigraphFailure::TooHigh { height: 2 });

        assert!(edge_poset().is_multigraph_like().is_ok());

        let hyper = FinPoset::new(
            ids(&["v1", "v2", "v3", "e"]),
            [("v1", "e"), ("v2", "e"), ("v3", "e")],
        )
        .unwrap();
        let w = hyper.is_multigraph_like().unwrap_err();
        assert_eq!(w.element, "e");
        assert_eq!(w.reason, MultigraphFailure::DownsetTooLarge { size: 4 });
    }

    #[test]
    fn separation_examples() {
        assert_eq!(
            separation_axioms(&sierpinski()),
            Separation {
                t0: true,
                t1: false,
                t2: false
            }
        );
        assert_eq!(
            separation_axioms(&discrete(3)),
            Separation {
                t0: true,
                t1: true,
                t2: true
            }
        );
        assert_eq!(
            separation_axioms(&indiscrete2()),
            Separation {
                t0: false,
                t1: false,
                t2: false
            }
        );
    }

    #[test]
    fn connectivity_examples() {
        assert!(edge_poset().is_connected());
        let two = FinPoset::new(ids(&["a", "b"]), Vec::<(&str, &str)>::new()).unwrap();
        assert!(!two.is_connected());
        let one = FinPoset::new(ids(&["a"]), Vec::<(&str, &str)>::new()).unwrap();
        assert!(one.is_connected());
        let empty = FinPoset::new(vec![], Vec::<(&str, &str)>::new()).unwrap();
        assert!(!empty.is_connected());
        assert_eq!(empty.height(), None);
    }

    #[test]
    fn alexandroff_examples() {
        let ab = FinPoset::new(ids(&["a", "b"]), [("a", "b")]).unwrap();
        let s = alexandroff_space(&ab).unwrap();
        assert_eq!(s.open_sets(), vec![vec![], ids(&["b"]), ids(&["a", "b"])]);

        let anti = FinPoset::new(ids(&["a", "b"]), Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(alexandroff_space(&anti).unwrap().open_count(), 4);

        // Brute-force upset count over all 8 subsets of {v1, v2, e}.
        let p = edge_poset();
        let brute = (0u64..8)
            .filter(|&m| {
                (0..3).all(|x| m >> x & 1 == 0 || p.up(x).iter().all(|&y| m >> y & 1 == 1))
            })
            .count();
        assert_eq!(brute, 5);
        assert_eq!(alexandroff_space(&p).unwrap().open_count(), brute);
    }

    #[test]
    fn rejects_non_orders() {
        assert!(matches!(
            FinPoset::new(ids(&["a", "b"]), [("a", "b"), ("b", "a")]),
            Err(TopologyError::NotAntisymmetric(_, _))
        ));
        assert!(matches!(
            FinPoset::new(ids(&["a", "b", "c"]), [("a", "b"), ("b", "c")]),
            Err(TopologyError::NotTransitive(_, _, _))
        ));
        assert!(FinPoset::from_generators(ids(&["a", "b", "c"]), [("a", "b"), ("b", "c")]).is_ok());
    }

    #[test]
    fn rejects_non_topologies() {
        let r = FinSpace::new(ids(&["a", "b"]), vec![vec![], ids(&["a"]), ids(&["b"])]);
        assert!(matches!(r, Err(TopologyError::NotATopology(_))));
    }

    #[test]
    fn downsets_are_closed() {
        let p = edge_poset();
        let s = alexandroff_space(&p).unwrap();
        for x in 0..p.len() {
            let m = p.down(x).iter().fold(0u64, |m, &y| m | 1 << y);
            assert!(s.is_closed(m));
        }
    }
}
