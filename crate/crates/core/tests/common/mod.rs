//! Independent reference generators used by the integration tests.
//!
//! `brute_force_classes` builds every rotation word by placing separatrix
//! ends into slots in all orders, lets validation discard the bad ones,
//! matches attachment points in every way with both orientations, and
//! deduplicates only with the backtracking isomorphism test.

#![allow(dead_code)]

use std::collections::HashMap;

use flowinv::enumerate::EnumBounds;
use flowinv::iso::{Fingerprint, IsoMode, PreparedPair};
use flowinv::pair::{AnnulusEdge, Attachment, InvariantPair, VertexLabel, VertexNode};
use flowinv::topology::FinPoset;
use flowinv::{DartRef, RotationSystem, Saddle, SaddleDiagram};

pub fn all_permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in all_permutations(&rest) {
            p.insert(0, x.clone());
            out.push(p);
        }
    }
    out
}

/// Ordered `k` tuples, not multisets.
fn k_tuples(max_saddles: usize, max_k_sum: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_saddles {
        let mut next = Vec::new();
        for t in &frontier {
            let used: u32 = t.iter().sum();
            for k in 0..=(max_k_sum - used) {
                let mut u: Vec<u32> = t.clone();
                u.push(k);
                next.push(u);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Every valid diagram written every possible way.
pub fn raw_diagrams(max_saddles: usize, max_k_sum: u32) -> Vec<SaddleDiagram> {
    let mut out = Vec::new();
    for ks in k_tuples(max_saddles, max_k_sum) {
        let edges: usize = ks.iter().map(|&k| k as usize + 1).sum();
        let darts: Vec<DartRef> = (0..edges)
            .flat_map(|e| [DartRef::out(format!("x{e}")), DartRef::inc(format!("x{e}"))])
            .collect();
        for word in all_permutations(&darts) {
            let mut it = word.into_iter();
            let saddles = ks
                .iter()
                .enumerate()
                .map(|(i, &k)| {
                    Saddle::interior(
                        format!("q{i}"),
                        k,
                        it.by_ref().take(2 * k as usize + 2).collect(),
                    )
                })
                .collect();
            let d = SaddleDiagram::new(saddles);
            if d.validate().is_ok() {
                out.push(d);
            }
        }
    }
    out
}

fn all_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for y in 1..n {
        let rest: Vec<usize> = (1..n).filter(|&z| z != y).collect();
        for m in all_matchings(rest.len()) {
            let mapped: Vec<(usize, usize)> = m.iter().map(|&(a, b)| (rest[a], rest[b])).collect();
            for flip in [false, true] {
                let mut full = vec![if flip { (y, 0) } else { (0, y) }];
                full.extend(mapped.iter().copied());
                out.push(full);
            }
        }
    }
    out
}

/// Every orientation of every perfect matching, each pair oriented both
/// ways.
fn oriented_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for m in all_matchings(n) {
        let k = m.len();
        for mask in 0..(1u32 << k) {
            out.push(
                m.iter()
                    .enumerate()
                    .map(|(i, &(a, b))| if mask >> i & 1 == 1 { (b, a) } else { (a, b) })
                    .collect(),
            );
        }
    }
    out.sort();
    out.dedup();
    out
}

fn connected(p: &InvariantPair) -> bool {
    let idx = p.index().unwrap();
    p.assembly_components(&idx).len() + p.tori as usize == 1
}

/// Class representatives deduplicated by the backtracking test only.
#[derive(Default)]
pub struct ClassSet {
    pub mode: IsoMode,
    buckets: HashMap<Fingerprint, Vec<PreparedPair>>,
}

impl ClassSet {
    pub fn new(mode: IsoMode) -> Self {
        ClassSet {
            mode,
            buckets: HashMap::new(),
        }
    }

    pub fn insert(&mut self, p: InvariantPair) -> bool {
        let prepared = PreparedPair::new(p).unwrap();
        let bucket = self
            .buckets
            .entry(prepared.fingerprint().clone())
            .or_default();
        if bucket
            .iter()
            .any(|q| q.isomorphic(&prepared, self.mode).is_some())
        {
            return false;
        }
        bucket.push(prepared);
        true
    }

    pub fn contains(&self, p: &InvariantPair) -> bool {
        let prepared = PreparedPair::new(p.clone()).unwrap();
        self.buckets.get(prepared.fingerprint()).is_some_and(|b| {
            b.iter()
                .any(|q| q.isomorphic(&prepared, self.mode).is_some())
        })
    }

    pub fn len(&self) -> usize {
        self.buckets.values().map(Vec::len).sum()
    }

    pub fn members(&self) -> impl Iterator<Item = &InvariantPair> {
        self.buckets.values().flatten().map(|p| &p.pair)
    }
}

/// Whether a model lies within `b`, read off its counts.
pub fn within(p: &InvariantPair, b: &EnumBounds) -> bool {
    let count = |l: VertexLabel| p.vertices.iter().filter(|v| v.label == l).count();
    let (c, n, bb) = (
        count(VertexLabel::Center),
        count(VertexLabel::OneSided),
        count(VertexLabel::Boundary),
    );
    p.diagram.saddles.len() <= b.max_saddles
        && p.diagram.k_sum() <= b.max_k_sum
        && c <= b.max_centers
        && n <= if b.orientable_only { 0 } else { b.max_n }
        && bb <= if b.closed_only { 0 } else { b.max_b }
        && p.annuli.len() <= b.max_annuli
        && p.tori <= b.max_tori
}

/// All connected classes within `b`, without any symmetry pruning.
pub fn brute_force_classes(b: &EnumBounds) -> ClassSet {
    let mut set = ClassSet::new(b.mode);
    let n_max = if b.orientable_only { 0 } else { b.max_n };
    let b_max = if b.closed_only { 0 } else { b.max_b };
    let mut diagrams = raw_diagrams(b.max_saddles, b.max_k_sum);
    diagrams.insert(0, SaddleDiagram::default());
    for d in &diagrams {
        let rs = RotationSystem::build(d).unwrap();
        let vertices: Vec<VertexNode> = rs
            .components
            .iter()
            .enumerate()
            .map(|(c, comp)| {
                VertexNode::new(
                    format!("P{c}"),
                    VertexLabel::Diagram {
                        anchor: rs.saddle_ids[comp.saddles[0]].clone(),
                    },
                )
            })
            .collect();
        let faces: Vec<Attachment> = rs
            .faces
            .iter()
            .map(|f| Attachment::face(format!("P{}", f.component), f.index))
            .collect();
        if faces.len() > 2 * b.max_annuli {
            continue;
        }
        for c in 0..=b.max_centers {
            for n in 0..=n_max {
                for bb in 0..=b_max {
                    let total = faces.len() + c + n + bb;
                    if total == 0 || total % 2 == 1 || total / 2 > b.max_annuli {
                        continue;
                    }
                    let mut vs = vertices.clone();
                    let mut points = faces.clone();
                    for (label, count, tag) in [
                        (VertexLabel::Center, c, "C"),
                        (VertexLabel::OneSided, n, "N"),
                        (VertexLabel::Boundary, bb, "B"),
                    ] {
                        for i in 0..count {
                            let id = format!("{tag}{i}");
                            vs.push(VertexNode::new(id.clone(), label.clone()));
                            points.push(Attachment::vertex(id));
                        }
                    }
                    for m in oriented_matchings(total) {
                        let annuli = m
                            .iter()
                            .enumerate()
                            .map(|(i, &(x, y))| {
                                AnnulusEdge::new(
                                    format!("A{i}"),
                                    points[x].clone(),
                                    points[y].clone(),
                                )
                            })
                            .collect();
                        let p = InvariantPair {
                            diagram: d.clone(),
                            vertices: vs.clone(),
                            annuli,
                            tori: 0,
                        };
                        if connected(&p) {
                            set.insert(p);
                        }
                    }
                }
            }
        }
    }
    if b.max_tori >= 1 {
        set.insert(InvariantPair {
            tori: 1,
            ..Default::default()
        });
    }
    set
}

/// Every poset on `0..n` whose order extends the natural order of the
/// labels. Each poset with `n` elements is isomorphic to at least one.
pub fn natural_posets(n: usize) -> Vec<FinPoset> {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    // below[i]: bitmask of elements strictly below i
    let mut states: Vec<Vec<u64>> = vec![Vec::new()];
    for i in 0..n {
        let mut next = Vec::new();
        for below in &states {
            for mask in 0u64..(1 << i) {
                let closed = (0..i).all(|b| mask >> b & 1 == 0 || below[b] & !mask == 0);
                if closed {
                    let mut b2 = below.clone();
                    b2.push(mask);
                    next.push(b2);
                }
            }
        }
        states = next;
    }
    states
        .into_iter()
        .map(|below| {
            let mut rel = Vec::new();
            for j in 0..n {
                for a in 0..n {
                    if below[j] >> a & 1 == 1 {
                        rel.push((names[a].clone(), names[j].clone()));
                    }
                }
            }
            FinPoset::new(names.clone(), rel).unwrap()
        })
        .collect()
}
