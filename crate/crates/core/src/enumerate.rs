//! Enumeration of equivalence classes of connected models up to size
//! bounds.
//!
//! Diagrams are generated from saddle degree multisets: with every rotation
//! word started at an outgoing end, a diagram is a bijection from outgoing
//! to incoming slots. Pairs are then formed by matching all attachment
//! points (faces and `c`/`n`/`b` vertices) with oriented annuli, and
//! deduplicated by canonical form.

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::canon::{canonical_form, diagram_canonical_form, CanonicalForm};
use crate::diagram::{DartRef, RotationSystem, Saddle, SaddleDiagram};
use crate::iso::IsoMode;
use crate::pair::{AnnulusEdge, Attachment, InvariantPair, VertexLabel, VertexNode};
use crate::surface::reconstruct;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumBounds {
    pub max_saddles: usize,
    pub max_k_sum: u32,
    pub max_centers: usize,
    pub max_n: usize,
    pub max_b: usize,
    pub max_annuli: usize,
    pub max_tori: u32,
    pub closed_only: bool,
    pub orientable_only: bool,
    pub mode: IsoMode,
}

/// Nondecreasing `k` lists with at most `max_saddles` entries and sum at
/// most `max_k_sum`.
fn k_multisets(max_saddles: usize, max_k_sum: u32) -> Vec<Vec<u32>> {
    fn go(left: usize, budget: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        if left == 0 {
            return;
        }
        for k in min..=budget {
            cur.push(k);
            go(left - 1, budget - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max_saddles, max_k_sum, 0, &mut Vec::new(), &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, a, out);
            if k % 2 == 0 {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
        heap(k - 1, a, out);
    }
    heap(n, &mut cur, &mut out);
    out
}

fn diagram_from(ks: &[u32], target_of: &[usize]) -> SaddleDiagram {
    // slot (saddle, position); outgoing slots are the even positions
    let mut out_slots = Vec::new();
    let mut in_slots = Vec::new();
    for (s, &k) in ks.iter().enumerate() {
        for j in 0..(2 * k as usize + 2) {
            if j % 2 == 0 {
                &mut out_slots
            } else {
                &mut in_slots
            }
            .push((s, j));
        }
    }
    let mut words: Vec<Vec<DartRef>> = ks
        .iter()
        .map(|&k| vec![DartRef::out(""); 2 * k as usize + 2])
        .collect();
    for (e, &(s, j)) in out_slots.iter().enumerate() {
        let sep = format!("e{e}");
        words[s][j] = DartRef::out(sep.clone());
        let (t, i) = in_slots[target_of[e]];
        words[t][i] = DartRef::inc(sep);
    }
    SaddleDiagram::new(
        ks.iter()
            .zip(words)
            .enumerate()
            .map(|(s, (&k, w))| Saddle::interior(format!("s{s}"), k, w))
            .collect(),
    )
}

/// Every valid diagram within the saddle bounds, once per isomorphism
/// class, the empty diagram included. Sorted by canonical form.
pub fn enumerate_diagrams(b: &EnumBounds) -> Vec<SaddleDiagram> {
    let mut seen: BTreeMap<CanonicalForm, SaddleDiagram> = BTreeMap::new();
    for ks in k_multisets(b.max_saddles, b.max_k_sum) {
        let edges: usize = ks.iter().map(|&k| k as usize + 1).sum();
        for perm in permutations(edges) {
            let d = diagram_from(&ks, &perm);
            if let Ok(c) = diagram_canonical_form(&d) {
                seen.entry(c).or_insert(d);
            }
        }
    }
    seen.into_values().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Point {
    Face(String, usize),
    Vertex(VertexLabel, String),
}

impl Point {
    fn attachment(&self) -> Attachment {
        match self {
            Point::Face(v, f) => Attachment::face(v.clone(), *f),
            Point::Vertex(_, v) => Attachment::vertex(v.clone()),
        }
    }

    fn kind(&self) -> Option<&VertexLabel> {
        match self {
            Point::Face(..) => None,
            Point::Vertex(l, _) => Some(l),
        }
    }
}

/// All oriented perfect matchings of `points`, skipping choices that only
/// swap two interchangeable vertices.
fn matchings(points: &[Point]) -> Vec<Vec<(usize, usize)>> {
    fn go(
        points: &[Point],
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let Some(x) = used.iter().position(|u| !u) else {
            out.push(cur.clone());
            return;
        };
        used[x] = true;
        let mut tried: Vec<&VertexLabel> = Vec::new();
        for y in x + 1..points.len() {
            if used[y] {
                continue;
            }
            if let Some(l) = points[y].kind() {
                if tried.contains(&l) {
                    continue;
                }
                tried.push(l);
            }
            used[y] = true;
            let same = points[x].kind().is_some() && points[x].kind() == points[y].kind();
            let orders: &[(usize, usize)] = if same { &[(x, y)] } else { &[(x, y), (y, x)] };
            for &o in orders {
                cur.push(o);
                go(points, used, cur, out);
                cur.pop();
            }
            used[y] = false;
        }
        used[x] = false;
    }
    let mut out = Vec::new();
    go(
        points,
        &mut vec![false; points.len()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

fn is_connected_model(p: &InvariantPair) -> bool {
    match p.index() {
        Ok(idx) => p.assembly_components(&idx).len() + p.tori as usize == 1,
        Err(_) => false,
    }
}

/// A pair assembled from a diagram, vertex counts and a matching.
fn assemble(
    d: &SaddleDiagram,
    rs: &RotationSystem,
    counts: [usize; 3],
    m: &[(usize, usize)],
    points: &[Point],
) -> InvariantPair {
    let mut vertices: Vec<VertexNode> = rs
        .components
        .iter()
        .enumerate()
        .map(|(c, comp)| {
            VertexNode::new(
                format!("p{c}"),
                VertexLabel::Diagram {
                    anchor: rs.saddle_ids[comp.saddles[0]].clone(),
                },
            )
        })
        .collect();
    for (label, count) in [
        VertexLabel::Center,
        VertexLabel::OneSided,
        VertexLabel::Boundary,
    ]
    .into_iter()
    .zip(counts)
    {
        for i in 0..count {
            vertices.push(VertexNode::new(
                format!("{}{i}", label.short()),
                label.clone(),
            ));
        }
    }
    let annuli = m
        .iter()
        .enumerate()
        .map(|(i, &(n, p))| {
            AnnulusEdge::new(
                format!("u{i}"),
                points[n].attachment(),
                points[p].attachment(),
            )
        })
        .collect();
    InvariantPair {
        diagram: d.clone(),
        vertices,
        annuli,
        tori: 0,
    }
}

fn points_for(rs: &RotationSystem, counts: [usize; 3]) -> Vec<Point> {
    let mut points: Vec<Point> = rs
        .faces
        .iter()
        .map(|f| Point::Face(format!("p{}", f.component), f.index))
        .collect();
    for (label, count) in [
        VertexLabel::Center,
        VertexLabel::OneSided,
        VertexLabel::Boundary,
    ]
    .into_iter()
    .zip(counts)
    {
        for i in 0..count {
            points.push(Point::Vertex(
                label.clone(),
                format!("{}{i}", label.short()),
            ));
        }
    }
    points
}

/// Total cells of a model: vertices, annuli and tori.
pub fn cell_count(p: &InvariantPair) -> usize {
    p.vertices.len() + p.annuli.len() + p.tori as usize
}

/// Identifies a generated candidate: diagram position, vertex counts and
/// the oriented matching of attachment points.
pub type GenKey = (usize, [usize; 3], Vec<(usize, usize)>);

/// Visits every connected candidate model within the bounds before
/// deduplication. `seed` shuffles the visiting order.
pub fn for_each_candidate(
    b: &EnumBounds,
    seed: Option<u64>,
    mut f: impl FnMut(GenKey, InvariantPair),
) {
    let diagrams = enumerate_diagrams(b);
    let n_max = if b.orientable_only { 0 } else { b.max_n };
    let b_max = if b.closed_only { 0 } else { b.max_b };
    let mut configs: Vec<(usize, [usize; 3])> = Vec::new();
    for di in 0..diagrams.len() {
        for c in 0..=b.max_centers {
            for n in 0..=n_max {
                for bb in 0..=b_max {
                    configs.push((di, [c, n, bb]));
                }
            }
        }
    }
    if let Some(s) = seed {
        configs.shuffle(&mut rand::rngs::StdRng::seed_from_u64(s));
    }
    for (di, counts) in configs {
        let d = &diagrams[di];
        let rs = RotationSystem::build(d).expect("enumerated diagrams are valid");
        let points = points_for(&rs, counts);
        if points.is_empty() || points.len() % 2 == 1 || points.len() / 2 > b.max_annuli {
            continue;
        }
        let mut ms = matchings(&points);
        if let Some(s) = seed {
            ms.shuffle(&mut rand::rngs::StdRng::seed_from_u64(s ^ di as u64));
        }
        for m in ms {
            let p = assemble(d, &rs, counts, &m, &points);
            if is_connected_model(&p) {
                f((di, counts, m), p);
            }
        }
    }
    if b.max_tori >= 1 {
        f(
            (usize::MAX, [0; 3], Vec::new()),
            InvariantPair {
                tori: 1,
                ..Default::default()
            },
        );
    }
}

/// Every connected model within the bounds, once per class under
/// `b.mode`, ordered by cell count and then canonical form. `seed` shuffles
/// the internal generation order without changing the result.
pub fn enumerate_pairs_seeded(
    b: &EnumBounds,
    seed: Option<u64>,
) -> Vec<(CanonicalForm, InvariantPair)> {
    // the least generation key represents each class, whatever the order
    let mut found: HashMap<CanonicalForm, (GenKey, InvariantPair)> = HashMap::new();
    for_each_candidate(b, seed, |key, p| {
        let c = canonical_form(&p, b.mode).expect("assembled pairs are valid");
        match found.get(&c) {
            Some((k, _)) if *k <= key => {}
            _ => {
                found.insert(c, (key, p));
            }
        }
    });
    let mut out: Vec<(CanonicalForm, InvariantPair)> =
        found.into_iter().map(|(c, (_, p))| (c, p)).collect();
    out.sort_by(|(c1, p1), (c2, p2)| cell_count(p1).cmp(&cell_count(p2)).then_with(|| c1.cmp(c2)));
    out
}

pub fn enumerate_pairs(b: &EnumBounds) -> Vec<InvariantPair> {
    enumerate_pairs_seeded(b, None)
        .into_iter()
        .map(|(_, p)| p)
        .collect()
}

/// Surface type and saddle count of a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassKey {
    pub orientable: bool,
    pub genus: u64,
    pub boundary: usize,
    pub saddles: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCount {
    pub count: usize,
    /// Least canonical form among the classes counted here.
    pub representative: CanonicalForm,
}

pub fn count_classes_seeded(b: &EnumBounds, seed: Option<u64>) -> BTreeMap<ClassKey, ClassCount> {
    let mut table: BTreeMap<ClassKey, ClassCount> = BTreeMap::new();
    for (c, p) in enumerate_pairs_seeded(b, seed) {
        let (_, sig) = reconstruct(&p).expect("enumerated pairs reconstruct");
        let s = sig.components[0];
        let key = ClassKey {
            orientable: s.orientable,
            genus: s.genus,
            boundary: s.boundary,
            saddles: p.diagram.saddles.len(),
        };
        table
            .entry(key)
            .and_modify(|e| {
                e.count += 1;
                if c < e.representative {
                    e.representative = c.clone();
                }
            })
            .or_insert(ClassCount {
                count: 1,
                representative: c,
            });
    }
    table
}

pub fn count_classes(b: &EnumBounds) -> BTreeMap<ClassKey, ClassCount> {
    count_classes_seeded(b, None)
}
