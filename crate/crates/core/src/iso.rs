//! Isomorphism of invariant pairs.
//!
//! Two pairs are isomorphic when there are bijections on saddles,
//! separatrices, vertices and annuli such that every label commutes:
//! vertex kinds and polycycle references, rotation words up to cyclic
//! shift, separatrix sources, and ordered annulus attachments (faces
//! included). With reversal allowed, the second pair may first be replaced
//! by [`InvariantPair::reversed`].
//!
//! [`pair_isomorphic`] decides this by plain backtracking over saddle
//! images and rotation shifts. It shares no code with the canonical form and
//! serves as its oracle.

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::diagram::{DartRef, RotationSystem};
use crate::pair::{Endpoint, InvariantPair, PairIndex, Side, VertexLabel};
use crate::violation::Violation;

/// `plus` is orientation-preserving equivalence; `allow_reversal` also
/// accepts an orbit-reversing identification.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct IsoMode {
    pub allow_reversal: bool,
}

impl IsoMode {
    pub const PLUS: IsoMode = IsoMode {
        allow_reversal: false,
    };
    pub const ANY: IsoMode = IsoMode {
        allow_reversal: true,
    };
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("pair {which} is invalid: {}", .violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidInput {
        which: usize,
        violations: Vec<Violation>,
    },
}

/// How one cyclic word maps onto another.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicWitness {
    pub shift: usize,
    pub reflected: bool,
}

/// Finds `shift` with `w2[i] == w1[(i + shift) % n]`, or with reflection
/// `w2[i] == w1[(shift + n - i) % n]`. Unreflected matches are preferred.
pub fn cyclic_equivalent<T: PartialEq>(
    w1: &[T],
    w2: &[T],
    allow_reflection: bool,
) -> Option<CyclicWitness> {
    let n = w1.len();
    if n != w2.len() {
        return None;
    }
    if n == 0 {
        return Some(CyclicWitness {
            shift: 0,
            reflected: false,
        });
    }
    if let Some(shift) = (0..n).find(|&k| (0..n).all(|i| w2[i] == w1[(i + k) % n])) {
        return Some(CyclicWitness {
            shift,
            reflected: false,
        });
    }
    if allow_reflection {
        if let Some(shift) = (0..n).find(|&k| (0..n).all(|i| w2[i] == w1[(k + n - i) % n])) {
            return Some(CyclicWitness {
                shift,
                reflected: true,
            });
        }
    }
    None
}

/// Id maps from the first pair to the second.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IsoWitness {
    /// The second pair is matched after reversal.
    pub reversed: bool,
    pub saddles: BTreeMap<String, String>,
    pub separatrices: BTreeMap<String, String>,
    pub vertices: BTreeMap<String, String>,
    pub annuli: BTreeMap<String, String>,
}

fn invert(m: &BTreeMap<String, String>) -> BTreeMap<String, String> {
    m.iter().map(|(a, b)| (b.clone(), a.clone())).collect()
}

fn chain(f: &BTreeMap<String, String>, g: &BTreeMap<String, String>) -> BTreeMap<String, String> {
    f.iter()
        .filter_map(|(a, b)| g.get(b).map(|c| (a.clone(), c.clone())))
        .collect()
}

impl IsoWitness {
    pub fn identity(p: &InvariantPair) -> Self {
        let id = |xs: Vec<String>| xs.into_iter().map(|x| (x.clone(), x)).collect();
        IsoWitness {
            reversed: false,
            saddles: id(p.diagram.saddles.iter().map(|s| s.id.clone()).collect()),
            separatrices: id(p.diagram.separatrices().into_iter().map(|s| s.id).collect()),
            vertices: id(p.vertices.iter().map(|v| v.id.clone()).collect()),
            annuli: id(p.annuli.iter().map(|a| a.id.clone()).collect()),
        }
    }

    /// The witness for the opposite direction.
    pub fn inverse(&self) -> Self {
        IsoWitness {
            reversed: self.reversed,
            saddles: invert(&self.saddles),
            separatrices: invert(&self.separatrices),
            vertices: invert(&self.vertices),
            annuli: invert(&self.annuli),
        }
    }

    /// `self` maps `p -> q` and `next` maps `q -> r`; the result maps
    /// `p -> r`.
    pub fn then(&self, next: &IsoWitness) -> Self {
        IsoWitness {
            reversed: self.reversed ^ next.reversed,
            saddles: chain(&self.saddles, &next.saddles),
            separatrices: chain(&self.separatrices, &next.separatrices),
            vertices: chain(&self.vertices, &next.vertices),
            annuli: chain(&self.annuli, &next.annuli),
        }
    }

    /// Checks every commuting condition directly.
    pub fn verify(&self, p: &InvariantPair, q: &InvariantPair) -> bool {
        let target = if self.reversed {
            match q.reversed() {
                Ok(r) => r,
                Err(_) => return false,
            }
        } else {
            q.clone()
        };
        self.verify_plus(p, &target)
    }

    fn verify_plus(&self, p: &InvariantPair, q: &InvariantPair) -> bool {
        let (Ok(ip), Ok(iq)) = (p.index(), q.index()) else {
            return false;
        };
        let bijective = |m: &BTreeMap<String, String>, from: Vec<String>, to: Vec<String>| {
            let mut a: Vec<&String> = m.keys().collect();
            let mut b: Vec<&String> = m.values().collect();
            let mut from: Vec<&String> = from.iter().collect();
            let mut to: Vec<&String> = to.iter().collect();
            a.sort();
            b.sort();
            from.sort();
            to.sort();
            a == from && b == to
        };
        if !bijective(
            &self.saddles,
            ip.rotation.saddle_ids.clone(),
            iq.rotation.saddle_ids.clone(),
        ) || !bijective(
            &self.separatrices,
            ip.rotation.sep_ids.clone(),
            iq.rotation.sep_ids.clone(),
        ) || !bijective(
            &self.vertices,
            p.vertices.iter().map(|v| v.id.clone()).collect(),
            q.vertices.iter().map(|v| v.id.clone()).collect(),
        ) || !bijective(
            &self.annuli,
            p.annuli.iter().map(|a| a.id.clone()).collect(),
            q.annuli.iter().map(|a| a.id.clone()).collect(),
        ) || p.tori != q.tori
        {
            return false;
        }
        // rotation words and sources
        for s in &p.diagram.saddles {
            let Some(t) = q
                .diagram
                .saddles
                .iter()
                .find(|t| t.id == self.saddles[&s.id])
            else {
                return false;
            };
            if s.kind != t.kind {
                return false;
            }
            let mapped: Vec<DartRef> = s
                .rotation
                .iter()
                .map(|d| DartRef::new(self.separatrices[&d.sep].clone(), d.end))
                .collect();
            if cyclic_equivalent(&mapped, &t.rotation, false).is_none() {
                return false;
            }
        }
        // vertex labels
        let qv: HashMap<&str, &VertexLabel> = q
            .vertices
            .iter()
            .map(|v| (v.id.as_str(), &v.label))
            .collect();
        for v in &p.vertices {
            let image = qv[self.vertices[&v.id].as_str()];
            let ok = match (&v.label, image) {
                (VertexLabel::Diagram { anchor: a }, VertexLabel::Diagram { anchor: b }) => {
                    let sa = iq.rotation.saddle_pos(&self.saddles[a]).expect("bijective");
                    let sb = iq.rotation.saddle_pos(b).expect("validated");
                    iq.rotation.component_of_saddle[sa] == iq.rotation.component_of_saddle[sb]
                }
                (a, b) => a == b,
            };
            if !ok {
                return false;
            }
        }
        // attachments, with faces carried along by the separatrix map
        let face_image = |g: usize| -> usize {
            let d = ip.rotation.faces[g].darts[0];
            let r = ip.rotation.dart_ref(d);
            let rank = iq
                .rotation
                .sep_rank(&self.separatrices[&r.sep])
                .expect("bijective");
            iq.rotation.face_of_dart[iq.rotation.dart_index(rank, r.end)]
        };
        let qa: HashMap<&str, usize> = q
            .annuli
            .iter()
            .enumerate()
            .map(|(i, a)| (a.id.as_str(), i))
            .collect();
        for (ai, a) in p.annuli.iter().enumerate() {
            let bi = qa[self.annuli[&a.id].as_str()];
            for side in [Side::Neg, Side::Pos] {
                let ok = match (ip.endpoint(ai, side), iq.endpoint(bi, side)) {
                    (Endpoint::Face(f), Endpoint::Face(g)) => face_image(f) == g,
                    (Endpoint::Vertex(v), Endpoint::Vertex(w)) => {
                        self.vertices[&p.vertices[v].id] == q.vertices[w].id
                    }
                    _ => false,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

/// Cheap isomorphism invariants compared before any search. They are
/// unchanged by reversal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    ks: Vec<u32>,
    faces: Vec<usize>,
    labels: [usize; 3],
    vertices: usize,
    annuli: usize,
    tori: u32,
    separatrices: usize,
}

fn fingerprint(p: &InvariantPair, idx: &PairIndex) -> Fingerprint {
    let mut ks = idx.rotation.saddle_k.clone();
    ks.sort_unstable();
    let mut faces: Vec<usize> = idx.rotation.faces.iter().map(|f| f.darts.len()).collect();
    faces.sort_unstable();
    Fingerprint {
        ks,
        faces,
        labels: [
            VertexLabel::Center,
            VertexLabel::OneSided,
            VertexLabel::Boundary,
        ]
        .map(|l| p.count_label(&l)),
        vertices: p.vertices.len(),
        annuli: p.annuli.len(),
        tori: p.tori,
        separatrices: idx.rotation.sep_ids.len(),
    }
}

struct Search<'a> {
    p: &'a InvariantPair,
    q: &'a InvariantPair,
    ip: &'a PairIndex,
    iq: &'a PairIndex,
    saddle_order: Vec<usize>,
    saddle_map: Vec<usize>,
    saddle_used: Vec<bool>,
    sep_map: Vec<usize>,
    sep_used: Vec<bool>,
    face_map: Vec<usize>,
    vertex_map: Vec<usize>,
    vertex_used: Vec<bool>,
    annulus_map: Vec<usize>,
    annulus_used: Vec<bool>,
}

const UNSET: usize = usize::MAX;

impl<'a> Search<'a> {
    fn new(
        p: &'a InvariantPair,
        q: &'a InvariantPair,
        ip: &'a PairIndex,
        iq: &'a PairIndex,
    ) -> Self {
        // saddles in breadth-first order so later saddles meet mapped
        // separatrices early
        let rs = &ip.rotation;
        let mut order = Vec::new();
        let mut seen = vec![false; rs.saddle_ids.len()];
        for start in 0..rs.saddle_ids.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(s) = queue.pop_front() {
                order.push(s);
                for &d in &rs.saddle_darts[s] {
                    let t = rs.dart_saddle[RotationSystem::inv(d)];
                    if !seen[t] {
                        seen[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        Search {
            p,
            q,
            ip,
            iq,
            saddle_order: order,
            saddle_map: vec![UNSET; rs.saddle_ids.len()],
            saddle_used: vec![false; iq.rotation.saddle_ids.len()],
            sep_map: vec![UNSET; rs.sep_ids.len()],
            sep_used: vec![false; iq.rotation.sep_ids.len()],
            face_map: vec![UNSET; rs.faces.len()],
            vertex_map: vec![UNSET; p.vertices.len()],
            vertex_used: vec![false; q.vertices.len()],
            annulus_map: vec![UNSET; p.annuli.len()],
            annulus_used: vec![false; q.annuli.len()],
        }
    }

    fn saddles(&mut self, i: usize) -> bool {
        if i == self.saddle_order.len() {
            return self.after_saddles();
        }
        let s = self.saddle_order[i];
        let rp = &self.ip.rotation;
        let rq = &self.iq.rotation;
        let deg = rp.saddle_darts[s].len();
        for t in 0..rq.saddle_ids.len() {
            if self.saddle_used[t]
                || rq.saddle_k[t] != rp.saddle_k[s]
                || rq.saddle_darts[t].len() != deg
            {
                continue;
            }
            for shift in 0..deg {
                let mut newly = Vec::new();
                let mut ok = true;
                for j in 0..deg {
                    let d1 = rp.saddle_darts[s][j];
                    let d2 = rq.saddle_darts[t][(j + shift) % deg];
                    if d1 & 1 != d2 & 1 {
                        ok = false;
                        break;
                    }
                    let (e1, e2) = (d1 / 2, d2 / 2);
                    if self.sep_map[e1] == UNSET {
                        if self.sep_used[e2] {
                            ok = false;
                            break;
                        }
                        self.sep_map[e1] = e2;
                        self.sep_used[e2] = true;
                        newly.push(e1);
                    } else if self.sep_map[e1] != e2 {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    self.saddle_map[s] = t;
                    self.saddle_used[t] = true;
                    if self.saddles(i + 1) {
                        return true;
                    }
                    self.saddle_used[t] = false;
                    self.saddle_map[s] = UNSET;
                }
                for e1 in newly {
                    self.sep_used[self.sep_map[e1]] = false;
                    self.sep_map[e1] = UNSET;
                }
            }
        }
        false
    }

    fn after_saddles(&mut self) -> bool {
        let rp = &self.ip.rotation;
        let rq = &self.iq.rotation;
        for (g, f) in rp.faces.iter().enumerate() {
            let d = f.darts[0];
            let image = 2 * self.sep_map[d / 2] + (d & 1);
            let h = rq.face_of_dart[image];
            if rq.faces[h].darts.len() != f.darts.len() {
                return false;
            }
            self.face_map[g] = h;
        }
        self.vertex_map.iter_mut().for_each(|x| *x = UNSET);
        self.vertex_used.iter_mut().for_each(|x| *x = false);
        for (c, &v) in self.ip.component_vertex.iter().enumerate() {
            let s = rp.components[c].saddles[0];
            let c2 = rq.component_of_saddle[self.saddle_map[s]];
            let w = self.iq.component_vertex[c2];
            self.vertex_map[v] = w;
            self.vertex_used[w] = true;
        }
        self.annuli(0)
    }

    fn annuli(&mut self, i: usize) -> bool {
        if i == self.p.annuli.len() {
            return true;
        }
        for j in 0..self.q.annuli.len() {
            if self.annulus_used[j] {
                continue;
            }
            let mut bound = Vec::new();
            let mut ok = true;
            for side in [Side::Neg, Side::Pos] {
                match (self.ip.endpoint(i, side), self.iq.endpoint(j, side)) {
                    (Endpoint::Face(f), Endpoint::Face(g)) => ok &= self.face_map[f] == g,
                    (Endpoint::Vertex(v), Endpoint::Vertex(w)) => {
                        if self.p.vertices[v].label != self.q.vertices[w].label {
                            ok = false;
                        } else if self.vertex_map[v] == UNSET {
                            if self.vertex_used[w] {
                                ok = false;
                            } else {
                                self.vertex_map[v] = w;
                                self.vertex_used[w] = true;
                                bound.push(v);
                            }
                        } else {
                            ok &= self.vertex_map[v] == w;
                        }
                    }
                    _ => ok = false,
                }
                if !ok {
                    break;
                }
            }
            if ok {
                self.annulus_map[i] = j;
                self.annulus_used[j] = true;
                if self.annuli(i + 1) {
                    return true;
                }
                self.annulus_used[j] = false;
                self.annulus_map[i] = UNSET;
            }
            for v in bound {
                self.vertex_used[self.vertex_map[v]] = false;
                self.vertex_map[v] = UNSET;
            }
        }
        false
    }

    fn witness(&self, reversed: bool) -> IsoWitness {
        let rp = &self.ip.rotation;
        let rq = &self.iq.rotation;
        IsoWitness {
            reversed,
            saddles: (0..rp.saddle_ids.len())
                .map(|s| {
                    (
                        rp.saddle_ids[s].clone(),
                        rq.saddle_ids[self.saddle_map[s]].clone(),
                    )
                })
                .collect(),
            separatrices: (0..rp.sep_ids.len())
                .map(|e| (rp.sep_ids[e].clone(), rq.sep_ids[self.sep_map[e]].clone()))
                .collect(),
            vertices: (0..self.p.vertices.len())
                .map(|v| {
                    (
                        self.p.vertices[v].id.clone(),
                        self.q.vertices[self.vertex_map[v]].id.clone(),
                    )
                })
                .collect(),
            annuli: (0..self.p.annuli.len())
                .map(|a| {
                    (
                        self.p.annuli[a].id.clone(),
                        self.q.annuli[self.annulus_map[a]].id.clone(),
                    )
                })
                .collect(),
        }
    }
}

/// A validated pair with its index and its reversal, ready for repeated
/// comparisons.
#[derive(Debug, Clone)]
pub struct PreparedPair {
    pub pair: InvariantPair,
    index: PairIndex,
    reversed: InvariantPair,
    reversed_index: PairIndex,
    fingerprint: Fingerprint,
}

impl PreparedPair {
    pub fn new(pair: InvariantPair) -> Result<Self, Vec<Violation>> {
        let index = pair.index()?;
        let reversed = pair.reversed()?;
        let reversed_index = reversed.index()?;
        let fingerprint = fingerprint(&pair, &index);
        Ok(PreparedPair {
            pair,
            index,
            reversed,
            reversed_index,
            fingerprint,
        })
    }

    pub fn fingerprint(&self) -> &Fingerprint {
        &self.fingerprint
    }

    /// Same answer as [`pair_isomorphic`].
    pub fn isomorphic(&self, other: &PreparedPair, mode: IsoMode) -> Option<IsoWitness> {
        if self.fingerprint != other.fingerprint {
            return None;
        }
        let run = |q: &InvariantPair, iq: &PairIndex, reversed: bool| {
            let mut s = Search::new(&self.pair, q, &self.index, iq);
            s.saddles(0).then(|| s.witness(reversed))
        };
        run(&other.pair, &other.index, false).or_else(|| {
            mode.allow_reversal
                .then(|| run(&other.reversed, &other.reversed_index, true))
                .flatten()
        })
    }
}

/// Decides isomorphism by exhaustive backtracking; returns a witness when
/// one exists.
pub fn pair_isomorphic(
    p1: &InvariantPair,
    p2: &InvariantPair,
    mode: IsoMode,
) -> Result<Option<IsoWitness>, IsoError> {
    let a = PreparedPair::new(p1.clone()).map_err(|violations| IsoError::InvalidInput {
        which: 1,
        violations,
    })?;
    let b = PreparedPair::new(p2.clone()).map_err(|violations| IsoError::InvalidInput {
        which: 2,
        violations,
    })?;
    Ok(a.isomorphic(&b, mode))
}

/// A copy of a valid pair with every id renamed, every list shuffled and
/// every rotation word cyclically shifted at random. Face indices are
/// renumbered so the copy describes the same model.
pub fn scrambled<R: Rng + ?Sized>(p: &InvariantPair, rng: &mut R) -> InvariantPair {
    let mut saddle_names: Vec<String> = (0..p.diagram.saddles.len())
        .map(|i| format!("S{i}"))
        .collect();
    let seps = p.diagram.separatrices();
    let mut sep_names: Vec<String> = (0..seps.len()).map(|i| format!("E{i}")).collect();
    let mut vertex_names: Vec<String> = (0..p.vertices.len()).map(|i| format!("V{i}")).collect();
    let mut annulus_names: Vec<String> = (0..p.annuli.len()).map(|i| format!("A{i}")).collect();
    saddle_names.shuffle(rng);
    sep_names.shuffle(rng);
    vertex_names.shuffle(rng);
    annulus_names.shuffle(rng);
    let saddles: HashMap<String, String> = p
        .diagram
        .saddles
        .iter()
        .map(|s| s.id.clone())
        .zip(saddle_names)
        .collect();
    let sep: HashMap<String, String> = seps.into_iter().map(|s| s.id).zip(sep_names).collect();
    let vertices: HashMap<String, String> = p
        .vertices
        .iter()
        .map(|v| v.id.clone())
        .zip(vertex_names)
        .collect();
    let annuli: HashMap<String, String> = p
        .annuli
        .iter()
        .map(|a| a.id.clone())
        .zip(annulus_names)
        .collect();
    let mut out = p
        .renamed(
            |s| saddles[s].clone(),
            |e| sep[e].clone(),
            |v| vertices[v].clone(),
            |a| annuli[a].clone(),
        )
        .expect("scrambled input must be valid");
    out.diagram.saddles.shuffle(rng);
    for s in &mut out.diagram.saddles {
        if !s.rotation.is_empty() {
            let k = rng.gen_range(0..s.rotation.len());
            s.rotation.rotate_left(k);
        }
    }
    out.vertices.shuffle(rng);
    out.annuli.shuffle(rng);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::SeedableRng;

    #[test]
    fn cyclic_examples() {
        assert_eq!(
            cyclic_equivalent(&['a', 'b', 'c'], &['b', 'c', 'a'], false),
            Some(CyclicWitness {
                shift: 1,
                reflected: false
            })
        );
        assert_eq!(
            cyclic_equivalent(&['a', 'b', 'c'], &['a', 'c', 'b'], false),
            None
        );
        assert_eq!(
            cyclic_equivalent(&['a', 'b', 'c'], &['a', 'c', 'b'], true).map(|w| w.reflected),
            Some(true)
        );
        assert_eq!(cyclic_equivalent(&['a', 'b'], &['a', 'b', 'c'], true), None);
    }

    #[test]
    fn identity_witness() {
        for (name, p) in fixtures::all() {
            let w = pair_isomorphic(&p, &p, IsoMode::PLUS)
                .unwrap()
                .unwrap_or_else(|| panic!("{name}"));
            assert!(w.verify(&p, &p));
            assert!(IsoWitness::identity(&p).verify(&p, &p));
        }
    }

    #[test]
    fn scrambled_copies_are_isomorphic() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for (name, p) in fixtures::all() {
            for _ in 0..5 {
                let q = scrambled(&p, &mut rng);
                assert!(q.validate().is_ok(), "{name}");
                let w = pair_isomorphic(&p, &q, IsoMode::PLUS)
                    .unwrap()
                    .unwrap_or_else(|| panic!("{name}"));
                assert!(w.verify(&p, &q), "{name}");
                assert!(w.inverse().verify(&q, &p), "{name}");
            }
        }
    }

    #[test]
    fn disk_pairs_differ_in_both_modes() {
        let (l, r) = (fixtures::flower_disk(), fixtures::nested_disk());
        assert!(pair_isomorphic(&l, &r, IsoMode::PLUS).unwrap().is_none());
        assert!(pair_isomorphic(&l, &r, IsoMode::ANY).unwrap().is_none());
    }

    #[test]
    fn ordered_labels_matter_only_without_reversal() {
        let p = fixtures::projective_plane();
        let r = p.reversed().unwrap();
        assert!(pair_isomorphic(&p, &r, IsoMode::PLUS).unwrap().is_none());
        let w = pair_isomorphic(&p, &r, IsoMode::ANY).unwrap().unwrap();
        assert!(w.reversed);
        assert!(w.verify(&p, &r));
    }

    #[test]
    fn invalid_input_is_reported() {
        let bad = InvariantPair::default();
        let e = pair_isomorphic(&bad, &fixtures::sphere_rotation(), IsoMode::PLUS).unwrap_err();
        assert!(matches!(e, IsoError::InvalidInput { which: 1, .. }));
    }
}
