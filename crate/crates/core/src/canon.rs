//! Canonical forms.
//!
//! Each connected piece of the assembly is encoded by a rooted traversal.
//! A polycycle is numbered breadth-first from a root dart, following
//! rotation then the involution; its dart table is the local code. The
//! traversal then walks the faces of each numbered polycycle in order of
//! their least dart number and records the annulus glued there together with
//! its other end. A polycycle reached for the first time is rooted at a dart
//! of the entry face, and every dart with the least local code is tried.
//! The piece code is the least code over all such choices; piece codes are
//! sorted and serialized with the torus count.

use std::collections::HashMap;

use sha2::{Digest, Sha256};

use crate::diagram::{RotationSystem, SaddleDiagram};
use crate::iso::IsoMode;
use crate::pair::{Endpoint, InvariantPair, PairIndex, Side, VertexLabel};
use crate::violation::Violation;

pub const CANON_VERSION: u8 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub bytes: Vec<u8>,
}

impl CanonicalForm {
    pub fn hex(&self) -> String {
        hex::encode(&self.bytes)
    }

    /// SHA-256 of the bytes, hex encoded.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(&self.bytes))
    }
}

const NONE: u32 = u32::MAX;

struct Local {
    /// Dart number by global dart (NONE outside the polycycle).
    num: Vec<u32>,
    code: Vec<u32>,
}

fn local_code(rs: &RotationSystem, root: usize) -> Local {
    let mut num = vec![NONE; rs.dart_count()];
    let mut order = vec![root];
    num[root] = 0;
    let mut i = 0;
    while i < order.len() {
        let d = order[i];
        for e in [rs.rot[d], RotationSystem::inv(d)] {
            if num[e] == NONE {
                num[e] = order.len() as u32;
                order.push(e);
            }
        }
        i += 1;
    }
    let mut code = Vec::with_capacity(1 + 3 * order.len());
    code.push(order.len() as u32);
    for &d in &order {
        code.extend([(d & 1) as u32, num[rs.rot[d]], num[RotationSystem::inv(d)]]);
    }
    Local { num, code }
}

fn label_code(l: &VertexLabel) -> u32 {
    match l {
        VertexLabel::Center => 0,
        VertexLabel::OneSided => 1,
        VertexLabel::Boundary => 2,
        VertexLabel::Diagram { .. } => unreachable!("polycycles are encoded structurally"),
    }
}

fn side_code(s: Side) -> u32 {
    match s {
        Side::Neg => 0,
        Side::Pos => 1,
    }
}

fn other(s: Side) -> Side {
    match s {
        Side::Neg => Side::Pos,
        Side::Pos => Side::Neg,
    }
}

struct Encoder<'a> {
    p: &'a InvariantPair,
    idx: &'a PairIndex,
    local: Vec<Local>,
}

#[derive(Clone)]
struct State {
    /// `(diagram component, root dart)` in discovery order.
    polys: Vec<(usize, usize)>,
    poly_of_component: HashMap<usize, usize>,
    emitted: Vec<bool>,
    cursor: (usize, usize),
    code: Vec<u32>,
}

impl<'a> Encoder<'a> {
    fn new(p: &'a InvariantPair, idx: &'a PairIndex) -> Self {
        let rs = &idx.rotation;
        let local = (0..rs.dart_count()).map(|d| local_code(rs, d)).collect();
        Encoder { p, idx, local }
    }

    fn faces_in_order(&self, c: usize, root: usize) -> Vec<(u32, usize)> {
        let rs = &self.idx.rotation;
        let num = &self.local[root].num;
        let mut faces: Vec<(u32, usize)> = rs.components[c]
            .faces
            .iter()
            .map(|&g| {
                (
                    rs.faces[g]
                        .darts
                        .iter()
                        .map(|&d| num[d])
                        .min()
                        .expect("nonempty face"),
                    g,
                )
            })
            .collect();
        faces.sort_unstable();
        faces
    }

    fn best_darts(&self, darts: impl Iterator<Item = usize> + Clone) -> Vec<usize> {
        let best = darts.clone().map(|d| &self.local[d].code).min().cloned();
        darts
            .filter(|&d| Some(&self.local[d].code) == best.as_ref())
            .collect()
    }

    fn open(&self, mut st: State, c: usize, root: usize) -> State {
        st.poly_of_component.insert(c, st.polys.len());
        st.polys.push((c, root));
        st.code.extend(&self.local[root].code);
        st
    }

    fn run(&self, mut st: State) -> Vec<u32> {
        loop {
            let (pi, fi) = st.cursor;
            if pi == st.polys.len() {
                return st.code;
            }
            let (c, root) = st.polys[pi];
            let faces = self.faces_in_order(c, root);
            if fi == faces.len() {
                st.cursor = (pi + 1, 0);
                continue;
            }
            st.cursor = (pi, fi + 1);
            let g = faces[fi].1;
            let (a, side) = self.idx.attached[&Endpoint::Face(g)];
            if st.emitted[a] {
                continue;
            }
            st.emitted[a] = true;
            st.code.push(side_code(side));
            match self.idx.endpoint(a, other(side)) {
                Endpoint::Vertex(v) => st.code.extend([1, label_code(&self.p.vertices[v].label)]),
                Endpoint::Face(h) => {
                    let rs = &self.idx.rotation;
                    let c2 = rs.faces[h].component;
                    if let Some(&j) = st.poly_of_component.get(&c2) {
                        let root2 = st.polys[j].1;
                        let m = rs.faces[h]
                            .darts
                            .iter()
                            .map(|&d| self.local[root2].num[d])
                            .min()
                            .expect("nonempty");
                        st.code.extend([0, j as u32, m]);
                    } else {
                        let j = st.polys.len() as u32;
                        let candidates = self.best_darts(rs.faces[h].darts.iter().copied());
                        let mut best: Option<Vec<u32>> = None;
                        for r in candidates {
                            let mut branch = st.clone();
                            // the entry dart is number 0 of the new polycycle
                            branch.code.extend([0, j, 0]);
                            let branch = self.open(branch, c2, r);
                            let code = self.run(branch);
                            if best.as_ref().is_none_or(|b| code < *b) {
                                best = Some(code);
                            }
                        }
                        return best.expect("faces are nonempty");
                    }
                }
            }
        }
    }

    fn piece(&self, vertices: &[usize]) -> Vec<u32> {
        let comps: Vec<usize> = vertices
            .iter()
            .filter_map(|&v| self.idx.vertex_component[v])
            .collect();
        if comps.is_empty() {
            let a = self.idx.attached[&Endpoint::Vertex(vertices[0])].0;
            let (n, p) = self.idx.ends[a];
            let lab = |e: Endpoint| match e {
                Endpoint::Vertex(v) => label_code(&self.p.vertices[v].label),
                Endpoint::Face(_) => unreachable!("piece has no polycycle"),
            };
            return vec![0, lab(n), lab(p)];
        }
        let rs = &self.idx.rotation;
        let darts = comps.iter().flat_map(|&c| {
            rs.components[c]
                .saddles
                .iter()
                .flat_map(|&s| rs.saddle_darts[s].iter().copied())
        });
        let mut best: Option<Vec<u32>> = None;
        for r in self.best_darts(darts) {
            let c = rs.component_of_dart(r);
            let st = State {
                polys: Vec::new(),
                poly_of_component: HashMap::new(),
                emitted: vec![false; self.p.annuli.len()],
                cursor: (0, 0),
                code: vec![1, comps.len() as u32],
            };
            let code = self.run(self.open(st, c, r));
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
        best.expect("polycycles have darts")
    }
}

fn serialize(mode: IsoMode, mut pieces: Vec<Vec<u32>>, tori: u32) -> CanonicalForm {
    pieces.sort();
    let mut bytes = vec![CANON_VERSION, mode.allow_reversal as u8];
    bytes.extend((pieces.len() as u32).to_le_bytes());
    for p in &pieces {
        bytes.extend((p.len() as u32).to_le_bytes());
        for x in p {
            bytes.extend(x.to_le_bytes());
        }
    }
    bytes.extend(tori.to_le_bytes());
    CanonicalForm { bytes }
}

fn plus_pieces(p: &InvariantPair) -> Result<Vec<Vec<u32>>, Vec<Violation>> {
    let idx = p.index()?;
    let enc = Encoder::new(p, &idx);
    let mut pieces: Vec<Vec<u32>> = p
        .assembly_components(&idx)
        .iter()
        .map(|g| enc.piece(g))
        .collect();
    pieces.sort();
    Ok(pieces)
}

/// Canonical form: equal exactly for isomorphic pairs under `mode`.
pub fn canonical_form(p: &InvariantPair, mode: IsoMode) -> Result<CanonicalForm, Vec<Violation>> {
    let mut pieces = plus_pieces(p)?;
    if mode.allow_reversal {
        let r = plus_pieces(&p.reversed()?)?;
        if r < pieces {
            pieces = r;
        }
    }
    Ok(serialize(mode, pieces, p.tori))
}

/// Canonical form of a saddle diagram alone, up to orientation-preserving
/// relabeling.
pub fn diagram_canonical_form(d: &SaddleDiagram) -> Result<CanonicalForm, Vec<Violation>> {
    let rs = RotationSystem::build(d)?;
    let pieces = rs
        .components
        .iter()
        .map(|comp| {
            comp.saddles
                .iter()
                .flat_map(|&s| rs.saddle_darts[s].iter())
                .map(|&r| local_code(&rs, r).code)
                .min()
                .expect("saddles have darts")
        })
        .collect();
    Ok(serialize(IsoMode::PLUS, pieces, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::iso::{pair_isomorphic, scrambled};
    use rand::SeedableRng;

    #[test]
    fn stable_under_scrambling() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for (name, p) in fixtures::all() {
            for mode in [IsoMode::PLUS, IsoMode::ANY] {
                let c = canonical_form(&p, mode).unwrap();
                for _ in 0..5 {
                    assert_eq!(
                        c,
                        canonical_form(&scrambled(&p, &mut rng), mode).unwrap(),
                        "{name}"
                    );
                }
            }
        }
    }

    #[test]
    fn agrees_with_oracle_on_fixtures() {
        let all = fixtures::all();
        for (n1, p) in &all {
            for (n2, q) in &all {
                for mode in [IsoMode::PLUS, IsoMode::ANY] {
                    let iso = pair_isomorphic(p, q, mode).unwrap().is_some();
                    let eq = canonical_form(p, mode).unwrap() == canonical_form(q, mode).unwrap();
                    assert_eq!(iso, eq, "{n1} vs {n2} {mode:?}");
                }
            }
        }
    }

    #[test]
    fn reversal_mode() {
        let p = fixtures::projective_plane();
        let r = p.reversed().unwrap();
        assert_ne!(
            canonical_form(&p, IsoMode::PLUS).unwrap(),
            canonical_form(&r, IsoMode::PLUS).unwrap()
        );
        assert_eq!(
            canonical_form(&p, IsoMode::ANY).unwrap(),
            canonical_form(&r, IsoMode::ANY).unwrap()
        );
    }

    #[test]
    fn header_and_digest() {
        let c = canonical_form(&fixtures::periodic_torus(), IsoMode::ANY).unwrap();
        assert_eq!(&c.bytes[..2], &[CANON_VERSION, 1]);
        assert_eq!(c.digest().len(), 64);
    }

    #[test]
    fn diagram_forms() {
        let l = fixtures::flower_disk().diagram;
        let r = fixtures::nested_disk().diagram;
        assert_ne!(
            diagram_canonical_form(&l).unwrap(),
            diagram_canonical_form(&r).unwrap()
        );
        let mut rot = l.clone();
        rot.saddles[0].rotation.rotate_left(2);
        assert_eq!(
            diagram_canonical_form(&l).unwrap(),
            diagram_canonical_form(&rot).unwrap()
        );
    }
}
