//! The labeled extended-orbit graph and the invariant pair.
//!
//! Vertices are quasi-centers (`c`), one-sided periodic orbits off the
//! boundary (`n`), periodic boundary orbits (`b`) and polycycles. Annuli are
//! the edges; each one records the ordered pair of attachment points of its
//! negative and positive boundary. Attachments to a polycycle name the face
//! (boundary circle of the polycycle neighborhood) they glue to.

use std::collections::{BTreeSet, HashMap};

use crate::diagram::{DartRef, RotationSystem, Saddle, SaddleDiagram};
use crate::multigraph::MultiGraph;
use crate::topology::{FinPoset, Separation};
use crate::violation::{Rule, Subject, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexLabel {
    /// Quasi-center.
    Center,
    /// Periodic orbit with a one-sided neighborhood off the boundary.
    OneSided,
    /// Periodic orbit on the boundary.
    Boundary,
    /// The polycycle containing saddle `anchor`.
    Diagram { anchor: String },
}

impl VertexLabel {
    pub fn short(&self) -> &'static str {
        match self {
            VertexLabel::Center => "c",
            VertexLabel::OneSided => "n",
            VertexLabel::Boundary => "b",
            VertexLabel::Diagram { .. } => "diagram",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexNode {
    pub id: String,
    pub label: VertexLabel,
}

impl VertexNode {
    pub fn new(id: impl Into<String>, label: VertexLabel) -> Self {
        Self {
            id: id.into(),
            label,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Attachment {
    pub vertex: String,
    pub face: Option<usize>,
}

impl Attachment {
    pub fn vertex(v: impl Into<String>) -> Self {
        Self {
            vertex: v.into(),
            face: None,
        }
    }

    pub fn face(v: impl Into<String>, face: usize) -> Self {
        Self {
            vertex: v.into(),
            face: Some(face),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnulusEdge {
    pub id: String,
    pub neg: Attachment,
    pub pos: Attachment,
}

impl AnnulusEdge {
    pub fn new(id: impl Into<String>, neg: Attachment, pos: Attachment) -> Self {
        Self {
            id: id.into(),
            neg,
            pos,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InvariantPair {
    pub diagram: SaddleDiagram,
    pub vertices: Vec<VertexNode>,
    pub annuli: Vec<AnnulusEdge>,
    /// Periodic tori, each an isolated point of the graph.
    pub tori: u32,
}

/// Resolved attachment point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Endpoint {
    /// A `c`, `n` or `b` vertex (by vertex position).
    Vertex(usize),
    /// A global face position of the rotation system.
    Face(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Neg,
    Pos,
}

/// Index structure over a validated pair.
#[derive(Debug, Clone)]
pub struct PairIndex {
    pub rotation: RotationSystem,
    /// Vertex position labeling each diagram component.
    pub component_vertex: Vec<usize>,
    /// Diagram component of each vertex, if it is a polycycle vertex.
    pub vertex_component: Vec<Option<usize>>,
    /// `(neg, pos)` per annulus.
    pub ends: Vec<(Endpoint, Endpoint)>,
    /// Annulus and side attached at each endpoint.
    pub attached: HashMap<Endpoint, (usize, Side)>,
}

impl PairIndex {
    pub fn endpoint(&self, annulus: usize, side: Side) -> Endpoint {
        match side {
            Side::Neg => self.ends[annulus].0,
            Side::Pos => self.ends[annulus].1,
        }
    }

    /// Vertex position an endpoint belongs to.
    pub fn endpoint_vertex(&self, e: Endpoint) -> usize {
        match e {
            Endpoint::Vertex(v) => v,
            Endpoint::Face(f) => self.component_vertex[self.rotation.faces[f].component],
        }
    }
}

impl InvariantPair {
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        self.index().map(|_| ())
    }

    /// Validates and builds the index used by the algorithms.
    pub fn index(&self) -> Result<PairIndex, Vec<Violation>> {
        let rotation = RotationSystem::build(&self.diagram)?;
        let mut out = Vec::new();

        let mut vpos: HashMap<&str, usize> = HashMap::new();
        let mut ids: BTreeSet<&str> = BTreeSet::new();
        for (i, v) in self.vertices.iter().enumerate() {
            check_id(&v.id, Subject::Vertex(v.id.clone()), &mut ids, &mut out);
            vpos.entry(v.id.as_str()).or_insert(i);
        }
        for a in &self.annuli {
            check_id(&a.id, Subject::Annulus(a.id.clone()), &mut ids, &mut out);
        }

        let n_comp = rotation.components.len();
        let mut labels_of_component: Vec<Vec<usize>> = vec![Vec::new(); n_comp];
        let mut vertex_component = vec![None; self.vertices.len()];
        for (i, v) in self.vertices.iter().enumerate() {
            if let VertexLabel::Diagram { anchor } = &v.label {
                match rotation.saddle_pos(anchor) {
                    Some(s) => {
                        let c = rotation.component_of_saddle[s];
                        labels_of_component[c].push(i);
                        vertex_component[i] = Some(c);
                    }
                    None => out.push(Violation::new(
                        Subject::Vertex(v.id.clone()),
                        Rule::UnknownSaddle,
                    )),
                }
            }
        }
        let mut component_vertex = vec![usize::MAX; n_comp];
        for (c, vs) in labels_of_component.iter().enumerate() {
            let anchor = rotation.saddle_ids[rotation.components[c].saddles[0]].clone();
            match vs.len() {
                0 => out.push(Violation::new(
                    Subject::Saddle(anchor),
                    Rule::ComponentUnlabeled,
                )),
                1 => component_vertex[c] = vs[0],
                n => out.push(Violation::new(
                    Subject::Saddle(anchor),
                    Rule::ComponentLabeledTwice { count: n },
                )),
            }
        }

        let mut ends = Vec::with_capacity(self.annuli.len());
        let mut uses: HashMap<Endpoint, usize> = HashMap::new();
        let mut attached = HashMap::new();
        for (ai, a) in self.annuli.iter().enumerate() {
            let mut resolved = [None, None];
            for (slot, (att, side)) in [(&a.neg, Side::Neg), (&a.pos, Side::Pos)]
                .into_iter()
                .enumerate()
            {
                let subject = Subject::Annulus(a.id.clone());
                let Some(&v) = vpos.get(att.vertex.as_str()) else {
                    out.push(Violation::new(subject, Rule::UnknownVertex));
                    continue;
                };
                let ep = match (&self.vertices[v].label, att.face) {
                    (VertexLabel::Diagram { .. }, None) => {
                        out.push(Violation::new(subject, Rule::FaceRequired));
                        continue;
                    }
                    (VertexLabel::Diagram { .. }, Some(f)) => {
                        let Some(c) = vertex_component[v] else {
                            continue;
                        };
                        match rotation.face_of_component(c, f) {
                            Some(g) => Endpoint::Face(g),
                            None => {
                                out.push(Violation::new(
                                    subject,
                                    Rule::FaceOutOfRange {
                                        faces: rotation.components[c].faces.len(),
                                    },
                                ));
                                continue;
                            }
                        }
                    }
                    (_, Some(_)) => {
                        out.push(Violation::new(subject, Rule::FaceForbidden));
                        continue;
                    }
                    (_, None) => Endpoint::Vertex(v),
                };
                *uses.entry(ep).or_insert(0) += 1;
                attached.insert(ep, (ai, side));
                resolved[slot] = Some(ep);
            }
            if let [Some(n), Some(p)] = resolved {
                ends.push((n, p));
            } else {
                ends.push((Endpoint::Vertex(usize::MAX), Endpoint::Vertex(usize::MAX)));
            }
        }

        // perfect matching of attachment points
        for (i, v) in self.vertices.iter().enumerate() {
            if matches!(v.label, VertexLabel::Diagram { .. }) {
                continue;
            }
            let subject = Subject::Vertex(v.id.clone());
            match uses.get(&Endpoint::Vertex(i)).copied().unwrap_or(0) {
                0 => out.push(Violation::new(subject, Rule::VertexUnattached)),
                1 => {}
                n => out.push(Violation::new(
                    subject,
                    Rule::VertexOverAttached { count: n },
                )),
            }
        }
        for (g, f) in rotation.faces.iter().enumerate() {
            let anchor = rotation.saddle_ids[rotation.components[f.component].saddles[0]].clone();
            let subject = Subject::Face {
                anchor,
                index: f.index,
            };
            match uses.get(&Endpoint::Face(g)).copied().unwrap_or(0) {
                0 => out.push(Violation::new(subject, Rule::FaceUnattached)),
                1 => {}
                n => out.push(Violation::new(subject, Rule::FaceOverAttached { count: n })),
            }
        }

        if self.vertices.is_empty() && self.tori == 0 && self.diagram.is_empty() {
            out.push(Violation::new(Subject::Model, Rule::EmptyModel));
        }

        if out.is_empty() {
            Ok(PairIndex {
                rotation,
                component_vertex,
                vertex_component,
                ends,
                attached,
            })
        } else {
            out.sort();
            out.dedup();
            Err(out)
        }
    }

    pub fn count_label(&self, label: &VertexLabel) -> usize {
        self.vertices.iter().filter(|v| &v.label == label).count()
    }

    /// The same model with time reversed and the surface mirrored:
    /// separatrices change direction, rotation words are read backwards and
    /// every annulus swaps its negative and positive ends. Ids are kept;
    /// face indices are renumbered to follow the same boundary circles.
    pub fn reversed(&self) -> Result<InvariantPair, Vec<Violation>> {
        let idx = self.index()?;
        let diagram = self.diagram.reversed();
        let rev = RotationSystem::build(&diagram)?;
        // A face keeps its set of (separatrix, end) labels under reversal.
        let remap = |att: &Attachment| -> Attachment {
            let Some(f) = att.face else {
                return att.clone();
            };
            let v = self
                .vertices
                .iter()
                .position(|v| v.id == att.vertex)
                .expect("validated");
            let c = idx.vertex_component[v].expect("validated");
            let g = idx.rotation.face_of_component(c, f).expect("validated");
            let d = idx.rotation.faces[g].darts[0];
            let dart_ref = idx.rotation.dart_ref(d);
            let rank = rev.sep_rank(&dart_ref.sep).expect("same separatrices");
            let h = rev.face_of_dart[rev.dart_index(rank, dart_ref.end)];
            Attachment::face(att.vertex.clone(), rev.faces[h].index)
        };
        Ok(InvariantPair {
            diagram,
            vertices: self.vertices.clone(),
            annuli: self
                .annuli
                .iter()
                .map(|a| AnnulusEdge::new(a.id.clone(), remap(&a.pos), remap(&a.neg)))
                .collect(),
            tori: self.tori,
        })
    }

    /// The same model with ids renamed by the given maps. Face indices are
    /// renumbered to follow the same boundary circles.
    pub fn renamed(
        &self,
        saddle: impl Fn(&str) -> String,
        sep: impl Fn(&str) -> String,
        vertex: impl Fn(&str) -> String,
        annulus: impl Fn(&str) -> String,
    ) -> Result<InvariantPair, Vec<Violation>> {
        let idx = self.index()?;
        let diagram = SaddleDiagram {
            saddles: self
                .diagram
                .saddles
                .iter()
                .map(|s| Saddle {
                    id: saddle(&s.id),
                    kind: s.kind,
                    rotation: s
                        .rotation
                        .iter()
                        .map(|d| DartRef::new(sep(&d.sep), d.end))
                        .collect(),
                })
                .collect(),
            twisted: self.diagram.twisted.iter().map(|t| sep(t)).collect(),
        };
        let new = RotationSystem::build(&diagram)?;
        let remap = |att: &Attachment| -> Attachment {
            let id = vertex(&att.vertex);
            let Some(f) = att.face else {
                return Attachment::vertex(id);
            };
            let v = self
                .vertices
                .iter()
                .position(|v| v.id == att.vertex)
                .expect("validated");
            let c = idx.vertex_component[v].expect("validated");
            let g = idx.rotation.face_of_component(c, f).expect("validated");
            let r = idx.rotation.dart_ref(idx.rotation.faces[g].darts[0]);
            let rank = new.sep_rank(&sep(&r.sep)).expect("renamed separatrix");
            Attachment::face(
                id,
                new.faces[new.face_of_dart[new.dart_index(rank, r.end)]].index,
            )
        };
        Ok(InvariantPair {
            diagram,
            vertices: self
                .vertices
                .iter()
                .map(|v| {
                    let label = match &v.label {
                        VertexLabel::Diagram { anchor } => VertexLabel::Diagram {
                            anchor: saddle(anchor),
                        },
                        l => l.clone(),
                    };
                    VertexNode::new(vertex(&v.id), label)
                })
                .collect(),
            annuli: self
                .annuli
                .iter()
                .map(|a| AnnulusEdge::new(annulus(&a.id), remap(&a.neg), remap(&a.pos)))
                .collect(),
            tori: self.tori,
        })
    }

    /// Vertex positions grouped into connected assembly pieces (vertices
    /// joined by annuli). Tori are not included.
    pub fn assembly_components(&self, idx: &PairIndex) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(a, b) in &idx.ends {
            let (va, vb) = (idx.endpoint_vertex(a), idx.endpoint_vertex(b));
            let (ra, rb) = (find(&mut parent, va), find(&mut parent, vb));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            let g = *slot.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(v);
        }
        groups
    }

    /// Number of connected pieces of the surface, tori included.
    pub fn surface_count(&self) -> Result<usize, Vec<Violation>> {
        let idx = self.index()?;
        Ok(self.assembly_components(&idx).len() + self.tori as usize)
    }
}

fn check_id<'a>(
    id: &'a str,
    subject: Subject,
    seen: &mut BTreeSet<&'a str>,
    out: &mut Vec<Violation>,
) {
    if id.is_empty() {
        out.push(Violation::new(subject.clone(), Rule::EmptyId));
    }
    if id.contains('#') {
        out.push(Violation::new(subject.clone(), Rule::ReservedCharacter));
    }
    if !seen.insert(id) {
        out.push(Violation::new(subject, Rule::DuplicateId));
    }
}

pub fn validate_pair(p: &InvariantPair) -> Result<(), Vec<Violation>> {
    p.validate()
}

/// Name of the isolated poset point standing for the `i`-th periodic torus.
pub fn torus_point(i: u32) -> String {
    format!("torus#{i}")
}

/// Vertices at height 0, annuli at height 1 over the vertices they touch,
/// and one isolated point per periodic torus.
pub fn to_extended_poset(p: &InvariantPair) -> Result<FinPoset, Vec<Violation>> {
    let idx = p.index()?;
    let mut elements: Vec<String> = p.vertices.iter().map(|v| v.id.clone()).collect();
    let mut rel = Vec::new();
    for (a, &(n, q)) in p.annuli.iter().zip(&idx.ends) {
        for e in [n, q] {
            rel.push((p.vertices[idx.endpoint_vertex(e)].id.clone(), a.id.clone()));
        }
        elements.push(a.id.clone());
    }
    elements.extend((0..p.tori).map(torus_point));
    Ok(FinPoset::new(elements, rel).expect("validated pair yields a poset"))
}

/// The extended orbit graph with every label dropped: vertices, annuli as
/// edges between the vertices they touch, and an isolated vertex per torus.
pub fn underlying_multigraph(p: &InvariantPair) -> Result<MultiGraph, Vec<Violation>> {
    let idx = p.index()?;
    let mut vertices: Vec<String> = p.vertices.iter().map(|v| v.id.clone()).collect();
    vertices.extend((0..p.tori).map(torus_point));
    let edges = idx
        .ends
        .iter()
        .map(|&(a, b)| (idx.endpoint_vertex(a), idx.endpoint_vertex(b)))
        .collect();
    Ok(MultiGraph::new(vertices, edges))
}

/// Annulus id to the unordered pair of its attachments.
pub fn reduced_label(
    p: &InvariantPair,
) -> Result<Vec<(String, BTreeSet<Attachment>)>, Vec<Violation>> {
    p.validate()?;
    Ok(p.annuli
        .iter()
        .map(|a| {
            (
                a.id.clone(),
                [a.neg.clone(), a.pos.clone()].into_iter().collect(),
            )
        })
        .collect())
}

/// Separation properties of the orbit space `S/v` and the extended orbit
/// space `S/v_ex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeparationReport {
    pub sv_t0: bool,
    pub sv_t1: bool,
    pub sv_t2: bool,
    pub svex_t1: bool,
    pub svex_t2: bool,
}

impl SeparationReport {
    pub fn orbit_space(&self) -> Separation {
        Separation {
            t0: self.sv_t0,
            t1: self.sv_t1,
            t2: self.sv_t2,
        }
    }
}

/// For flows of the modeled class every point is proper, so `S/v` is always
/// T0; it is T1 exactly when every orbit is closed (no separatrices), and
/// T2 when additionally there are at most two singular points. Polycycles
/// are closed, so the extended orbit space is always T2.
pub fn classify_separation(p: &InvariantPair) -> Result<SeparationReport, Vec<Violation>> {
    p.validate()?;
    let singular = p.count_label(&VertexLabel::Center) + p.diagram.saddles.len();
    let no_separatrices = p.diagram.is_empty();
    Ok(SeparationReport {
        sv_t0: true,
        sv_t1: no_separatrices,
        sv_t2: no_separatrices && singular <= 2,
        svex_t1: true,
        svex_t2: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn sphere_rotation_is_valid() {
        let p = fixtures::sphere_rotation();
        assert!(p.validate().is_ok());
        let poset = to_extended_poset(&p).unwrap();
        assert_eq!(poset.level(0).len(), 2);
        assert_eq!(poset.level(1).len(), 1);
    }

    #[test]
    fn dangling_face_is_reported() {
        let mut p = fixtures::three_centers_eight();
        p.annuli.pop();
        p.vertices.pop();
        let v = p.validate().unwrap_err();
        assert!(v.iter().any(|x| x.rule == Rule::FaceUnattached), "{v:?}");
    }

    #[test]
    fn over_attached_center() {
        let mut p = fixtures::sphere_rotation();
        p.vertices.push(VertexNode::new("c3", VertexLabel::Center));
        p.annuli.push(AnnulusEdge::new(
            "u2",
            Attachment::vertex("c1"),
            Attachment::vertex("c3"),
        ));
        let v = p.validate().unwrap_err();
        assert!(v.contains(&Violation::new(
            Subject::Vertex("c1".into()),
            Rule::VertexOverAttached { count: 2 }
        )));
    }

    #[test]
    fn torus_poset_is_single_point() {
        let poset = to_extended_poset(&fixtures::periodic_torus()).unwrap();
        assert_eq!(poset.len(), 1);
        assert_eq!(poset.height(), Some(0));
    }

    #[test]
    fn loop_annulus_has_downset_two() {
        let p = fixtures::center_eight_handle();
        let poset = to_extended_poset(&p).unwrap();
        let e = poset.index_of("u_loop").unwrap();
        assert_eq!(poset.down(e).len(), 2);
    }

    #[test]
    fn reduced_label_forgets_order() {
        let p = fixtures::sphere_rotation();
        let mut q = p.clone();
        let a = &mut q.annuli[0];
        std::mem::swap(&mut a.neg, &mut a.pos);
        assert_eq!(reduced_label(&p).unwrap(), reduced_label(&q).unwrap());
        assert_ne!(p, q);
        let lbl = reduced_label(&fixtures::center_eight_handle()).unwrap();
        let (_, set) = lbl.iter().find(|(id, _)| id == "u_loop").unwrap();
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn separation_table() {
        let r = classify_separation(&fixtures::sphere_rotation()).unwrap();
        assert!(r.sv_t2);
        let r = classify_separation(&fixtures::three_centers_eight()).unwrap();
        assert!(r.sv_t0 && !r.sv_t1 && r.svex_t2);
        let r = classify_separation(&fixtures::periodic_torus()).unwrap();
        assert!(r.sv_t1 && r.sv_t2);
    }

    #[test]
    fn reversal_round_trips() {
        for p in fixtures::all() {
            let r = p.1.reversed().unwrap();
            assert!(r.validate().is_ok());
            assert_eq!(r.reversed().unwrap(), p.1, "{}", p.0);
        }
    }
}
