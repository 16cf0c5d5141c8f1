//! Abstract multi-saddle connection diagrams.
//!
//! A diagram is a rotation system: every saddle lists the ends of its
//! separatrices ("darts") in counterclockwise order, and every separatrix
//! owns exactly two darts, its outgoing end at the source saddle and its
//! incoming end at the target saddle. Homoclinic separatrices therefore
//! occupy two slots of the same rotation.
//!
//! Faces are the orbits of the face-successor permutation
//! `d -> rot(inv(d))` on darts. Each face is one boundary circle of a
//! regular neighborhood of its polycycle.
//!
//! Darts are numbered `2 * rank + end`, where `rank` is the position of the
//! separatrix id in byte order and `end` is 0 for `out` and 1 for `in`.
//! Faces of a polycycle are numbered by their least dart; that numbering is
//! what attachments refer to.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::topology::FinPoset;
use crate::violation::{Rule, Subject, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Out,
    In,
}

impl End {
    pub fn flip(self) -> End {
        match self {
            End::Out => End::In,
            End::In => End::Out,
        }
    }

    fn bit(self) -> usize {
        match self {
            End::Out => 0,
            End::In => 1,
        }
    }
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            End::Out => "out",
            End::In => "in",
        })
    }
}

/// One end of a separatrix as it appears in a rotation word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DartRef {
    pub sep: String,
    pub end: End,
}

impl DartRef {
    pub fn new(sep: impl Into<String>, end: End) -> Self {
        Self {
            sep: sep.into(),
            end,
        }
    }

    pub fn out(sep: impl Into<String>) -> Self {
        Self::new(sep, End::Out)
    }

    pub fn inc(sep: impl Into<String>) -> Self {
        Self::new(sep, End::In)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SaddleKind {
    /// A `k`-saddle off the surface boundary.
    Interior { k: u32 },
    /// A boundary `(k_twice / 2)`-saddle. Representable but rejected by
    /// validation.
    Boundary { k_twice: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Saddle {
    pub id: String,
    pub kind: SaddleKind,
    /// Counterclockwise; cyclic for interior saddles.
    pub rotation: Vec<DartRef>,
}

impl Saddle {
    pub fn interior(id: impl Into<String>, k: u32, rotation: Vec<DartRef>) -> Self {
        Self {
            id: id.into(),
            kind: SaddleKind::Interior { k },
            rotation,
        }
    }
}

/// `deg x = 2k + 2`.
pub fn saddle_degree(s: &Saddle) -> usize {
    match s.kind {
        SaddleKind::Interior { k } => 2 * k as usize + 2,
        SaddleKind::Boundary { k_twice } => k_twice as usize + 2,
    }
}

/// A separatrix as recovered from the rotation words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separatrix {
    pub id: String,
    /// The alpha-limit saddle.
    pub source: String,
    /// The omega-limit saddle.
    pub target: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SaddleDiagram {
    pub saddles: Vec<Saddle>,
    /// Separatrices whose ribbon carries a half twist. Always rejected by
    /// validation for now.
    pub twisted: Vec<String>,
}

impl SaddleDiagram {
    pub fn new(saddles: Vec<Saddle>) -> Self {
        Self {
            saddles,
            twisted: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.saddles.is_empty()
    }

    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        RotationSystem::build(self).map(|_| ())
    }

    /// Separatrices with their source and target saddles, sorted by id.
    /// Ends missing from the rotation words leave the field empty.
    pub fn separatrices(&self) -> Vec<Separatrix> {
        let mut seps: BTreeMap<&str, Separatrix> = BTreeMap::new();
        for s in &self.saddles {
            for d in &s.rotation {
                let e = seps.entry(&d.sep).or_insert_with(|| Separatrix {
                    id: d.sep.clone(),
                    source: String::new(),
                    target: String::new(),
                });
                match d.end {
                    End::Out => e.source = s.id.clone(),
                    End::In => e.target = s.id.clone(),
                }
            }
        }
        seps.into_values().collect()
    }

    /// Sum of `k` over interior saddles.
    pub fn k_sum(&self) -> u32 {
        self.saddles
            .iter()
            .map(|s| match s.kind {
                SaddleKind::Interior { k } => k,
                SaddleKind::Boundary { .. } => 0,
            })
            .sum()
    }

    /// Time reversal combined with a mirror: every separatrix changes
    /// direction and every rotation word is read backwards.
    pub fn reversed(&self) -> SaddleDiagram {
        SaddleDiagram {
            saddles: self
                .saddles
                .iter()
                .map(|s| Saddle {
                    id: s.id.clone(),
                    kind: s.kind,
                    rotation: s
                        .rotation
                        .iter()
                        .rev()
                        .map(|d| DartRef::new(d.sep.clone(), d.end.flip()))
                        .collect(),
                })
                .collect(),
            twisted: self.twisted.clone(),
        }
    }
}

pub fn validate_diagram(d: &SaddleDiagram) -> Result<(), Vec<Violation>> {
    d.validate()
}

/// One boundary circle of a polycycle neighborhood.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceCycle {
    /// Component position in [`RotationSystem::components`].
    pub component: usize,
    /// Face position within its component (the attachment face index).
    pub index: usize,
    /// Darts in successor order, starting at the least.
    pub darts: Vec<usize>,
    /// Whether walking the face follows the separatrix directions.
    pub flow_positive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramComponent {
    /// Saddle positions in document order.
    pub saddles: Vec<usize>,
    /// Separatrix ranks, ascending.
    pub separatrices: Vec<usize>,
    /// Global face positions, in face-index order.
    pub faces: Vec<usize>,
}

/// Dart-indexed view of a validated diagram.
#[derive(Debug, Clone)]
pub struct RotationSystem {
    pub sep_ids: Vec<String>,
    pub saddle_ids: Vec<String>,
    pub saddle_k: Vec<u32>,
    /// Darts of each saddle in counterclockwise order.
    pub saddle_darts: Vec<Vec<usize>>,
    pub dart_saddle: Vec<usize>,
    pub rot: Vec<usize>,
    pub rot_inv: Vec<usize>,
    pub component_of_saddle: Vec<usize>,
    pub components: Vec<DiagramComponent>,
    pub faces: Vec<FaceCycle>,
    pub face_of_dart: Vec<usize>,
}

impl RotationSystem {
    pub fn dart_count(&self) -> usize {
        self.rot.len()
    }

    pub fn inv(d: usize) -> usize {
        d ^ 1
    }

    pub fn end(d: usize) -> End {
        if d & 1 == 0 {
            End::Out
        } else {
            End::In
        }
    }

    pub fn dart_index(&self, sep_rank: usize, end: End) -> usize {
        2 * sep_rank + end.bit()
    }

    pub fn dart_ref(&self, d: usize) -> DartRef {
        DartRef::new(self.sep_ids[d / 2].clone(), Self::end(d))
    }

    pub fn sep_rank(&self, id: &str) -> Option<usize> {
        self.sep_ids.binary_search_by(|s| s.as_str().cmp(id)).ok()
    }

    pub fn saddle_pos(&self, id: &str) -> Option<usize> {
        self.saddle_ids.iter().position(|s| s == id)
    }

    pub fn face_successor(&self, d: usize) -> usize {
        self.rot[Self::inv(d)]
    }

    pub fn component_of_dart(&self, d: usize) -> usize {
        self.component_of_saddle[self.dart_saddle[d]]
    }

    /// Validates `d` and traces its faces.
    pub fn build(d: &SaddleDiagram) -> Result<Self, Vec<Violation>> {
        let mut violations = structural_violations(d);
        if !violations.is_empty() {
            violations.sort();
            violations.dedup();
            return Err(violations);
        }
        let sys = Self::assemble(d);
        let mut incoherent = Vec::new();
        for f in &sys.faces {
            let ends: HashSet<End> = f.darts.iter().map(|&x| Self::end(x)).collect();
            if ends.len() > 1 {
                let anchor = sys.saddle_ids[sys.components[f.component].saddles[0]].clone();
                incoherent.push(Violation::new(
                    Subject::Face {
                        anchor,
                        index: f.index,
                    },
                    Rule::FlowIncoherentFace,
                ));
            }
        }
        if incoherent.is_empty() {
            Ok(sys)
        } else {
            Err(incoherent)
        }
    }

    fn assemble(d: &SaddleDiagram) -> Self {
        let mut sep_ids: Vec<String> = d
            .saddles
            .iter()
            .flat_map(|s| s.rotation.iter().map(|x| x.sep.clone()))
            .collect();
        sep_ids.sort();
        sep_ids.dedup();
        let rank: HashMap<&str, usize> = sep_ids
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let n_darts = 2 * sep_ids.len();
        let mut dart_saddle = vec![0; n_darts];
        let mut rot = vec![0; n_darts];
        let mut rot_inv = vec![0; n_darts];
        let mut saddle_darts = Vec::with_capacity(d.saddles.len());
        for (si, s) in d.saddles.iter().enumerate() {
            let darts: Vec<usize> = s
                .rotation
                .iter()
                .map(|x| 2 * rank[x.sep.as_str()] + x.end.bit())
                .collect();
            for (i, &x) in darts.iter().enumerate() {
                let next = darts[(i + 1) % darts.len()];
                dart_saddle[x] = si;
                rot[x] = next;
                rot_inv[next] = x;
            }
            saddle_darts.push(darts);
        }

        // components: union saddles joined by a separatrix
        let n = d.saddles.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for sep in 0..sep_ids.len() {
            let (a, b) = (
                find(&mut parent, dart_saddle[2 * sep]),
                find(&mut parent, dart_saddle[2 * sep + 1]),
            );
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut comp_of_root: HashMap<usize, usize> = HashMap::new();
        let mut component_of_saddle = vec![0; n];
        let mut components: Vec<DiagramComponent> = Vec::new();
        for si in 0..n {
            let r = find(&mut parent, si);
            let c = *comp_of_root.entry(r).or_insert_with(|| {
                components.push(DiagramComponent {
                    saddles: vec![],
                    separatrices: vec![],
                    faces: vec![],
                });
                components.len() - 1
            });
            component_of_saddle[si] = c;
            components[c].saddles.push(si);
        }
        for sep in 0..sep_ids.len() {
            components[component_of_saddle[dart_saddle[2 * sep]]]
                .separatrices
                .push(sep);
        }

        // faces, in order of least dart
        let mut face_of_dart = vec![usize::MAX; n_darts];
        let mut raw_faces: Vec<(usize, Vec<usize>)> = Vec::new();
        for start in 0..n_darts {
            if face_of_dart[start] != usize::MAX {
                continue;
            }
            let mut cycle = vec![start];
            face_of_dart[start] = raw_faces.len();
            let mut x = rot[start ^ 1];
            while x != start {
                face_of_dart[x] = raw_faces.len();
                cycle.push(x);
                x = rot[x ^ 1];
            }
            raw_faces.push((component_of_saddle[dart_saddle[start]], cycle));
        }
        // regroup by component, keeping least-dart order inside each
        let mut order: Vec<usize> = (0..raw_faces.len()).collect();
        order.sort_by_key(|&f| (raw_faces[f].0, raw_faces[f].1[0]));
        let mut faces = Vec::with_capacity(raw_faces.len());
        let mut remap = vec![0; raw_faces.len()];
        for (new, &old) in order.iter().enumerate() {
            let (c, darts) = &raw_faces[old];
            let index = components[*c].faces.len();
            components[*c].faces.push(new);
            remap[old] = new;
            let flow_positive = darts.iter().all(|&x| x & 1 == 0);
            faces.push(FaceCycle {
                component: *c,
                index,
                darts: darts.clone(),
                flow_positive,
            });
        }
        for f in face_of_dart.iter_mut() {
            *f = remap[*f];
        }

        RotationSystem {
            sep_ids,
            saddle_ids: d.saddles.iter().map(|s| s.id.clone()).collect(),
            saddle_k: d
                .saddles
                .iter()
                .map(|s| match s.kind {
                    SaddleKind::Interior { k } => k,
                    SaddleKind::Boundary { .. } => 0,
                })
                .collect(),
            saddle_darts,
            dart_saddle,
            rot,
            rot_inv,
            component_of_saddle,
            components,
            faces,
            face_of_dart,
        }
    }

    /// Face sides as `(separatrix id, end)` pairs.
    pub fn face_sides(&self, face: usize) -> Vec<DartRef> {
        self.faces[face]
            .darts
            .iter()
            .map(|&d| self.dart_ref(d))
            .collect()
    }

    /// Global face position of the `index`-th face of component `c`.
    pub fn face_of_component(&self, c: usize, index: usize) -> Option<usize> {
        self.components.get(c)?.faces.get(index).copied()
    }

    /// Euler characteristic `V - E + F` of the closed surface the
    /// component's ribbon graph embeds in.
    pub fn component_euler(&self, c: usize) -> i64 {
        let comp = &self.components[c];
        comp.saddles.len() as i64 - comp.separatrices.len() as i64 + comp.faces.len() as i64
    }

    /// Genus of the closed orientable surface carrying component `c`
    /// cellularly.
    pub fn component_genus(&self, c: usize) -> i64 {
        (2 - self.component_euler(c)) / 2
    }
}

fn structural_violations(d: &SaddleDiagram) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen_saddles = HashSet::new();
    // (sep, end) -> number of occurrences
    let mut ends: BTreeMap<&str, [usize; 2]> = BTreeMap::new();
    for s in &d.saddles {
        let subject = Subject::Saddle(s.id.clone());
        if s.id.is_empty() {
            out.push(Violation::new(subject.clone(), Rule::EmptyId));
        }
        if s.id.contains('#') {
            out.push(Violation::new(subject.clone(), Rule::ReservedCharacter));
        }
        if !seen_saddles.insert(s.id.as_str()) {
            out.push(Violation::new(subject.clone(), Rule::DuplicateId));
        }
        for x in &s.rotation {
            ends.entry(&x.sep).or_insert([0, 0])[x.end.bit()] += 1;
        }
        match s.kind {
            SaddleKind::Boundary { .. } => {
                out.push(Violation::new(subject, Rule::BoundarySaddleUnsupported));
            }
            SaddleKind::Interior { k } => {
                let expected = saddle_degree(s);
                if s.rotation.len() != expected {
                    out.push(Violation::new(
                        subject,
                        Rule::DegreeMismatch {
                            k,
                            expected,
                            found: s.rotation.len(),
                        },
                    ));
                } else {
                    let n = s.rotation.len();
                    for slot in 0..n {
                        let prev = &s.rotation[(slot + n - 1) % n];
                        if prev.end == s.rotation[slot].end {
                            out.push(Violation::new(subject.clone(), Rule::Alternation { slot }));
                            break;
                        }
                    }
                }
            }
        }
    }
    for (sep, [outs, ins]) in &ends {
        let subject = Subject::Separatrix(sep.to_string());
        if sep.is_empty() {
            out.push(Violation::new(subject.clone(), Rule::EmptyId));
        }
        if sep.contains('#') {
            out.push(Violation::new(subject.clone(), Rule::ReservedCharacter));
        }
        if seen_saddles.contains(sep) {
            out.push(Violation::new(subject.clone(), Rule::DuplicateId));
        }
        for (end, count) in [(End::Out, *outs), (End::In, *ins)] {
            if count == 0 {
                out.push(Violation::new(subject.clone(), Rule::MissingEnd { end }));
            } else if count > 1 {
                out.push(Violation::new(subject.clone(), Rule::DartRepeated { end }));
            }
        }
    }
    for t in &d.twisted {
        let subject = Subject::Separatrix(t.clone());
        if !ends.contains_key(t.as_str()) {
            out.push(Violation::new(subject.clone(), Rule::UnknownSeparatrix));
        }
        out.push(Violation::new(subject, Rule::TwistUnsupported));
    }
    out
}

/// Faces of a valid diagram, grouped by component.
pub fn trace_faces(d: &SaddleDiagram) -> Result<Vec<FaceCycle>, Vec<Violation>> {
    RotationSystem::build(d).map(|s| s.faces)
}

/// Connected components as `(saddle ids, separatrix ids)`.
pub fn diagram_components(
    d: &SaddleDiagram,
) -> Result<Vec<(Vec<String>, Vec<String>)>, Vec<Violation>> {
    let sys = RotationSystem::build(d)?;
    Ok(sys
        .components
        .iter()
        .map(|c| {
            (
                c.saddles
                    .iter()
                    .map(|&s| sys.saddle_ids[s].clone())
                    .collect(),
                c.separatrices
                    .iter()
                    .map(|&e| sys.sep_ids[e].clone())
                    .collect(),
            )
        })
        .collect())
}

/// Saddles at height 0, separatrices at height 1 over their endpoints.
pub fn diagram_poset(d: &SaddleDiagram) -> Result<FinPoset, Vec<Violation>> {
    d.validate()?;
    let mut elements: Vec<String> = d.saddles.iter().map(|s| s.id.clone()).collect();
    let mut rel = Vec::new();
    for sep in d.separatrices() {
        rel.push((sep.source.clone(), sep.id.clone()));
        rel.push((sep.target.clone(), sep.id.clone()));
        elements.push(sep.id);
    }
    Ok(FinPoset::new(elements, rel).expect("validated diagram yields a poset"))
}
