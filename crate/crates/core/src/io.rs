//! JSON model documents.
//!
//! ```json
//! {
//!   "version": 1,
//!   "diagram": { "saddles": [ { "id": "s", "kind": "interior", "k": 1,
//!                               "rotation": [ { "sep": "a", "end": "out" }, ... ] } ] },
//!   "graph": {
//!     "vertices": [ { "id": "p", "label": "diagram", "component": "s" },
//!                   { "id": "x", "label": "c" } ],
//!     "annuli": [ { "id": "u0", "neg": { "vertex": "p", "face": 0 }, "pos": { "vertex": "x" } } ],
//!     "tori": 0
//!   }
//! }
//! ```
//!
//! Face indices follow [`crate::diagram::trace_faces`]. Unknown fields are
//! rejected. The formal schema lives in `schema/model.schema.json`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{DartRef, Saddle, SaddleDiagram, SaddleKind};
use crate::multigraph::MultiGraph;
use crate::pair::{AnnulusEdge, Attachment, InvariantPair, VertexLabel, VertexNode};
use crate::violation::{Subject, Violation};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Located {
    pub at: Location,
    pub violation: Violation,
}

impl fmt::Display for Located {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.at, self.violation)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {at}: {message}")]
    Syntax { at: Location, message: String },
    #[error("schema error at {at}: {message}")]
    Schema { at: Location, message: String },
    #[error("{}", .0.iter().map(|v| format!("semantic error at {v}")).collect::<Vec<_>>().join("\n"))]
    Semantic(Vec<Located>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum KindDoc {
    Interior,
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SaddleDoc {
    id: String,
    kind: KindDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k_twice: Option<u32>,
    rotation: Vec<DartRef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramDoc {
    saddles: Vec<SaddleDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    twisted: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum LabelDoc {
    C,
    N,
    B,
    Diagram,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDoc {
    id: String,
    label: LabelDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    component: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AttachmentDoc {
    vertex: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    face: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AnnulusDoc {
    id: String,
    neg: AttachmentDoc,
    pos: AttachmentDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: Vec<VertexDoc>,
    annuli: Vec<AnnulusDoc>,
    #[serde(default)]
    tori: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelDocument {
    version: u32,
    diagram: DiagramDoc,
    graph: GraphDoc,
}

fn location_of_offset(text: &str, offset: usize) -> Location {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Location { line, column }
}

/// Position of the first `"needle"` string token in `text`.
fn locate(text: &str, needle: &str) -> Location {
    let quoted = serde_json::to_string(needle).expect("strings serialize");
    match text.find(&quoted) {
        Some(i) => location_of_offset(text, i),
        None => Location { line: 1, column: 1 },
    }
}

fn subject_anchor(s: &Subject) -> Option<&str> {
    match s {
        Subject::Model => None,
        Subject::Saddle(id)
        | Subject::Separatrix(id)
        | Subject::Vertex(id)
        | Subject::Annulus(id) => Some(id),
        Subject::Face { anchor, .. } => Some(anchor),
    }
}

fn json_error(e: serde_json::Error) -> ParseError {
    let at = Location {
        line: e.line(),
        column: e.column(),
    };
    let message = e.to_string();
    match e.classify() {
        serde_json::error::Category::Data => ParseError::Schema { at, message },
        _ => ParseError::Syntax { at, message },
    }
}

fn schema_at(text: &str, needle: &str, message: String) -> ParseError {
    ParseError::Schema {
        at: locate(text, needle),
        message,
    }
}

impl ModelDocument {
    fn from_pair(p: &InvariantPair) -> Self {
        let att = |a: &Attachment| AttachmentDoc {
            vertex: a.vertex.clone(),
            face: a.face,
        };
        ModelDocument {
            version: FORMAT_VERSION,
            diagram: DiagramDoc {
                saddles: p
                    .diagram
                    .saddles
                    .iter()
                    .map(|s| {
                        let (kind, k, k_twice) = match s.kind {
                            SaddleKind::Interior { k } => (KindDoc::Interior, Some(k), None),
                            SaddleKind::Boundary { k_twice } => {
                                (KindDoc::Boundary, None, Some(k_twice))
                            }
                        };
                        SaddleDoc {
                            id: s.id.clone(),
                            kind,
                            k,
                            k_twice,
                            rotation: s.rotation.clone(),
                        }
                    })
                    .collect(),
                twisted: p.diagram.twisted.clone(),
            },
            graph: GraphDoc {
                vertices: p
                    .vertices
                    .iter()
                    .map(|v| {
                        let (label, component) = match &v.label {
                            VertexLabel::Center => (LabelDoc::C, None),
                            VertexLabel::OneSided => (LabelDoc::N, None),
                            VertexLabel::Boundary => (LabelDoc::B, None),
                            VertexLabel::Diagram { anchor } => {
                                (LabelDoc::Diagram, Some(anchor.clone()))
                            }
                        };
                        VertexDoc {
                            id: v.id.clone(),
                            label,
                            component,
                        }
                    })
                    .collect(),
                annuli: p
                    .annuli
                    .iter()
                    .map(|a| AnnulusDoc {
                        id: a.id.clone(),
                        neg: att(&a.neg),
                        pos: att(&a.pos),
                    })
                    .collect(),
                tori: p.tori,
            },
        }
    }

    fn into_pair(self, text: &str) -> Result<InvariantPair, ParseError> {
        if self.version != FORMAT_VERSION {
            return Err(ParseError::Schema {
                at: locate(text, "version"),
                message: format!(
                    "unsupported version {} (expected {FORMAT_VERSION})",
                    self.version
                ),
            });
        }
        let mut saddles = Vec::new();
        for s in self.diagram.saddles {
            let kind = match (s.kind, s.k, s.k_twice) {
                (KindDoc::Interior, Some(k), None) => SaddleKind::Interior { k },
                (KindDoc::Boundary, None, Some(k_twice)) => SaddleKind::Boundary { k_twice },
                (KindDoc::Interior, _, _) => {
                    return Err(schema_at(
                        text,
                        &s.id,
                        format!("interior saddle `{}` needs `k` and no `k_twice`", s.id),
                    ))
                }
                (KindDoc::Boundary, _, _) => {
                    return Err(schema_at(
                        text,
                        &s.id,
                        format!("boundary saddle `{}` needs `k_twice` and no `k`", s.id),
                    ))
                }
            };
            saddles.push(Saddle {
                id: s.id,
                kind,
                rotation: s.rotation,
            });
        }
        let mut vertices = Vec::new();
        for v in self.graph.vertices {
            let label = match (v.label, v.component) {
                (LabelDoc::C, None) => VertexLabel::Center,
                (LabelDoc::N, None) => VertexLabel::OneSided,
                (LabelDoc::B, None) => VertexLabel::Boundary,
                (LabelDoc::Diagram, Some(anchor)) => VertexLabel::Diagram { anchor },
                (LabelDoc::Diagram, None) => {
                    return Err(schema_at(
                        text,
                        &v.id,
                        format!("diagram vertex `{}` needs `component`", v.id),
                    ))
                }
                (_, Some(_)) => {
                    return Err(schema_at(
                        text,
                        &v.id,
                        format!("only diagram vertices carry `component` (`{}`)", v.id),
                    ))
                }
            };
            vertices.push(VertexNode::new(v.id, label));
        }
        let att = |a: AttachmentDoc| Attachment {
            vertex: a.vertex,
            face: a.face,
        };
        let annuli = self
            .graph
            .annuli
            .into_iter()
            .map(|a| AnnulusEdge::new(a.id, att(a.neg), att(a.pos)))
            .collect();
        Ok(InvariantPair {
            diagram: SaddleDiagram {
                saddles,
                twisted: self.diagram.twisted,
            },
            vertices,
            annuli,
            tori: self.graph.tori,
        })
    }
}

/// Parses without validating the model.
pub fn parse_unchecked(text: &str) -> Result<InvariantPair, ParseError> {
    let doc: ModelDocument = serde_json::from_str(text).map_err(json_error)?;
    doc.into_pair(text)
}

/// Parses and validates; semantic violations are located at the first
/// occurrence of the offending id.
pub fn parse_model(text: &str) -> Result<InvariantPair, ParseError> {
    let p = parse_unchecked(text)?;
    p.validate().map_err(|vs| {
        ParseError::Semantic(
            vs.into_iter()
                .map(|v| Located {
                    at: subject_anchor(&v.subject)
                        .map_or(Location { line: 1, column: 1 }, |id| locate(text, id)),
                    violation: v,
                })
                .collect(),
        )
    })?;
    Ok(p)
}

/// Pretty JSON with a fixed field order and a trailing newline.
pub fn serialize_model(p: &InvariantPair) -> String {
    let mut s =
        serde_json::to_string_pretty(&ModelDocument::from_pair(p)).expect("documents serialize");
    s.push('\n');
    s
}

/// Single-line JSON.
pub fn serialize_model_compact(p: &InvariantPair) -> String {
    serde_json::to_string(&ModelDocument::from_pair(p)).expect("documents serialize")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

/// Reads an abstract multi-graph: `{"vertices": ["a", ...], "edges": [["a", "b"], ...]}`.
pub fn parse_multigraph(text: &str) -> Result<MultiGraph, ParseError> {
    let doc: GraphFile = serde_json::from_str(text).map_err(json_error)?;
    let pos = |v: &str| {
        doc.vertices
            .iter()
            .position(|x| x == v)
            .ok_or_else(|| schema_at(text, v, format!("edge names unknown vertex `{v}`")))
    };
    for (i, v) in doc.vertices.iter().enumerate() {
        if doc.vertices[..i].contains(v) {
            return Err(schema_at(text, v, format!("vertex `{v}` is listed twice")));
        }
    }
    let mut edges = Vec::new();
    for (a, b) in &doc.edges {
        edges.push((pos(a)?, pos(b)?));
    }
    Ok(MultiGraph::new(doc.vertices.clone(), edges))
}

pub fn serialize_multigraph(g: &MultiGraph) -> String {
    let doc = GraphFile {
        vertices: g.vertices.clone(),
        edges: g
            .edges
            .iter()
            .map(|&(a, b)| (g.vertices[a].clone(), g.vertices[b].clone()))
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("graphs serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::violation::Rule;

    #[test]
    fn round_trip_fixtures() {
        for (name, p) in fixtures::all() {
            let text = serialize_model(&p);
            assert_eq!(text, serialize_model(&p));
            let q = parse_model(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(p, q, "{name}");
            assert_eq!(parse_model(&serialize_model_compact(&p)).unwrap(), p);
        }
    }

    #[test]
    fn sphere_rotation_parses() {
        let p = parse_model(&serialize_model(&fixtures::sphere_rotation())).unwrap();
        assert_eq!((p.vertices.len(), p.annuli.len()), (2, 1));
    }

    #[test]
    fn degree_error_is_semantic() {
        let mut p = fixtures::center_eight_handle();
        p.diagram.saddles[0].rotation.pop();
        let text = serialize_model(&p);
        let Err(ParseError::Semantic(vs)) = parse_model(&text) else {
            panic!()
        };
        assert!(vs
            .iter()
            .any(|v| matches!(v.violation.rule, Rule::DegreeMismatch { .. })));
        assert!(vs.iter().any(|v| v.violation.to_string().contains("2k+2")));
        let saddle = vs
            .iter()
            .find(|v| v.violation.subject == Subject::Saddle("s".into()))
            .unwrap();
        assert_eq!(saddle.at, locate(&text, "s"));
    }

    #[test]
    fn truncated_is_syntax() {
        let text = serialize_model(&fixtures::sphere_rotation());
        let e = parse_model(&text[..text.len() / 2]).unwrap_err();
        assert!(
            matches!(e, ParseError::Syntax { at, .. } if at.line > 1),
            "{e:?}"
        );
    }

    #[test]
    fn schema_errors() {
        let text = serialize_model(&fixtures::sphere_rotation());
        let extra = text.replacen("\"tori\"", "\"colour\": 1,\n    \"tori\"", 1);
        assert!(matches!(
            parse_model(&extra),
            Err(ParseError::Schema { .. })
        ));
        let version = text.replacen("\"version\": 1", "\"version\": 2", 1);
        assert!(
            matches!(parse_model(&version), Err(ParseError::Schema { at, .. }) if at.line == 2)
        );
        let label = text.replacen("\"c\"", "\"q\"", 1);
        assert!(matches!(
            parse_model(&label),
            Err(ParseError::Schema { .. })
        ));
    }

    #[test]
    fn graph_files() {
        let g = parse_multigraph(r#"{"vertices": ["a", "b"], "edges": [["a", "b"], ["b", "b"]]}"#)
            .unwrap();
        assert_eq!(g.edges, vec![(0, 1), (1, 1)]);
        assert_eq!(parse_multigraph(&serialize_multigraph(&g)).unwrap(), g);
        assert!(matches!(
            parse_multigraph(r#"{"vertices": ["a"], "edges": [["a", "z"]]}"#),
            Err(ParseError::Schema { .. })
        ));
    }
}
