//! Graphviz output.

use std::fmt::Write;

use crate::pair::{Attachment, InvariantPair, VertexLabel};
use crate::violation::Violation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DotView {
    /// Extended orbit graph: vertices and annuli.
    Graph,
    /// Saddles and separatrices.
    Diagram,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn attachment_label(a: &Attachment) -> String {
    match a.face {
        Some(f) => format!("{}[{f}]", a.vertex),
        None => a.vertex.clone(),
    }
}

pub fn export_dot(p: &InvariantPair, view: DotView) -> Result<String, Vec<Violation>> {
    p.validate()?;
    let mut out = String::new();
    match view {
        DotView::Graph => {
            out.push_str("digraph flow {\n");
            for v in &p.vertices {
                let label = match &v.label {
                    VertexLabel::Diagram { anchor } => format!("polycycle {anchor}"),
                    l => l.short().to_string(),
                };
                writeln!(out, "  {} [label={}];", quote(&v.id), quote(&label)).unwrap();
            }
            for i in 0..p.tori {
                writeln!(
                    out,
                    "  {} [label=\"torus\", shape=doublecircle];",
                    quote(&crate::pair::torus_point(i))
                )
                .unwrap();
            }
            for a in &p.annuli {
                let label = format!(
                    "{}: {} -> {}",
                    a.id,
                    attachment_label(&a.neg),
                    attachment_label(&a.pos)
                );
                writeln!(
                    out,
                    "  {} -> {} [label={}];",
                    quote(&a.neg.vertex),
                    quote(&a.pos.vertex),
                    quote(&label)
                )
                .unwrap();
            }
        }
        DotView::Diagram => {
            out.push_str("digraph diagram {\n");
            for s in &p.diagram.saddles {
                let word: Vec<String> = s
                    .rotation
                    .iter()
                    .map(|d| format!("{}:{}", d.sep, d.end))
                    .collect();
                let label = format!("{} ({})", s.id, word.join(" "));
                writeln!(out, "  {} [label={}];", quote(&s.id), quote(&label)).unwrap();
            }
            for e in p.diagram.separatrices() {
                writeln!(
                    out,
                    "  {} -> {} [label={}];",
                    quote(&e.source),
                    quote(&e.target),
                    quote(&e.id)
                )
                .unwrap();
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn sphere_graph() {
        let d = export_dot(&fixtures::sphere_rotation(), DotView::Graph).unwrap();
        assert_eq!(d.matches("[label=\"c\"]").count(), 2);
        assert_eq!(d.matches("\" -> \"").count(), 1);
    }

    #[test]
    fn figure_eight_diagram() {
        let d = export_dot(&fixtures::three_centers_eight(), DotView::Diagram).unwrap();
        assert_eq!(d.matches("[label=\"s (").count(), 1);
        assert_eq!(d.matches("\"s\" -> \"s\"").count(), 2);
    }

    #[test]
    fn torus_node() {
        let d = export_dot(&fixtures::periodic_torus(), DotView::Graph).unwrap();
        assert!(d.contains("label=\"torus\""));
        assert!(!d.contains("->"));
    }
}
