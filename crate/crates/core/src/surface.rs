//! Reassembling the surface from an invariant pair, and realizing abstract
//! multi-graphs as extended orbit graphs.
//!
//! Each vertex becomes a cell with boundary circles: a center disk, a
//! Möbius collar around a one-sided orbit, a collar of a boundary orbit, or
//! the regular neighborhood of a polycycle (one circle per face). Each
//! annulus is a cell with a negative and a positive circle, glued to the
//! circles named by its attachments. Periodic tori are closed cells.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::diagram::{DartRef, RotationSystem, Saddle, SaddleDiagram};
use crate::multigraph::MultiGraph;
use crate::pair::{AnnulusEdge, Attachment, Endpoint, InvariantPair, VertexLabel, VertexNode};
use crate::violation::{Rule, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("invalid model: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidInput(Vec<Violation>),
    #[error("unsupported content: {0}")]
    Unsupported(String),
    #[error(
        "component {component}: chi={chi} with {boundary} boundary circles gives no valid genus"
    )]
    NonIntegerGenus {
        component: usize,
        chi: i64,
        boundary: usize,
    },
    #[error("not realizable: {0}")]
    NotRealizableInput(String),
}

fn invalid(v: Vec<Violation>) -> SurfaceError {
    if let Some(x) = v.iter().find(|x| {
        matches!(
            x.rule,
            Rule::BoundarySaddleUnsupported | Rule::TwistUnsupported
        )
    }) {
        return SurfaceError::Unsupported(x.to_string());
    }
    SurfaceError::InvalidInput(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellKind {
    CenterDisk,
    Annulus,
    MobiusCollar,
    BoundaryCollar,
    PolycycleNbhd,
    Torus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub kind: CellKind,
    /// Circle ids. For an annulus: negative then positive. For a boundary
    /// collar: the glued circle then the surface boundary. For a polycycle
    /// neighborhood: one per face, in face order.
    pub circles: Vec<usize>,
    /// Saddles of a polycycle neighborhood.
    pub saddles: Vec<Saddle>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circle {
    pub cell: usize,
    /// Sides of the face a polycycle circle runs along.
    pub sides: Vec<DartRef>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CellModel {
    pub cells: Vec<Cell>,
    pub circles: Vec<Circle>,
    pub gluings: Vec<(usize, usize)>,
    pub surface_boundary: Vec<usize>,
}

/// Vertex, edge and face counts of a cell-complex structure.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CwCounts {
    pub vertices: i64,
    pub edges: i64,
    pub faces: i64,
}

impl CwCounts {
    pub fn euler(&self) -> i64 {
        self.vertices - self.edges + self.faces
    }
}

impl CellModel {
    fn add_cell(&mut self, kind: CellKind, circles: usize, saddles: Vec<Saddle>) -> usize {
        let cell = self.cells.len();
        let ids = (0..circles)
            .map(|_| {
                self.circles.push(Circle {
                    cell,
                    sides: Vec::new(),
                });
                self.circles.len() - 1
            })
            .collect();
        self.cells.push(Cell {
            kind,
            circles: ids,
            saddles,
        });
        cell
    }

    /// Cells grouped into connected pieces, each ordered by least cell.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.cells.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.gluings {
            let (x, y) = (self.circles[a].cell, self.circles[b].cell);
            adj[x].push(y);
            adj[y].push(x);
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for &t in &adj[comp[i]] {
                    if !seen[t] {
                        seen[t] = true;
                        comp.push(t);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Counts of an explicit cell structure on the union of `cells`: every
    /// circle is a loop on one vertex, cells add spokes and 2-cells, and a
    /// gluing identifies two circles.
    pub fn cw_counts(&self, cells: &[usize]) -> CwCounts {
        let inside: BTreeSet<usize> = cells.iter().copied().collect();
        let mut c = CwCounts::default();
        for &i in cells {
            let cell = &self.cells[i];
            let circles = cell.circles.len() as i64;
            c.vertices += circles;
            c.edges += circles;
            match cell.kind {
                CellKind::CenterDisk => c.faces += 1,
                CellKind::Annulus | CellKind::BoundaryCollar => {
                    c.edges += 1;
                    c.faces += 1;
                }
                CellKind::MobiusCollar => {
                    // core circle plus a spoke to it
                    c.vertices += 1;
                    c.edges += 2;
                    c.faces += 1;
                }
                CellKind::PolycycleNbhd => {
                    let seps: usize =
                        cell.saddles.iter().map(|s| s.rotation.len()).sum::<usize>() / 2;
                    c.vertices += cell.saddles.len() as i64;
                    c.edges += seps as i64 + circles;
                    c.faces += circles;
                }
                CellKind::Torus => {
                    c.vertices += 1;
                    c.edges += 2;
                    c.faces += 1;
                }
            }
        }
        for &(a, _) in &self.gluings {
            if inside.contains(&self.circles[a].cell) {
                c.vertices -= 1;
                c.edges -= 1;
            }
        }
        c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentSignature {
    pub orientable: bool,
    /// Handles when orientable, crosscaps otherwise.
    pub genus: u64,
    pub boundary: usize,
    pub chi: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SurfaceSignature {
    pub components: Vec<ComponentSignature>,
}

impl fmt::Display for SurfaceSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            writeln!(
                f,
                "component={i} orientable={} genus={} boundary={} chi={}",
                c.orientable, c.genus, c.boundary, c.chi
            )?;
        }
        Ok(())
    }
}

/// Solves the classification relation for the genus.
pub fn genus_of(
    component: usize,
    orientable: bool,
    chi: i64,
    boundary: usize,
) -> Result<u64, SurfaceError> {
    let rest = 2 - chi - boundary as i64;
    let err = SurfaceError::NonIntegerGenus {
        component,
        chi,
        boundary,
    };
    if orientable {
        if rest < 0 || rest % 2 != 0 {
            return Err(err);
        }
        Ok((rest / 2) as u64)
    } else {
        if rest < 1 {
            return Err(err);
        }
        Ok(rest as u64)
    }
}

/// Euler characteristic of each connected piece: centers count one, each
/// polycycle `V - E`, everything else zero. Tori come last.
pub fn chi_cells(p: &InvariantPair) -> Result<Vec<i64>, SurfaceError> {
    let idx = p.index().map_err(invalid)?;
    let rs = &idx.rotation;
    let mut out: Vec<i64> = p
        .assembly_components(&idx)
        .iter()
        .map(|g| {
            g.iter()
                .map(|&v| match idx.vertex_component[v] {
                    Some(c) => {
                        rs.components[c].saddles.len() as i64
                            - rs.components[c].separatrices.len() as i64
                    }
                    None => (p.vertices[v].label == VertexLabel::Center) as i64,
                })
                .sum()
        })
        .collect();
    out.extend((0..p.tori).map(|_| 0));
    Ok(out)
}

/// Glues the cells of `p` and classifies each connected piece.
pub fn reconstruct(p: &InvariantPair) -> Result<(CellModel, SurfaceSignature), SurfaceError> {
    let idx = p.index().map_err(invalid)?;
    let rs = &idx.rotation;
    let mut m = CellModel::default();

    let mut circle_of: HashMap<Endpoint, usize> = HashMap::new();
    for (v, node) in p.vertices.iter().enumerate() {
        match &node.label {
            VertexLabel::Center => {
                let c = m.add_cell(CellKind::CenterDisk, 1, Vec::new());
                circle_of.insert(Endpoint::Vertex(v), m.cells[c].circles[0]);
            }
            VertexLabel::OneSided => {
                let c = m.add_cell(CellKind::MobiusCollar, 1, Vec::new());
                circle_of.insert(Endpoint::Vertex(v), m.cells[c].circles[0]);
            }
            VertexLabel::Boundary => {
                let c = m.add_cell(CellKind::BoundaryCollar, 2, Vec::new());
                circle_of.insert(Endpoint::Vertex(v), m.cells[c].circles[0]);
                m.surface_boundary.push(m.cells[c].circles[1]);
            }
            VertexLabel::Diagram { .. } => {
                let comp = &rs.components[idx.vertex_component[v].expect("validated")];
                let saddles = comp
                    .saddles
                    .iter()
                    .map(|&s| p.diagram.saddles[s].clone())
                    .collect();
                let c = m.add_cell(CellKind::PolycycleNbhd, comp.faces.len(), saddles);
                for (i, &g) in comp.faces.iter().enumerate() {
                    let circle = m.cells[c].circles[i];
                    m.circles[circle].sides = rs.face_sides(g);
                    circle_of.insert(Endpoint::Face(g), circle);
                }
            }
        }
    }
    for &(neg, pos) in &idx.ends {
        let c = m.add_cell(CellKind::Annulus, 2, Vec::new());
        let (a, b) = (m.cells[c].circles[0], m.cells[c].circles[1]);
        m.gluings.push((a, circle_of[&neg]));
        m.gluings.push((b, circle_of[&pos]));
    }
    for _ in 0..p.tori {
        m.add_cell(CellKind::Torus, 0, Vec::new());
    }

    let chis = chi_cells(p)?;
    let mut components = Vec::new();
    for (i, cells) in m.components().iter().enumerate() {
        let chi = chis[i];
        let count = |k: CellKind| cells.iter().filter(|&&c| m.cells[c].kind == k).count();
        let orientable = count(CellKind::MobiusCollar) == 0;
        let boundary = count(CellKind::BoundaryCollar);
        let genus = genus_of(i, orientable, chi, boundary)?;
        components.push(ComponentSignature {
            orientable,
            genus,
            boundary,
            chi,
        });
    }
    Ok((m, SurfaceSignature { components }))
}

/// Reads the invariant back off a cell model: one vertex per non-annulus
/// cell, one annulus per annulus cell, faces recovered by matching circle
/// sides against freshly traced faces. Vertex and annulus ids are fresh.
pub fn extract_invariant(m: &CellModel) -> Result<InvariantPair, SurfaceError> {
    let diagram = SaddleDiagram::new(
        m.cells
            .iter()
            .filter(|c| c.kind == CellKind::PolycycleNbhd)
            .flat_map(|c| c.saddles.iter().cloned())
            .collect(),
    );
    let rs = RotationSystem::build(&diagram).map_err(invalid)?;
    let mut vertex_of_cell: HashMap<usize, String> = HashMap::new();
    let mut vertices = Vec::new();
    let mut tori = 0;
    for (i, cell) in m.cells.iter().enumerate() {
        let label = match cell.kind {
            CellKind::CenterDisk => VertexLabel::Center,
            CellKind::MobiusCollar => VertexLabel::OneSided,
            CellKind::BoundaryCollar => VertexLabel::Boundary,
            CellKind::PolycycleNbhd => VertexLabel::Diagram {
                anchor: cell.saddles[0].id.clone(),
            },
            CellKind::Torus => {
                tori += 1;
                continue;
            }
            CellKind::Annulus => continue,
        };
        let id = format!("v{}", vertices.len());
        vertex_of_cell.insert(i, id.clone());
        vertices.push(VertexNode::new(id, label));
    }
    let partner: HashMap<usize, usize> = m
        .gluings
        .iter()
        .flat_map(|&(a, b)| [(a, b), (b, a)])
        .collect();
    let attachment = |circle: usize| -> Result<Attachment, SurfaceError> {
        let other = *partner.get(&circle).ok_or_else(|| {
            SurfaceError::Unsupported(format!("annulus circle {circle} is not glued"))
        })?;
        let cell = m.circles[other].cell;
        let vertex = vertex_of_cell[&cell].clone();
        if m.cells[cell].kind != CellKind::PolycycleNbhd {
            return Ok(Attachment::vertex(vertex));
        }
        let sides: BTreeSet<&DartRef> = m.circles[other].sides.iter().collect();
        let first = m.circles[other]
            .sides
            .first()
            .expect("face circles have sides");
        let rank = rs.sep_rank(&first.sep).expect("known separatrix");
        let g = rs.face_of_dart[rs.dart_index(rank, first.end)];
        let traced = rs.face_sides(g);
        if traced.iter().collect::<BTreeSet<_>>() != sides {
            return Err(SurfaceError::Unsupported(format!(
                "circle {other} is not a face"
            )));
        }
        Ok(Attachment::face(vertex, rs.faces[g].index))
    };
    let mut annuli = Vec::new();
    for cell in m.cells.iter().filter(|c| c.kind == CellKind::Annulus) {
        let id = format!("a{}", annuli.len());
        annuli.push(AnnulusEdge::new(
            id,
            attachment(cell.circles[0])?,
            attachment(cell.circles[1])?,
        ));
    }
    Ok(InvariantPair {
        diagram,
        vertices,
        annuli,
        tori,
    })
}

/// A flow whose extended orbit graph is `g`. Leaves become centers. A
/// vertex of degree `d >= 2` becomes a `(d-2)`-saddle with `d-1` homoclinic
/// loops side by side, whose `d` faces take the `d` edge ends. Every edge
/// becomes an annulus.
pub fn realize_multigraph(g: &MultiGraph) -> Result<InvariantPair, SurfaceError> {
    if g.vertex_count() == 0 {
        return Err(SurfaceError::NotRealizableInput("empty graph".into()));
    }
    if g.is_trivial() {
        return Err(SurfaceError::NotRealizableInput(
            "one vertex and no edges".into(),
        ));
    }
    if !g.is_connected() {
        return Err(SurfaceError::NotRealizableInput(
            "graph is not connected".into(),
        ));
    }
    let mut saddles = Vec::new();
    let mut vertices = Vec::new();
    for v in 0..g.vertex_count() {
        let d = g.degree(v);
        let id = format!("v{v}");
        if d == 1 {
            vertices.push(VertexNode::new(id, VertexLabel::Center));
            continue;
        }
        let saddle = format!("s{v}");
        let rotation = (0..d - 1)
            .flat_map(|i| {
                let sep = format!("s{v}_{i}");
                [DartRef::out(sep.clone()), DartRef::inc(sep)]
            })
            .collect();
        saddles.push(Saddle::interior(saddle.clone(), (d - 2) as u32, rotation));
        vertices.push(VertexNode::new(id, VertexLabel::Diagram { anchor: saddle }));
    }
    let mut next_face = vec![0usize; g.vertex_count()];
    let mut end = |v: usize| {
        if g.degree(v) == 1 {
            Attachment::vertex(format!("v{v}"))
        } else {
            next_face[v] += 1;
            Attachment::face(format!("v{v}"), next_face[v] - 1)
        }
    };
    let annuli = g
        .edges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let neg = end(a);
            AnnulusEdge::new(format!("e{i}"), neg, end(b))
        })
        .collect();
    let p = InvariantPair {
        diagram: SaddleDiagram::new(saddles),
        vertices,
        annuli,
        tori: 0,
    };
    p.validate().map_err(SurfaceError::InvalidInput)?;
    Ok(p)
}
