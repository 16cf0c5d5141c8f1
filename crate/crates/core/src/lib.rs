//! Encoding, validation, comparison, reconstruction, realization and
//! enumeration of the combinatorial invariant `(G_v, D_v)` of non-wandering
//! surface flows with finitely many singular points and no locally dense
//! orbits.
//!
//! The invariant is an [`InvariantPair`]: a [`SaddleDiagram`] (saddles with
//! counterclockwise rotation words of separatrix ends) together with a
//! labeled multi-graph whose vertices are centers, one-sided periodic orbits,
//! boundary periodic orbits and polycycles, and whose edges are periodic
//! annuli glued to specific boundary circles.

pub mod canon;
pub mod cli;
pub mod diagram;
pub mod dot;
pub mod enumerate;
pub mod fixtures;
pub mod io;
pub mod iso;
pub mod multigraph;
pub mod pair;
pub mod surface;
pub mod topology;
pub mod violation;

pub use diagram::{
    DartRef, End, FaceCycle, RotationSystem, Saddle, SaddleDiagram, SaddleKind, Separatrix,
};
pub use multigraph::MultiGraph;
pub use pair::{AnnulusEdge, Attachment, InvariantPair, VertexLabel, VertexNode};
pub use topology::{FinPoset, FinSpace};
pub use violation::{Rule, Subject, Violation};
