//! Graphviz output for both views of a model. Pipe into `dot -Tsvg`.

use flowinv::dot::{export_dot, DotView};
use flowinv::fixtures;

fn main() {
    let p = fixtures::eight_mobius();
    print!("{}", export_dot(&p, DotView::Graph).unwrap());
    print!("{}", export_dot(&p, DotView::Diagram).unwrap());
}
