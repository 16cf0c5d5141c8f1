//! Surface reconstruction: glue the cells and read off the surface type,
//! then extract the invariant again from the cell model.

use flowinv::canon::canonical_form;
use flowinv::fixtures;
use flowinv::iso::IsoMode;
use flowinv::surface::{extract_invariant, reconstruct};

fn main() {
    for (name, p) in fixtures::all() {
        let (cells, sig) = reconstruct(&p).unwrap();
        let c = &sig.components[0];
        let back = extract_invariant(&cells).unwrap();
        let same = canonical_form(&p, IsoMode::PLUS) == canonical_form(&back, IsoMode::PLUS);
        println!(
            "{name:22} cells={:2} orientable={:5} genus={} boundary={} chi={:2} round-trip={same}",
            cells.cells.len(),
            c.orientable,
            c.genus,
            c.boundary,
            c.chi
        );
    }
}
