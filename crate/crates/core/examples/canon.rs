//! Canonical forms: equal exactly when the models are equivalent.

use flowinv::canon::canonical_form;
use flowinv::fixtures;
use flowinv::iso::IsoMode;

fn main() {
    for (name, p) in fixtures::all() {
        let plus = canonical_form(&p, IsoMode::PLUS).unwrap();
        let any = canonical_form(&p, IsoMode::ANY).unwrap();
        println!(
            "{name:22} {}  {}",
            &plus.digest()[..16],
            &any.digest()[..16]
        );
    }
    let c = canonical_form(&fixtures::sphere_rotation(), IsoMode::PLUS).unwrap();
    println!("sphere bytes: {}", c.hex());
}
