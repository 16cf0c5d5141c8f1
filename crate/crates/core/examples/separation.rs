//! Separation axioms of the orbit space and the extended orbit space.

use flowinv::fixtures;
use flowinv::pair::classify_separation;

fn main() {
    println!("{:22} sv:T0 T1 T2  svex:T1 T2", "");
    for (name, p) in fixtures::all() {
        let r = classify_separation(&p).unwrap();
        let b = |x: bool| if x { "y" } else { "n" };
        println!(
            "{name:22}    {}  {}  {}        {}  {}",
            b(r.sv_t0),
            b(r.sv_t1),
            b(r.sv_t2),
            b(r.svex_t1),
            b(r.svex_t2)
        );
    }
}
