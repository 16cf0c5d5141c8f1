//! Finite spaces and posets: the Alexandroff topology of a small order and
//! its separation axioms.

use flowinv::topology::{alexandroff_space, separation_axioms, specialization_order, FinPoset};

fn main() {
    // one closed point (a vertex) in the closure of two open points (edges)
    let p = FinPoset::from_generators(
        vec!["v".into(), "e1".into(), "e2".into()],
        [("v", "e1"), ("v", "e2")],
    )
    .unwrap();
    let space = alexandroff_space(&p).unwrap();
    println!("open sets:");
    for u in space.open_sets() {
        println!("  {{{}}}", u.join(", "));
    }
    let s = separation_axioms(&space);
    println!("T0={} T1={} T2={}", s.t0, s.t1, s.t2);
    assert_eq!(specialization_order(&space).unwrap(), p);
    println!("specialization order recovers the poset");

    let g = p.to_multigraph().unwrap();
    println!(
        "as a multi-graph: {} vertices, {} edges",
        g.vertex_count(),
        g.edge_count()
    );
}
