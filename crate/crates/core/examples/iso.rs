//! Deciding equivalence of two models and printing the witness.

use flowinv::fixtures;
use flowinv::iso::{pair_isomorphic, scrambled, IsoMode};
use rand::SeedableRng;

fn main() {
    let p = fixtures::center_eight_handle();
    let q = scrambled(&p, &mut rand::rngs::StdRng::seed_from_u64(7));
    let w = pair_isomorphic(&p, &q, IsoMode::PLUS).unwrap().unwrap();
    println!(
        "relabeled copy: isomorphic, witness checks: {}",
        w.verify(&p, &q)
    );
    for (a, b) in &w.saddles {
        println!("  saddle {a} -> {b}");
    }

    let (l, r) = (fixtures::flower_disk(), fixtures::nested_disk());
    for mode in [IsoMode::PLUS, IsoMode::ANY] {
        let ans = pair_isomorphic(&l, &r, mode).unwrap();
        println!("flower vs nested loops, {mode:?}: {}", ans.is_some());
    }

    let pp = fixtures::projective_plane();
    let rev = pp.reversed().unwrap();
    println!(
        "projective plane vs its reversal: + {} / any {}",
        pair_isomorphic(&pp, &rev, IsoMode::PLUS).unwrap().is_some(),
        pair_isomorphic(&pp, &rev, IsoMode::ANY).unwrap().is_some()
    );
}
