//! Realizing a connected multi-graph as the extended orbit graph of a flow.

use flowinv::multigraph::{connected_multigraphs, MultiGraph};
use flowinv::pair::underlying_multigraph;
use flowinv::surface::{realize_multigraph, reconstruct};

fn main() {
    let star = MultiGraph::with_vertex_count(4, vec![(0, 1), (0, 2), (0, 3)]);
    let p = realize_multigraph(&star).unwrap();
    println!("{}", flowinv::io::serialize_model(&p));
    print!("{}", reconstruct(&p).unwrap().1);

    let all = connected_multigraphs(5);
    let ok = all
        .iter()
        .filter(|g| {
            let back = underlying_multigraph(&realize_multigraph(g).unwrap()).unwrap();
            back.is_isomorphic(g)
        })
        .count();
    println!(
        "{ok}/{} connected multi-graphs of size <= 5 read back",
        all.len()
    );
}
