//! Faces of a saddle diagram, traced from its rotation system.

use flowinv::diagram::trace_faces;
use flowinv::fixtures;

fn main() {
    for (name, d) in [
        ("figure eight", fixtures::figure_eight()),
        ("flower", fixtures::flower_disk().diagram),
        ("nested loops", fixtures::nested_disk().diagram),
    ] {
        let faces = trace_faces(&d).unwrap();
        println!("{name}: {} faces", faces.len());
        let rs = flowinv::RotationSystem::build(&d).unwrap();
        for f in &faces {
            let walk: Vec<String> = f
                .darts
                .iter()
                .map(|&x| {
                    let r = rs.dart_ref(x);
                    format!("{}:{:?}", r.sep, r.end)
                })
                .collect();
            println!(
                "  face {} ({}): {}",
                f.index,
                if f.flow_positive {
                    "with the flow"
                } else {
                    "mixed"
                },
                walk.join(" ")
            );
        }
    }
}
