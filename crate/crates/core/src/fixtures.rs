//! Small reference models. The JSON files under `fixtures/` are the
//! serialized forms of these builders.

use crate::diagram::{DartRef, Saddle, SaddleDiagram};
use crate::pair::{AnnulusEdge, Attachment, InvariantPair, VertexLabel, VertexNode};

fn v(id: &str, label: VertexLabel) -> VertexNode {
    VertexNode::new(id, label)
}

fn poly(id: &str, anchor: &str) -> VertexNode {
    VertexNode::new(
        id,
        VertexLabel::Diagram {
            anchor: anchor.into(),
        },
    )
}

fn annulus(id: &str, neg: Attachment, pos: Attachment) -> AnnulusEdge {
    AnnulusEdge::new(id, neg, pos)
}

/// One ordinary saddle with two homoclinic loops whose ends are adjacent
/// (a planar figure eight). Faces: 0 is the outer circle, 1 and 2 the lobes.
pub fn figure_eight() -> SaddleDiagram {
    SaddleDiagram::new(vec![Saddle::interior(
        "s",
        1,
        vec![
            DartRef::out("a"),
            DartRef::inc("a"),
            DartRef::out("b"),
            DartRef::inc("b"),
        ],
    )])
}

/// Rotation of the sphere about an axis: two centers and one annulus.
pub fn sphere_rotation() -> InvariantPair {
    InvariantPair {
        diagram: SaddleDiagram::default(),
        vertices: vec![v("c1", VertexLabel::Center), v("c2", VertexLabel::Center)],
        annuli: vec![annulus(
            "u1",
            Attachment::vertex("c1"),
            Attachment::vertex("c2"),
        )],
        tori: 0,
    }
}

/// A torus foliated by periodic orbits.
pub fn periodic_torus() -> InvariantPair {
    InvariantPair {
        tori: 1,
        ..Default::default()
    }
}

fn eight_with(outer: VertexNode, lobe1: VertexNode, lobe2: VertexNode) -> InvariantPair {
    let annuli = vec![
        annulus(
            "u0",
            Attachment::face("p", 0),
            Attachment::vertex(outer.id.clone()),
        ),
        annulus(
            "u1",
            Attachment::face("p", 1),
            Attachment::vertex(lobe1.id.clone()),
        ),
        annulus(
            "u2",
            Attachment::face("p", 2),
            Attachment::vertex(lobe2.id.clone()),
        ),
    ];
    InvariantPair {
        diagram: figure_eight(),
        vertices: vec![poly("p", "s"), outer, lobe1, lobe2],
        annuli,
        tori: 0,
    }
}

/// A figure eight on the sphere with a center in each of its three
/// complementary disks: `x` outside, `y` and `z` in the lobes.
pub fn three_centers_eight() -> InvariantPair {
    eight_with(
        v("x", VertexLabel::Center),
        v("y", VertexLabel::Center),
        v("z", VertexLabel::Center),
    )
}

/// The center disk around `x` replaced by a periodic Möbius band.
pub fn eight_mobius() -> InvariantPair {
    eight_with(
        v("x", VertexLabel::OneSided),
        v("y", VertexLabel::Center),
        v("z", VertexLabel::Center),
    )
}

/// The center disk around `y` replaced by a periodic boundary orbit.
pub fn eight_boundary() -> InvariantPair {
    eight_with(
        v("x", VertexLabel::Center),
        v("y", VertexLabel::Boundary),
        v("z", VertexLabel::Center),
    )
}

fn disk_with_two_saddle(rotation: Vec<DartRef>) -> InvariantPair {
    InvariantPair {
        diagram: SaddleDiagram::new(vec![Saddle::interior("s", 2, rotation)]),
        vertices: vec![
            poly("p", "s"),
            v("bd", VertexLabel::Boundary),
            v("c1", VertexLabel::Center),
            v("c2", VertexLabel::Center),
            v("c3", VertexLabel::Center),
        ],
        annuli: vec![
            annulus("u0", Attachment::face("p", 0), Attachment::vertex("bd")),
            annulus("u1", Attachment::face("p", 1), Attachment::vertex("c1")),
            annulus("u2", Attachment::face("p", 2), Attachment::vertex("c2")),
            annulus("u3", Attachment::face("p", 3), Attachment::vertex("c3")),
        ],
        tori: 0,
    }
}

/// Disk flow with a 2-saddle whose three homoclinic loops sit side by side.
pub fn flower_disk() -> InvariantPair {
    disk_with_two_saddle(vec![
        DartRef::out("a"),
        DartRef::inc("a"),
        DartRef::out("b"),
        DartRef::inc("b"),
        DartRef::out("c"),
        DartRef::inc("c"),
    ])
}

/// Disk flow with a 2-saddle whose loops are nested: `c` lies inside `b`.
pub fn nested_disk() -> InvariantPair {
    disk_with_two_saddle(vec![
        DartRef::out("a"),
        DartRef::inc("b"),
        DartRef::out("c"),
        DartRef::inc("c"),
        DartRef::out("b"),
        DartRef::inc("a"),
    ])
}

/// Figure eight with one center on the outer face and its lobes joined by a
/// single annulus.
pub fn center_eight_handle() -> InvariantPair {
    InvariantPair {
        diagram: figure_eight(),
        vertices: vec![poly("p", "s"), v("x", VertexLabel::Center)],
        annuli: vec![
            annulus("u0", Attachment::face("p", 0), Attachment::vertex("x")),
            annulus("u_loop", Attachment::face("p", 1), Attachment::face("p", 2)),
        ],
        tori: 0,
    }
}

/// Center disk glued to a periodic Möbius band.
pub fn projective_plane() -> InvariantPair {
    InvariantPair {
        diagram: SaddleDiagram::default(),
        vertices: vec![v("c", VertexLabel::Center), v("m", VertexLabel::OneSided)],
        annuli: vec![annulus(
            "u",
            Attachment::vertex("c"),
            Attachment::vertex("m"),
        )],
        tori: 0,
    }
}

/// Two periodic Möbius bands joined by an annulus.
pub fn klein_bottle() -> InvariantPair {
    InvariantPair {
        diagram: SaddleDiagram::default(),
        vertices: vec![
            v("m1", VertexLabel::OneSided),
            v("m2", VertexLabel::OneSided),
        ],
        annuli: vec![annulus(
            "u",
            Attachment::vertex("m1"),
            Attachment::vertex("m2"),
        )],
        tori: 0,
    }
}

/// All fixtures by file stem.
pub fn all() -> Vec<(&'static str, InvariantPair)> {
    vec![
        ("sphere_rotation", sphere_rotation()),
        ("periodic_torus", periodic_torus()),
        ("three_centers_eight", three_centers_eight()),
        ("eight_mobius", eight_mobius()),
        ("eight_boundary", eight_boundary()),
        ("flower_disk", flower_disk()),
        ("nested_disk", nested_disk()),
        ("center_eight_handle", center_eight_handle()),
        ("projective_plane", projective_plane()),
        ("klein_bottle", klein_bottle()),
    ]
}
