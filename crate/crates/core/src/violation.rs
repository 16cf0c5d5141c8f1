use std::fmt;

use crate::diagram::End;

/// The model entity a violation is about.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subject {
    Model,
    Saddle(String),
    Separatrix(String),
    Vertex(String),
    Annulus(String),
    /// A face of the polycycle containing `anchor`, by face index.
    Face {
        anchor: String,
        index: usize,
    },
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Model => write!(f, "model"),
            Subject::Saddle(id) => write!(f, "saddle `{id}`"),
            Subject::Separatrix(id) => write!(f, "separatrix `{id}`"),
            Subject::Vertex(id) => write!(f, "vertex `{id}`"),
            Subject::Annulus(id) => write!(f, "annulus `{id}`"),
            Subject::Face { anchor, index } => write!(f, "face {index} of polycycle `{anchor}`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    EmptyId,
    DuplicateId,
    ReservedCharacter,
    /// Rotation length differs from `deg = 2k + 2`.
    DegreeMismatch {
        k: u32,
        expected: usize,
        found: usize,
    },
    /// Slot `slot` has the same direction as the slot before it.
    Alternation {
        slot: usize,
    },
    DartRepeated {
        end: End,
    },
    MissingEnd {
        end: End,
    },
    BoundarySaddleUnsupported,
    TwistUnsupported,
    UnknownSeparatrix,
    FlowIncoherentFace,
    UnknownVertex,
    UnknownSaddle,
    ComponentUnlabeled,
    ComponentLabeledTwice {
        count: usize,
    },
    FaceRequired,
    FaceForbidden,
    FaceOutOfRange {
        faces: usize,
    },
    FaceUnattached,
    FaceOverAttached {
        count: usize,
    },
    VertexUnattached,
    VertexOverAttached {
        count: usize,
    },
    EmptyModel,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::EmptyId => write!(f, "id must be non-empty"),
            Rule::DuplicateId => write!(f, "id is used more than once"),
            Rule::ReservedCharacter => write!(f, "ids must not contain `#`"),
            Rule::DegreeMismatch { k, expected, found } => write!(
                f,
                "rotation has {found} slots but a {k}-saddle has degree 2k+2 = {expected}"
            ),
            Rule::Alternation { slot } => write!(
                f,
                "separatrix directions must alternate out/in around the saddle; fails at slot {slot}"
            ),
            Rule::DartRepeated { end } => write!(f, "`{end}` end appears more than once"),
            Rule::MissingEnd { end } => write!(f, "`{end}` end does not appear in any rotation"),
            Rule::BoundarySaddleUnsupported => write!(f, "boundary saddles are not supported"),
            Rule::TwistUnsupported => write!(f, "twisted separatrices are not supported"),
            Rule::UnknownSeparatrix => write!(f, "unknown separatrix"),
            Rule::FlowIncoherentFace => {
                write!(f, "face mixes sides followed along and against the flow")
            }
            Rule::UnknownVertex => write!(f, "unknown vertex"),
            Rule::UnknownSaddle => write!(f, "component reference names an unknown saddle"),
            Rule::ComponentUnlabeled => {
                write!(f, "polycycle is not the label of any vertex")
            }
            Rule::ComponentLabeledTwice { count } => {
                write!(f, "polycycle labels {count} vertices; exactly one is required")
            }
            Rule::FaceRequired => write!(f, "attachment to a polycycle vertex needs a face index"),
            Rule::FaceForbidden => {
                write!(f, "only attachments to polycycle vertices carry a face index")
            }
            Rule::FaceOutOfRange { faces } => {
                write!(f, "face index out of range (polycycle has {faces} faces)")
            }
            Rule::FaceUnattached => write!(f, "dangling face: no annulus is attached"),
            Rule::FaceOverAttached { count } => {
                write!(f, "face has {count} attached annuli; exactly one is required")
            }
            Rule::VertexUnattached => write!(f, "vertex has no attached annulus"),
            Rule::VertexOverAttached { count } => write!(
                f,
                "vertex is over-attached: {count} annuli, but its neighborhood has one free circle"
            ),
            Rule::EmptyModel => write!(f, "model describes an empty surface"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Violation {
    pub subject: Subject,
    pub rule: Rule,
}

impl Violation {
    pub fn new(subject: Subject, rule: Rule) -> Self {
        Self { subject, rule }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.subject, self.rule)
    }
}
