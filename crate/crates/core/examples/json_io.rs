//! Reading and writing model documents.

use flowinv::fixtures;
use flowinv::io::{parse_model, serialize_model, serialize_model_compact};

fn main() {
    let p = fixtures::periodic_torus();
    let text = serialize_model(&p);
    print!("{text}");
    assert_eq!(parse_model(&text).unwrap(), p);
    println!("compact: {}", serialize_model_compact(&p));
}
