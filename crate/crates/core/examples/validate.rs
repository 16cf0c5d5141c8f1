//! Validating a hand-written model and reading the violations.

use flowinv::io::{parse_model, ParseError};

const BROKEN: &str = r#"{
  "version": 1,
  "diagram": { "saddles": [
    { "id": "s", "kind": "interior", "k": 1,
      "rotation": [ { "sep": "a", "end": "out" }, { "sep": "a", "end": "in" },
                    { "sep": "b", "end": "out" }, { "sep": "b", "end": "in" } ] } ] },
  "graph": {
    "vertices": [ { "id": "p", "label": "diagram", "component": "s" },
                  { "id": "x", "label": "c" } ],
    "annuli": [ { "id": "u0", "neg": { "vertex": "p", "face": 0 }, "pos": { "vertex": "x" } } ]
  }
}"#;

fn main() {
    match parse_model(BROKEN) {
        Ok(_) => println!("valid"),
        Err(ParseError::Semantic(errs)) => {
            println!("{} problems:", errs.len());
            for e in errs {
                println!("  {e}");
            }
        }
        Err(e) => println!("{e}"),
    }
    let fixed = flowinv::io::serialize_model(&flowinv::fixtures::three_centers_eight());
    println!("fixture: {:?}", parse_model(&fixed).map(|_| "valid"));
}
