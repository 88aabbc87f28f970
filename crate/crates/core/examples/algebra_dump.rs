//! JSON dump of a small model, the format used for regression files.

use hodge_obstruct::ring::{dump_algebra, exterior_model};

fn main() -> hodge_obstruct::Result<()> {
    let alg = exterior_model(2)?;
    let d = dump_algebra(&alg, 64)?;
    println!("{}", serde_json::to_string_pretty(&d).unwrap());
    Ok(())
}
