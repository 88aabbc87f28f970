//! Cohomology of the Kummer of a 3-dimensional torus and its Chern classes.

use hodge_obstruct::ring::{kummer_chern_classes, kummer_model};

fn main() -> hodge_obstruct::Result<()> {
    let (k, layout) = kummer_model(3)?;
    println!("betti {:?}", k.betti());
    let c = kummer_chern_classes(&layout);
    println!("∫ c3 = {} (Euler characteristic)", k.integrate(&c[2]));
    println!("∫ [pt] = {}", k.integrate(&layout.point_class()));
    Ok(())
}
