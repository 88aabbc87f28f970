//! Components of the non-injectivity locus of `∪α: H^1 → H^3` on `X` and
//! on `X_1`, where extra sections force dimensions 1, 2, 3, 4.

use hodge_obstruct::poly::IntPolynomial;
use hodge_obstruct::ring::{
    build_x1_model, build_x_model, cup_kernel, noninjective_locus_components, KernelClass, XModel,
};

fn show(name: &str, x: &XModel) -> hodge_obstruct::Result<()> {
    let classes: Vec<KernelClass> = (0..4)
        .flat_map(|c| x.group_classes(c))
        .map(|(label, class)| {
            let kernel = Some(cup_kernel(&x.algebra, &class, 1));
            KernelClass {
                label,
                class,
                kernel,
            }
        })
        .collect();
    println!("{name}:");
    for (c, k) in noninjective_locus_components(&classes)? {
        println!("  dim {} kernel rank {}: {:?}", c.dim, k.dim(), c.members);
    }
    Ok(())
}

fn main() -> hodge_obstruct::Result<()> {
    let phi = IntPolynomial::from_i64(&[1, 1, 0, 0, 1]).companion();
    show("X", &build_x_model(&phi, 1)?)?;
    show("X1", &build_x1_model(&phi, 1, &[1, 2, 3, 4])?)
}
