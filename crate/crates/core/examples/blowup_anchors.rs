//! Blow-up signs and Betti numbers on the smallest examples: a point on a
//! surface and on a threefold.

use hodge_obstruct::ring::{
    blow_up, point_model, projective_space_model, sparse, BlowupSpec, SparseVec,
};

fn main() -> hodge_obstruct::Result<()> {
    for k in [2, 3] {
        let base = projective_space_model(k);
        let restriction: Vec<SparseVec> = (0..base.dim())
            .map(|i| {
                if i == 0 {
                    sparse::unit(0)
                } else {
                    SparseVec::new()
                }
            })
            .collect();
        let (bl, tau) = blow_up(
            base.clone(),
            BlowupSpec::trivial_normal("p", point_model(), restriction, k),
        )?;
        let e = bl.as_blowup().unwrap().exceptional_class();
        println!(
            "Bl_p P^{k}: betti {:?}, ∫ e^{k} = {}",
            bl.betti(),
            bl.integrate(&bl.pow(&e, k))
        );
        println!(
            "  τ* injective {}, unital {}",
            tau.is_injective(),
            tau.is_unital()
        );
    }
    Ok(())
}
