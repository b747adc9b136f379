//! Values of the counting functional on the chain, lantern and hyperelliptic elements.

use std::collections::BTreeSet;

use coxalg::mcg::{
    chain_projection, hat_phi, hyperelliptic_commutator_projection, lantern_sq_projection,
    separating_chain_projection, HgProjection,
};
use coxalg::HomologyClass;

fn values(p: &HgProjection) -> coxalg::Result<BTreeSet<i64>> {
    HomologyClass::all_nonzero(p.g)
        .map(|mu| hat_phi(mu, p))
        .collect()
}

fn main() -> coxalg::Result<()> {
    println!("chain, g=2:          {:?}", values(&chain_projection(2)?)?);
    println!(
        "lantern square, g=3: {:?}",
        values(&lantern_sq_projection(3)?)?
    );
    println!(
        "separating, g=3:     {:?}",
        values(&separating_chain_projection(1, 3)?)?
    );
    for g in 2..=5 {
        let h = hyperelliptic_commutator_projection(g)?;
        println!("hyperelliptic, g={g}:  {:?}", values(&h)?);
    }
    Ok(())
}
