//! Tensor powers wp^d of mod-2 Garside indicators under the shuffle product.

use coxalg::mcg::{garside_indicator, hyperelliptic_commutator_projection, A5_CHAIN, E7_LANTERN};
use coxalg::shuffle::{wp, Z2HgVector};

fn main() -> coxalg::Result<()> {
    let a5 = Z2HgVector::from_projection(&garside_indicator(2, &A5_CHAIN)?);
    let e7 = Z2HgVector::from_projection(&garside_indicator(3, &E7_LANTERN)?);
    println!("wp3(A5) zero: {}", wp(3, &a5)?.is_zero());
    println!("wp3(E7) zero: {}", wp(3, &e7)?.is_zero());
    let top = wp(6, &e7)?;
    println!("wp6(E7) has {} nonzero entries", top.nnz());
    for g in 2..=4 {
        let h = Z2HgVector::from_projection(&hyperelliptic_commutator_projection(g)?);
        println!(
            "wp3(hyperelliptic), g={g}: {} nonzero entries",
            wp(3, &h)?.nnz()
        );
    }
    Ok(())
}
