//! The Garside square projects to the all-ones vector over the positive roots.

use coxalg::braid::{garside_square_projection, proj_ab, rs_rewrite, BraidWord};
use coxalg::CoxeterSystem;

fn main() -> coxalg::Result<()> {
    for name in ["A2", "A4", "D4", "E6"] {
        let sys = CoxeterSystem::parse(name)?;
        let gens: Vec<usize> = (0..sys.rank()).collect();
        let p = garside_square_projection(&sys, &gens)?;
        let ones = p.iter().all(|(_, &c)| c == 1);
        println!(
            "{name}: {} roots in support, all coefficients 1: {ones}",
            p.support_len()
        );
    }

    let sys = CoxeterSystem::a(2);
    let cube = BraidWord::positive(&[0, 1]).pow(3);
    println!("(s1 s2)^3 in A2:");
    for f in rs_rewrite(&sys, &cube)? {
        println!("  root {} sign {:+}", f.root(&sys)?, f.sign);
    }
    for (root, c) in proj_ab(&sys, &cube)?.iter() {
        println!("  proj_ab: {root} -> {c}");
    }
    Ok(())
}
