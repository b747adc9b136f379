//! Pair up a scrambled identity factorization by Hurwitz moves.

use coxalg::hurwitz::{pair_reduce_counted, scrambled_pairs};
use coxalg::CoxeterSystem;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> coxalg::Result<()> {
    let sys = CoxeterSystem::parse("D4")?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f = scrambled_pairs(&sys, 4, 30, &mut rng)?;
    println!("input:");
    for r in &f.factors {
        println!("  {r}");
    }
    let (out, log, counts) = pair_reduce_counted(&f)?;
    println!("paired after {} moves ({counts:?}):", log.len());
    for r in &out.factors {
        println!("  {r}");
    }
    assert_eq!(log.replay(&f)?, out);
    Ok(())
}
