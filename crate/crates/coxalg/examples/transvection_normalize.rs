//! Normalize an identity product of mod-2 transvections, lantern insertions included.

use coxalg::transvect::{scrambled_twists, transvection_normalize};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> coxalg::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = scrambled_twists(3, 3, 1, 40, &mut rng);
    println!(
        "{} twists, value is identity: {}",
        f.len(),
        f.value().is_identity()
    );
    let (out, trace) = transvection_normalize(&f)?;
    println!(
        "{} events ({} lanterns), output of length {} is paired: {}",
        trace.events.len(),
        trace.lanterns(),
        out.len(),
        out.is_paired()
    );
    for t in &out.factors {
        println!("  {:+} {}", t.sign, t.class);
    }
    trace.replay_checked(&f)?;
    Ok(())
}
