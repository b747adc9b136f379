//! Positive roots, longest elements and the strong exchange condition.

use coxalg::coxeter::word_names;
use coxalg::{CoxeterSystem, Root};

fn main() -> coxalg::Result<()> {
    for name in ["A3", "D4", "E6", "E7", "S2"] {
        let sys = CoxeterSystem::parse(name)?;
        let (w0, word) = sys.longest_element()?;
        println!(
            "{name}: {} positive roots, w0 has length {}",
            sys.positive_roots()?.len(),
            sys.length(&w0)?
        );
        println!("  w0 = {}", word_names(&sys, &word).join(" "));
    }

    // deleting the exchanged letter from s1 s2 s1 multiplies by the reflection t
    let sys = CoxeterSystem::a(3);
    let word = [0, 1, 0];
    let t = Root {
        coords: vec![1, 1, 0],
    };
    let j = sys.strong_exchange(&word, &t)?;
    println!("A3: s1 s2 s1 with t = {t}: delete position {j}");
    Ok(())
}
