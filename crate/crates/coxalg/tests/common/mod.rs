#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use coxalg::braid::BraidWord;
use coxalg::{CoxeterSystem, WeylElement};
use rand::Rng;

/// Every element of a finite Weyl group, by breadth-first search on matrices.
pub fn enumerate_group(sys: &CoxeterSystem) -> Vec<(WeylElement, usize)> {
    let id = sys.identity();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([(id, 0usize)]);
    let mut out = Vec::new();
    while let Some((w, d)) = queue.pop_front() {
        for s in 0..sys.rank() {
            let x = w.mul(&sys.simple_reflection(s)).unwrap();
            if seen.insert(x.clone()) {
                queue.push_back((x, d + 1));
            }
        }
        out.push((w, d));
    }
    out
}

/// Distinct reflections `w s w^-1`, counted as matrices.
pub fn count_reflections(sys: &CoxeterSystem) -> usize {
    let mut refl = HashSet::new();
    for (w, _) in enumerate_group(sys) {
        for s in 0..sys.rank() {
            let r = w
                .mul(&sys.simple_reflection(s))
                .unwrap()
                .mul(&w.inverse())
                .unwrap();
            refl.insert(r);
        }
    }
    refl.len()
}

pub fn random_letters(rng: &mut impl Rng, n: usize, len: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(0..n)).collect()
}

pub fn random_braid(rng: &mut impl Rng, n: usize, len: usize) -> BraidWord {
    BraidWord::new(
        (0..len)
            .map(|_| (rng.gen_range(0..n), if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect(),
    )
}

/// Closes a random word into a pure braid by appending the inverse of a reduced lift.
pub fn random_pure(sys: &CoxeterSystem, rng: &mut impl Rng, len: usize) -> BraidWord {
    let u = random_braid(rng, sys.rank(), len);
    let w = coxalg::braid::project_to_weyl(sys, &u).unwrap();
    let lift = BraidWord::positive(&sys.reduced_word(&w).unwrap());
    let tail = if rng.gen_bool(0.5) {
        lift.inverse()
    } else {
        lift.inverse().inverse_signs()
    };
    u.concat(&tail)
}

pub trait SignFlip {
    fn inverse_signs(&self) -> Self;
}

impl SignFlip for BraidWord {
    fn inverse_signs(&self) -> Self {
        BraidWord::new(self.letters.iter().map(|&(s, e)| (s, -e)).collect())
    }
}
