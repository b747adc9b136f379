use std::collections::BTreeMap;

use coxalg::hurwitz::Direction;
use coxalg::transvect::*;
use coxalg::{Error, HomologyClass};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn a(g: usize, i: usize) -> HomologyClass {
    HomologyClass::alpha(g, i)
}

fn b(g: usize, i: usize) -> HomologyClass {
    HomologyClass::beta(g, i)
}

fn twists(g: usize, classes: &[HomologyClass]) -> TransvectionFactorization {
    TransvectionFactorization::new(g, classes.iter().map(|&c| Twist::new(c, 1)).collect()).unwrap()
}

fn counts(f: &TransvectionFactorization) -> BTreeMap<HomologyClass, usize> {
    let mut m = BTreeMap::new();
    for t in &f.factors {
        *m.entry(t.class).or_insert(0) += 1;
    }
    m
}

fn check(f: &TransvectionFactorization) -> Trace {
    let (out, trace) = transvection_normalize(f).unwrap();
    assert!(out.is_paired(), "{:?}", out.factors);
    assert!(out.value().is_identity());
    assert_eq!(trace.replay_checked(f).unwrap(), out);
    trace
}

#[test]
fn values() {
    assert!(twists(2, &[]).value().is_identity());
    assert!(twists(2, &[a(2, 1) + b(2, 2); 2]).value().is_identity());
    // genus one: α ↦ β and β ↦ α
    let m = twists(1, &[a(1, 1), b(1, 1), a(1, 1)]).value();
    assert_eq!(m.apply(a(1, 1)), b(1, 1));
    assert_eq!(m.apply(b(1, 1)), a(1, 1));
}

#[test]
fn pairs_are_unchanged() {
    let f = twists(2, &[a(2, 1) + b(2, 1); 2]);
    let (out, trace) = transvection_normalize(&f).unwrap();
    assert_eq!(out, f);
    assert!(trace.events.is_empty());
}

#[test]
fn scrambled_basis_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let g = 2;
    let base = twists(g, &[b(g, 1), b(g, 1), a(g, 1), a(g, 1), b(g, 2), b(g, 2)]);
    for _ in 0..50 {
        let mut f = base.clone();
        for _ in 0..10 {
            let i = rng.gen_range(1..f.len());
            let dir = if rng.gen_bool(0.5) {
                Direction::Left
            } else {
                Direction::Right
            };
            f = f.apply_move(i, dir).unwrap();
        }
        assert!(f.value().is_identity());
        check(&f);
    }
}

#[test]
fn random_identity_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut lanterns = 0;
    for g in [2, 3, 4] {
        for _ in 0..100 {
            let l = if g >= 3 { rng.gen_range(0..3) } else { 0 };
            let f = scrambled_twists(g, rng.gen_range(0..7), l, rng.gen_range(0..60), &mut rng);
            assert!(f.value().is_identity());
            lanterns += check(&f).lanterns();
        }
    }
    assert!(lanterns > 0);
}

#[test]
fn braid_relation_cube_pairs_up() {
    // (T_α T_β)^3 is the identity mod 2 but every class occurs an odd number of times
    let g = 2;
    let f = twists(g, &[a(g, 1), b(g, 1), a(g, 1), b(g, 1), a(g, 1), b(g, 1)]);
    assert!(f.value().is_identity());
    let trace = check(&f);
    assert_eq!(trace.lanterns(), 0);
    let (out, _) = transvection_normalize(&f).unwrap();
    assert!(counts(&f).values().all(|c| c % 2 == 1));
    assert!(counts(&out).values().all(|c| c % 2 == 0));
}

#[test]
fn lantern_fires_on_isotropic_triples() {
    let g = 3;
    let f = TransvectionFactorization::new(g, lantern_factors(b(g, 1), b(g, 2), b(g, 3))).unwrap();
    let trace = check(&f);
    assert!(trace.lanterns() > 0);
}

#[test]
fn errors() {
    let f = twists(2, &[a(2, 1)]);
    assert_eq!(
        transvection_normalize(&f).map(|_| ()),
        Err(Error::NotIdentity)
    );
    let f = twists(1, &[a(1, 1), a(1, 1)]);
    assert_eq!(
        transvection_normalize(&f).map(|_| ()),
        Err(Error::GenusRange(1))
    );
}

#[test]
fn factorization_file() {
    let f = TransvectionFactorization::parse(2, "+ 1 0 1 1\n- 1 0 1 1\n").unwrap();
    assert_eq!(
        f.factors[0],
        Twist::new(HomologyClass::from_bits(2, 0b1101), 1)
    );
    assert_eq!(f.factors[1].sign, -1);
    assert!(TransvectionFactorization::parse(2, "+ 1 0 1").is_err());
    assert!(TransvectionFactorization::parse(2, "* 1 0 1 1").is_err());
    assert!(TransvectionFactorization::parse(2, "+ 0 0 0 0").is_err());
}
