use std::collections::{HashSet, VecDeque};

use coxalg::hurwitz::*;
use coxalg::{CoxeterSystem, Error, Root};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_factorization(
    sys: &CoxeterSystem,
    len: usize,
    rng: &mut impl Rng,
) -> ReflectionFactorization {
    let roots = sys.positive_roots().unwrap();
    let factors = (0..len)
        .map(|_| roots[rng.gen_range(0..roots.len())].clone())
        .collect();
    ReflectionFactorization::new(sys.clone(), factors).unwrap()
}

fn simple(n: usize, seq: &[usize]) -> Vec<Root> {
    seq.iter().map(|&s| Root::simple(n, s)).collect()
}

#[test]
fn moves_preserve_value_and_invert() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for name in ["A3", "A4", "D4"] {
        let sys = CoxeterSystem::parse(name).unwrap();
        for _ in 0..1000 {
            let len = rng.gen_range(2..9);
            let f = random_factorization(&sys, len, &mut rng);
            let i = rng.gen_range(1..len);
            let dir = if rng.gen_bool(0.5) {
                Direction::Left
            } else {
                Direction::Right
            };
            let g = f.apply_move(i, dir).unwrap();
            assert_eq!(g.value().unwrap(), f.value().unwrap());
            let back = Move { index: i, dir }.inverse();
            assert_eq!(g.apply_move(back.index, back.dir).unwrap(), f);
        }
    }
}

#[test]
fn move_index_checks() {
    let sys = CoxeterSystem::a(2);
    let f = ReflectionFactorization::new(sys, simple(2, &[0, 1])).unwrap();
    assert_eq!(
        f.apply_move(0, Direction::Left),
        Err(Error::IndexOutOfRange { index: 0, len: 2 })
    );
    assert_eq!(
        f.apply_move(2, Direction::Left),
        Err(Error::IndexOutOfRange { index: 2, len: 2 })
    );
    let t = ReflectionFactorization::new(CoxeterSystem::a(2), simple(2, &[1, 1])).unwrap();
    assert_eq!(t.apply_move(1, Direction::Right).unwrap(), t);
}

#[test]
fn trivial_reductions() {
    let sys = CoxeterSystem::a(3);
    let empty = ReflectionFactorization::new(sys.clone(), vec![]).unwrap();
    let (out, log) = pair_reduce(&empty).unwrap();
    assert!(out.is_empty() && log.is_empty());
    let tt = ReflectionFactorization::new(sys, simple(3, &[2, 2])).unwrap();
    let (out, log) = pair_reduce(&tt).unwrap();
    assert_eq!(out, tt);
    assert!(log.is_empty());
}

/// Breadth-first search over the Hurwitz orbit for a paired factorization.
fn orbit_has_paired(f: &ReflectionFactorization) -> bool {
    let mut seen = HashSet::from([f.factors.clone()]);
    let mut queue = VecDeque::from([f.clone()]);
    while let Some(x) = queue.pop_front() {
        if x.is_paired() {
            return true;
        }
        for i in 1..x.len() {
            for dir in [Direction::Left, Direction::Right] {
                let y = x.apply_move(i, dir).unwrap();
                if seen.insert(y.factors.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    false
}

#[test]
fn a2_cube_orbit_and_reduction() {
    let sys = CoxeterSystem::a(2);
    let f = ReflectionFactorization::new(sys, simple(2, &[0, 1, 0, 1, 0, 1])).unwrap();
    assert!(f.value().unwrap().is_identity());
    assert!(orbit_has_paired(&f));
    let (out, log) = pair_reduce(&f).unwrap();
    assert_eq!(out.len(), 6);
    assert!(out.is_paired());
    assert_eq!(log.replay(&f).unwrap(), out);
}

#[test]
fn scrambled_pairs_reduce() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut totals = BranchCounts::default();
    for name in ["A3", "A4", "D4", "A5", "E6", "Sg:2"] {
        let sys = CoxeterSystem::parse(name).unwrap();
        for _ in 0..100 {
            let pairs = rng.gen_range(0..6);
            let f = scrambled_pairs(&sys, pairs, rng.gen_range(0..=50), &mut rng).unwrap();
            let (out, log, counts) = pair_reduce_counted(&f).unwrap();
            assert!(out.is_paired(), "{name}");
            assert_eq!(out.len(), f.len());
            assert_eq!(log.replay(&f).unwrap(), out);
            assert!(out.value().unwrap().is_identity());
            totals.middle += counts.middle;
            totals.initial_subword += counts.initial_subword;
            totals.final_subword += counts.final_subword;
        }
    }
    // every branch of the exchange step is exercised
    assert!(
        totals.middle > 0 && totals.initial_subword > 0 && totals.final_subword > 0,
        "{totals:?}"
    );
}

#[test]
fn identity_words_from_braid_relations_reduce() {
    // (s t)^3 and commuting squares glued with random conjugations
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let sys = CoxeterSystem::a(4);
    for _ in 0..100 {
        let mut factors = Vec::new();
        for _ in 0..rng.gen_range(1..4) {
            let s = rng.gen_range(0..3);
            factors.extend(simple(4, &[s, s + 1, s, s + 1, s, s + 1]));
        }
        let mut f = ReflectionFactorization::new(sys.clone(), factors).unwrap();
        for _ in 0..20 {
            let i = rng.gen_range(1..f.len());
            f = f.apply_move(i, Direction::Right).unwrap();
        }
        let (out, log) = pair_reduce(&f).unwrap();
        assert!(out.is_paired());
        assert_eq!(log.replay(&f).unwrap(), out);
    }
}

#[test]
fn odd_products_are_never_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let sys = CoxeterSystem::a(3);
    for _ in 0..10_000 {
        let len = 2 * rng.gen_range(0..6) + 1;
        let f = random_factorization(&sys, len, &mut rng);
        assert!(!f.value().unwrap().is_identity());
    }
    let f = ReflectionFactorization::new(sys, simple(3, &[0, 1, 0])).unwrap();
    assert_eq!(pair_reduce(&f), Err(Error::NotIdentity));
}

#[test]
fn non_identity_is_rejected() {
    let sys = CoxeterSystem::a(3);
    let f = ReflectionFactorization::new(sys, simple(3, &[0, 1])).unwrap();
    assert_eq!(pair_reduce(&f), Err(Error::NotIdentity));
}

#[test]
fn factorization_file_round_trip() {
    let sys = CoxeterSystem::a(3);
    let text = "# a square\n(1,1,0)\n(1,1,0)\n\n";
    let f = ReflectionFactorization::parse(sys.clone(), text).unwrap();
    assert_eq!(
        f.factors,
        vec![
            Root {
                coords: vec![1, 1, 0]
            };
            2
        ]
    );
    assert!(matches!(
        ReflectionFactorization::parse(sys.clone(), "(1,0)"),
        Err(Error::Parse { .. })
    ));
    assert!(matches!(
        ReflectionFactorization::parse(sys.clone(), "1,0,0"),
        Err(Error::Parse { .. })
    ));
    assert!(matches!(
        ReflectionFactorization::parse(sys, "(1,0,1)"),
        Err(Error::NotARoot(_))
    ));
}

#[test]
fn widths_match_bfs_over_conjugates() {
    // oracle: smallest w with w s w^-1 = t, by BFS over words
    for name in ["A3", "D4"] {
        let sys = CoxeterSystem::parse(name).unwrap();
        let n = sys.rank();
        let mut best = std::collections::HashMap::new();
        let mut seen = HashSet::from([sys.identity()]);
        let mut queue = VecDeque::from([(sys.identity(), 0usize)]);
        while let Some((w, d)) = queue.pop_front() {
            for s in 0..n {
                let r = sys.quasireflection_root(&w, s).unwrap();
                best.entry(r).or_insert(d);
                let x = w.mul(&sys.simple_reflection(s)).unwrap();
                if seen.insert(x.clone()) {
                    queue.push_back((x, d + 1));
                }
            }
        }
        for (r, d) in best {
            assert_eq!(width(&sys, &r).unwrap(), d, "{name} {r}");
        }
    }
}
