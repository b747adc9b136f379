//! Hurwitz moves on reflection factorizations and reduction of identity
//! factorizations to squares of reflections.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterSystem, Root, WeylElement};
use crate::error::{Error, Result};

const ROUND_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

/// A Hurwitz move at the 1-based position `index`, acting on `index` and `index + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub index: usize,
    pub dir: Direction,
}

impl Move {
    pub fn right(index: usize) -> Self {
        Move {
            index,
            dir: Direction::Right,
        }
    }

    pub fn left(index: usize) -> Self {
        Move {
            index,
            dir: Direction::Left,
        }
    }

    pub fn inverse(self) -> Self {
        match self.dir {
            Direction::Left => Move::right(self.index),
            Direction::Right => Move::left(self.index),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MoveLog {
    pub moves: Vec<Move>,
}

impl MoveLog {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn replay(&self, f: &ReflectionFactorization) -> Result<ReflectionFactorization> {
        let mut out = f.clone();
        for &m in &self.moves {
            out.apply_in_place(m)?;
        }
        Ok(out)
    }
}

/// Reflects `r` along the root `t` and returns the positive representative.
pub fn reflect_root(sys: &CoxeterSystem, t: &Root, r: &Root) -> Result<Root> {
    let c = sys.form(&t.coords, &r.coords);
    let v = r
        .coords
        .iter()
        .zip(&t.coords)
        .map(|(&x, &y)| {
            c.checked_mul(y)
                .and_then(|d| x.checked_sub(d))
                .ok_or(Error::Overflow)
        })
        .collect::<Result<Vec<i64>>>()?;
    Root::normalize(v)
}

/// Shortest `(w, s)` with `w(α_s) = r`, by depth descent.
///
/// In a simply-laced system each simple reflection changes the height of a
/// non-simple root by at most one, so the descent has length `height - 1`
/// and is optimal.
pub fn conjugator(sys: &CoxeterSystem, r: &Root) -> Result<(Vec<usize>, usize)> {
    let not_root = || Error::NotARoot(r.to_string());
    if r.coords.len() != sys.rank() || r.coords.iter().any(|&c| c < 0) {
        return Err(not_root());
    }
    let mut cur = r.coords.clone();
    let mut word = Vec::new();
    loop {
        let height: i64 = cur.iter().sum();
        if height == 1 {
            let s = cur.iter().position(|&c| c == 1).ok_or_else(not_root)?;
            return Ok((word, s));
        }
        if height < 1 || cur.iter().any(|&c| c < 0) {
            return Err(not_root());
        }
        let (s, c) = (0..sys.rank())
            .map(|s| (s, sys.form(&cur, &crate::coxeter::unit(sys.rank(), s))))
            .find(|&(_, c)| c > 0)
            .ok_or_else(not_root)?;
        cur[s] -= c;
        word.push(s);
    }
}

/// Minimal length of a `w` with `w s w⁻¹` equal to the reflection along `r`.
pub fn width(sys: &CoxeterSystem, r: &Root) -> Result<usize> {
    Ok(conjugator(sys, r)?.0.len())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionFactorization {
    pub system: CoxeterSystem,
    pub factors: Vec<Root>,
}

impl ReflectionFactorization {
    pub fn new(system: CoxeterSystem, factors: Vec<Root>) -> Result<Self> {
        for r in &factors {
            conjugator(&system, r)?;
        }
        Ok(ReflectionFactorization { system, factors })
    }

    /// One factor per line, as `(1,0,1)`; blank lines and `#` comments are skipped.
    pub fn parse(system: CoxeterSystem, text: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for (index, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let inner = line
                .strip_prefix('(')
                .and_then(|l| l.strip_suffix(')'))
                .ok_or_else(|| Error::Parse {
                    index,
                    msg: format!("expected (..), got `{line}`"),
                })?;
            let coords = inner
                .split(',')
                .map(|c| {
                    c.trim().parse::<i64>().map_err(|e| Error::Parse {
                        index,
                        msg: e.to_string(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if coords.len() != system.rank() {
                return Err(Error::Parse {
                    index,
                    msg: format!("expected {} coordinates", system.rank()),
                });
            }
            factors.push(Root { coords });
        }
        Self::new(system, factors)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Product of the reflections in factor order.
    pub fn value(&self) -> Result<WeylElement> {
        let mut w = self.system.identity();
        for r in &self.factors {
            w = w.mul(&self.system.reflection(&r.coords)?)?;
        }
        Ok(w)
    }

    pub fn is_paired(&self) -> bool {
        self.factors.len().is_multiple_of(2) && self.factors.chunks(2).all(|p| p[0] == p[1])
    }

    pub fn apply_move(&self, i: usize, dir: Direction) -> Result<Self> {
        let mut out = self.clone();
        out.apply_in_place(Move { index: i, dir })?;
        Ok(out)
    }

    fn apply_in_place(&mut self, m: Move) -> Result<()> {
        let len = self.factors.len();
        if m.index == 0 || m.index >= len {
            return Err(Error::IndexOutOfRange {
                index: m.index,
                len,
            });
        }
        let (a, b) = (m.index - 1, m.index);
        let (fa, fb) = (self.factors[a].clone(), self.factors[b].clone());
        let (na, nb) = match m.dir {
            Direction::Right => {
                let c = reflect_root(&self.system, &fb, &fa)?;
                (fb, c)
            }
            Direction::Left => {
                let c = reflect_root(&self.system, &fa, &fb)?;
                (c, fa)
            }
        };
        self.factors[a] = na;
        self.factors[b] = nb;
        Ok(())
    }
}

struct Reducer {
    f: ReflectionFactorization,
    log: MoveLog,
}

impl Reducer {
    fn mv(&mut self, m: Move) -> Result<()> {
        self.f.apply_in_place(m)?;
        self.log.moves.push(m);
        Ok(())
    }

    /// Moves the first factor to position `len` with conjugation.
    fn rotate(&mut self, len: usize) -> Result<()> {
        for i in 1..len {
            self.mv(Move::right(i))?;
        }
        Ok(())
    }
}

/// How often each case of the exchange step occurred.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BranchCounts {
    pub middle: usize,
    pub initial_subword: usize,
    pub final_subword: usize,
}

/// Reduces an identity factorization to consecutive equal pairs, following
/// the induction on length and total width.
pub fn pair_reduce(f: &ReflectionFactorization) -> Result<(ReflectionFactorization, MoveLog)> {
    pair_reduce_counted(f).map(|(out, log, _)| (out, log))
}

pub fn pair_reduce_counted(
    f: &ReflectionFactorization,
) -> Result<(ReflectionFactorization, MoveLog, BranchCounts)> {
    if !f.value()?.is_identity() {
        return Err(Error::NotIdentity);
    }
    let sys = f.system.clone();
    let mut red = Reducer {
        f: f.clone(),
        log: MoveLog::default(),
    };
    let mut active = f.len();
    let mut rounds = 0;
    let mut counts = BranchCounts::default();
    while active > 0 {
        rounds += 1;
        if rounds > ROUND_CAP {
            return Err(Error::Internal("pair_reduce exceeded its round cap".into()));
        }
        if active == 1 {
            return Err(Error::Internal(
                "single reflection left with identity value".into(),
            ));
        }
        if active == 2 && red.f.factors[0] == red.f.factors[1] {
            break;
        }

        // rightmost factor of maximal width goes last
        let widths = red.f.factors[..active]
            .iter()
            .map(|r| width(&sys, r))
            .collect::<Result<Vec<_>>>()?;
        let max = *widths.iter().max().unwrap();
        let p = widths.iter().rposition(|&w| w == max).unwrap();
        if p + 1 < active {
            for _ in 0..=p {
                red.rotate(active)?;
            }
        }

        let pieces = red.f.factors[..active - 1]
            .iter()
            .map(|r| conjugator(&sys, r))
            .collect::<Result<Vec<_>>>()?;
        let mut expr = Vec::new();
        let mut owner = Vec::new();
        for (i, (w, s)) in pieces.iter().enumerate() {
            expr.extend(w);
            expr.push(*s);
            expr.extend(w.iter().rev());
            owner.extend(std::iter::repeat_n(i, 2 * w.len() + 1));
        }
        let last = red.f.factors[active - 1].clone();
        let j = sys
            .exchange_index(&expr, &last)?
            .ok_or_else(|| Error::Internal("no exchange letter in the expression".into()))?;
        let i = owner[j - 1];
        let start = owner.iter().position(|&o| o == i).unwrap();
        let offset = j - 1 - start;
        let (w, _) = &pieces[i];

        if offset == w.len() {
            // middle letter: t_i travels to the end and duplicates t_l
            for k in i + 1..active - 1 {
                red.mv(Move::right(k))?;
            }
            if red.f.factors[active - 2] != red.f.factors[active - 1] {
                return Err(Error::Internal(
                    "middle-letter case did not produce a pair".into(),
                ));
            }
            active -= 2;
            counts.middle += 1;
            continue;
        }

        // letter inside w_i or its inverse: t_l is replaced by a narrower reflection
        let (m, target) = if offset < w.len() {
            counts.initial_subword += 1;
            (offset, i)
        } else {
            counts.final_subword += 1;
            (2 * w.len() - offset, i + 1)
        };
        let mut expected = Root::simple(sys.rank(), w[m]);
        for &s in w[..m].iter().rev() {
            expected = reflect_root(&sys, &Root::simple(sys.rank(), s), &expected)?;
        }
        for k in (target + 1..active).rev() {
            red.mv(Move::left(k))?;
        }
        if red.f.factors[target] != expected {
            return Err(Error::Internal(
                "subword case produced an unexpected reflection".into(),
            ));
        }
    }
    Ok((red.f, red.log, counts))
}

/// Random identity factorization: `pairs` random squares scrambled by `moves` random moves.
pub fn scrambled_pairs(
    sys: &CoxeterSystem,
    pairs: usize,
    moves: usize,
    rng: &mut impl Rng,
) -> Result<ReflectionFactorization> {
    let roots = sys.positive_roots()?;
    let mut factors = Vec::with_capacity(2 * pairs);
    for _ in 0..pairs {
        let r = roots[rng.gen_range(0..roots.len())].clone();
        factors.push(r.clone());
        factors.push(r);
    }
    let mut f = ReflectionFactorization {
        system: sys.clone(),
        factors,
    };
    if f.len() < 2 {
        return Ok(f);
    }
    for _ in 0..moves {
        let i = rng.gen_range(1..f.len());
        let dir = if rng.gen_bool(0.5) {
            Direction::Left
        } else {
            Direction::Right
        };
        f.apply_in_place(Move { index: i, dir })?;
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_right_move() {
        let sys = CoxeterSystem::a(2);
        let f =
            ReflectionFactorization::new(sys.clone(), vec![Root::simple(2, 0), Root::simple(2, 1)])
                .unwrap();
        let g = f.apply_move(1, Direction::Right).unwrap();
        assert_eq!(
            g.factors,
            vec![Root::simple(2, 1), Root { coords: vec![1, 1] }]
        );
        assert_eq!(g.apply_move(1, Direction::Left).unwrap(), f);
    }

    #[test]
    fn widths_are_height_minus_one() {
        let sys = CoxeterSystem::e(6);
        for r in sys.positive_roots().unwrap() {
            let (w, s) = conjugator(&sys, &r).unwrap();
            assert_eq!(w.len() as i64, r.height() - 1);
            let x = sys.evaluate(&w).unwrap();
            assert_eq!(x.apply(&Root::simple(6, s).coords).unwrap(), r.coords);
        }
        assert!(conjugator(
            &sys,
            &Root {
                coords: vec![2, 0, 0, 0, 0, 0]
            }
        )
        .is_err());
    }

    #[test]
    fn a2_cube_pairs() {
        let sys = CoxeterSystem::a(2);
        let factors = [0, 1, 0, 1, 0, 1]
            .iter()
            .map(|&s| Root::simple(2, s))
            .collect();
        let f = ReflectionFactorization::new(sys, factors).unwrap();
        let (out, log) = pair_reduce(&f).unwrap();
        assert_eq!(out.len(), 6);
        assert!(out.is_paired());
        assert_eq!(log.replay(&f).unwrap(), out);
    }
}
