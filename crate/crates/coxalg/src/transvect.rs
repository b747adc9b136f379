//! Products of Dehn twists over `Z/2` and their normalization into pairs of
//! twists along equal classes.
//!
//! Every rewrite is one of three events, each preserving the mod 2 value:
//! a Hurwitz move, insertion of `T_δ⁻¹ T_δ`, or insertion of a lantern
//! relation on an isotropic triple.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hurwitz::Direction;
use crate::mcg::{transvection_map, SymplecticMap};
use crate::z2::{span_rank, HomologyClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Twist {
    pub class: HomologyClass,
    pub sign: i8,
}

impl Twist {
    pub fn new(class: HomologyClass, sign: i8) -> Self {
        Twist { class, sign }
    }

    /// The twist `T_γ T_δ T_γ⁻¹`, reduced mod 2.
    fn conjugated_by(self, gamma: HomologyClass) -> Self {
        let class = if self.class.dot(gamma) {
            self.class + gamma
        } else {
            self.class
        };
        Twist {
            class,
            sign: self.sign,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransvectionFactorization {
    pub g: usize,
    pub factors: Vec<Twist>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    Move {
        index: usize,
        dir: Direction,
    },
    /// `T_δ⁻¹ T_δ` inserted before the 1-based position `index`.
    InsertPair {
        index: usize,
        class: HomologyClass,
    },
    /// The seven lantern factors inserted before `index`.
    InsertLantern {
        index: usize,
        factors: Vec<Twist>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Trace {
    pub events: Vec<TraceEvent>,
}

impl Trace {
    pub fn lanterns(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, TraceEvent::InsertLantern { .. }))
            .count()
    }

    pub fn replay(&self, f: &TransvectionFactorization) -> Result<TransvectionFactorization> {
        let mut out = f.clone();
        for e in &self.events {
            out.apply_event(e)?;
        }
        Ok(out)
    }

    /// Replays the trace and checks that the value is unchanged after every event.
    pub fn replay_checked(
        &self,
        f: &TransvectionFactorization,
    ) -> Result<TransvectionFactorization> {
        let value = f.value();
        let mut out = f.clone();
        for e in &self.events {
            out.apply_event(e)?;
            if out.value() != value {
                return Err(Error::Internal(format!("event {e:?} changed the value")));
            }
        }
        Ok(out)
    }
}

impl TransvectionFactorization {
    pub fn new(g: usize, factors: Vec<Twist>) -> Result<Self> {
        for t in &factors {
            if t.class.g != g {
                return Err(Error::GenusMismatch(t.class.g, g));
            }
            if t.class.is_zero() || t.sign.abs() != 1 {
                return Err(Error::Parse {
                    index: 0,
                    msg: format!("bad factor {t:?}"),
                });
            }
        }
        Ok(TransvectionFactorization { g, factors })
    }

    /// One factor per line: a sign then `2g` coordinates `α_1..α_g β_1..β_g`.
    pub fn parse(g: usize, text: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for (index, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let sign = match tokens.next() {
                Some("+") => 1,
                Some("-") => -1,
                other => {
                    return Err(Error::Parse {
                        index,
                        msg: format!("expected sign, got {other:?}"),
                    })
                }
            };
            let coords: Vec<&str> = tokens.collect();
            if coords.len() != 2 * g {
                return Err(Error::Parse {
                    index,
                    msg: format!("expected {} coordinates", 2 * g),
                });
            }
            let mut bits = 0u32;
            for (k, c) in coords.iter().enumerate() {
                match *c {
                    "0" => {}
                    "1" => bits |= 1 << k,
                    _ => {
                        return Err(Error::Parse {
                            index,
                            msg: format!("bad coordinate `{c}`"),
                        })
                    }
                }
            }
            if bits == 0 {
                return Err(Error::Parse {
                    index,
                    msg: "zero class".into(),
                });
            }
            factors.push(Twist::new(HomologyClass::from_bits(g, bits), sign));
        }
        Self::new(g, factors)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_paired(&self) -> bool {
        self.factors.len().is_multiple_of(2) && self.factors.chunks(2).all(|p| p[0].class == p[1].class)
    }

    /// Product of the transvections in factor order; signs vanish mod 2.
    pub fn value(&self) -> SymplecticMap {
        self.factors
            .iter()
            .fold(SymplecticMap::identity(self.g), |m, t| {
                m.compose(&transvection_map(t.class))
            })
    }

    pub fn apply_move(&self, i: usize, dir: Direction) -> Result<Self> {
        let mut out = self.clone();
        out.apply_event(&TraceEvent::Move { index: i, dir })?;
        Ok(out)
    }

    fn apply_event(&mut self, e: &TraceEvent) -> Result<()> {
        let len = self.factors.len();
        match e {
            TraceEvent::Move { index, dir } => {
                if *index == 0 || *index >= len {
                    return Err(Error::IndexOutOfRange { index: *index, len });
                }
                let (a, b) = (self.factors[index - 1], self.factors[*index]);
                let (na, nb) = match dir {
                    Direction::Right => (b, a.conjugated_by(b.class)),
                    Direction::Left => (b.conjugated_by(a.class), a),
                };
                self.factors[index - 1] = na;
                self.factors[*index] = nb;
            }
            TraceEvent::InsertPair { index, class } => {
                if *index == 0 || *index > len + 1 {
                    return Err(Error::IndexOutOfRange { index: *index, len });
                }
                let at = index - 1;
                self.factors
                    .splice(at..at, [Twist::new(*class, -1), Twist::new(*class, 1)]);
            }
            TraceEvent::InsertLantern { index, factors } => {
                if *index == 0 || *index > len + 1 {
                    return Err(Error::IndexOutOfRange { index: *index, len });
                }
                let at = index - 1;
                self.factors.splice(at..at, factors.iter().copied());
            }
        }
        Ok(())
    }
}

/// Lantern relation on classes spanning an isotropic 3-space.
pub fn lantern_factors(d1: HomologyClass, d2: HomologyClass, d3: HomologyClass) -> Vec<Twist> {
    vec![
        Twist::new(d2, -1),
        Twist::new(d3, -1),
        Twist::new(d2 + d3, -1),
        Twist::new(d1, 1),
        Twist::new(d1 + d2, 1),
        Twist::new(d1 + d3, 1),
        Twist::new(d1 + d2 + d3, 1),
    ]
}

struct Normalizer {
    f: TransvectionFactorization,
    trace: Trace,
    /// Factors at or beyond `active` form finished pairs.
    active: usize,
}

impl Normalizer {
    fn event(&mut self, e: TraceEvent) -> Result<()> {
        self.f.apply_event(&e)?;
        self.trace.events.push(e);
        Ok(())
    }

    fn mv(&mut self, index0: usize, dir: Direction) -> Result<()> {
        self.event(TraceEvent::Move {
            index: index0 + 1,
            dir,
        })
    }

    /// Moves factor `p` to `q` unchanged; the factors it passes are conjugated by it.
    fn carry(&mut self, p: usize, q: usize) -> Result<()> {
        if p < q {
            for k in p..q {
                self.mv(k, Direction::Left)?;
            }
        } else {
            for k in (q..p).rev() {
                self.mv(k, Direction::Right)?;
            }
        }
        Ok(())
    }

    /// Moves factor `p` to `q`, conjugating it; the factors it passes are unchanged.
    fn drag(&mut self, p: usize, q: usize) -> Result<()> {
        if p < q {
            for k in p..q {
                self.mv(k, Direction::Right)?;
            }
        } else {
            for k in (q..p).rev() {
                self.mv(k, Direction::Left)?;
            }
        }
        Ok(())
    }

    fn class(&self, i: usize) -> HomologyClass {
        self.f.factors[i].class
    }

    /// Sends the equal-class factors at `i` and `i + 1` to the end of the active region.
    fn retire(&mut self, i: usize) -> Result<()> {
        if self.class(i) != self.class(i + 1) {
            return Err(Error::Internal("retired factors are not a pair".into()));
        }
        let end = self.active - 1;
        self.drag(i + 1, end)?;
        self.drag(i, end - 1)?;
        self.active -= 2;
        Ok(())
    }

    /// Brings the next factor of the same class next to `i` and retires both.
    fn retire_with_partner(&mut self, i: usize) -> Result<()> {
        let c = self.class(i);
        let j = (i + 1..self.active)
            .find(|&j| self.class(j) == c)
            .ok_or_else(|| Error::Internal(format!("class {c} occurs an odd number of times")))?;
        self.carry(j, i + 1)?;
        self.retire(i)
    }

    /// Stable partition of the active region: factors meeting `c` first.
    /// Only the factors disjoint from `c` travel, so intersections with `c` are kept.
    fn partition(&mut self, c: HomologyClass) -> Result<usize> {
        let mut boundary = self.active;
        for i in (0..self.active).rev() {
            if !self.class(i).dot(c) {
                boundary -= 1;
                self.carry(i, boundary)?;
            }
        }
        Ok(boundary)
    }

    /// Steps making every active factor disjoint from `beta` mod 2.
    fn clear_beta(&mut self, beta: HomologyClass) -> Result<()> {
        let mut n1 = self.partition(beta)?;
        // pairwise disjointness among the factors meeting beta; a closest
        // intersecting pair has only disjoint factors between it
        loop {
            let closest = (1..n1).find_map(|d| {
                (0..n1 - d)
                    .find(|&i| self.class(i).dot(self.class(i + d)))
                    .map(|i| (i, i + d))
            });
            let Some((i, j)) = closest else { break };
            self.carry(j, i + 1)?;
            self.mv(i, Direction::Left)?;
            // factor i is now δ_i + δ_j, disjoint from beta
            self.carry(i, n1 - 1)?;
            n1 -= 1;
        }
        if n1 == 0 {
            return Ok(());
        }
        self.event(TraceEvent::InsertPair {
            index: 1,
            class: beta,
        })?;
        self.active += 2;
        n1 += 2;
        // β⁻¹ β δ_1 → β⁻¹ δ β → β⁻¹ γ δ
        self.mv(1, Direction::Left)?;
        self.mv(1, Direction::Left)?;
        // δ passes δ_2..δ_{n_1}, making them disjoint from beta
        self.carry(2, n1 - 1)?;
        let meets = self.partition(beta)?;
        if meets != 2 {
            return Err(Error::Internal(format!(
                "{meets} factors meet β after insertion"
            )));
        }
        if self.class(0) != self.class(1) {
            return Err(Error::Internal(
                "factors meeting β do not agree mod 2".into(),
            ));
        }
        self.retire(0)
    }

    /// Steps removing the active factors meeting `alpha`; all active classes are isotropic here.
    fn clear_alpha(&mut self, alpha: HomologyClass) -> Result<()> {
        loop {
            let hits: Vec<usize> = (0..self.active)
                .filter(|&i| self.class(i).dot(alpha))
                .collect();
            if hits.is_empty() {
                return Ok(());
            }
            let classes: Vec<HomologyClass> = hits.iter().map(|&i| self.class(i)).collect();
            if span_rank(&classes) >= 3 {
                let mut basis = Vec::new();
                for &i in &hits {
                    let mut trial: Vec<HomologyClass> =
                        basis.iter().map(|&k| self.class(k)).collect();
                    trial.push(self.class(i));
                    if span_rank(&trial) == trial.len() {
                        basis.push(i);
                    }
                    if basis.len() == 3 {
                        break;
                    }
                }
                let [d1, d2, d3] = [0, 1, 2].map(|k| self.class(basis[k]));
                self.event(TraceEvent::InsertLantern {
                    index: 1,
                    factors: lantern_factors(d1, d2, d3),
                })?;
                self.active += 7;
                // the inverted twists along δ_2, δ_3 and the new T_{δ_1} absorb old factors
                for c in [d2, d3, d1] {
                    let i = (0..self.active).find(|&i| self.class(i) == c).unwrap();
                    self.retire_with_partner(i)?;
                }
                continue;
            }
            // rank at most two: every class meeting alpha occurs an even number of times
            self.retire_with_partner(hits[0])?;
        }
    }
}

/// Rewrites an identity product of twists into pairs of twists along equal classes.
pub fn transvection_normalize(
    f: &TransvectionFactorization,
) -> Result<(TransvectionFactorization, Trace)> {
    if f.g < 2 {
        return Err(Error::GenusRange(f.g));
    }
    if !f.value().is_identity() {
        return Err(Error::NotIdentity);
    }
    if f.is_paired() {
        return Ok((f.clone(), Trace::default()));
    }
    let g = f.g;
    let mut nz = Normalizer {
        f: f.clone(),
        trace: Trace::default(),
        active: f.len(),
    };
    for k in 1..=g {
        nz.clear_beta(HomologyClass::beta(g, k))?;
    }
    for k in (1..=g).rev() {
        nz.clear_alpha(HomologyClass::alpha(g, k))?;
    }
    if nz.active != 0 {
        return Err(Error::Internal(format!(
            "{} factors left unpaired",
            nz.active
        )));
    }
    Ok((nz.f, nz.trace))
}

/// Random identity product: random pairs, optional lantern relations on random
/// isotropic triples, scrambled by random moves.
pub fn scrambled_twists(
    g: usize,
    pairs: usize,
    lanterns: usize,
    moves: usize,
    rng: &mut impl Rng,
) -> TransvectionFactorization {
    let n = 1u32 << (2 * g);
    let random_class =
        |rng: &mut dyn rand::RngCore| HomologyClass::from_bits(g, rng.gen_range(1..n));
    let mut factors = Vec::new();
    for _ in 0..pairs {
        let c = random_class(rng);
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        factors.push(Twist::new(c, s));
        factors.push(Twist::new(c, -s));
    }
    let mut placed = 0;
    while placed < lanterns && g >= 3 {
        let d = [random_class(rng), random_class(rng), random_class(rng)];
        let isotropic = !d[0].dot(d[1]) && !d[0].dot(d[2]) && !d[1].dot(d[2]);
        if isotropic && span_rank(&d) == 3 {
            let at = rng.gen_range(0..=factors.len());
            factors.splice(at..at, lantern_factors(d[0], d[1], d[2]));
            placed += 1;
        }
    }
    let mut f = TransvectionFactorization { g, factors };
    if f.len() >= 2 {
        for _ in 0..moves {
            let i = rng.gen_range(1..f.len());
            let dir = if rng.gen_bool(0.5) {
                Direction::Left
            } else {
                Direction::Right
            };
            f.apply_event(&TraceEvent::Move { index: i, dir })
                .expect("index in range");
        }
    }
    f
}
