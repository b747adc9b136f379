//! Braid words, their Weyl images, the Reidemeister-Schreier scan and the
//! abelianized pure braid lattice.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use rand::Rng;

use crate::coxeter::{is_positive, CoxeterSystem, Root, WeylElement};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BraidWord {
    pub letters: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn new(letters: Vec<(usize, i8)>) -> Self {
        BraidWord { letters }
    }

    pub fn positive(word: &[usize]) -> Self {
        BraidWord {
            letters: word.iter().map(|&s| (s, 1)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            letters: self.letters.iter().rev().map(|&(s, e)| (s, -e)).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { letters }
    }

    pub fn pow(&self, k: usize) -> Self {
        BraidWord {
            letters: self.letters.repeat(k),
        }
    }

    /// Parses `s0 s1 s2^-1 ...`; errors carry the token index.
    pub fn parse(sys: &CoxeterSystem, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for (index, tok) in text.split_whitespace().enumerate() {
            let (name, sign) = match tok.split_once('^') {
                None => (tok, 1),
                Some((n, "1")) | Some((n, "+1")) => (n, 1),
                Some((n, "-1")) => (n, -1),
                Some(_) => {
                    return Err(Error::Parse {
                        index,
                        msg: format!("bad exponent in `{tok}`"),
                    })
                }
            };
            let s = sys.index_of(name).map_err(|_| Error::Parse {
                index,
                msg: format!("unknown generator `{name}`"),
            })?;
            letters.push((s, sign));
        }
        Ok(BraidWord { letters })
    }

    pub fn display<'a>(&'a self, sys: &'a CoxeterSystem) -> impl fmt::Display + 'a {
        WordDisplay { word: self, sys }
    }
}

struct WordDisplay<'a> {
    word: &'a BraidWord,
    sys: &'a CoxeterSystem,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(s, e)) in self.word.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.sys.name(s))?;
            if e < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

pub fn project_to_weyl(sys: &CoxeterSystem, word: &BraidWord) -> Result<WeylElement> {
    let mut w = sys.identity();
    for &(s, _) in &word.letters {
        w = w.mul(&sys.simple_reflection(s))?;
    }
    Ok(w)
}

pub fn canonical_lift(sys: &CoxeterSystem, w: &WeylElement) -> Result<BraidWord> {
    Ok(BraidWord::positive(&sys.reduced_word(w)?))
}

/// A Schreier generator `ŵ s^2 ŵ^-1` raised to `sign`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RSFactor {
    pub conjugator: Vec<usize>,
    pub base: usize,
    pub sign: i8,
}

impl RSFactor {
    pub fn root(&self, sys: &CoxeterSystem) -> Result<Root> {
        let w = sys.evaluate(&self.conjugator)?;
        sys.quasireflection_root(&w, self.base)
    }
}

pub fn rs_rewrite(sys: &CoxeterSystem, word: &BraidWord) -> Result<Vec<RSFactor>> {
    let mut w = sys.identity();
    let mut out = Vec::new();
    for &(s, eps) in &word.letters {
        let up = is_positive(&w.column(s));
        let next = w.mul(&sys.simple_reflection(s))?;
        match (up, eps > 0) {
            (true, true) | (false, false) => {}
            (true, false) => out.push(RSFactor {
                conjugator: sys.reduced_word(&w)?,
                base: s,
                sign: -1,
            }),
            (false, true) => out.push(RSFactor {
                conjugator: sys.reduced_word(&next)?,
                base: s,
                sign: 1,
            }),
        }
        w = next;
    }
    if !w.is_identity() {
        return Err(Error::NotPure);
    }
    Ok(out)
}

/// Finitely supported integer function on positive roots.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AbelianProjection {
    coeffs: BTreeMap<Root, i64>,
}

impl AbelianProjection {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(root: Root) -> Self {
        let mut p = Self::zero();
        p.add_at(root, 1);
        p
    }

    pub fn indicator<'a>(roots: impl IntoIterator<Item = &'a Root>) -> Self {
        let mut p = Self::zero();
        for r in roots {
            p.add_at(r.clone(), 1);
        }
        p
    }

    pub fn add_at(&mut self, root: Root, c: i64) {
        let e = self.coeffs.entry(root.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&root);
        }
    }

    pub fn get(&self, root: &Root) -> i64 {
        self.coeffs.get(root).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Root, &i64)> {
        self.coeffs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut p = Self::zero();
        for (r, c) in &self.coeffs {
            p.add_at(r.clone(), c * k);
        }
        p
    }

    /// Relabels roots by `w`, renormalizing to positive form.
    pub fn conjugate(&self, w: &WeylElement) -> Result<Self> {
        let mut p = Self::zero();
        for (r, c) in &self.coeffs {
            p.add_at(Root::normalize(w.apply(&r.coords)?)?, *c);
        }
        Ok(p)
    }
}

impl Add for &AbelianProjection {
    type Output = AbelianProjection;
    fn add(self, rhs: &AbelianProjection) -> AbelianProjection {
        let mut p = self.clone();
        for (r, c) in &rhs.coeffs {
            p.add_at(r.clone(), *c);
        }
        p
    }
}

impl Sub for &AbelianProjection {
    type Output = AbelianProjection;
    fn sub(self, rhs: &AbelianProjection) -> AbelianProjection {
        self + &rhs.scale(-1)
    }
}

impl Neg for &AbelianProjection {
    type Output = AbelianProjection;
    fn neg(self) -> AbelianProjection {
        self.scale(-1)
    }
}

/// Image of a pure braid in the abelianized pure braid group.
pub fn proj_ab(sys: &CoxeterSystem, word: &BraidWord) -> Result<AbelianProjection> {
    let mut w = sys.identity();
    let mut p = AbelianProjection::zero();
    for &(s, eps) in &word.letters {
        let col = w.column(s);
        let up = is_positive(&col);
        let next = w.mul(&sys.simple_reflection(s))?;
        match (up, eps > 0) {
            (true, false) => p.add_at(Root::normalize(col)?, -1),
            (false, true) => p.add_at(Root::normalize(col)?, 1),
            _ => {}
        }
        w = next;
    }
    if !w.is_identity() {
        return Err(Error::NotPure);
    }
    Ok(p)
}

/// Maps a word of a subsystem's letters back to the ambient indices.
pub fn lift_letters(gens: &[usize], word: &[usize]) -> Vec<usize> {
    word.iter().map(|&i| gens[i]).collect()
}

/// Positive word of the longest element of the subsystem, in ambient letters.
pub fn garside_word(sys: &CoxeterSystem, gens: &[usize]) -> Result<BraidWord> {
    let sub = sys.subsystem(gens);
    let (_, word) = sub.longest_element()?;
    Ok(BraidWord::positive(&lift_letters(gens, &word)))
}

pub fn garside_square_projection(sys: &CoxeterSystem, gens: &[usize]) -> Result<AbelianProjection> {
    proj_ab(sys, &garside_word(sys, gens)?.pow(2))
}

/// Positive roots of a subsystem expressed in ambient coordinates.
pub fn subsystem_roots(sys: &CoxeterSystem, gens: &[usize]) -> Result<Vec<Root>> {
    let sub = sys.subsystem(gens);
    Ok(sub
        .positive_roots()?
        .into_iter()
        .map(|r| {
            let mut coords = vec![0; sys.rank()];
            for (i, c) in r.coords.iter().enumerate() {
                coords[gens[i]] = *c;
            }
            Root { coords }
        })
        .collect())
}

/// Orbit sums under the group generated by `gens`, keyed by least root.
pub fn coinvariant_projection(
    p: &AbelianProjection,
    gens: &[WeylElement],
    cap: usize,
) -> Result<BTreeMap<Root, i64>> {
    let mut rep_of: BTreeMap<Root, Root> = BTreeMap::new();
    let mut out = BTreeMap::new();
    for (r, c) in p.iter() {
        if !rep_of.contains_key(r) {
            let orbit = root_orbit(r, gens, cap)?;
            let rep = orbit.iter().next().expect("orbit holds its seed").clone();
            for x in orbit {
                rep_of.insert(x, rep.clone());
            }
        }
        *out.entry(rep_of[r].clone()).or_insert(0) += c;
    }
    Ok(out)
}

pub fn root_orbit(r: &Root, gens: &[WeylElement], cap: usize) -> Result<BTreeSet<Root>> {
    let mut seen = BTreeSet::from([r.clone()]);
    let mut queue = VecDeque::from([r.clone()]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = Root::normalize(g.apply(&x.coords)?)?;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// A random word of length `len` closed into a pure braid by the inverse of a
/// reduced lift of its image.
pub fn random_pure_word(sys: &CoxeterSystem, len: usize, rng: &mut impl Rng) -> Result<BraidWord> {
    let n = sys.rank();
    let u = BraidWord::new(
        (0..len)
            .map(|_| (rng.gen_range(0..n), if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect(),
    );
    let w = project_to_weyl(sys, &u)?;
    let lift = BraidWord::positive(&sys.reduced_word(&w)?).inverse();
    Ok(u.concat(&lift))
}

/// One random rewrite by a defining relation: insert or delete `s^e s^-e`,
/// swap commuting letters, or apply `sts = tst`. Returns the word unchanged
/// if no rewrite applies after a few attempts.
pub fn random_rewrite(sys: &CoxeterSystem, word: &BraidWord, rng: &mut impl Rng) -> BraidWord {
    let mut letters = word.letters.clone();
    let n = sys.rank();
    for _ in 0..64 {
        match rng.gen_range(0..3) {
            0 => {
                let i = rng.gen_range(0..=letters.len());
                let s = rng.gen_range(0..n);
                let e: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
                letters.splice(i..i, [(s, e), (s, -e)]);
                return BraidWord::new(letters);
            }
            1 => {
                let spots: Vec<usize> = (0..letters.len().saturating_sub(1))
                    .filter(|&i| {
                        letters[i].0 == letters[i + 1].0 && letters[i].1 == -letters[i + 1].1
                    })
                    .collect();
                if !spots.is_empty() {
                    let i = spots[rng.gen_range(0..spots.len())];
                    letters.drain(i..i + 2);
                    return BraidWord::new(letters);
                }
            }
            _ => {
                if letters.len() < 2 {
                    continue;
                }
                let i = rng.gen_range(0..letters.len() - 1);
                let ((s, e), (t, f)) = (letters[i], letters[i + 1]);
                if s == t || e != f {
                    continue;
                }
                match sys.order(s, t).as_u32() {
                    2 => {
                        letters.swap(i, i + 1);
                        return BraidWord::new(letters);
                    }
                    3 if letters.get(i + 2) == Some(&(s, e)) => {
                        letters[i..i + 3].copy_from_slice(&[(t, e), (s, e), (t, e)]);
                        return BraidWord::new(letters);
                    }
                    _ => {}
                }
            }
        }
    }
    BraidWord::new(letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CoxeterSystem {
        CoxeterSystem::a(2)
    }

    #[test]
    fn weyl_image_basics() {
        let sys = a2();
        assert!(project_to_weyl(&sys, &BraidWord::default())
            .unwrap()
            .is_identity());
        let w = BraidWord::new(vec![(0, 1), (0, -1)]);
        assert!(project_to_weyl(&sys, &w).unwrap().is_identity());
        let w = BraidWord::positive(&[0, 1]).pow(3);
        assert!(project_to_weyl(&sys, &w).unwrap().is_identity());
    }

    #[test]
    fn rs_small_cases() {
        let sys = a2();
        let f = rs_rewrite(&sys, &BraidWord::positive(&[0, 0])).unwrap();
        assert_eq!(
            f,
            vec![RSFactor {
                conjugator: vec![],
                base: 0,
                sign: 1
            }]
        );
        assert!(rs_rewrite(&sys, &BraidWord::new(vec![(0, 1), (0, -1)]))
            .unwrap()
            .is_empty());
        assert_eq!(
            rs_rewrite(&sys, &BraidWord::positive(&[0])),
            Err(Error::NotPure)
        );
    }

    #[test]
    fn rs_on_a2_cube() {
        let sys = a2();
        let f = rs_rewrite(&sys, &BraidWord::positive(&[0, 1]).pow(3)).unwrap();
        let roots: Vec<Vec<i64>> = f.iter().map(|x| x.root(&sys).unwrap().coords).collect();
        assert_eq!(roots, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
        assert!(f.iter().all(|x| x.sign == 1));
        for x in &f {
            let mut w = x.conjugator.clone();
            w.push(x.base);
            let e = sys.evaluate(&w).unwrap();
            assert_eq!(sys.length(&e).unwrap(), w.len());
        }
    }

    #[test]
    fn parse_and_display() {
        let sys = CoxeterSystem::surface(2);
        let w = BraidWord::parse(&sys, "s0 s1 s2^-1").unwrap();
        assert_eq!(w.letters, vec![(0, 1), (1, 1), (2, -1)]);
        assert_eq!(w.display(&sys).to_string(), "s0 s1 s2^-1");
        assert_eq!(
            BraidWord::parse(&sys, "s0 s9"),
            Err(Error::Parse {
                index: 1,
                msg: "unknown generator `s9`".into()
            })
        );
    }

    #[test]
    fn coinvariant_examples() {
        let sys = a2();
        let p = AbelianProjection::unit(Root::simple(2, 0));
        let c = coinvariant_projection(&p, &[], 10).unwrap();
        assert_eq!(c, BTreeMap::from([(Root::simple(2, 0), 1)]));
        let mut p = AbelianProjection::unit(Root::simple(2, 0));
        p.add_at(Root { coords: vec![1, 1] }, -1);
        let c = coinvariant_projection(&p, &[sys.simple_reflection(1)], 10).unwrap();
        assert_eq!(c, BTreeMap::from([(Root::simple(2, 0), 0)]));
    }
}
