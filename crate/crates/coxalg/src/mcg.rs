//! The surface system as a mapping-class-group model: curve classes, the
//! pushforward to `H_1(Σ; Z/2)`, relation elements and counting functionals.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::ops::{Add, Sub};

use crate::braid::{proj_ab, subsystem_roots, AbelianProjection, BraidWord};
use crate::coxeter::{CoxeterSystem, Root};
use crate::error::{Error, Result};
use crate::z2::{span, span_rank, HomologyClass};

/// Class of the curve `a_i` of the standard chain; `a_0` is the extra curve.
pub fn curve_class(i: usize, g: usize) -> Result<HomologyClass> {
    if i > 2 * g || g == 0 || (g == 1 && i == 0) {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: 2 * g + 1,
        });
    }
    Ok(match i {
        0 => HomologyClass::beta(g, 2),
        1 => HomologyClass::beta(g, 1),
        _ if i.is_multiple_of(2) => HomologyClass::alpha(g, i / 2),
        _ => {
            let k = i.div_ceil(2);
            HomologyClass::beta(g, k - 1) + HomologyClass::beta(g, k)
        }
    })
}

fn curve_index(name: &str) -> Result<usize> {
    name.strip_prefix('s')
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
}

/// Class of the letter `s` of a surface system.
pub fn generator_class(sys: &CoxeterSystem, s: usize, g: usize) -> Result<HomologyClass> {
    curve_class(curve_index(sys.name(s))?, g)
}

pub fn root_to_homology(sys: &CoxeterSystem, r: &Root, g: usize) -> Result<HomologyClass> {
    let mut v = HomologyClass::zero(g);
    for (s, &c) in r.coords.iter().enumerate() {
        if c % 2 != 0 {
            v += generator_class(sys, s, g)?;
        }
    }
    if v.is_zero() {
        return Err(Error::Internal(format!("root {r} has zero homology image")));
    }
    Ok(v)
}

/// Finitely supported integer function on nonzero classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HgProjection {
    pub g: usize,
    coeffs: BTreeMap<HomologyClass, i64>,
}

impl HgProjection {
    pub fn zero(g: usize) -> Self {
        HgProjection {
            g,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn add_at(&mut self, v: HomologyClass, c: i64) {
        assert!(!v.is_zero(), "zero class in a projection");
        let e = self.coeffs.entry(v).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&v);
        }
    }

    pub fn unit(v: HomologyClass) -> Self {
        let mut p = Self::zero(v.g);
        p.add_at(v, 1);
        p
    }

    pub fn indicator(g: usize, classes: impl IntoIterator<Item = HomologyClass>) -> Self {
        let mut p = Self::zero(g);
        for v in classes {
            p.add_at(v, 1);
        }
        p
    }

    pub fn get(&self, v: HomologyClass) -> i64 {
        self.coeffs.get(&v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (HomologyClass, i64)> + '_ {
        self.coeffs.iter().map(|(k, v)| (*k, *v))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn total(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut p = Self::zero(self.g);
        for (v, c) in self.iter() {
            p.add_at(v, c * k);
        }
        p
    }

    /// Classes with odd coefficient.
    pub fn mod2_support(&self) -> Vec<HomologyClass> {
        self.iter()
            .filter(|(_, c)| c % 2 != 0)
            .map(|(v, _)| v)
            .collect()
    }
}

impl Add for &HgProjection {
    type Output = HgProjection;
    fn add(self, rhs: &HgProjection) -> HgProjection {
        let mut p = self.clone();
        for (v, c) in rhs.iter() {
            p.add_at(v, c);
        }
        p
    }
}

impl Sub for &HgProjection {
    type Output = HgProjection;
    fn sub(self, rhs: &HgProjection) -> HgProjection {
        self + &rhs.scale(-1)
    }
}

pub fn pushforward(sys: &CoxeterSystem, p: &AbelianProjection, g: usize) -> Result<HgProjection> {
    let mut out = HgProjection::zero(g);
    for (r, &c) in p.iter() {
        out.add_at(root_to_homology(sys, r, g)?, c);
    }
    Ok(out)
}

/// A symplectic map of `H_1(Σ; Z/2)` stored by the images of basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymplecticMap {
    pub g: usize,
    pub images: Vec<HomologyClass>,
}

impl SymplecticMap {
    pub fn identity(g: usize) -> Self {
        SymplecticMap {
            g,
            images: (0..2 * g).map(|k| HomologyClass::basis(g, k)).collect(),
        }
    }

    pub fn apply(&self, v: HomologyClass) -> HomologyClass {
        let mut out = HomologyClass::zero(self.g);
        for (k, &img) in self.images.iter().enumerate() {
            if v.bit(k) {
                out += img;
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SymplecticMap) -> SymplecticMap {
        SymplecticMap {
            g: self.g,
            images: other.images.iter().map(|&v| self.apply(v)).collect(),
        }
    }

    pub fn is_symplectic(&self) -> bool {
        let n = 2 * self.g;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let (a, b) = (
                    HomologyClass::basis(self.g, i),
                    HomologyClass::basis(self.g, j),
                );
                self.images[i].dot(self.images[j]) == a.dot(b)
            })
        })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.g)
    }

    /// Row `i`, column `j` is coordinate `i` of the image of basis vector `j`.
    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        let n = 2 * self.g;
        (0..n)
            .map(|i| (0..n).map(|j| u8::from(self.images[j].bit(i))).collect())
            .collect()
    }

    pub fn from_rows(g: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let n = 2 * g;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedMonodromy(format!(
                "expected {n}x{n} matrix"
            )));
        }
        let images = (0..n)
            .map(|j| {
                let mut v = HomologyClass::zero(g);
                for (i, row) in rows.iter().enumerate() {
                    if row[j] & 1 == 1 {
                        v += HomologyClass::basis(g, i);
                    }
                }
                v
            })
            .collect();
        Ok(SymplecticMap { g, images })
    }

    pub fn inverse(&self) -> SymplecticMap {
        // For symplectic maps the inverse is the adjoint for the pairing.
        let g = self.g;
        let n = 2 * g;
        let images = (0..n)
            .map(|j| {
                let ej = HomologyClass::basis(g, j);
                let mut v = HomologyClass::zero(g);
                for i in 0..n {
                    let dual = if i < g { i + g } else { i - g };
                    if self.images[dual].dot(ej) {
                        v += HomologyClass::basis(g, i);
                    }
                }
                v
            })
            .collect();
        SymplecticMap { g, images }
    }
}

/// The Dehn twist action `v ↦ v + (v∩δ)δ`.
pub fn transvection_map(delta: HomologyClass) -> SymplecticMap {
    let g = delta.g;
    let images = (0..2 * g)
        .map(|k| {
            let e = HomologyClass::basis(g, k);
            if e.dot(delta) {
                e + delta
            } else {
                e
            }
        })
        .collect();
    SymplecticMap { g, images }
}

pub fn act(m: &SymplecticMap, p: &HgProjection) -> HgProjection {
    let mut out = HgProjection::zero(p.g);
    for (v, c) in p.iter() {
        out.add_at(m.apply(v), c);
    }
    out
}

pub fn hat_phi(mu: HomologyClass, p: &HgProjection) -> Result<i64> {
    if mu.is_zero() {
        return Err(Error::ZeroFunctional);
    }
    Ok(p.iter().filter(|(v, _)| v.dot(mu)).map(|(_, c)| c).sum())
}

fn surface_gens(sys: &CoxeterSystem, names: &[&str]) -> Vec<usize> {
    sys.indices_of(names)
        .expect("surface preset carries these letters")
}

/// Pushforward of the all-ones indicator on a subsystem's positive roots.
pub fn garside_indicator(g: usize, names: &[&str]) -> Result<HgProjection> {
    let sys = CoxeterSystem::surface(g);
    let gens = surface_gens(&sys, names);
    let roots = subsystem_roots(&sys, &gens)?;
    pushforward(&sys, &AbelianProjection::indicator(&roots), g)
}

pub const A5_CHAIN: [&str; 5] = ["s1", "s2", "s3", "s4", "s0"];
pub const A4_CHAIN: [&str; 4] = ["s2", "s3", "s4", "s0"];
/// The four-letter path sharing `s1`, related to `A4_CHAIN` by a diagram symmetry of `A5_CHAIN`.
pub const A4_PATH: [&str; 4] = ["s1", "s2", "s3", "s4"];
pub const E7_LANTERN: [&str; 7] = ["s0", "s1", "s2", "s3", "s4", "s5", "s6"];
pub const E6_LANTERN: [&str; 6] = ["s0", "s2", "s3", "s4", "s5", "s6"];

fn require_genus(g: usize, min: usize) -> Result<()> {
    if g < min || g > 16 {
        return Err(Error::GenusRange(g));
    }
    Ok(())
}

/// `Δ^2(A5) - 2Δ^2(A4)` in homology, for a chosen `A4` inside `A5_CHAIN`.
pub fn chain_projection_on(g: usize, a4: &[&str]) -> Result<HgProjection> {
    require_genus(g, 2)?;
    let big = garside_indicator(g, &A5_CHAIN)?;
    let small = garside_indicator(g, a4)?;
    Ok(&big - &small.scale(2))
}

pub fn chain_projection(g: usize) -> Result<HgProjection> {
    chain_projection_on(g, &A4_CHAIN)
}

/// `Δ^2(E7) - 2Δ^2(E6)`: the squared modified lantern element.
pub fn lantern_sq_projection(g: usize) -> Result<HgProjection> {
    require_genus(g, 3)?;
    let big = garside_indicator(g, &E7_LANTERN)?;
    let small = garside_indicator(g, &E6_LANTERN)?;
    Ok(&big - &small.scale(2))
}

/// Pushforward of `Δ^2(A_{2g})` on the chain `s1..s(2g)`.
pub fn hyperelliptic_projection(g: usize) -> Result<HgProjection> {
    require_genus(g, 1)?;
    let names: Vec<String> = (1..=2 * g).map(|i| format!("s{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    garside_indicator(g, &refs)
}

/// Commutator of `T_{β_g}` with `Δ^2(A_{2g})`.
pub fn hyperelliptic_commutator_projection(g: usize) -> Result<HgProjection> {
    require_genus(g, 2)?;
    let p = hyperelliptic_projection(g)?;
    Ok(&act(&transvection_map(HomologyClass::beta(g, g)), &p) - &p)
}

/// The same element written as `Σ_i A_{v_i + β_g} - A_{v_i}` over tails of the chain.
pub fn hyperelliptic_commutator_explicit(g: usize) -> Result<HgProjection> {
    require_genus(g, 2)?;
    let beta = HomologyClass::beta(g, g);
    let mut out = HgProjection::zero(g);
    for i in 1..=2 * g {
        let mut v = HomologyClass::zero(g);
        for k in i..=2 * g {
            v += curve_class(k, g)?;
        }
        out.add_at(v + beta, 1);
        out.add_at(v, -1);
    }
    Ok(out)
}

/// `2A_β + 2A_α + 2A_{α+β}` for the handle `p`.
pub fn separating_chain_projection(p: usize, g: usize) -> Result<HgProjection> {
    require_genus(g, 1)?;
    if !(1..=g).contains(&p) {
        return Err(Error::IndexOutOfRange { index: p, len: g });
    }
    let (a, b) = (HomologyClass::alpha(g, p), HomologyClass::beta(g, p));
    let mut out = HgProjection::zero(g);
    for v in [b, a, a + b] {
        out.add_at(v, 2);
    }
    Ok(out)
}

/// Counting functional on a braid word of a surface system.
///
/// Pure words go through the abelianization; otherwise every letter must act
/// by a transvection fixing `mu`, and such letters contribute zero.
pub fn hat_phi_word(
    sys: &CoxeterSystem,
    g: usize,
    mu: HomologyClass,
    word: &BraidWord,
) -> Result<i64> {
    if mu.is_zero() {
        return Err(Error::ZeroFunctional);
    }
    match proj_ab(sys, word) {
        Ok(p) => hat_phi(mu, &pushforward(sys, &p, g)?),
        Err(Error::NotPure) => {
            for &(s, _) in &word.letters {
                if generator_class(sys, s, g)?.dot(mu) {
                    return Err(Error::UnsupportedStabilizerPresentation);
                }
            }
            Ok(0)
        }
        Err(e) => Err(e),
    }
}

/// Integral intersection `e_i · e_j` of the basis `α_1..α_g, β_1..β_g`.
fn omega(g: usize, i: usize, j: usize) -> i64 {
    if i < g && j == i + g {
        1
    } else if i >= g && j + g == i {
        -1
    } else {
        0
    }
}

/// Square of an integral Dehn twist with the given class (coordinates 0 or 1),
/// reduced mod 4; row `i` is the image of basis vector `i`.
pub fn transvection_square_mod4(delta: HomologyClass) -> Vec<Vec<u8>> {
    let g = delta.g;
    let n = 2 * g;
    let d: Vec<i64> = (0..n).map(|k| i64::from(delta.bit(k))).collect();
    // T(v) = v + (v · δ) δ
    let t: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let c: i64 = (0..n).map(|j| omega(g, i, j) * d[j]).sum();
            (0..n).map(|j| i64::from(i == j) + c * d[j]).collect()
        })
        .collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let x: i64 = (0..n).map(|k| t[i][k] * t[k][j]).sum();
                    x.rem_euclid(4) as u8
                })
                .collect()
        })
        .collect()
}

/// `dim(V₊ + V₋) - dim(V₊ + T_μ V₋)`.
pub fn luttinger_rank_delta(
    vplus: &[HomologyClass],
    vminus: &[HomologyClass],
    mu: HomologyClass,
) -> Result<i64> {
    if mu.is_zero() {
        return Err(Error::ZeroFunctional);
    }
    let t = transvection_map(mu);
    let before: Vec<_> = vplus.iter().chain(vminus).copied().collect();
    let after: Vec<_> = vplus
        .iter()
        .copied()
        .chain(vminus.iter().map(|&v| t.apply(v)))
        .collect();
    Ok(span_rank(&before) as i64 - span_rank(&after) as i64)
}

/// Orbits of the group generated by `gens` on nonzero classes.
pub fn class_orbits(g: usize, gens: &[SymplecticMap]) -> Vec<BTreeSet<HomologyClass>> {
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for v in HomologyClass::all_nonzero(g) {
        if seen.contains(&v) {
            continue;
        }
        let mut orbit = BTreeSet::from([v]);
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            for m in gens {
                let y = m.apply(x);
                if orbit.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.extend(orbit.iter().copied());
        orbits.push(orbit);
    }
    orbits
}

/// Coinvariant image of `p`: coefficient sums per orbit, keyed by least class.
pub fn coinvariants(p: &HgProjection, gens: &[SymplecticMap]) -> BTreeMap<HomologyClass, i64> {
    let orbits = class_orbits(p.g, gens);
    let mut out = BTreeMap::new();
    for (v, c) in p.iter() {
        let orbit = orbits
            .iter()
            .find(|o| o.contains(&v))
            .expect("orbits cover");
        *out.entry(*orbit.iter().next().expect("nonempty"))
            .or_insert(0) += c;
    }
    out
}

/// `Σ_{v ∈ V∖0} A_v` for the span `V` of `basis`.
pub fn subspace_sum(g: usize, basis: &[HomologyClass]) -> HgProjection {
    HgProjection::indicator(g, span(basis, g).into_iter().filter(|v| !v.is_zero()))
}
