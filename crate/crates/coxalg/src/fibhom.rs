//! First homology of a presented group with local `Z/2` coefficients, through
//! the complex `R ⊗ M → X ⊗ M → M`, Fox free differentials, and the linear
//! system deciding whether a vanishing-cycle class bounds over the base.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mcg::transvection_map;
use crate::shuffle::symplectic_j;
use crate::z2::{BitMatrix, HomologyClass};

/// A letter `x^{±1}` by generator index.
pub type Letter = (usize, i8);
pub type Word = Vec<Letter>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

#[derive(Deserialize)]
struct PresentationJson {
    generators: Vec<String>,
    #[serde(default)]
    relators: Vec<String>,
}

pub fn inverse_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|&(x, e)| (x, -e)).collect()
}

struct WordParser<'a> {
    gens: &'a [String],
    text: Vec<char>,
    pos: usize,
}

impl WordParser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            index: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_separators(&mut self) {
        while self.pos < self.text.len()
            && matches!(self.text[self.pos], ' ' | '\t' | '*' | '.' | '·')
        {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut out = Word::new();
        loop {
            self.skip_separators();
            match self.text.get(self.pos) {
                None | Some(',') | Some(']') | Some(')') => return Ok(out),
                _ => {
                    let atom = self.atom()?;
                    let atom = self.power(atom)?;
                    out.extend(atom);
                }
            }
        }
    }

    fn atom(&mut self) -> Result<Word> {
        match self.text[self.pos] {
            '[' => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(',')?;
                let b = self.word()?;
                self.expect(']')?;
                let mut w = a.clone();
                w.extend(&b);
                w.extend(inverse_word(&a));
                w.extend(inverse_word(&b));
                Ok(w)
            }
            '(' => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            '1' => {
                self.pos += 1;
                Ok(Word::new())
            }
            _ => {
                let rest: String = self.text[self.pos..].iter().collect();
                let best = self
                    .gens
                    .iter()
                    .enumerate()
                    .filter(|(_, name)| rest.starts_with(name.as_str()))
                    .max_by_key(|(_, name)| name.len());
                let Some((i, name)) = best else {
                    return Err(Error::UnknownGenerator(rest.chars().take(8).collect()));
                };
                self.pos += name.chars().count();
                Ok(vec![(i, 1)])
            }
        }
    }

    fn power(&mut self, atom: Word) -> Result<Word> {
        if self.text.get(self.pos) != Some(&'^') {
            return Ok(atom);
        }
        self.pos += 1;
        let start = self.pos;
        if self.text.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.text.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.text[start..self.pos].iter().collect();
        let k: i64 = s
            .parse()
            .map_err(|_| self.err(format!("bad exponent `{s}`")))?;
        let base = if k < 0 { inverse_word(&atom) } else { atom };
        Ok(base.repeat(k.unsigned_abs() as usize))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_separators();
        if self.text.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for w in &relators {
            if let Some(&(x, _)) = w.iter().find(|&&(x, _)| x >= generators.len()) {
                return Err(Error::UnknownGenerator(format!("#{x}")));
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// Parses a word such as `[x,y]z^-1`; generator names match greedily.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut p = WordParser {
            gens: &self.generators,
            text: text.chars().collect(),
            pos: 0,
        };
        let w = p.word()?;
        if p.pos != p.text.len() {
            return Err(p.err("trailing input"));
        }
        Ok(w)
    }

    /// `{"generators": [...], "relators": ["[x,y]z", ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PresentationJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            index: e.column(),
            msg: e.to_string(),
        })?;
        let mut p = Presentation {
            generators: raw.generators,
            relators: Vec::new(),
        };
        for r in &raw.relators {
            let w = p.parse_word(r)?;
            p.relators.push(w);
        }
        Ok(p)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }
}

/// A `Z/2`-representation: one invertible matrix per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSystem {
    pub dim: usize,
    action: Vec<BitMatrix>,
    inverse: Vec<BitMatrix>,
}

impl LocalSystem {
    pub fn new(dim: usize, action: Vec<BitMatrix>) -> Result<Self> {
        let mut inverse = Vec::with_capacity(action.len());
        for (i, m) in action.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::MalformedMonodromy(format!(
                    "generator {i}: not {dim}x{dim}"
                )));
            }
            let inv = m.inverse().ok_or_else(|| {
                Error::MalformedMonodromy(format!("generator {i}: not invertible"))
            })?;
            inverse.push(inv);
        }
        Ok(LocalSystem {
            dim,
            action,
            inverse,
        })
    }

    pub fn trivial(generators: usize, dim: usize) -> Self {
        let id = BitMatrix::identity(dim);
        LocalSystem {
            dim,
            action: vec![id.clone(); generators],
            inverse: vec![id; generators],
        }
    }

    pub fn generators(&self) -> usize {
        self.action.len()
    }

    pub fn matrix(&self, (x, e): Letter) -> Result<&BitMatrix> {
        let table = if e > 0 { &self.action } else { &self.inverse };
        table
            .get(x)
            .ok_or_else(|| Error::UnknownGenerator(format!("#{x}")))
    }

    /// Matrix of a word, acting on the left: `(ab)m = a(bm)`.
    pub fn word_matrix(&self, w: &[Letter]) -> Result<BitMatrix> {
        let mut acc = BitMatrix::identity(self.dim);
        for &l in w {
            acc = acc.mul(self.matrix(l)?)?;
        }
        Ok(acc)
    }

    pub fn act(&self, w: &[Letter], m: &[bool]) -> Result<Vec<bool>> {
        let mut v = m.to_vec();
        for &l in w.iter().rev() {
            v = self.matrix(l)?.mul_vec(&v);
        }
        Ok(v)
    }

    /// The contragredient module: `g` acts by the transpose of `g⁻¹`.
    pub fn dual(&self) -> Self {
        LocalSystem {
            dim: self.dim,
            action: self.inverse.iter().map(|m| m.transpose()).collect(),
            inverse: self.action.iter().map(|m| m.transpose()).collect(),
        }
    }
}

fn xor_into(acc: &mut [bool], v: &[bool]) {
    for (a, &b) in acc.iter_mut().zip(v) {
        *a ^= b;
    }
}

/// A formal sum `Σ x ⊗ m_x` over the generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain1 {
    pub coeffs: Vec<Vec<bool>>,
}

impl Chain1 {
    pub fn zero(generators: usize, dim: usize) -> Self {
        Chain1 {
            coeffs: vec![vec![false; dim]; generators],
        }
    }

    pub fn single(generators: usize, x: usize, m: &[bool]) -> Self {
        let mut c = Self::zero(generators, m.len());
        c.coeffs[x] = m.to_vec();
        c
    }

    pub fn add_at(&mut self, x: usize, m: &[bool]) {
        xor_into(&mut self.coeffs[x], m);
    }

    pub fn add(&mut self, other: &Chain1) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            xor_into(a, b);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.iter().all(|&b| !b))
    }

    pub fn flatten(&self) -> Vec<bool> {
        self.coeffs.concat()
    }
}

/// `∂₁(x ⊗ m) = xm - m`.
pub fn boundary1(ls: &LocalSystem, x: usize, m: &[bool]) -> Result<Vec<bool>> {
    let mut v = ls.matrix((x, 1))?.mul_vec(m);
    xor_into(&mut v, m);
    Ok(v)
}

pub fn boundary1_chain(ls: &LocalSystem, c: &Chain1) -> Result<Vec<bool>> {
    let mut out = vec![false; ls.dim];
    for (x, m) in c.coeffs.iter().enumerate() {
        xor_into(&mut out, &boundary1(ls, x, m)?);
    }
    Ok(out)
}

/// `∂₂(w ⊗ m)` from `∂₂(ab ⊗ m) = ∂₂(a ⊗ bm) + ∂₂(b ⊗ m)`.
pub fn boundary2(ls: &LocalSystem, w: &[Letter], m: &[bool]) -> Result<Chain1> {
    let mut out = Chain1::zero(ls.generators(), ls.dim);
    // `suffix` is the image of m under the letters to the right
    let mut suffix = m.to_vec();
    for &(x, e) in w.iter().rev() {
        if e > 0 {
            out.add_at(x, &suffix);
            suffix = ls.matrix((x, 1))?.mul_vec(&suffix);
        } else {
            suffix = ls.matrix((x, -1))?.mul_vec(&suffix);
            out.add_at(x, &suffix);
        }
    }
    Ok(out)
}

/// Matrix of `∂₁`, columns indexed by `(x, i)`.
pub fn d1_matrix(p: &Presentation, ls: &LocalSystem) -> Result<BitMatrix> {
    let n = ls.dim;
    let mut m = BitMatrix::zeros(n, p.generators.len() * n);
    for x in 0..p.generators.len() {
        for i in 0..n {
            let e = unit(n, i);
            for (r, b) in boundary1(ls, x, &e)?.into_iter().enumerate() {
                m.set(r, x * n + i, b);
            }
        }
    }
    Ok(m)
}

/// Matrix of `∂₂`, rows indexed by `(x, i)` and columns by `(R, j)`.
pub fn d2_matrix(p: &Presentation, ls: &LocalSystem) -> Result<BitMatrix> {
    let n = ls.dim;
    let mut m = BitMatrix::zeros(p.generators.len() * n, p.relators.len() * n);
    for (ri, r) in p.relators.iter().enumerate() {
        for j in 0..n {
            let col = boundary2(ls, r, &unit(n, j))?.flatten();
            for (row, b) in col.into_iter().enumerate() {
                m.set(row, ri * n + j, b);
            }
        }
    }
    Ok(m)
}

fn unit(n: usize, i: usize) -> Vec<bool> {
    let mut e = vec![false; n];
    e[i] = true;
    e
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology1 {
    pub dim: usize,
    /// Cycles whose classes form a basis.
    pub cycles: Vec<Chain1>,
}

/// `ker ∂₁ / im ∂₂` by Gaussian elimination.
pub fn homology1(p: &Presentation, ls: &LocalSystem) -> Result<Homology1> {
    let n = ls.dim;
    let gens = p.generators.len();
    let d2 = d2_matrix(p, ls)?;
    let mut span: Vec<Vec<bool>> = d2.transpose().to_rows().into_iter().map(to_bools).collect();
    let mut rank = crate::z2::BitMatrix::from_rows(&to_rows(&span)).rank();
    let mut cycles = Vec::new();
    for k in d1_matrix(p, ls)?.kernel() {
        span.push(k.clone());
        let r = BitMatrix::from_rows(&to_rows(&span)).rank();
        if r > rank {
            rank = r;
            cycles.push(Chain1 {
                coeffs: k.chunks(n).map(|c| c.to_vec()).collect(),
            });
        } else {
            span.pop();
        }
    }
    debug_assert!(cycles.iter().all(|c| c.coeffs.len() == gens));
    Ok(Homology1 {
        dim: cycles.len(),
        cycles,
    })
}

fn to_bools(row: Vec<u8>) -> Vec<bool> {
    row.into_iter().map(|b| b == 1).collect()
}

fn to_rows(v: &[Vec<bool>]) -> Vec<Vec<u8>> {
    v.iter()
        .map(|r| r.iter().map(|&b| u8::from(b)).collect())
        .collect()
}

/// The cross-homomorphism with `φ(x) = assignment[x]` and `φ(ab) = φ(a) + a·φ(b)`.
pub fn fox_cross_hom(
    ls: &LocalSystem,
    w: &[Letter],
    assignment: &[Vec<bool>],
) -> Result<Vec<bool>> {
    let mut prefix = BitMatrix::identity(ls.dim);
    let mut out = vec![false; ls.dim];
    for &(x, e) in w {
        let a = assignment
            .get(x)
            .ok_or_else(|| Error::UnknownGenerator(format!("#{x}")))?;
        if e > 0 {
            xor_into(&mut out, &prefix.mul_vec(a));
            prefix = prefix.mul(ls.matrix((x, 1))?)?;
        } else {
            // φ(x⁻¹) = -x⁻¹ φ(x)
            prefix = prefix.mul(ls.matrix((x, -1))?)?;
            xor_into(&mut out, &prefix.mul_vec(a));
        }
    }
    Ok(out)
}

/// Matrix of `φ ↦ (φ(R))_R`, rows indexed by `(R, j)` and columns by `(x, i)`.
pub fn fox_matrix(p: &Presentation, ls: &LocalSystem) -> Result<BitMatrix> {
    let n = ls.dim;
    let gens = p.generators.len();
    let mut m = BitMatrix::zeros(p.relators.len() * n, gens * n);
    for x in 0..gens {
        for i in 0..n {
            let mut assignment = vec![vec![false; n]; gens];
            assignment[x] = unit(n, i);
            for (ri, r) in p.relators.iter().enumerate() {
                for (j, b) in fox_cross_hom(ls, r, &assignment)?.into_iter().enumerate() {
                    m.set(ri * n + j, x * n + i, b);
                }
            }
        }
    }
    Ok(m)
}

/// The coboundary `φ ↦ (φ(R))_R` on cross-homomorphisms into the dual
/// module, in the cochain coordinates `c_x = x⁻¹·φ(x)`.
pub fn fox_coboundary(p: &Presentation, ls: &LocalSystem) -> Result<BitMatrix> {
    let dual = ls.dual();
    let n = ls.dim;
    let gens = p.generators.len();
    let mut change = BitMatrix::zeros(gens * n, gens * n);
    for x in 0..gens {
        let a = dual.matrix((x, 1))?;
        for i in 0..n {
            for j in 0..n {
                change.set(x * n + i, x * n + j, a.get(i, j));
            }
        }
    }
    fox_matrix(p, &dual)?.mul(&change)
}

/// Where a separating `Γ` cuts the base: the first `genus_plus` handles and
/// `n_plus` critical values lie on the `+` side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub genus_plus: usize,
    pub n_plus: usize,
}

/// Monodromy of a Lefschetz fibration over the punctured base, in the
/// column convention of `SymplecticMap::to_rows`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyData {
    pub g: usize,
    pub xi: Vec<BitMatrix>,
    pub eta: Vec<BitMatrix>,
    pub vanishing: Vec<HomologyClass>,
    pub gamma: Vec<BitMatrix>,
    pub separation: Option<Separation>,
    pub mu: HomologyClass,
}

#[derive(Deserialize)]
struct MonodromyJson {
    g: usize,
    #[serde(default)]
    xi: Vec<Vec<Vec<u8>>>,
    #[serde(default)]
    eta: Vec<Vec<Vec<u8>>>,
    #[serde(default)]
    vanishing: Vec<String>,
    gamma: Option<Vec<Vec<Vec<u8>>>>,
    separating: Option<Separation>,
    mu: String,
}

pub fn class_to_vec(c: HomologyClass) -> Vec<bool> {
    (0..2 * c.g).map(|k| c.bit(k)).collect()
}

pub fn vec_to_class(g: usize, v: &[bool]) -> HomologyClass {
    let bits = v
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .fold(0u32, |acc, (k, _)| acc | 1 << k);
    HomologyClass::from_bits(g, bits)
}

impl MonodromyData {
    /// Γ-actions default to the transvections along the vanishing classes.
    pub fn new(
        g: usize,
        xi: Vec<BitMatrix>,
        eta: Vec<BitMatrix>,
        vanishing: Vec<HomologyClass>,
        separation: Option<Separation>,
        mu: HomologyClass,
    ) -> Self {
        let gamma = vanishing.iter().map(|&d| twist_matrix(d)).collect();
        MonodromyData {
            g,
            xi,
            eta,
            vanishing,
            gamma,
            separation,
            mu,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: MonodromyJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            index: e.column(),
            msg: e.to_string(),
        })?;
        let g = raw.g;
        let vanishing = raw
            .vanishing
            .iter()
            .map(|s| HomologyClass::parse(g, s))
            .collect::<Result<Vec<_>>>()?;
        let mu = HomologyClass::parse(g, &raw.mu)?;
        let mats = |v: Vec<Vec<Vec<u8>>>| {
            v.iter()
                .map(|m| BitMatrix::from_rows(m))
                .collect::<Vec<_>>()
        };
        let mut data = MonodromyData::new(
            g,
            mats(raw.xi),
            mats(raw.eta),
            vanishing,
            raw.separating,
            mu,
        );
        if let Some(gamma) = raw.gamma {
            data.gamma = mats(gamma);
        }
        Ok(data)
    }

    pub fn genus_y(&self) -> usize {
        self.xi.len()
    }

    fn generator_names(&self) -> Vec<String> {
        let mut names = Vec::new();
        for i in 1..=self.genus_y() {
            names.push(format!("xi{i}"));
            names.push(format!("eta{i}"));
        }
        for j in 1..=self.vanishing.len() {
            names.push(format!("G{j}"));
        }
        if self.separation.is_some() {
            names.push("G".into());
        }
        names
    }

    /// `Π [ξ_i, η_i] · Π Γ_j` over the given handle and critical-value ranges.
    fn product_word(&self, handles: std::ops::Range<usize>, crit: std::ops::Range<usize>) -> Word {
        let mut w = Word::new();
        for i in handles {
            let (x, y) = (2 * i, 2 * i + 1);
            w.extend([(x, 1), (y, 1), (x, -1), (y, -1)]);
        }
        let base = 2 * self.genus_y();
        w.extend(crit.map(|j| (base + j, 1)));
        w
    }

    /// The presentation of the punctured base together with its local system.
    pub fn presentation(&self) -> Result<(Presentation, LocalSystem, usize)> {
        self.validate()?;
        let names = self.generator_names();
        let n = 2 * self.g;
        let (gy, nc) = (self.genus_y(), self.vanishing.len());
        let mut action = Vec::new();
        for i in 0..gy {
            action.push(self.xi[i].clone());
            action.push(self.eta[i].clone());
        }
        action.extend(self.gamma.iter().cloned());
        let (relators, gamma_index) = match self.separation {
            None => (vec![self.product_word(0..gy, 0..nc)], 0),
            Some(s) => {
                let gamma = names.len() - 1;
                let mut plus = self.product_word(0..s.genus_plus, 0..s.n_plus);
                plus.push((gamma, 1));
                let mut minus = self.product_word(s.genus_plus..gy, s.n_plus..nc);
                minus.push((gamma, -1));
                (vec![plus, minus], gamma)
            }
        };
        if let Some(s) = self.separation {
            let partial = LocalSystem::new(n, action.clone())?;
            let minus = self.product_word(s.genus_plus..gy, s.n_plus..nc);
            action.push(partial.word_matrix(&minus)?);
        }
        let ls = LocalSystem::new(n, action)?;
        Ok((Presentation::new(names, relators)?, ls, gamma_index))
    }

    pub fn validate(&self) -> Result<()> {
        let n = 2 * self.g;
        let bad = |m: &str| Err(Error::MalformedMonodromy(m.into()));
        if self.xi.len() != self.eta.len() {
            return bad("xi and eta lists differ in length");
        }
        if self.gamma.len() != self.vanishing.len() {
            return bad("one Γ action per vanishing class is required");
        }
        if self.mu.is_zero() {
            return bad("μ must be nonzero");
        }
        if self.mu.g != self.g || self.vanishing.iter().any(|d| d.g != self.g) {
            return Err(Error::GenusMismatch(self.mu.g, self.g));
        }
        let j = symplectic_j(self.g);
        for m in self.xi.iter().chain(&self.eta).chain(&self.gamma) {
            if m.rows() != n || m.cols() != n {
                return bad("action has the wrong size");
            }
            if m.transpose().mul(&j)?.mul(m)? != j {
                return bad("action is not symplectic");
            }
        }
        for (d, m) in self.vanishing.iter().zip(&self.gamma) {
            if *m != twist_matrix(*d) {
                return bad("Γ action is not the transvection along its vanishing class");
            }
        }
        let (gy, nc) = (self.genus_y(), self.vanishing.len());
        let mut action = Vec::new();
        for i in 0..gy {
            action.push(self.xi[i].clone());
            action.push(self.eta[i].clone());
        }
        action.extend(self.gamma.iter().cloned());
        let ls = LocalSystem::new(n, action)?;
        let total = ls.word_matrix(&self.product_word(0..gy, 0..nc))?;
        if total != BitMatrix::identity(n) {
            return bad("monodromy of the relator is not trivial");
        }
        match self.separation {
            None if gy == 0 => bad("a non-separating Γ needs a handle on the base"),
            Some(s) if s.genus_plus > gy || s.n_plus > nc => bad("separation out of range"),
            _ => Ok(()),
        }
    }
}

fn twist_matrix(d: HomologyClass) -> BitMatrix {
    BitMatrix::from_rows(&transvection_map(d).to_rows())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum KVanishingCertificate {
    Separating {
        mu_plus: HomologyClass,
        mu_minus: HomologyClass,
        lambdas: Vec<HomologyClass>,
    },
    NonSeparating {
        nu: HomologyClass,
        lambdas: Vec<HomologyClass>,
    },
}

struct KSystem {
    matrix: BitMatrix,
    target: Vec<bool>,
    unknowns: usize,
}

/// The linear system `Γ ⊗ μ = ∂₂(...) + Σ Γ_i ⊗ λ_i` with `λ_i ∩ δ_i = 0`;
/// unknowns are `μ₊, μ₋, λ_i` (separating) or `ν, λ_i`.
fn k_system(data: &MonodromyData) -> Result<KSystem> {
    let (p, ls, gamma) = data.presentation()?;
    let n = 2 * data.g;
    let gens = p.generators.len();
    let nc = data.vanishing.len();
    let heads = p.relators.len();
    let unknowns = (heads + nc) * n;
    let rows = gens * n + nc;
    let mut matrix = BitMatrix::zeros(rows, unknowns);
    let crit_base = 2 * data.genus_y();
    for col in 0..unknowns {
        let (block, i) = (col / n, col % n);
        let e = unit(n, i);
        let chain = if block < heads {
            boundary2(&ls, &p.relators[block], &e)?
        } else {
            Chain1::single(gens, crit_base + block - heads, &e)
        };
        for (r, b) in chain.flatten().into_iter().enumerate() {
            matrix.set(r, col, b);
        }
        if block >= heads {
            let d = data.vanishing[block - heads];
            matrix.set(gens * n + block - heads, col, d.bit(dual_index(data.g, i)));
        }
    }
    let mut target = Chain1::single(gens, gamma, &class_to_vec(data.mu)).flatten();
    target.extend(vec![false; nc]);
    Ok(KSystem {
        matrix,
        target,
        unknowns,
    })
}

/// `e_i ∩ v = v_{dual(i)}` mod 2.
fn dual_index(g: usize, i: usize) -> usize {
    if i < g {
        i + g
    } else {
        i - g
    }
}

fn certificate(data: &MonodromyData, x: &[bool]) -> KVanishingCertificate {
    let n = 2 * data.g;
    let blocks: Vec<HomologyClass> = x.chunks(n).map(|c| vec_to_class(data.g, c)).collect();
    match data.separation {
        Some(_) => KVanishingCertificate::Separating {
            mu_plus: blocks[0],
            mu_minus: blocks[1],
            lambdas: blocks[2..].to_vec(),
        },
        None => KVanishingCertificate::NonSeparating {
            nu: blocks[0],
            lambdas: blocks[1..].to_vec(),
        },
    }
}

/// Decides whether `Γ ⊗ μ` is killed; returns a certificate when it is.
pub fn k_vanishing_solver(data: &MonodromyData) -> Result<Option<KVanishingCertificate>> {
    let sys = k_system(data)?;
    Ok(sys.matrix.solve(&sys.target).map(|x| certificate(data, &x)))
}

/// Replays a certificate through `∂₂` and checks the chain identity exactly.
pub fn verify_certificate(data: &MonodromyData, cert: &KVanishingCertificate) -> Result<bool> {
    let (p, ls, gamma) = data.presentation()?;
    let gens = p.generators.len();
    let crit_base = 2 * data.genus_y();
    let (heads, lambdas): (Vec<HomologyClass>, &Vec<HomologyClass>) = match cert {
        KVanishingCertificate::Separating {
            mu_plus,
            mu_minus,
            lambdas,
        } => {
            if data.separation.is_none() {
                return Ok(false);
            }
            (vec![*mu_plus, *mu_minus], lambdas)
        }
        KVanishingCertificate::NonSeparating { nu, lambdas } => {
            if data.separation.is_some() {
                return Ok(false);
            }
            (vec![*nu], lambdas)
        }
    };
    if lambdas.len() != data.vanishing.len() {
        return Ok(false);
    }
    let mut rhs = Chain1::zero(gens, ls.dim);
    for (r, m) in p.relators.iter().zip(&heads) {
        rhs.add(&boundary2(&ls, r, &class_to_vec(*m))?);
    }
    for (j, (l, d)) in lambdas.iter().zip(&data.vanishing).enumerate() {
        if l.dot(*d) {
            return Ok(false);
        }
        rhs.add_at(crit_base + j, &class_to_vec(*l));
    }
    Ok(rhs == Chain1::single(gens, gamma, &class_to_vec(data.mu)))
}

/// Exhaustive search over all unknowns; refuses more than 20 unknown bits.
pub fn k_vanishing_brute_force(data: &MonodromyData) -> Result<bool> {
    let sys = k_system(data)?;
    if sys.unknowns > 20 {
        return Err(Error::CapExceeded { cap: 1 << 20 });
    }
    for code in 0u32..1 << sys.unknowns {
        let x: Vec<bool> = (0..sys.unknowns).map(|k| code >> k & 1 == 1).collect();
        if sys.matrix.mul_vec(&x) == sys.target {
            return Ok(true);
        }
    }
    Ok(false)
}
