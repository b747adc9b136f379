//! Homology classes of a closed surface mod 2 and dense `GF(2)` matrices.

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_GENUS: usize = 16;

/// A class in `H_1(Σ_g; Z/2)`; bit `i` is `α_{i+1}`, bit `g+i` is `β_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HomologyClass {
    pub g: usize,
    pub bits: u32,
}

impl HomologyClass {
    pub fn zero(g: usize) -> Self {
        HomologyClass { g, bits: 0 }
    }

    pub fn from_bits(g: usize, bits: u32) -> Self {
        debug_assert!(g <= MAX_GENUS && (2 * g == 32 || bits >> (2 * g) == 0));
        HomologyClass { g, bits }
    }

    /// `α_i`, 1-based.
    pub fn alpha(g: usize, i: usize) -> Self {
        assert!((1..=g).contains(&i));
        HomologyClass {
            g,
            bits: 1 << (i - 1),
        }
    }

    /// `β_i`, 1-based.
    pub fn beta(g: usize, i: usize) -> Self {
        assert!((1..=g).contains(&i));
        HomologyClass {
            g,
            bits: 1 << (g + i - 1),
        }
    }

    pub fn basis(g: usize, k: usize) -> Self {
        HomologyClass { g, bits: 1 << k }
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn bit(self, k: usize) -> bool {
        self.bits >> k & 1 == 1
    }

    pub fn dim(self) -> usize {
        2 * self.g
    }

    /// Intersection pairing mod 2.
    pub fn dot(self, other: HomologyClass) -> bool {
        let g = self.g;
        let low = (1u32 << g) - 1;
        let a = self.bits & low & (other.bits >> g);
        let b = (self.bits >> g) & low & other.bits;
        (a ^ b).count_ones() % 2 == 1
    }

    /// All nonzero classes in increasing bit order.
    pub fn all_nonzero(g: usize) -> impl Iterator<Item = HomologyClass> {
        (1u32..(1u32 << (2 * g))).map(move |bits| HomologyClass { g, bits })
    }

    /// Accepts `a:10 b:01` or a single `2g`-bit string in basis order.
    pub fn parse(g: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = |m: &str| Error::Parse {
            index: 0,
            msg: format!("{m}: `{text}`"),
        };
        let bits_of = |s: &str| -> Result<Vec<bool>> {
            s.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(bad("expected 0/1")),
                })
                .collect()
        };
        let mut v = HomologyClass::zero(g);
        if text.contains(':') {
            for (index, part) in text.split_whitespace().enumerate() {
                let (tag, digits) = part.split_once(':').ok_or(bad("missing `:`"))?;
                let ds = bits_of(digits)?;
                if ds.len() != g {
                    return Err(Error::Parse {
                        index,
                        msg: format!("expected {g} digits"),
                    });
                }
                let offset = match tag {
                    "a" => 0,
                    "b" => g,
                    _ => {
                        return Err(Error::Parse {
                            index,
                            msg: format!("bad tag `{tag}`"),
                        })
                    }
                };
                for (i, d) in ds.into_iter().enumerate() {
                    if d {
                        v.bits |= 1 << (offset + i);
                    }
                }
            }
        } else {
            let ds = bits_of(&text.replace(' ', ""))?;
            if ds.len() != 2 * g {
                return Err(bad("wrong length"));
            }
            for (i, d) in ds.into_iter().enumerate() {
                if d {
                    v.bits |= 1 << i;
                }
            }
        }
        Ok(v)
    }
}

impl Add for HomologyClass {
    type Output = HomologyClass;
    // addition in Z/2 coordinates is XOR
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: HomologyClass) -> HomologyClass {
        HomologyClass {
            g: self.g,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl AddAssign for HomologyClass {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: HomologyClass) {
        self.bits ^= rhs.bits;
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a:")?;
        for i in 0..self.g {
            write!(f, "{}", u8::from(self.bit(i)))?;
        }
        write!(f, " b:")?;
        for i in 0..self.g {
            write!(f, "{}", u8::from(self.bit(self.g + i)))?;
        }
        Ok(())
    }
}

/// Rank of a set of vectors packed in `u32`s.
pub fn rank_u32(vectors: impl IntoIterator<Item = u32>) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for mut v in vectors {
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

pub fn span_rank(classes: &[HomologyClass]) -> usize {
    rank_u32(classes.iter().map(|c| c.bits))
}

/// Every element of the span of `classes`, including zero.
pub fn span(classes: &[HomologyClass], g: usize) -> Vec<HomologyClass> {
    let mut out = vec![HomologyClass::zero(g)];
    for &c in classes {
        if !out.contains(&c) {
            let shifted: Vec<_> = out.iter().map(|&x| x + c).collect();
            out.extend(shifted);
        }
    }
    out.sort();
    out
}

/// Dense matrix over `GF(2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        BitMatrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x & 1 == 1);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] ^= 1 << (j % 64);
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        for k in 0..self.words {
            let v = self.data[src * self.words + k];
            self.data[dst * self.words + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for k in 0..self.words {
                self.data.swap(a * self.words + k, b * self.words + k);
            }
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::Internal(format!(
                "shape mismatch {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    for w in 0..out.words {
                        out.data[i * out.words + w] ^= other.data[k * other.words + w];
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[bool]) -> Vec<bool> {
        (0..self.rows)
            .map(|i| (0..self.cols).filter(|&j| self.get(i, j) && v[j]).count() % 2 == 1)
            .collect()
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Row echelon form in place; returns pivot columns.
    fn eliminate(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(p, r);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row_into(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<bool>> {
        let mut m = self.clone();
        let pivots = m.eliminate();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![false; self.cols];
                x[f] = true;
                for (r, &p) in pivots.iter().enumerate() {
                    if m.get(r, f) {
                        x[p] = true;
                    }
                }
                x
            })
            .collect()
    }

    /// Some solution of `A x = b` with free variables zero, if any.
    pub fn solve(&self, b: &[bool]) -> Option<Vec<bool>> {
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    aug.set(i, j, true);
                }
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.eliminate();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![false; self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, true);
        }
        let pivots = aug.eliminate();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn row_bits(&self, i: usize) -> Vec<bool> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| u8::from(self.get(i, j))).collect())
            .collect()
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row_words(i).iter().all(|&w| w == 0)
    }
}
