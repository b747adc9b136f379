//! The tensor algebra of `H_1(Σ_g; Z/2)` with the shuffle product, and the
//! maps `℘^d` sending a class `v` to `v^{⊗d}`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mcg::HgProjection;
use crate::z2::{BitMatrix, HomologyClass};

pub const MAX_DEGREE: usize = 8;
pub const MAX_TENSOR_GENUS: usize = 6;

/// A dense `Z/2` tensor of degree `d` over the basis `α_1..α_g, β_1..β_g`.
///
/// Coordinate tuples are stored big-endian in base `2g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Z2Tensor {
    g: usize,
    degree: usize,
    bits: Vec<u64>,
}

fn check_caps(g: usize, d: usize) -> Result<()> {
    if g == 0 || g > MAX_TENSOR_GENUS {
        return Err(Error::GenusRange(g));
    }
    if d > MAX_DEGREE {
        return Err(Error::DegreeCap(d));
    }
    Ok(())
}

impl Z2Tensor {
    pub fn zero(g: usize, degree: usize) -> Result<Self> {
        check_caps(g, degree)?;
        let size = (2 * g).pow(degree as u32);
        Ok(Z2Tensor {
            g,
            degree,
            bits: vec![0; size.div_ceil(64)],
        })
    }

    pub fn scalar(g: usize, c: bool) -> Result<Self> {
        let mut t = Self::zero(g, 0)?;
        t.bits[0] = u64::from(c);
        Ok(t)
    }

    /// The degree-one tensor of a class.
    pub fn vector(v: HomologyClass) -> Result<Self> {
        let mut t = Self::zero(v.g, 1)?;
        for k in 0..2 * v.g {
            if v.bit(k) {
                t.flip(&[k]);
            }
        }
        Ok(t)
    }

    /// `v^{⊗d}`, expanded over the basis.
    pub fn power(v: HomologyClass, d: usize) -> Result<Self> {
        let mut t = Self::zero(v.g, d)?;
        let idx: Vec<usize> = (0..2 * v.g).filter(|&k| v.bit(k)).collect();
        if d == 0 {
            t.bits[0] = 1;
            return Ok(t);
        }
        if idx.is_empty() {
            return Ok(t);
        }
        let mut tuple = vec![0usize; d];
        loop {
            let coords: Vec<usize> = tuple.iter().map(|&k| idx[k]).collect();
            t.flip(&coords);
            // odometer over idx^d
            let mut pos = d;
            loop {
                if pos == 0 {
                    return Ok(t);
                }
                pos -= 1;
                tuple[pos] += 1;
                if tuple[pos] < idx.len() {
                    break;
                }
                tuple[pos] = 0;
            }
        }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn base(&self) -> usize {
        2 * self.g
    }

    fn index(&self, coords: &[usize]) -> usize {
        coords.iter().fold(0, |acc, &c| acc * self.base() + c)
    }

    fn coords(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.degree];
        for slot in out.iter_mut().rev() {
            *slot = index % self.base();
            index /= self.base();
        }
        out
    }

    pub fn get(&self, coords: &[usize]) -> bool {
        let i = self.index(coords);
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn flip(&mut self, coords: &[usize]) {
        let i = self.index(coords);
        self.bits[i / 64] ^= 1 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn nnz(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn set_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64)
                .filter(move |b| w >> b & 1 == 1)
                .map(move |b| wi * 64 + b)
        })
    }

    /// Coordinate tuples with coefficient 1, in lexicographic order.
    pub fn support(&self) -> Vec<Vec<usize>> {
        self.set_indices().map(|i| self.coords(i)).collect()
    }

    pub fn add(&self, other: &Z2Tensor) -> Result<Z2Tensor> {
        if self.g != other.g {
            return Err(Error::GenusMismatch(self.g, other.g));
        }
        if self.degree != other.degree {
            return Err(Error::Internal(
                "adding tensors of different degrees".into(),
            ));
        }
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(Z2Tensor {
            g: self.g,
            degree: self.degree,
            bits,
        })
    }

    pub fn tensor(&self, other: &Z2Tensor) -> Result<Z2Tensor> {
        if self.g != other.g {
            return Err(Error::GenusMismatch(self.g, other.g));
        }
        let mut out = Z2Tensor::zero(self.g, self.degree + other.degree)?;
        let right: Vec<Vec<usize>> = other.support();
        for a in self.support() {
            for b in &right {
                let mut c = a.clone();
                c.extend(b);
                out.flip(&c);
            }
        }
        Ok(out)
    }

    /// Matrix of a degree-two tensor: entry `(i, j)` is the coefficient of `e_i ⊗ e_j`.
    pub fn to_matrix(&self) -> Result<BitMatrix> {
        if self.degree != 2 {
            return Err(Error::Internal("matrix form needs degree two".into()));
        }
        let n = self.base();
        let mut m = BitMatrix::zeros(n, n);
        for c in self.support() {
            m.set(c[0], c[1], true);
        }
        Ok(m)
    }
}

/// Bit masks of the `k`-element subsets of `n` positions.
fn subsets(n: usize, k: usize) -> Vec<u32> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .collect()
}

/// Sum over all order-preserving interleavings of `a ⊗ b`, mod 2.
pub fn shuffle(a: &Z2Tensor, b: &Z2Tensor) -> Result<Z2Tensor> {
    if a.g != b.g {
        return Err(Error::GenusMismatch(a.g, b.g));
    }
    let (k, l) = (a.degree, b.degree);
    let mut out = Z2Tensor::zero(a.g, k + l)?;
    let masks = subsets(k + l, k);
    let right = b.support();
    let mut c = vec![0usize; k + l];
    for x in a.support() {
        for y in &right {
            for &m in &masks {
                let (mut i, mut j) = (0, 0);
                for (pos, slot) in c.iter_mut().enumerate() {
                    if m >> pos & 1 == 1 {
                        *slot = x[i];
                        i += 1;
                    } else {
                        *slot = y[j];
                        j += 1;
                    }
                }
                out.flip(&c);
            }
        }
    }
    Ok(out)
}

/// Shuffle product of a sequence of tensors, left to right.
pub fn shuffle_all(g: usize, factors: &[Z2Tensor]) -> Result<Z2Tensor> {
    let mut acc = Z2Tensor::scalar(g, true)?;
    for f in factors {
        acc = shuffle(&acc, f)?;
    }
    Ok(acc)
}

/// A `Z/2`-valued function on the nonzero classes of `H_g`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Z2HgVector {
    pub g: usize,
    pub support: BTreeSet<HomologyClass>,
}

impl Z2HgVector {
    pub fn zero(g: usize) -> Self {
        Z2HgVector {
            g,
            support: BTreeSet::new(),
        }
    }

    /// Indicator of a set, counting repeated classes mod 2.
    pub fn indicator(g: usize, classes: impl IntoIterator<Item = HomologyClass>) -> Self {
        let mut v = Self::zero(g);
        for c in classes {
            v.toggle(c);
        }
        v
    }

    pub fn toggle(&mut self, c: HomologyClass) {
        if !self.support.remove(&c) {
            self.support.insert(c);
        }
    }

    /// Reduction mod 2 of an integral projection.
    pub fn from_projection(p: &HgProjection) -> Self {
        Z2HgVector {
            g: p.g,
            support: p.mod2_support().into_iter().collect(),
        }
    }
}

/// `℘^d`: the sum of `v^{⊗d}` over the support.
pub fn wp(d: usize, x: &Z2HgVector) -> Result<Z2Tensor> {
    if d == 0 {
        return Err(Error::DegreeCap(0));
    }
    let mut out = Z2Tensor::zero(x.g, d)?;
    for &v in &x.support {
        out = out.add(&Z2Tensor::power(v, d)?)?;
    }
    Ok(out)
}

/// The form matrix `J = Σ α_i • β_i`.
pub fn symplectic_j(g: usize) -> BitMatrix {
    let mut j = BitMatrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        j.set(i, g + i, true);
        j.set(g + i, i, true);
    }
    j
}

/// `J · ℘²(x)` as a `2g × 2g` matrix.
pub fn sp2_matrix(x: &Z2HgVector) -> Result<BitMatrix> {
    symplectic_j(x.g).mul(&wp(2, x)?.to_matrix()?)
}
