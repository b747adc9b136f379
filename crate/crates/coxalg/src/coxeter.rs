//! Simply-laced Coxeter systems in the integral geometric representation.
//!
//! Every Weyl element is stored as an integer matrix on root-lattice
//! coordinates together with its inverse, so left descents are read off a
//! column without any inversion.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_ROOT_CAP: usize = 100_000;

/// Order of a product `st`; `Infinite` is written as 0 in JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    One,
    Two,
    Three,
    Infinite,
}

impl Order {
    pub fn from_u32(m: u32) -> Option<Order> {
        match m {
            0 => Some(Order::Infinite),
            1 => Some(Order::One),
            2 => Some(Order::Two),
            3 => Some(Order::Three),
            _ => None,
        }
    }

    pub fn as_u32(self) -> u32 {
        match self {
            Order::One => 1,
            Order::Two => 2,
            Order::Three => 3,
            Order::Infinite => 0,
        }
    }

    /// Twice the bilinear form between the two simple roots.
    pub fn gram(self) -> i64 {
        match self {
            Order::One => 2,
            Order::Two => 0,
            Order::Three => -1,
            Order::Infinite => -2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterSystem {
    names: Vec<String>,
    orders: Vec<Vec<Order>>,
    preset: Option<String>,
}

#[derive(Deserialize, Serialize)]
struct SystemJson {
    generators: Vec<String>,
    orders: Vec<Vec<u32>>,
}

impl CoxeterSystem {
    /// Builds a system from raw orders (0 meaning infinity).
    pub fn new(names: Vec<String>, orders: Vec<Vec<u32>>) -> Result<Self> {
        let n = names.len();
        if orders.len() != n || orders.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedMatrix(format!("expected a {n}x{n} table")));
        }
        let distinct: HashSet<&String> = names.iter().collect();
        if distinct.len() != n {
            return Err(Error::MalformedMatrix("duplicate generator names".into()));
        }
        let mut table = vec![vec![Order::One; n]; n];
        for s in 0..n {
            for t in 0..n {
                let m = orders[s][t];
                if m != orders[t][s] {
                    return Err(Error::MalformedMatrix(format!("asymmetric at ({s},{t})")));
                }
                if (s == t) != (m == 1) {
                    return Err(Error::MalformedMatrix(format!(
                        "bad order {m} at ({s},{t})"
                    )));
                }
                table[s][t] = Order::from_u32(m).ok_or(Error::UnsupportedOrder { s, t, m })?;
            }
        }
        Ok(CoxeterSystem {
            names,
            orders: table,
            preset: None,
        })
    }

    fn from_edges(names: Vec<String>, edges: &[(usize, usize)], tag: String) -> Self {
        let n = names.len();
        let mut orders = vec![vec![2u32; n]; n];
        for (i, row) in orders.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(a, b) in edges {
            orders[a][b] = 3;
            orders[b][a] = 3;
        }
        let mut sys = CoxeterSystem::new(names, orders).expect("preset tables are valid");
        sys.preset = Some(tag);
        sys
    }

    /// `A_n` with generators `s1..sn` in a path.
    pub fn a(n: usize) -> Self {
        let names = (1..=n).map(|i| format!("s{i}")).collect();
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(names, &edges, format!("A{n}"))
    }

    /// `D_n`: path `s1..s(n-1)` with `sn` attached to `s(n-2)`.
    pub fn d(n: usize) -> Self {
        assert!(n >= 4);
        let names = (1..=n).map(|i| format!("s{i}")).collect();
        let mut edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
        edges.push((n - 3, n - 1));
        Self::from_edges(names, &edges, format!("D{n}"))
    }

    /// `E6` or `E7` in Bourbaki numbering: `s1-s3-s4-s5-s6(-s7)`, `s2` on `s4`.
    pub fn e(n: usize) -> Self {
        assert!(n == 6 || n == 7);
        let names = (1..=n).map(|i| format!("s{i}")).collect();
        let mut edges = vec![(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)];
        if n == 7 {
            edges.push((5, 6));
        }
        Self::from_edges(names, &edges, format!("E{n}"))
    }

    /// The surface system: path `s1..s(2g)` plus `s0` attached to `s4`.
    /// Genus one degenerates to `A2` on `s1, s2`.
    pub fn surface(g: usize) -> Self {
        assert!(g >= 1);
        if g == 1 {
            let mut sys = Self::a(2);
            sys.preset = Some("Sg:1".into());
            return sys;
        }
        let names = (0..=2 * g).map(|i| format!("s{i}")).collect();
        let mut edges: Vec<_> = (1..2 * g).map(|i| (i, i + 1)).collect();
        edges.push((0, 4));
        Self::from_edges(names, &edges, format!("Sg:{g}"))
    }

    /// Parses a preset name or an explicit JSON object.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('{') {
            let raw: SystemJson =
                serde_json::from_str(text).map_err(|e| Error::MalformedMatrix(e.to_string()))?;
            return Self::new(raw.generators, raw.orders);
        }
        let bad = || Error::UnknownPreset(text.to_string());
        if let Some(g) = text.strip_prefix("Sg:") {
            let g: usize = g.parse().map_err(|_| bad())?;
            return if (1..=6).contains(&g) {
                Ok(Self::surface(g))
            } else {
                Err(bad())
            };
        }
        let (kind, rank) = text.split_at(1);
        let n: usize = rank.parse().map_err(|_| bad())?;
        match (kind, n) {
            ("A", 1..=9) => Ok(Self::a(n)),
            ("D", 4..=6) => Ok(Self::d(n)),
            ("E", 6 | 7) => Ok(Self::e(n)),
            ("S", 1..=6) => Ok(Self::surface(n)),
            _ => Err(bad()),
        }
    }

    pub fn to_json(&self) -> String {
        let orders = self
            .orders
            .iter()
            .map(|r| r.iter().map(|m| m.as_u32()).collect())
            .collect();
        serde_json::to_string(&SystemJson {
            generators: self.names.clone(),
            orders,
        })
        .expect("plain data serializes")
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn preset(&self) -> Option<&str> {
        self.preset.as_deref()
    }

    pub fn order(&self, s: usize, t: usize) -> Order {
        self.orders[s][t]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn indices_of(&self, names: &[&str]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.index_of(n)).collect()
    }

    /// Twice the invariant form on two lattice vectors.
    pub fn form(&self, u: &[i64], v: &[i64]) -> i64 {
        let n = self.rank();
        let mut acc = 0i64;
        for s in 0..n {
            if u[s] == 0 {
                continue;
            }
            for t in 0..n {
                acc += u[s] * self.orders[s][t].gram() * v[t];
            }
        }
        acc
    }

    /// The induced system on a subset of generators, in the given order.
    pub fn subsystem(&self, gens: &[usize]) -> CoxeterSystem {
        let names = gens.iter().map(|&s| self.names[s].clone()).collect();
        let orders = gens
            .iter()
            .map(|&s| gens.iter().map(|&t| self.orders[s][t]).collect())
            .collect();
        CoxeterSystem {
            names,
            orders,
            preset: None,
        }
    }

    pub fn identity(&self) -> WeylElement {
        let m = IMat::identity(self.rank());
        WeylElement {
            mat: m.clone(),
            inv: m,
        }
    }

    pub fn simple_reflection(&self, s: usize) -> WeylElement {
        let n = self.rank();
        let mut m = IMat::identity(n);
        for t in 0..n {
            let c = self.orders[s][t].gram();
            let e = m.get(s, t) - c;
            m.set(s, t, e);
        }
        WeylElement {
            mat: m.clone(),
            inv: m,
        }
    }

    /// Evaluates a word of generator indices.
    pub fn evaluate(&self, word: &[usize]) -> Result<WeylElement> {
        let mut w = self.identity();
        for &s in word {
            w = w.mul(&self.simple_reflection(s))?;
        }
        Ok(w)
    }

    /// Reflection along an arbitrary (real) root.
    pub fn reflection(&self, root: &[i64]) -> Result<WeylElement> {
        let n = self.rank();
        let mut m = IMat::identity(n);
        for j in 0..n {
            let mut e = vec![0i64; n];
            e[j] = 1;
            let c = self.form(root, &e);
            for i in 0..n {
                let d = root[i].checked_mul(c).ok_or(Error::Overflow)?;
                let v = m.get(i, j).checked_sub(d).ok_or(Error::Overflow)?;
                m.set(i, j, v);
            }
        }
        Ok(WeylElement {
            mat: m.clone(),
            inv: m,
        })
    }

    pub fn length(&self, w: &WeylElement) -> Result<usize> {
        Ok(self.reduced_word(w)?.len())
    }

    /// Strips lowest-index left descents until the identity remains.
    pub fn reduced_word(&self, w: &WeylElement) -> Result<Vec<usize>> {
        let n = self.rank();
        let mut inv = w.inv.clone();
        let mut word = Vec::new();
        loop {
            let descent = (0..n).find(|&s| (0..n).any(|i| inv.get(i, s) < 0));
            let Some(s) = descent else { break };
            word.push(s);
            // w <- s w, hence w^-1 <- w^-1 s: column operation.
            let col: Vec<i64> = (0..n).map(|i| inv.get(i, s)).collect();
            for t in 0..n {
                let c = self.orders[s][t].gram();
                if c == 0 {
                    continue;
                }
                for (i, &x) in col.iter().enumerate() {
                    let d = c.checked_mul(x).ok_or(Error::Overflow)?;
                    let v = inv.get(i, t).checked_sub(d).ok_or(Error::Overflow)?;
                    inv.set(i, t, v);
                }
            }
        }
        Ok(word)
    }

    /// Lowest `j` (1-based) with `s_q..s_{j+1}(α_{s_j}) = ±t`; works for any expression.
    pub fn exchange_index(&self, word: &[usize], t: &Root) -> Result<Option<usize>> {
        let mut suffix = self.identity();
        let mut best = None;
        for j in (0..word.len()).rev() {
            let r = suffix.apply(&unit(self.rank(), word[j]))?;
            if Root::normalize(r)? == *t {
                best = Some(j + 1);
            }
            suffix = suffix.mul(&self.simple_reflection(word[j]))?;
        }
        Ok(best)
    }

    /// Strong exchange on a reduced word.
    pub fn strong_exchange(&self, word: &[usize], t: &Root) -> Result<usize> {
        let w = self.evaluate(word)?;
        if is_positive(&w.apply(&t.coords)?) {
            return Err(Error::NotShortening);
        }
        self.exchange_index(word, t)?
            .ok_or_else(|| Error::Internal("no exchange letter for a shortening reflection".into()))
    }

    pub fn positive_roots(&self) -> Result<Vec<Root>> {
        self.positive_roots_capped(DEFAULT_ROOT_CAP)
    }

    pub fn positive_roots_capped(&self, cap: usize) -> Result<Vec<Root>> {
        let n = self.rank();
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            let e = unit(n, s);
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(r) = queue.pop_front() {
            for s in 0..n {
                let c = self.form(&unit(n, s), &r);
                if c == 0 {
                    continue;
                }
                let mut next = r.clone();
                next[s] = next[s].checked_sub(c).ok_or(Error::Overflow)?;
                if is_positive(&next) && !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let mut roots: Vec<Root> = seen.into_iter().map(|coords| Root { coords }).collect();
        roots.sort_by(|a, b| a.height().cmp(&b.height()).then(a.cmp(b)));
        Ok(roots)
    }

    /// Longest element and its reduced word; errors on infinite type.
    pub fn longest_element(&self) -> Result<(WeylElement, Vec<usize>)> {
        let count = self.positive_roots()?.len();
        let n = self.rank();
        let mut w = self.identity();
        let mut word = Vec::with_capacity(count);
        'grow: loop {
            for s in 0..n {
                if is_positive(&w.column(s)) {
                    w = w.mul(&self.simple_reflection(s))?;
                    word.push(s);
                    continue 'grow;
                }
            }
            break;
        }
        Ok((w, word))
    }

    pub fn quasireflection_root(&self, w: &WeylElement, s: usize) -> Result<Root> {
        Root::normalize(w.column(s))
    }
}

pub(crate) fn unit(n: usize, s: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[s] = 1;
    v
}

pub(crate) fn is_positive(v: &[i64]) -> bool {
    v.iter().all(|&x| x >= 0) && v.iter().any(|&x| x > 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IMat {
    n: usize,
    data: Vec<i64>,
}

impl IMat {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IMat { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &IMat) -> Result<IMat> {
        let n = self.n;
        let mut data = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b == 0 {
                        continue;
                    }
                    let p = a.checked_mul(b).ok_or(Error::Overflow)?;
                    let cell = &mut data[i * n + j];
                    *cell = cell.checked_add(p).ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(IMat { n, data })
    }

    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        let n = self.n;
        let mut out = vec![0i64; n];
        for i in 0..n {
            for j in 0..n {
                let p = self.get(i, j).checked_mul(v[j]).ok_or(Error::Overflow)?;
                out[i] = out[i].checked_add(p).ok_or(Error::Overflow)?;
            }
        }
        Ok(out)
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }
}

/// An element of the Weyl group; column `j` of `matrix()` is the image of `α_j`.
#[derive(Debug, Clone)]
pub struct WeylElement {
    mat: IMat,
    inv: IMat,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}

impl WeylElement {
    pub fn matrix(&self) -> &IMat {
        &self.mat
    }

    pub fn mul(&self, other: &WeylElement) -> Result<WeylElement> {
        Ok(WeylElement {
            mat: self.mat.mul(&other.mat)?,
            inv: other.inv.mul(&self.inv)?,
        })
    }

    pub fn inverse(&self) -> WeylElement {
        WeylElement {
            mat: self.inv.clone(),
            inv: self.mat.clone(),
        }
    }

    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        self.mat.apply(v)
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.mat.n).map(|i| self.mat.get(i, j)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.mat == IMat::identity(self.mat.n)
    }
}

/// A positive root, naming a reflection.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub coords: Vec<i64>,
}

impl Root {
    pub fn simple(n: usize, s: usize) -> Root {
        Root { coords: unit(n, s) }
    }

    /// Flips a nonzero root vector into positive form.
    pub fn normalize(v: Vec<i64>) -> Result<Root> {
        if is_positive(&v) {
            Ok(Root { coords: v })
        } else if v.iter().all(|&x| x <= 0) && v.iter().any(|&x| x < 0) {
            Ok(Root {
                coords: v.into_iter().map(|x| -x).collect(),
            })
        } else {
            Err(Error::Internal(format!("{v:?} is not a root vector")))
        }
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_simple(&self) -> Option<usize> {
        if self.height() == 1 {
            self.coords.iter().position(|&c| c == 1)
        } else {
            None
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Renders a word of generator indices with the system's names.
pub fn word_names(sys: &CoxeterSystem, word: &[usize]) -> Vec<String> {
    word.iter().map(|&s| sys.name(s).to_string()).collect()
}
