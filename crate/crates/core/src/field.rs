//! Arithmetic in the prime field F_p and the vector space F_p^n.
//!
//! Vectors are identified with their little-endian base-p index
//! `coords[0] + coords[1]·p + … + coords[n-1]·p^(n-1)`, so the zero vector is
//! point `0`. Every permutation in this crate acts on these indices.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest prime accepted unless a caller raises the bound explicitly.
pub const DEFAULT_MAX_PRIME: u32 = 31;

/// Default bound on `p^n` for constructions over a single space.
pub const DEFAULT_MAX_POINTS: u32 = 243;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("p = {0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("p = {p} exceeds the configured bound {max}")]
    PrimeTooLarge { p: u32, max: u32 },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("p^n = {p}^{n} exceeds the configured bound of {max} points")]
    TooManyPoints { p: u32, n: u32, max: u32 },
    #[error("coordinate {value} out of range for p = {p}")]
    CoordinateOutOfRange { value: u32, p: u32 },
    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("index {index} out of range [0, {size})")]
    IndexOutOfRange { index: u32, size: u32 },
    #[error("closure of the empty set is undefined here")]
    EmptySet,
}

/// An odd prime, checked by trial division.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self, FieldError> {
        Self::with_bound(p, DEFAULT_MAX_PRIME)
    }

    pub fn with_bound(p: u32, max: u32) -> Result<Self, FieldError> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(FieldError::NotOddPrime(p));
        }
        if p > max {
            return Err(FieldError::PrimeTooLarge { p, max });
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative inverse in F_p (p prime, `a != 0`).
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let m = p as u64;
    let mut acc: u64 = 1 % m;
    let mut b = base as u64 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u32
}

/// A vector of F_p^n together with its canonical index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    pub coords: Vec<u32>,
    pub index: u32,
}

#[derive(Debug)]
struct Tables {
    add: Vec<u32>,
    scale: Vec<u32>,
}

/// The space V = F_p^n with precomputed addition and scaling tables.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct Space {
    p: u32,
    n: u32,
    size: u32,
    tables: Arc<Tables>,
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.p, self.n)
    }
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n
    }
}

impl Eq for Space {}

impl Space {
    pub fn new(p: u32, n: u32) -> Result<Self, FieldError> {
        Self::with_limits(p, n, DEFAULT_MAX_PRIME, DEFAULT_MAX_POINTS)
    }

    pub fn with_limits(p: u32, n: u32, max_prime: u32, max_points: u32) -> Result<Self, FieldError> {
        let prime = Prime::with_bound(p, max_prime)?;
        if n == 0 {
            return Err(FieldError::ZeroDimension);
        }
        let size = (p as u64).checked_pow(n).filter(|&s| s <= max_points as u64);
        let Some(size) = size else {
            return Err(FieldError::TooManyPoints { p, n, max: max_points });
        };
        Ok(Self::build(prime, n, size as u32))
    }

    fn build(prime: Prime, n: u32, size: u32) -> Self {
        let p = prime.get();
        let q = size as usize;
        let decode = |mut i: u32| {
            let mut c = vec![0u32; n as usize];
            for x in c.iter_mut() {
                *x = i % p;
                i /= p;
            }
            c
        };
        let encode = |c: &[u32]| c.iter().rev().fold(0u32, |acc, &x| acc * p + x);
        let coords: Vec<Vec<u32>> = (0..size).map(decode).collect();
        let mut add = vec![0u32; q * q];
        for a in 0..q {
            for b in 0..q {
                let s: Vec<u32> = coords[a].iter().zip(&coords[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&s);
            }
        }
        let mut scale = vec![0u32; p as usize * q];
        for l in 0..p {
            for a in 0..q {
                let s: Vec<u32> = coords[a].iter().map(|x| x * l % p).collect();
                scale[l as usize * q + a] = encode(&s);
            }
        }
        Space { p, n, size, tables: Arc::new(Tables { add, scale }) }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of points, `p^n`.
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn encode(&self, coords: &[u32]) -> Result<Vector, FieldError> {
        if coords.len() != self.n as usize {
            return Err(FieldError::WrongLength { expected: self.n as usize, got: coords.len() });
        }
        if let Some(&bad) = coords.iter().find(|&&c| c >= self.p) {
            return Err(FieldError::CoordinateOutOfRange { value: bad, p: self.p });
        }
        let index = coords.iter().rev().fold(0u32, |acc, &x| acc * self.p + x);
        Ok(Vector { coords: coords.to_vec(), index })
    }

    pub fn decode(&self, index: u32) -> Result<Vector, FieldError> {
        if index >= self.size {
            return Err(FieldError::IndexOutOfRange { index, size: self.size });
        }
        Ok(Vector { coords: self.coords(index), index })
    }

    /// Coordinates of an in-range index.
    pub fn coords(&self, mut index: u32) -> Vec<u32> {
        let mut c = vec![0u32; self.n as usize];
        for x in c.iter_mut() {
            *x = index % self.p;
            index /= self.p;
        }
        c
    }

    pub fn index_of(&self, coords: &[u32]) -> u32 {
        coords.iter().rev().fold(0u32, |acc, &x| acc * self.p + x % self.p)
    }

    /// The `i`-th standard basis vector.
    pub fn unit(&self, i: u32) -> u32 {
        self.p.pow(i)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.tables.add[(a * self.size + b) as usize]
    }

    #[inline]
    pub fn scale(&self, lambda: u32, a: u32) -> u32 {
        self.tables.scale[((lambda % self.p) * self.size + a) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.scale(self.p - 1, a)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn points(&self) -> impl Iterator<Item = u32> {
        0..self.size
    }

    /// Rank of a family of vectors.
    pub fn rank(&self, vectors: &[u32]) -> usize {
        let rows: Vec<Vec<u32>> = vectors.iter().map(|&v| self.coords(v)).collect();
        rref(rows, self.p).len()
    }

    pub fn span(&self, set: &[u32]) -> Subspace {
        let rows: Vec<Vec<u32>> = set.iter().map(|&v| self.coords(v)).collect();
        let basis = rref(rows, self.p);
        let mut members = vec![0u32];
        for row in &basis {
            let r = self.index_of(row);
            let mut next = Vec::with_capacity(members.len() * self.p as usize);
            for l in 0..self.p {
                let step = self.scale(l, r);
                next.extend(members.iter().map(|&m| self.add(m, step)));
            }
            members = next;
        }
        members.sort_unstable();
        let mut mask = vec![false; self.size as usize];
        for &m in &members {
            mask[m as usize] = true;
        }
        Subspace { basis, members, mask }
    }

    /// True iff no entry is zero and the entries span a space of dimension equal to their count.
    pub fn is_linearly_independent(&self, tuple: &[u32]) -> bool {
        !tuple.contains(&0) && self.rank(tuple) == tuple.len()
    }

    /// All affine combinations `Σ c_s s` with `Σ c_s = 1`.
    pub fn affine_closure(&self, set: &[u32]) -> Result<AffineSet, FieldError> {
        let (&base, rest) = set.split_first().ok_or(FieldError::EmptySet)?;
        let diffs: Vec<u32> = rest.iter().map(|&s| self.sub(s, base)).collect();
        let dir = self.span(&diffs);
        let members: BTreeSet<u32> = dir.members.iter().map(|&d| self.add(base, d)).collect();
        Ok(AffineSet::from_members(self.size, members))
    }

    /// Least superset of `set` closed under adding the affine line through any two of its points.
    pub fn line_closure(&self, set: &[u32]) -> Result<AffineSet, FieldError> {
        if set.is_empty() {
            return Err(FieldError::EmptySet);
        }
        let mut members: Vec<u32> = set.to_vec();
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![false; self.size as usize];
        for &m in &members {
            mask[m as usize] = true;
        }
        // pairs (i, j) with j < i are handled once i is reached
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for j in 0..i {
                let b = members[j];
                let dir = self.sub(b, a);
                for l in 2..self.p {
                    let x = self.add(a, self.scale(l, dir));
                    if !mask[x as usize] {
                        mask[x as usize] = true;
                        members.push(x);
                    }
                }
            }
            i += 1;
        }
        Ok(AffineSet::from_members(self.size, members.into_iter().collect()))
    }

    /// The affine line through two distinct points, as a sorted list.
    pub fn affine_line(&self, a: u32, b: u32) -> Vec<u32> {
        let dir = self.sub(b, a);
        let mut line: Vec<u32> = (0..self.p).map(|l| self.add(a, self.scale(l, dir))).collect();
        line.sort_unstable();
        line
    }

    /// Canonical projective representative: the nonzero multiple whose first
    /// nonzero coordinate is 1.
    pub fn normalize(&self, v: u32) -> u32 {
        let c = self.coords(v);
        match c.iter().find(|&&x| x != 0) {
            Some(&lead) => self.scale(inv_mod(lead, self.p), v),
            None => 0,
        }
    }
}

/// Row-reduced echelon form of `rows` over F_p, zero rows dropped.
pub fn rref(mut rows: Vec<Vec<u32>>, p: u32) -> Vec<Vec<u32>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// A linear subspace with its basis in reduced echelon form and all members materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub basis: Vec<Vec<u32>>,
    pub members: Vec<u32>,
    mask: Vec<bool>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.mask.get(v as usize).copied().unwrap_or(false)
    }
}

/// An explicit point set, typically an affine subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSet {
    pub members: Vec<u32>,
    mask: Vec<bool>,
}

impl AffineSet {
    fn from_members(size: u32, members: BTreeSet<u32>) -> Self {
        let mut mask = vec![false; size as usize];
        for &m in &members {
            mask[m as usize] = true;
        }
        AffineSet { members: members.into_iter().collect(), mask }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.mask.get(v as usize).copied().unwrap_or(false)
    }

    /// Whether the set is a coset `m + W` of a linear subspace `W`.
    pub fn is_affine_subspace(&self, space: &Space) -> bool {
        let Some(&m) = self.members.first() else {
            return false;
        };
        let mut diffs: Vec<u32> = self.members.iter().map(|&x| space.sub(x, m)).collect();
        diffs.sort_unstable();
        space.span(&diffs).members == diffs
    }
}

/// An n×n matrix over F_p acting on row vectors, `x ↦ x·M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub n: usize,
    pub p: u32,
    pub entries: Vec<u32>,
}

impl Matrix {
    pub fn identity(n: usize, p: u32) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Matrix { n, p, entries }
    }

    pub fn from_rows(rows: &[Vec<u32>], p: u32) -> Self {
        let n = rows.len();
        let entries = rows.iter().flat_map(|r| r.iter().map(move |&x| x % p)).collect();
        Matrix { n, p, entries }
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.n + c]
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.n..(r + 1) * self.n]
    }

    pub fn is_invertible(&self) -> bool {
        let rows: Vec<Vec<u32>> = (0..self.n).map(|r| self.row(r).to_vec()).collect();
        rref(rows, self.p).len() == self.n
    }

    /// Image of the row vector `x` under `x ↦ x·M`.
    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        (0..self.n).map(|c| (0..self.n).map(|r| x[r] * self.get(r, c)).sum::<u32>() % self.p).collect()
    }
}

/// Smallest generator of the cyclic group F_p^×.
pub fn primitive_root(p: u32) -> u32 {
    let order = p - 1;
    let mut factors = Vec::new();
    let mut m = order;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (1..p).find(|&g| factors.iter().all(|&q| pow_mod(g, order / q, p) != 1)).expect("F_p^× is cyclic")
}
