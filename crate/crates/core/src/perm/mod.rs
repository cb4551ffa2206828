//! Permutations of `[0, degree)` and permutation groups backed by stabilizer chains.
//!
//! Composition is left to right: `(i)^(fg) = ((i)^f)^g`, written `f * g` or
//! [`Perm::then`].
//!
//! At finite degree every permutation group is closed in the pointwise
//! convergence topology, so a "closed supergroup" of some group is simply the
//! subgroup generated by a finite set of permutations.

mod chain;
mod group;
pub mod io;

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

pub use chain::StabChain;
pub use group::{gl_group, gl_order, matrix_perm, sym_fixing_zero, sym_group, Fingerprint, Partition, PermGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("images do not form a bijection of [0, {0})")]
    NotBijection(usize),
    #[error("empty generator list")]
    NoGenerators,
    #[error("point {point} outside degree {degree}")]
    PointOutOfRange { point: u32, degree: usize },
    #[error("blocks do not partition [0, {0})")]
    InvalidPartition(usize),
    #[error("generator does not map blocks to blocks")]
    NotBlockPreserving,
    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),
    #[error(transparent)]
    Field(#[from] crate::field::FieldError),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &i in &images {
            match seen.get_mut(i as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(PermError::NotBijection(d)),
            }
        }
        Ok(Perm { images })
    }

    /// Images of a validated bijection; skips the check.
    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]` sends 0→1→2→0.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(PermError::PointOutOfRange { point: a.max(b), degree });
                }
                images[a as usize] = b;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, i: u32) -> u32 {
        self.images[i as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn fixes(&self, i: u32) -> bool {
        self.image(i) == i
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn compose(&self, other: &Perm) -> Result<Perm, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    /// `self^-1 · x · self`, i.e. conjugation of `x` by `self` in left-to-right notation.
    pub fn conjugate(&self, x: &Perm) -> Perm {
        self.inverse().then(x).then(self)
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// First point not fixed, scanning `order`.
    pub fn first_moved_in(&self, order: impl IntoIterator<Item = u32>) -> Option<u32> {
        order.into_iter().find(|&i| !self.fixes(i))
    }

    /// Restriction to the first `degree` points; they must be invariant.
    pub fn restrict(&self, degree: usize) -> Perm {
        debug_assert!(self.images[..degree].iter().all(|&x| (x as usize) < degree));
        Perm { images: self.images[..degree].to_vec() }
    }

    /// Lexicographic rank among all permutations of the same degree.
    pub fn rank(&self) -> u64 {
        let d = self.degree();
        let mut used = vec![false; d];
        let mut rank = 0u64;
        for (i, &x) in self.images.iter().enumerate() {
            let smaller = (0..x).filter(|&y| !used[y as usize]).count() as u64;
            rank = rank * (d - i) as u64 + smaller;
            used[x as usize] = true;
        }
        rank
    }

    /// Inverse of [`Perm::rank`].
    pub fn unrank(degree: usize, mut rank: u64) -> Perm {
        let mut digits = vec![0u64; degree];
        for i in (0..degree).rev() {
            let base = (degree - i) as u64;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut pool: Vec<u32> = (0..degree as u32).collect();
        let images = digits.into_iter().map(|dgt| pool.remove(dgt as usize)).collect();
        Perm { images }
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() as u32 {
            if seen[start as usize] || self.fixes(start) {
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }
}

impl Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.then(rhs)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(u32::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn left_to_right_composition() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2, 2 -a-> 2 -b-> 1, 1 -a-> 0 -b-> 0
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab, Perm::from_cycles(3, &[&[0, 2, 1]]).unwrap());
        // the right-to-left product would have been (0 1 2)
        let ba = b.compose(&a).unwrap();
        assert_eq!(ba, Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap());
    }

    #[test]
    fn inverse_and_identity() {
        let g = Perm::from_cycles(5, &[&[0, 3, 1], &[2, 4]]).unwrap();
        assert!(g.then(&g.inverse()).is_identity());
        assert_eq!(Perm::identity(5).then(&g), g);
        assert_eq!(g.pow(6), Perm::identity(5));
    }

    #[test]
    fn degree_mismatch() {
        let a = Perm::identity(3);
        let b = Perm::identity(4);
        assert_eq!(a.compose(&b), Err(PermError::DegreeMismatch(3, 4)));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn rank_roundtrip() {
        for r in 0..120 {
            assert_eq!(Perm::unrank(5, r).rank(), r);
        }
        assert!(Perm::unrank(4, 0).is_identity());
    }
}
