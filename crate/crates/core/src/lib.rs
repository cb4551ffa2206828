//! Closed permutation groups between GL(n, p) and Sym(F_p^n), computed at
//! desk scale.
//!
//! The crate builds the groups that arise as automorphism groups of reducts
//! of the vector space `F_p^n` (p an odd prime), classifies a given overgroup
//! of `GL(n, p)`, and enumerates all such overgroups for very small spaces.
//!
//! Points of `F_p^n` are little-endian base-p indices (see [`field`]), and
//! permutations compose left to right (see [`perm`]).

pub mod classify;
pub mod cli;
pub mod field;
pub mod gamma;
pub mod geometry;
pub mod interval;
pub mod perm;
pub mod verify;
