//! Multiplicative subgroups Γ ≤ F_p^×, the partition of V into Γ-classes,
//! Γ-labellings and the label permutations σ_f(g, v).
//!
//! Permutations of Γ are stored as [`Perm`]s on positions in
//! [`GammaSubgroup::elements`]; [`GammaSubgroup::values`] gives the one-line
//! form in field values.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::field::{inv_mod, primitive_root, Space};
use crate::perm::{Partition, Perm, PermError, PermGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GammaError {
    #[error("the group moves the zero vector")]
    MovesZero,
    #[error("scalar sets differ between sample vectors {v} and {w}")]
    IndependenceViolation { v: u32, w: u32 },
    #[error("the permutation does not map the class of vector {0} onto a class")]
    NotClassCompatible(u32),
    #[error("the zero vector has no label")]
    ZeroVector,
    #[error("{0} is not a subgroup of the multiplicative group")]
    NotASubgroup(String),
    #[error("representatives must pick exactly one member of every nonzero class")]
    BadRepresentatives,
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A subgroup of F_p^×.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaSubgroup {
    p: u32,
    elements: Vec<u32>,
}

impl GammaSubgroup {
    /// The subgroup with the given elements, which must be closed under multiplication.
    pub fn new(p: u32, elements: &[u32]) -> Result<Self, GammaError> {
        let set: BTreeSet<u32> = elements.iter().map(|&x| x % p).collect();
        let closed = set.contains(&1)
            && !set.contains(&0)
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&(a * b % p))));
        if !closed {
            return Err(GammaError::NotASubgroup(format!("{set:?}")));
        }
        Ok(GammaSubgroup { p, elements: set.into_iter().collect() })
    }

    /// The whole of F_p^×.
    pub fn full(p: u32) -> Self {
        GammaSubgroup { p, elements: (1..p).collect() }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.p as usize - 1
    }

    pub fn contains(&self, lambda: u32) -> bool {
        self.elements.binary_search(&lambda).is_ok()
    }

    /// Position of `lambda` in [`GammaSubgroup::elements`].
    pub fn position(&self, lambda: u32) -> Option<usize> {
        self.elements.binary_search(&lambda).ok()
    }

    /// One-line images of a permutation of Γ, in field values.
    pub fn values(&self, sigma: &Perm) -> Vec<u32> {
        (0..self.order() as u32).map(|i| self.elements[sigma.image(i) as usize]).collect()
    }

    /// The permutation of Γ given by its one-line images in field values.
    pub fn from_values(&self, images: &[u32]) -> Option<Perm> {
        if images.len() != self.order() {
            return None;
        }
        let pos: Option<Vec<u32>> = images.iter().map(|&x| self.position(x).map(|i| i as u32)).collect();
        Perm::from_images(pos?).ok()
    }

    /// Multiplication by `lambda` as a permutation of Γ.
    pub fn mult(&self, lambda: u32) -> Perm {
        let images = self.elements.iter().map(|&x| self.position(x * lambda % self.p).expect("closed") as u32);
        Perm::from_images_unchecked(images.collect())
    }
}

/// One subgroup of F_p^× per divisor of p−1, ordered by size.
pub fn gamma_subgroups(p: u32) -> Vec<GammaSubgroup> {
    let omega = primitive_root(p);
    (1..p)
        .filter(|d| (p - 1).is_multiple_of(*d))
        .map(|d| {
            let step = crate::field::pow_mod(omega, (p - 1) / d, p);
            let mut elements: Vec<u32> = (0..d).scan(1u32, |x, _| Some(std::mem::replace(x, *x * step % p))).collect();
            elements.sort_unstable();
            GammaSubgroup { p, elements }
        })
        .collect()
}

/// The Γ-classes of V: `{0}` first, then the nonzero classes `Γv` ordered by least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    classes: Vec<Vec<u32>>,
    class_of: Vec<u32>,
}

impl ClassPartition {
    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    /// Nonzero classes, as indices into [`ClassPartition::classes`].
    pub fn nonzero(&self) -> std::ops::Range<usize> {
        1..self.classes.len()
    }

    pub fn num_nonzero(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn class_of(&self, v: u32) -> usize {
        self.class_of[v as usize] as usize
    }

    pub fn to_partition(&self) -> Partition {
        Partition::new(self.class_of.len(), self.classes.clone()).expect("classes partition V")
    }

    /// Whether `g` maps every class onto a class.
    pub fn is_compatible(&self, g: &Perm) -> bool {
        self.classes.iter().all(|c| {
            let target = self.class_of(g.image(c[0]));
            c.iter().all(|&x| self.class_of(g.image(x)) == target)
        })
    }

    /// Whether `g` maps every class onto itself.
    pub fn is_fixed_by(&self, g: &Perm) -> bool {
        (0..self.class_of.len() as u32).all(|x| self.class_of(g.image(x)) == self.class_of(x))
    }
}

pub fn sim_classes(space: &Space, gamma: &GammaSubgroup) -> ClassPartition {
    let mut class_of = vec![u32::MAX; space.size() as usize];
    let mut classes = vec![vec![0u32]];
    class_of[0] = 0;
    for v in 1..space.size() {
        if class_of[v as usize] != u32::MAX {
            continue;
        }
        let mut class: Vec<u32> = gamma.elements().iter().map(|&l| space.scale(l, v)).collect();
        class.sort_unstable();
        for &x in &class {
            class_of[x as usize] = classes.len() as u32;
        }
        classes.push(class);
    }
    ClassPartition { classes, class_of }
}

/// Γ = {λ : v ∼_G λv}, where v ∼_G w iff every pair in the G-orbit of (v, w)
/// spans a single line. Computed at three sample vectors, which must agree.
pub fn compute_gamma(space: &Space, group: &PermGroup) -> Result<GammaSubgroup, GammaError> {
    if !group.fixes_point(0) {
        return Err(GammaError::MovesZero);
    }
    let p = space.p();
    let last = space.size() - 1;
    let mut samples = vec![space.unit(0), last, space.add(space.unit(0), space.unit(space.n() - 1))];
    samples.dedup();
    let scalars = |v: u32| -> Result<Vec<u32>, GammaError> {
        let mut out = Vec::new();
        for lambda in 1..p {
            let orbit = group.orbit_of_tuple(&[v, space.scale(lambda, v)])?;
            if orbit.iter().all(|t| space.normalize(t[0]) == space.normalize(t[1])) {
                out.push(lambda);
            }
        }
        Ok(out)
    };
    let first = scalars(samples[0])?;
    for &w in &samples[1..] {
        if scalars(w)? != first {
            return Err(GammaError::IndependenceViolation { v: samples[0], w });
        }
    }
    GammaSubgroup::new(p, &first)
}

/// A Γ-labelling `f` with `f(λv) = λ f(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labelling {
    label: Vec<u32>,
}

impl Labelling {
    pub fn get(&self, v: u32) -> Result<u32, GammaError> {
        match self.label[v as usize] {
            0 => Err(GammaError::ZeroVector),
            l => Ok(l),
        }
    }

    /// Whether `f(λv) = λ f(v)` for every λ ∈ Γ and nonzero v.
    pub fn is_valid(&self, space: &Space, gamma: &GammaSubgroup) -> bool {
        let p = space.p();
        (1..space.size()).all(|v| {
            gamma.contains(self.label[v as usize])
                && gamma
                    .elements()
                    .iter()
                    .all(|&l| self.label[space.scale(l, v) as usize] == l * self.label[v as usize] % p)
        })
    }

    /// `{vector index: label}` over the nonzero vectors.
    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> =
            self.label.iter().enumerate().skip(1).map(|(v, &l)| (v.to_string(), Value::from(l))).collect();
        Value::Object(map)
    }
}

/// The labelling giving label 1 to the least member of every class.
pub fn make_labelling(space: &Space, part: &ClassPartition, gamma: &GammaSubgroup) -> Labelling {
    let reps: Vec<u32> = part.nonzero().map(|c| part.classes()[c][0]).collect();
    labelling_from_reps(space, part, gamma, &reps).expect("least members are representatives")
}

/// The labelling giving label 1 to each of `reps`, one per nonzero class.
pub fn labelling_from_reps(
    space: &Space,
    part: &ClassPartition,
    gamma: &GammaSubgroup,
    reps: &[u32],
) -> Result<Labelling, GammaError> {
    let mut label = vec![0u32; space.size() as usize];
    let mut seen = vec![false; part.classes().len()];
    for &r in reps {
        let c = part.class_of(r);
        if r == 0 || seen[c] {
            return Err(GammaError::BadRepresentatives);
        }
        seen[c] = true;
        for &l in gamma.elements() {
            label[space.scale(l, r) as usize] = l;
        }
    }
    if seen[1..].iter().any(|s| !s) {
        return Err(GammaError::BadRepresentatives);
    }
    Ok(Labelling { label })
}

/// A space together with Γ, its classes and a labelling: everything σ needs.
#[derive(Debug, Clone)]
pub struct LabelledSpace {
    space: Space,
    gamma: GammaSubgroup,
    part: ClassPartition,
    labelling: Labelling,
    mults: Vec<Perm>,
}

impl LabelledSpace {
    /// Classes of Γ with the least-member labelling.
    pub fn new(space: &Space, gamma: &GammaSubgroup) -> Self {
        let part = sim_classes(space, gamma);
        let labelling = make_labelling(space, &part, gamma);
        Self::with_labelling(space, gamma, part, labelling)
    }

    pub fn with_labelling(space: &Space, gamma: &GammaSubgroup, part: ClassPartition, labelling: Labelling) -> Self {
        let mults = gamma.elements().iter().map(|&l| gamma.mult(l)).collect();
        LabelledSpace { space: space.clone(), gamma: gamma.clone(), part, labelling, mults }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn gamma(&self) -> &GammaSubgroup {
        &self.gamma
    }

    pub fn classes(&self) -> &ClassPartition {
        &self.part
    }

    pub fn labelling(&self) -> &Labelling {
        &self.labelling
    }

    fn label(&self, v: u32) -> u32 {
        self.labelling.label[v as usize]
    }

    /// Multiplication by `lambda` ∈ Γ as a permutation of Γ.
    pub fn mult(&self, lambda: u32) -> &Perm {
        &self.mults[self.gamma.position(lambda).expect("lambda in gamma")]
    }

    /// The member of the class `c` carrying label `lambda`.
    pub fn member_with_label(&self, c: usize, lambda: u32) -> u32 {
        let rep = self.part.classes()[c][0];
        let p = self.space.p();
        self.space.scale(lambda * inv_mod(self.label(rep), p) % p, rep)
    }

    /// σ_f(g, v): the label `λ` goes to the label of `(λ · v/f(v))^g`.
    pub fn sigma(&self, g: &Perm, v: u32) -> Result<Perm, GammaError> {
        if v == 0 {
            return Err(GammaError::ZeroVector);
        }
        let p = self.space.p();
        let one = self.space.scale(inv_mod(self.label(v), p), v);
        let target = self.part.class_of(g.image(one));
        let mut images = Vec::with_capacity(self.gamma.order());
        for &lambda in self.gamma.elements() {
            let y = g.image(self.space.scale(lambda, one));
            if y == 0 || self.part.class_of(y) != target {
                return Err(GammaError::NotClassCompatible(v));
            }
            images.push(self.gamma.position(self.label(y)).expect("labels lie in gamma") as u32);
        }
        Ok(Perm::from_images_unchecked(images))
    }

    /// The permutation acting inside the class `c` by `sigma` on labels and fixing everything else.
    pub fn lift_on_class(&self, c: usize, sigma: &Perm) -> Perm {
        let mut images: Vec<u32> = self.space.points().collect();
        self.lift_into(&mut images, c, sigma);
        Perm::from_images_unchecked(images)
    }

    /// `h` applied to the labels of every nonzero class simultaneously.
    pub fn global_action(&self, h: &Perm) -> Perm {
        let mut images: Vec<u32> = self.space.points().collect();
        for c in self.part.nonzero() {
            self.lift_into(&mut images, c, h);
        }
        Perm::from_images_unchecked(images)
    }

    fn lift_into(&self, images: &mut [u32], c: usize, sigma: &Perm) {
        for (i, &lambda) in self.gamma.elements().iter().enumerate() {
            let to = self.gamma.elements()[sigma.image(i as u32) as usize];
            images[self.member_with_label(c, lambda) as usize] = self.member_with_label(c, to);
        }
    }

    /// The label-preserving permutation moving class `c` to class `images[c]`.
    pub fn class_permutation(&self, class_images: &[usize]) -> Perm {
        let mut images: Vec<u32> = self.space.points().collect();
        for c in self.part.nonzero() {
            for &lambda in self.gamma.elements() {
                images[self.member_with_label(c, lambda) as usize] = self.member_with_label(class_images[c], lambda);
            }
        }
        Perm::from_images_unchecked(images)
    }

    /// Sym((V∖{0})/∼)^f: label-preserving permutations of the nonzero classes.
    pub fn sym_f_group(&self) -> PermGroup {
        let k = self.part.num_nonzero();
        let mut gens = Vec::new();
        if k >= 2 {
            let mut swap: Vec<usize> = (0..=k).collect();
            swap.swap(1, 2);
            gens.push(self.class_permutation(&swap));
        }
        if k >= 3 {
            let cycle: Vec<usize> = (0..=k).map(|c| if c == 0 { 0 } else { c % k + 1 }).collect();
            gens.push(self.class_permutation(&cycle));
        }
        let order: BigUint = (1..=k as u64).product();
        PermGroup::generate_with_order(self.space.size() as usize, &gens, 0, &order).expect("consistent degrees")
    }

    /// All permutations fixing 0 that map classes onto classes.
    pub fn class_compatible_group(&self) -> PermGroup {
        let sym_f = self.sym_f_group();
        let mut gens = sym_f.gens().to_vec();
        let order = self.gamma.order() as u32;
        if order >= 2 && self.part.num_nonzero() >= 1 {
            gens.push(self.lift_on_class(1, &Perm::from_cycles(order as usize, &[&[0, 1]]).expect("valid")));
        }
        if order >= 3 {
            let cycle: Vec<u32> = (0..order).collect();
            gens.push(self.lift_on_class(1, &Perm::from_cycles(order as usize, &[&cycle]).expect("valid")));
        }
        let k = self.part.num_nonzero();
        let per_class: BigUint = (1..=order as u64).product();
        let total = per_class.pow(k as u32) * (1..=k as u64).product::<BigUint>();
        PermGroup::generate_with_order(self.space.size() as usize, &gens, 0, &total).expect("consistent degrees")
    }

    /// Whether σ_f(g, w) is the identity for every nonzero `w`.
    pub fn preserves_labels(&self, g: &Perm) -> bool {
        self.part.nonzero().all(|c| self.sigma(g, self.part.classes()[c][0]).is_ok_and(|s| s.is_identity()))
    }
}
