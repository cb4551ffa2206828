use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use super::chain::StabChain;
use super::{Perm, PermError};
use crate::field::{primitive_root, Matrix, Space};

/// A partition of `[0, degree)` into blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<u32>>,
    block_of: Vec<u32>,
}

impl Partition {
    pub fn new(degree: usize, blocks: Vec<Vec<u32>>) -> Result<Self, PermError> {
        let mut block_of = vec![u32::MAX; degree];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(PermError::InvalidPartition(degree));
            }
            for &x in block {
                match block_of.get_mut(x as usize) {
                    Some(slot) if *slot == u32::MAX => *slot = b as u32,
                    _ => return Err(PermError::InvalidPartition(degree)),
                }
            }
        }
        if block_of.contains(&u32::MAX) {
            return Err(PermError::InvalidPartition(degree));
        }
        Ok(Partition { blocks, block_of })
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn block_of(&self, x: u32) -> usize {
        self.block_of[x as usize] as usize
    }

    pub fn degree(&self) -> usize {
        self.block_of.len()
    }

    /// The permutation `g` induces on the blocks, if it maps blocks onto blocks.
    pub fn induced(&self, g: &Perm) -> Option<Vec<u32>> {
        let mut images = Vec::with_capacity(self.blocks.len());
        for block in &self.blocks {
            let target = self.block_of[g.image(block[0]) as usize];
            if block.iter().any(|&x| self.block_of[g.image(x) as usize] != target)
                || self.blocks[target as usize].len() != block.len()
            {
                return None;
            }
            images.push(target);
        }
        Some(images)
    }
}

/// Cheap invariants of a permutation group. Equal groups have equal
/// fingerprints; the converse is not assumed anywhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub order: BigUint,
    pub point_orbits: Vec<usize>,
    pub pair_orbits: Vec<usize>,
}

/// A finitely generated permutation group with a verified stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: StabChain,
    order: BigUint,
    seed: u64,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        Self::from_chain(Vec::new(), StabChain::build(degree, &[], &[], 0), 0)
    }

    pub fn generate(gens: &[Perm]) -> Result<Self, PermError> {
        Self::generate_seeded(gens, 0)
    }

    pub fn generate_seeded(gens: &[Perm], seed: u64) -> Result<Self, PermError> {
        let degree = gens.first().ok_or(PermError::NoGenerators)?.degree();
        Self::generate_on(degree, gens, seed)
    }

    /// Like [`PermGroup::generate_seeded`] but allows an empty generator list.
    pub fn generate_on(degree: usize, gens: &[Perm], seed: u64) -> Result<Self, PermError> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch(degree, g.degree()));
        }
        let mut kept: Vec<Perm> = Vec::with_capacity(gens.len());
        for g in gens {
            if !g.is_identity() && !kept.contains(g) {
                kept.push(g.clone());
            }
        }
        let chain = StabChain::build(degree, &kept, &[], seed);
        Ok(Self::from_chain(kept, chain, seed))
    }

    /// Like [`PermGroup::generate_on`] for a group whose order is known in
    /// advance, which makes large symmetric-like groups cheap to build.
    pub fn generate_with_order(degree: usize, gens: &[Perm], seed: u64, order: &BigUint) -> Result<Self, PermError> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch(degree, g.degree()));
        }
        let kept: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let chain = StabChain::build_with_order(degree, &kept, &[], seed, Some(order));
        Ok(Self::from_chain(kept, chain, seed))
    }

    fn from_chain(gens: Vec<Perm>, chain: StabChain, seed: u64) -> Self {
        let order = chain.order();
        PermGroup { degree: chain.degree(), gens, chain, order, seed }
    }

    /// Group given by a chain whose strong generators also serve as generators.
    fn from_strong_chain(chain: StabChain, seed: u64) -> Self {
        let gens = chain.strong_generators().to_vec();
        Self::from_chain(gens, chain, seed)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The generators this group was built from (identity and duplicates removed).
    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain.contains(g)
    }

    fn check_degree(&self, other: usize) -> Result<(), PermError> {
        if self.degree != other {
            return Err(PermError::DegreeMismatch(self.degree, other));
        }
        Ok(())
    }

    /// Whether `other` is a subgroup of `self`.
    pub fn contains_group(&self, other: &PermGroup) -> Result<bool, PermError> {
        self.check_degree(other.degree)?;
        Ok(other.gens.iter().all(|g| self.contains(g)))
    }

    pub fn equals(&self, other: &PermGroup) -> Result<bool, PermError> {
        self.check_degree(other.degree)?;
        Ok(self.order == other.order && self.contains_group(other)? && other.contains_group(self)?)
    }

    pub fn join(&self, other: &PermGroup) -> Result<PermGroup, PermError> {
        self.check_degree(other.degree)?;
        self.join_with(&other.gens)
    }

    /// The group generated by `self` and `extra`.
    pub fn join_with(&self, extra: &[Perm]) -> Result<PermGroup, PermError> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Self::generate_on(self.degree, &gens, self.seed)
    }

    /// Whether every generator fixes `x`.
    pub fn fixes_point(&self, x: u32) -> bool {
        self.gens.iter().all(|g| g.fixes(x))
    }

    fn check_point(&self, x: u32) -> Result<(), PermError> {
        if x as usize >= self.degree {
            return Err(PermError::PointOutOfRange { point: x, degree: self.degree });
        }
        Ok(())
    }

    /// Sorted orbit of a point.
    pub fn orbit(&self, x: u32) -> Result<Vec<u32>, PermError> {
        self.check_point(x)?;
        let mut seen = vec![false; self.degree];
        Ok(orbit_from(x, &self.gens, &mut seen))
    }

    /// Orbit of a tuple under the componentwise action, in BFS order.
    pub fn orbit_of_tuple(&self, tuple: &[u32]) -> Result<Vec<Vec<u32>>, PermError> {
        for &x in tuple {
            self.check_point(x)?;
        }
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        seen.insert(tuple.to_vec());
        let mut orbit = vec![tuple.to_vec()];
        let mut k = 0;
        while k < orbit.len() {
            for g in &self.gens {
                let image: Vec<u32> = orbit[k].iter().map(|&x| g.image(x)).collect();
                if seen.insert(image.clone()) {
                    orbit.push(image);
                }
            }
            k += 1;
        }
        Ok(orbit)
    }

    /// All orbits on points, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        orbits_under(self.degree, &self.gens)
    }

    /// Subgroup fixing every point of `points`.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> Result<PermGroup, PermError> {
        for &x in points {
            self.check_point(x)?;
        }
        let mut prefix: Vec<u32> = Vec::new();
        for &x in points {
            if !prefix.contains(&x) {
                prefix.push(x);
            }
        }
        let chain = StabChain::build(self.degree, self.chain.strong_generators(), &prefix, self.seed);
        let tail = chain.tail(prefix.len(), self.degree);
        Ok(Self::from_strong_chain(tail, self.seed))
    }

    /// Subgroup mapping `set` onto itself. Backtrack search over base images.
    pub fn setwise_stabilizer(&self, set: &[u32]) -> Result<PermGroup, PermError> {
        for &x in set {
            self.check_point(x)?;
        }
        let mut inside = vec![false; self.degree];
        for &x in set {
            inside[x as usize] = true;
        }
        self.search_subgroup(|x, y| inside[x as usize] == inside[y as usize], 50_000_000)
    }

    /// Subgroup of all elements fixing every block of `blocks` setwise.
    ///
    /// The group acts on points and blocks simultaneously; the kernel is the
    /// pointwise stabilizer of the block points in that combined action, read
    /// off a chain whose base begins with every block.
    pub fn kernel_of_action(&self, blocks: &Partition) -> Result<PermGroup, PermError> {
        self.check_degree(blocks.degree())?;
        let d = self.degree;
        let nb = blocks.blocks().len();
        let mut combined = Vec::with_capacity(self.chain.strong_generators().len());
        for g in self.chain.strong_generators() {
            let induced = blocks.induced(g).ok_or(PermError::NotBlockPreserving)?;
            let mut images = g.images().to_vec();
            images.extend(induced.iter().map(|&b| d as u32 + b));
            combined.push(Perm::from_images_unchecked(images));
        }
        let prefix: Vec<u32> = (d as u32..(d + nb) as u32).collect();
        let chain = StabChain::build(d + nb, &combined, &prefix, self.seed);
        let tail = chain.tail(nb, d);
        Ok(Self::from_strong_chain(tail, self.seed))
    }

    /// All elements `g` with `allowed(x, x^g)` for every point `x`, which must
    /// form a subgroup. Prunes a partial base image `t` when some point cannot
    /// reach an allowed image under any completion.
    pub fn search_subgroup(&self, allowed: impl Fn(u32, u32) -> bool, budget: u64) -> Result<PermGroup, PermError> {
        let levels = &self.chain.levels;
        let d = self.degree;
        // orbit partitions of each stabilizer G^(i), i = 0..=levels.len()
        let mut orbit_ids: Vec<Vec<u32>> = Vec::with_capacity(levels.len() + 1);
        let mut orbit_members: Vec<Vec<Vec<u32>>> = Vec::with_capacity(levels.len() + 1);
        for i in 0..=levels.len() {
            let gens: &[Perm] = levels.get(i).map_or(&[], |l| l.gens.as_slice());
            let orbits = orbits_under(d, gens);
            let mut ids = vec![0u32; d];
            for (k, o) in orbits.iter().enumerate() {
                for &x in o {
                    ids[x as usize] = k as u32;
                }
            }
            orbit_ids.push(ids);
            orbit_members.push(orbits);
        }
        let feasible = |t: &Perm, depth: usize| {
            (0..d as u32).all(|x| {
                let orbit = &orbit_members[depth][orbit_ids[depth][x as usize] as usize];
                orbit.iter().any(|&y| allowed(x, t.image(y)))
            })
        };
        let mut found = PermGroup::trivial(d);
        let mut nodes = 0u64;
        let mut stack: Vec<(usize, Perm)> = vec![(0, Perm::identity(d))];
        while let Some((depth, t)) = stack.pop() {
            nodes += 1;
            if nodes > budget {
                return Err(PermError::BudgetExceeded(budget));
            }
            if !feasible(&t, depth) {
                continue;
            }
            if depth == levels.len() {
                if !found.contains(&t) {
                    found = found.join_with(std::slice::from_ref(&t))?;
                }
                continue;
            }
            for &beta in levels[depth].orbit.iter().rev() {
                let u = levels[depth].rep(beta).expect("orbit point");
                stack.push((depth + 1, u.then(&t)));
            }
        }
        Ok(PermGroup { seed: self.seed, ..found })
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Perm {
        self.chain.random_element(rng)
    }

    pub fn for_each_element(&self, visit: impl FnMut(&Perm)) {
        self.chain.for_each_element(visit)
    }

    /// Every element; only sensible for small groups.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = Vec::new();
        self.for_each_element(|g| out.push(g.clone()));
        out
    }

    /// Whether every generator of `sub` is fixed under conjugation by the generators of `self`.
    pub fn normalizes(&self, sub: &PermGroup) -> Result<bool, PermError> {
        self.check_degree(sub.degree)?;
        Ok(self.gens.iter().all(|x| sub.gens.iter().all(|s| sub.contains(&x.conjugate(s)))))
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let d = self.degree;
        let mut point_orbits: Vec<usize> = self.orbits().iter().map(Vec::len).collect();
        point_orbits.sort_unstable();
        // union-find over ordered pairs
        let mut parent: Vec<u32> = (0..(d * d) as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        for g in &self.gens {
            for a in 0..d as u32 {
                for b in 0..d as u32 {
                    let x = find(&mut parent, a * d as u32 + b);
                    let y = find(&mut parent, g.image(a) * d as u32 + g.image(b));
                    if x != y {
                        parent[x as usize] = y;
                    }
                }
            }
        }
        let mut sizes: HashMap<u32, usize> = HashMap::new();
        for x in 0..(d * d) as u32 {
            *sizes.entry(find(&mut parent, x)).or_default() += 1;
        }
        let mut pair_orbits: Vec<usize> = sizes.into_values().collect();
        pair_orbits.sort_unstable();
        Fingerprint { order: self.order.clone(), point_orbits, pair_orbits }
    }
}

fn orbit_from(x: u32, gens: &[Perm], seen: &mut [bool]) -> Vec<u32> {
    seen[x as usize] = true;
    let mut orbit = vec![x];
    let mut k = 0;
    while k < orbit.len() {
        let y = orbit[k];
        for g in gens {
            let z = g.image(y);
            if !seen[z as usize] {
                seen[z as usize] = true;
                orbit.push(z);
            }
        }
        k += 1;
    }
    orbit.sort_unstable();
    orbit
}

fn orbits_under(degree: usize, gens: &[Perm]) -> Vec<Vec<u32>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for x in 0..degree as u32 {
        if !seen[x as usize] {
            out.push(orbit_from(x, gens, &mut seen));
        }
    }
    out
}

/// Sym(degree), generated by a transposition and a full cycle.
pub fn sym_group(degree: usize) -> PermGroup {
    let points: Vec<u32> = (0..degree as u32).collect();
    sym_on(degree, &points)
}

/// Stabilizer of point 0 in Sym(degree).
pub fn sym_fixing_zero(degree: usize) -> PermGroup {
    let points: Vec<u32> = (1..degree as u32).collect();
    sym_on(degree, &points)
}

fn sym_on(degree: usize, points: &[u32]) -> PermGroup {
    let mut gens = Vec::new();
    if points.len() >= 2 {
        gens.push(Perm::from_cycles(degree, &[&points[..2]]).expect("valid"));
    }
    if points.len() >= 3 {
        gens.push(Perm::from_cycles(degree, &[points]).expect("valid"));
    }
    let order: BigUint = (1..=points.len() as u64).product();
    PermGroup::generate_with_order(degree, &gens, 0, &order).expect("consistent degrees")
}

/// The permutation of vector indices induced by `x ↦ x·M`.
pub fn matrix_perm(space: &Space, m: &Matrix) -> Perm {
    let images = space.points().map(|i| space.index_of(&m.apply(&space.coords(i)))).collect();
    Perm::from_images_unchecked(images)
}

/// GL(n, p) acting on the p^n vector indices.
///
/// Generated by `diag(ω, 1, …, 1)` for a primitive root ω, the transvection
/// `I + E_01`, the coordinate swap and the cyclic coordinate shift.
pub fn gl_group(space: &Space) -> PermGroup {
    let n = space.n() as usize;
    let p = space.p();
    let mut mats = Vec::new();
    let mut diag = Matrix::identity(n, p);
    diag.entries[0] = primitive_root(p);
    mats.push(diag);
    if n >= 2 {
        let mut transvection = Matrix::identity(n, p);
        transvection.entries[1] = 1;
        mats.push(transvection);
        let mut swap = Matrix::identity(n, p);
        swap.entries[0] = 0;
        swap.entries[n + 1] = 0;
        swap.entries[1] = 1;
        swap.entries[n] = 1;
        mats.push(swap);
        if n >= 3 {
            let mut shift = Matrix { n, p, entries: vec![0; n * n] };
            for r in 0..n {
                shift.entries[r * n + (r + 1) % n] = 1;
            }
            mats.push(shift);
        }
    }
    let gens: Vec<Perm> = mats.iter().map(|m| matrix_perm(space, m)).collect();
    PermGroup::generate_on(space.size() as usize, &gens, 0).expect("consistent degrees")
}

/// Order of GL(n, p) from the product formula.
pub fn gl_order(p: u32, n: u32) -> BigUint {
    let q = BigUint::from(p).pow(n);
    (0..n).fold(BigUint::one(), |acc, i| acc * (&q - BigUint::from(p).pow(i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Space;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    /// Closure of the generators under multiplication.
    fn brute_elements(degree: usize, gens: &[Perm]) -> HashSet<Perm> {
        let mut all: HashSet<Perm> = HashSet::from([Perm::identity(degree)]);
        let mut frontier = vec![Perm::identity(degree)];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.then(g);
                if all.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        all
    }

    /// Counts invertible n×n matrices over F_p by enumerating all of them.
    fn count_invertible(p: u32, n: usize) -> u64 {
        let total = (p as u64).pow((n * n) as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let entries: Vec<u32> = (0..n * n)
                    .map(|_| {
                        let x = (c % p as u64) as u32;
                        c /= p as u64;
                        x
                    })
                    .collect();
                Matrix { n, p, entries }.is_invertible()
            })
            .count() as u64
    }

    fn translation(space: &Space, t: u32) -> Perm {
        Perm::from_images(space.points().map(|x| space.add(x, t)).collect()).unwrap()
    }

    #[test]
    fn small_generated_orders() {
        assert!(PermGroup::generate(&[Perm::identity(9)]).unwrap().is_trivial());
        let s9 = sym_group(9);
        assert_eq!(*s9.order(), BigUint::from(362_880u32));
        assert_eq!(*sym_fixing_zero(9).order(), BigUint::from(40_320u32));
        assert_eq!(sym_group(1).order(), &BigUint::one());
        assert!(matches!(PermGroup::generate(&[]), Err(PermError::NoGenerators)));
        assert!(matches!(
            PermGroup::generate(&[Perm::identity(3), Perm::identity(4)]),
            Err(PermError::DegreeMismatch(3, 4))
        ));
    }

    #[test]
    fn gl_orders_match_matrix_counts() {
        let v = Space::new(3, 2).unwrap();
        let gl = gl_group(&v);
        assert_eq!(count_invertible(3, 2), 48);
        assert_eq!(*gl.order(), BigUint::from(48u32));
        assert_eq!(brute_elements(9, gl.gens()).len(), 48);
        let w = Space::new(3, 3).unwrap();
        assert_eq!(count_invertible(3, 3), 11_232);
        assert_eq!(*gl_group(&w).order(), BigUint::from(11_232u32));
        assert_eq!(gl_order(3, 3), BigUint::from(11_232u32));
        for (p, n) in [(3, 1), (5, 1), (5, 2), (7, 2), (3, 4), (3, 5)] {
            let s = Space::new(p, n).unwrap();
            assert_eq!(*gl_group(&s).order(), gl_order(p, n), "GL({n},{p})");
        }
    }

    #[test]
    fn orbits_examples() {
        let v = Space::new(3, 2).unwrap();
        let gl = gl_group(&v);
        assert_eq!(gl.orbit(1).unwrap(), (1..9).collect::<Vec<_>>());
        assert_eq!(PermGroup::trivial(9).orbit(4).unwrap(), vec![4]);
        let agl = gl.join_with(&[translation(&v, 1)]).unwrap();
        assert_eq!(agl.orbit(0).unwrap().len(), 9);
        assert!(gl.orbit(9).is_err());
        // GL(2,3) is transitive on ordered bases: 8·6 pairs of independent vectors
        assert_eq!(gl.orbit_of_tuple(&[1, 3]).unwrap().len(), 48);
    }

    #[test]
    fn stabilizers() {
        let v = Space::new(3, 2).unwrap();
        let gl = gl_group(&v);
        assert_eq!(*sym_group(9).pointwise_stabilizer(&[0]).unwrap().order(), BigUint::from(40_320u32));
        let agl = gl.join_with(&[translation(&v, 1)]).unwrap();
        assert_eq!(*agl.order(), BigUint::from(432u32));
        let stab = agl.pointwise_stabilizer(&[0]).unwrap();
        assert!(stab.equals(&gl).unwrap());

        let line: Vec<u32> = vec![1, 2];
        let brute = gl.elements().into_iter().filter(|g| line.iter().all(|&x| line.contains(&g.image(x)))).count();
        assert_eq!(brute, 12);
        let set_stab = gl.setwise_stabilizer(&line).unwrap();
        assert_eq!(*set_stab.order(), BigUint::from(12u32));
        assert!(set_stab.gens().iter().all(|g| g.image(1) == 1 || g.image(1) == 2));
    }

    #[test]
    fn kernels() {
        let v = Space::new(3, 2).unwrap();
        let gl = gl_group(&v);
        let singletons = Partition::new(9, (0..9).map(|x| vec![x]).collect()).unwrap();
        assert!(gl.kernel_of_action(&singletons).unwrap().is_trivial());
        let whole = Partition::new(9, vec![(0..9).collect()]).unwrap();
        assert!(gl.kernel_of_action(&whole).unwrap().equals(&gl).unwrap());

        let classes: Vec<Vec<u32>> = vec![vec![0], vec![1, 2], vec![3, 6], vec![4, 8], vec![5, 7]];
        let part = Partition::new(9, classes.clone()).unwrap();
        let brute: Vec<Perm> = gl
            .elements()
            .into_iter()
            .filter(|g| classes.iter().all(|c| c.iter().all(|&x| c.contains(&g.image(x)))))
            .collect();
        assert_eq!(brute.len(), 2);
        let ker = gl.kernel_of_action(&part).unwrap();
        assert_eq!(*ker.order(), BigUint::from(2u32));
        assert!(brute.iter().all(|g| ker.contains(g)));

        assert!(Partition::new(9, vec![vec![0, 1]]).is_err());
        assert!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        let bad = Partition::new(9, vec![vec![0, 1], (2..9).collect()]).unwrap();
        assert_eq!(gl.kernel_of_action(&bad).unwrap_err(), PermError::NotBlockPreserving);
    }

    #[test]
    fn joins_and_equality() {
        let v = Space::new(3, 2).unwrap();
        let gl = gl_group(&v);
        assert!(gl.join(&gl).unwrap().equals(&gl).unwrap());
        let t = PermGroup::generate(&[translation(&v, 3)]).unwrap();
        let agl = gl.join(&t).unwrap();
        assert_eq!(*agl.order(), BigUint::from(432u32));
        // all translations are generated
        assert!(v.points().all(|x| agl.contains(&translation(&v, x))));
        let (a, b) = (gl.gens()[0].clone(), gl.gens()[1].clone());
        let ab = PermGroup::generate(&[a.clone(), b.clone()]).unwrap();
        let ba = PermGroup::generate(&[b, a]).unwrap();
        assert!(ab.equals(&ba).unwrap());
        assert!(gl.equals(&PermGroup::trivial(4)).is_err());
        assert_eq!(gl.fingerprint(), gl.join(&gl).unwrap().fingerprint());
        assert_ne!(gl.fingerprint(), agl.fingerprint());
        assert!(agl.normalizes(&t.join(&PermGroup::generate(&[translation(&v, 1)]).unwrap()).unwrap()).unwrap());
    }

    #[test]
    fn membership_agrees_with_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let v = Space::new(3, 2).unwrap();
        let agl = gl_group(&v).join_with(&[translation(&v, 1)]).unwrap();
        let members: HashSet<Perm> = brute_elements(9, agl.gens());
        assert_eq!(BigUint::from(members.len()), *agl.order());
        let s9 = sym_group(9);
        for _ in 0..1000 {
            let g = s9.random_element(&mut rng);
            assert_eq!(agl.contains(&g), members.contains(&g));
        }
        for g in &members {
            assert!(agl.contains(g));
        }
    }

    #[test]
    fn orbit_stabilizer_holds() {
        let w = Space::new(3, 3).unwrap();
        let gl = gl_group(&w);
        let agl = gl.join_with(&[translation(&w, 1)]).unwrap();
        for g in [&gl, &agl, &sym_fixing_zero(27)] {
            let mut seen = BTreeSet::new();
            for x in 0..27u32 {
                let orbit = g.orbit(x).unwrap();
                if !seen.insert(orbit.clone()) {
                    continue;
                }
                let stab = g.pointwise_stabilizer(&[x]).unwrap();
                assert_eq!(*g.order(), stab.order() * BigUint::from(orbit.len()));
            }
        }
    }

    #[test]
    fn chain_sampling_stays_in_group() {
        let w = Space::new(3, 3).unwrap();
        let gl = gl_group(&w);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let g = gl.random_element(&mut rng);
            assert!(gl.contains(&g));
            assert!(g.fixes(0));
        }
    }
}
