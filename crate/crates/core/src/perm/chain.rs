use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Perm;

const NONE: u32 = u32::MAX;

/// One level of a stabilizer chain: the orbit of `base` under the group
/// generated by `gens`, with a coset representative for every orbit point.
#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub(crate) base: u32,
    pub(crate) gens: Vec<Perm>,
    pub(crate) orbit: Vec<u32>,
    slot: Vec<u32>,
    reps: Vec<Perm>,
    inv_reps: Vec<Perm>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            slot: vec![NONE; degree],
            reps: Vec::new(),
            inv_reps: Vec::new(),
        };
        level.recompute();
        level
    }

    fn recompute(&mut self) {
        let degree = self.slot.len();
        self.slot.iter_mut().for_each(|s| *s = NONE);
        self.orbit.clear();
        self.reps.clear();
        self.inv_reps.clear();
        self.slot[self.base as usize] = 0;
        self.orbit.push(self.base);
        self.reps.push(Perm::identity(degree));
        self.inv_reps.push(Perm::identity(degree));
        let mut k = 0;
        while k < self.orbit.len() {
            let beta = self.orbit[k];
            for s in &self.gens {
                let gamma = s.image(beta);
                if self.slot[gamma as usize] == NONE {
                    let rep = self.reps[k].then(s);
                    self.slot[gamma as usize] = self.orbit.len() as u32;
                    self.orbit.push(gamma);
                    self.inv_reps.push(rep.inverse());
                    self.reps.push(rep);
                }
            }
            k += 1;
        }
    }

    /// Coset representative sending the base point to `x`.
    pub(crate) fn rep(&self, x: u32) -> Option<&Perm> {
        match self.slot[x as usize] {
            NONE => None,
            k => Some(&self.reps[k as usize]),
        }
    }

    fn inv_rep(&self, x: u32) -> Option<&Perm> {
        match self.slot[x as usize] {
            NONE => None,
            k => Some(&self.inv_reps[k as usize]),
        }
    }
}

/// A base and strong generating set with explicit transversals.
///
/// Built by a seeded randomized phase followed by a deterministic
/// Schreier-Sims pass that sifts every Schreier generator to the identity, so
/// the resulting chain is always exact; the seed only affects running time and
/// the particular strong generators chosen.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    pub(crate) levels: Vec<Level>,
}

/// Points in base-selection order: 1, 2, …, degree-1, then 0.
pub(crate) fn base_order(degree: usize) -> impl Iterator<Item = u32> {
    (1..degree as u32).chain(std::iter::once(0).filter(move |_| degree > 0))
}

impl StabChain {
    /// Chain for the group generated by `gens`, whose base starts with `prefix`.
    pub fn build(degree: usize, gens: &[Perm], prefix: &[u32], seed: u64) -> Self {
        Self::build_with_order(degree, gens, prefix, seed, None)
    }

    /// Like [`StabChain::build`], but when the group order is known the
    /// randomized phase runs until the chain reaches it and the deterministic
    /// pass is skipped. A chain for a subgroup of the right order is exact.
    /// Falls back to the deterministic pass if the order is not reached.
    pub fn build_with_order(degree: usize, gens: &[Perm], prefix: &[u32], seed: u64, order: Option<&BigUint>) -> Self {
        let mut gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        gens.sort();
        gens.dedup();
        let mut base: Vec<u32> = Vec::new();
        for &b in prefix {
            if !base.contains(&b) {
                base.push(b);
            }
        }
        for g in &gens {
            if base.iter().all(|&b| g.fixes(b)) {
                let b = g.first_moved_in(base_order(degree)).expect("non-identity moves a point");
                base.push(b);
            }
        }
        let mut chain = StabChain { degree, levels: Vec::with_capacity(base.len()) };
        for (i, &b) in base.iter().enumerate() {
            let mut level = Level::new(b, degree);
            level.gens = gens.iter().filter(|g| base[..i].iter().all(|&c| g.fixes(c))).cloned().collect();
            level.recompute();
            chain.levels.push(level);
        }
        if !gens.is_empty() {
            chain.random_phase(&gens, seed, order);
            if order.is_none_or(|o| chain.order() != *o) {
                chain.schreier_sims();
            }
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Orbit lengths of the base points, top level first.
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[Perm] {
        self.levels.first().map_or(&[], |l| l.gens.as_slice())
    }

    /// Strips `g` through the levels starting at `from`. Returns the residue
    /// and the index of the level where stripping stopped (`levels.len()` if
    /// it passed every level).
    pub fn sift_from(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut g = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = g.image(level.base);
            match level.inv_rep(beta) {
                Some(u) => g = g.then(u),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift_from(g, 0).0.is_identity()
    }

    fn add_strong(&mut self, h: Perm, lo: usize, hi: usize) {
        if hi == self.levels.len() {
            let b = h.first_moved_in(base_order(self.degree)).expect("residue is not the identity");
            self.levels.push(Level::new(b, self.degree));
        }
        for level in &mut self.levels[lo..=hi] {
            level.gens.push(h.clone());
            level.recompute();
        }
    }

    fn random_phase(&mut self, gens: &[Perm], seed: u64, target: Option<&BigUint>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut state: Vec<Perm> = gens.iter().cycle().take(gens.len().max(10)).cloned().collect();
        let mut acc = Perm::identity(self.degree);
        let step = |rng: &mut ChaCha8Rng, state: &mut Vec<Perm>, acc: &mut Perm| {
            let i = rng.gen_range(0..state.len());
            let mut j = rng.gen_range(0..state.len() - 1);
            if j >= i {
                j += 1;
            }
            state[i] = if rng.gen_bool(0.5) { state[i].then(&state[j]) } else { state[j].then(&state[i]) };
            *acc = acc.then(&state[i]);
        };
        for _ in 0..40 {
            step(&mut rng, &mut state, &mut acc);
        }
        let mut quiet = 0;
        let rounds = if target.is_some() { 400 + 40 * self.degree } else { 400 };
        for _ in 0..rounds {
            match target {
                Some(o) if self.order() == *o => break,
                None if quiet >= 10 => break,
                _ => {}
            }
            step(&mut rng, &mut state, &mut acc);
            let (res, j) = self.sift_from(&acc, 0);
            if res.is_identity() {
                quiet += 1;
            } else {
                quiet = 0;
                self.add_strong(res, j.min(1), j);
            }
        }
    }

    fn schreier_sims(&mut self) {
        // orbit points of each level whose Schreier generators are known to sift
        let mut done = vec![0usize; self.levels.len()];
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let li = i as usize;
            let mut restart = None;
            'scan: while done[li] < self.levels[li].orbit.len() {
                let k = done[li];
                for s in 0..self.levels[li].gens.len() {
                    let level = &self.levels[li];
                    let gen = &level.gens[s];
                    let image = gen.image(level.orbit[k]);
                    let back = level.inv_rep(image).expect("orbit is closed");
                    let h = level.reps[k].then(gen).then(back);
                    if h.is_identity() {
                        continue;
                    }
                    let (res, j) = self.sift_from(&h, li + 1);
                    if !res.is_identity() {
                        self.add_strong(res, li + 1, j);
                        done.resize(self.levels.len(), 0);
                        done[li + 1..=j].iter_mut().for_each(|d| *d = 0);
                        restart = Some(j);
                        break 'scan;
                    }
                }
                done[li] += 1;
            }
            match restart {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.degree);
        for level in self.levels.iter().rev() {
            let k = rng.gen_range(0..level.reps.len());
            g = g.then(&level.reps[k]);
        }
        g
    }

    /// Calls `visit` on every element of the group.
    pub fn for_each_element(&self, mut visit: impl FnMut(&Perm)) {
        fn rec(levels: &[Level], acc: &Perm, visit: &mut dyn FnMut(&Perm)) {
            match levels.split_last() {
                None => visit(acc),
                Some((last, rest)) => {
                    for rep in &last.reps {
                        rec(rest, &acc.then(rep), visit);
                    }
                }
            }
        }
        rec(&self.levels, &Perm::identity(self.degree), &mut visit);
    }

    /// The chain of the stabilizer of the first `from` base points, with every
    /// permutation restricted to the first `degree` points.
    pub(crate) fn tail(&self, from: usize, degree: usize) -> StabChain {
        let levels = self.levels[from.min(self.levels.len())..]
            .iter()
            .filter(|l| l.orbit.len() > 1)
            .map(|l| {
                debug_assert!((l.base as usize) < degree);
                let mut level = Level::new(l.base, degree);
                level.gens = l.gens.iter().map(|g| g.restrict(degree)).collect();
                level.recompute();
                level
            })
            .collect();
        StabChain { degree, levels }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym_gens(d: usize) -> Vec<Perm> {
        let cycle: Vec<u32> = (0..d as u32).collect();
        vec![Perm::from_cycles(d, &[&[0, 1]]).unwrap(), Perm::from_cycles(d, &[&cycle]).unwrap()]
    }

    #[test]
    fn symmetric_group_orders() {
        for d in 2..=9usize {
            let chain = StabChain::build(d, &sym_gens(d), &[], 7);
            let fact: u64 = (1..=d as u64).product();
            assert_eq!(chain.order(), BigUint::from(fact));
        }
    }

    #[test]
    fn order_independent_of_seed() {
        let gens = sym_gens(12);
        let a = StabChain::build(12, &gens, &[], 1).order();
        let b = StabChain::build(12, &gens, &[], 99).order();
        assert_eq!(a, b);
    }

    #[test]
    fn enumerates_every_element_once() {
        let gens = sym_gens(5);
        let chain = StabChain::build(5, &gens, &[3], 0);
        let mut seen = std::collections::HashSet::new();
        chain.for_each_element(|g| {
            assert!(seen.insert(g.clone()));
        });
        assert_eq!(seen.len(), 120);
        assert_eq!(chain.base()[0], 3);
    }

    #[test]
    fn base_order_puts_zero_last() {
        let order: Vec<u32> = base_order(4).collect();
        assert_eq!(order, vec![1, 2, 3, 0]);
    }
}
