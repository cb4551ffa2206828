use std::collections::{BTreeSet, HashSet};

use crate::gamma::GammaSubgroup;
use crate::perm::Perm;

/// A subgroup of Sym(Γ), stored as its full sorted element list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SigmaGroup {
    degree: usize,
    elements: Vec<Perm>,
}

impl SigmaGroup {
    pub fn trivial(degree: usize) -> Self {
        SigmaGroup { degree, elements: vec![Perm::identity(degree)] }
    }

    /// Closure of `gens` under composition.
    pub fn generated(degree: usize, gens: &[Perm]) -> Self {
        let mut seen: HashSet<Perm> = HashSet::from([Perm::identity(degree)]);
        let mut queue = vec![Perm::identity(degree)];
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort();
        SigmaGroup { degree, elements }
    }

    pub fn symmetric(degree: usize) -> Self {
        let total: u64 = (1..=degree as u64).product();
        SigmaGroup { degree, elements: (0..total).map(|r| Perm::unrank(degree, r)).collect() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &SigmaGroup) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    pub fn is_normal_in(&self, other: &SigmaGroup) -> bool {
        self.is_subgroup_of(other)
            && other.elements.iter().all(|h| self.elements.iter().all(|n| self.contains(&h.conjugate(n))))
    }

    /// A small generating set: elements taken in sorted order whenever they
    /// are not yet generated.
    pub fn generators(&self) -> Vec<Perm> {
        let mut gens = Vec::new();
        let mut current = SigmaGroup::trivial(self.degree);
        for g in &self.elements {
            if !current.contains(g) {
                gens.push(g.clone());
                current = SigmaGroup::generated(self.degree, &gens);
            }
        }
        gens
    }

    /// Sorted one-line images in field values.
    pub fn values(&self, gamma: &GammaSubgroup) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = self.elements.iter().map(|s| gamma.values(s)).collect();
        out.sort();
        out
    }
}

/// Every subgroup of Sym(degree), ordered by order and then by element list.
///
/// Each subgroup is reached from a smaller one by adjoining a single element.
pub fn subgroups(degree: usize) -> Vec<SigmaGroup> {
    let all = SigmaGroup::symmetric(degree);
    let mut found: BTreeSet<(usize, Vec<Perm>)> = BTreeSet::new();
    let trivial = SigmaGroup::trivial(degree);
    found.insert((1, trivial.elements.clone()));
    let mut frontier = vec![trivial];
    while let Some(k) = frontier.pop() {
        for g in &all.elements {
            if k.contains(g) {
                continue;
            }
            let mut gens = k.generators();
            gens.push(g.clone());
            let bigger = SigmaGroup::generated(degree, &gens);
            if found.insert((bigger.order(), bigger.elements.clone())) {
                frontier.push(bigger);
            }
        }
    }
    found.into_iter().map(|(_, elements)| SigmaGroup { degree, elements }).collect()
}

/// All pairs `(N, H)` of subgroups of Sym(degree) with `N` normal in `H`.
pub fn normal_pairs(degree: usize) -> Vec<(SigmaGroup, SigmaGroup)> {
    let subs = subgroups(degree);
    let mut out = Vec::new();
    for h in &subs {
        for n in &subs {
            if n.order() <= h.order() && h.order() % n.order() == 0 && n.is_normal_in(h) {
                out.push((n.clone(), h.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroup_counts() {
        // Sym(1), Sym(2), Sym(3) and Sym(4) have 1, 2, 6 and 30 subgroups
        let counts: Vec<usize> = (1..=4).map(|d| subgroups(d).len()).collect();
        assert_eq!(counts, vec![1, 2, 6, 30]);
        assert_eq!(normal_pairs(2).len(), 3);
        // Sym(3): pairs are (1,K) for all 6, (K,K) for 5 nontrivial, plus (A3, S3)
        assert_eq!(normal_pairs(3).len(), 12);
    }

    #[test]
    fn group_operations() {
        let s3 = SigmaGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        let t = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let c = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let a3 = SigmaGroup::generated(3, std::slice::from_ref(&c));
        assert!(a3.is_normal_in(&s3));
        let z2 = SigmaGroup::generated(3, std::slice::from_ref(&t));
        assert!(!z2.is_normal_in(&s3));
        assert_eq!(SigmaGroup::generated(3, &s3.generators()), s3);
        assert!(s3.generators().len() <= 2);
        let gamma = GammaSubgroup::full(3);
        let flip = SigmaGroup::generated(2, &[Perm::from_cycles(2, &[&[0, 1]]).unwrap()]);
        assert_eq!(flip.values(&gamma), vec![vec![1, 2], vec![2, 1]]);
    }
}
