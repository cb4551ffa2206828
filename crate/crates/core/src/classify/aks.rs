use std::collections::HashMap;

use super::ClassifyError;
use crate::field::Space;
use crate::gamma::compute_gamma;
use crate::perm::{Perm, PermGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AkShape {
    Empty,
    SubspaceImage,
    Full,
}

impl AkShape {
    pub fn as_str(self) -> &'static str {
        match self {
            AkShape::Empty => "EMPTY",
            AkShape::SubspaceImage => "SUBSPACE_IMAGE",
            AkShape::Full => "FULL",
        }
    }
}

/// A_k(S): the vectors v such that some element maps S ∪ {v} into a
/// k-dimensional subspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AkResult {
    pub s: Vec<u32>,
    pub k: usize,
    pub set: Vec<u32>,
    pub shape: AkShape,
    /// For a subspace image: an element `g` with `set^g` a k-dimensional subspace.
    pub witness: Option<Perm>,
    /// For a subspace image: that subspace, `set^g`, sorted.
    pub subspace: Option<Vec<u32>>,
    /// Whether `(|S| + 1)|Γ| + 1 ≤ p^k`; `None` when the group moves 0.
    pub kandn: Option<bool>,
}

impl AkResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "S": self.s,
            "k": self.k,
            "set": self.set,
            "shape": self.shape.as_str(),
            "witness": self.witness.as_ref().map(|g| g.images().to_vec()),
            "subspace": self.subspace,
            "kandn": self.kandn,
        })
    }
}

/// Breadth-first search of the orbit of `start` under the componentwise
/// action, stopping at the first tuple satisfying `hit`. Returns an element
/// mapping `start` to that tuple. `visited` counts tuples against `budget`.
fn search_tuple_orbit(
    degree: usize,
    gens: &[Perm],
    start: &[u32],
    hit: impl Fn(&[u32]) -> bool,
    visited: &mut usize,
    budget: usize,
) -> Result<Option<Perm>, ClassifyError> {
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut tuples: Vec<Vec<u32>> = vec![start.to_vec()];
    let mut parent: Vec<(usize, usize)> = vec![(usize::MAX, usize::MAX)];
    index.insert(start.to_vec(), 0);
    let mut k = 0;
    while k < tuples.len() {
        if hit(&tuples[k]) {
            let mut path = Vec::new();
            let mut at = k;
            while at != 0 {
                let (from, gen) = parent[at];
                path.push(gen);
                at = from;
            }
            let g = path.iter().rev().fold(Perm::identity(degree), |acc, &i| acc.then(&gens[i]));
            return Ok(Some(g));
        }
        for (i, g) in gens.iter().enumerate() {
            let image: Vec<u32> = tuples[k].iter().map(|&x| g.image(x)).collect();
            if !index.contains_key(&image) {
                *visited += 1;
                if *visited > budget {
                    return Err(ClassifyError::BudgetExceeded(budget));
                }
                index.insert(image.clone(), tuples.len());
                tuples.push(image);
                parent.push((k, i));
            }
        }
        k += 1;
    }
    Ok(None)
}

/// Default bound on the number of tuples visited by [`a_k_set`].
pub const DEFAULT_AK_BUDGET: usize = 20_000_000;

pub fn a_k_set(
    space: &Space,
    group: &PermGroup,
    s: &[u32],
    k: usize,
    budget: usize,
) -> Result<AkResult, ClassifyError> {
    if k == 0 {
        return Err(ClassifyError::InvalidInput("k must be at least 1".into()));
    }
    if let Some(&bad) = s.iter().find(|&&x| x == 0 || x >= space.size()) {
        return Err(ClassifyError::InvalidInput(format!("{bad} is not a nonzero vector index")));
    }
    let size = space.size() as usize;
    let fits = |t: &[u32]| space.rank(t) <= k;
    let stab = group.pointwise_stabilizer(s)?;
    let mut visited = 0usize;
    let mut set = Vec::new();
    for orbit in stab.orbits() {
        let mut tuple = s.to_vec();
        tuple.push(orbit[0]);
        if search_tuple_orbit(size, group.gens(), &tuple, fits, &mut visited, budget)?.is_some() {
            set.extend(orbit);
        }
    }
    set.sort_unstable();
    let kandn = if group.fixes_point(0) {
        let gamma = compute_gamma(space, group)?;
        Some((s.len() + 1) * gamma.order() < (space.p() as usize).pow(k as u32))
    } else {
        None
    };
    let mut result = AkResult { s: s.to_vec(), k, set, shape: AkShape::Empty, witness: None, subspace: None, kandn };
    if result.set.is_empty() {
        return Ok(result);
    }
    if result.set.len() == size {
        result.shape = AkShape::Full;
        return Ok(result);
    }
    let g = search_tuple_orbit(size, group.gens(), s, fits, &mut visited, budget)?
        .ok_or_else(|| ClassifyError::InternalCheck("A_k(S) is nonempty but S never fits".into()))?;
    let mut image: Vec<u32> = result.set.iter().map(|&x| g.image(x)).collect();
    image.sort_unstable();
    let w = space.span(&image);
    if w.dim() != k || w.members != image {
        return Err(ClassifyError::InternalCheck(format!(
            "A_k(S) has {} elements and is neither empty, V, nor the image of a {k}-dimensional subspace",
            result.set.len()
        )));
    }
    result.shape = AkShape::SubspaceImage;
    result.witness = Some(g);
    result.subspace = Some(image);
    Ok(result)
}

/// acl(v, w) = {u : the orbit of u under the stabilizer of v and w stays in ⟨v, w⟩}.
pub fn acl_pair(space: &Space, group: &PermGroup, v: u32, w: u32) -> Result<Vec<u32>, ClassifyError> {
    if v >= space.size() || w >= space.size() || v == w {
        return Err(ClassifyError::InvalidInput(format!("need two distinct vector indices, got {v} and {w}")));
    }
    let span = space.span(&[v, w]);
    if span.members.len() == space.size() as usize {
        return Err(ClassifyError::DegenerateSpan);
    }
    let stab = group.pointwise_stabilizer(&[v, w])?;
    let mut out: Vec<u32> =
        stab.orbits().into_iter().filter(|o| o.iter().all(|&u| span.contains(u))).flatten().collect();
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::agl_group;
    use crate::perm::{gl_group, sym_fixing_zero, sym_group};

    #[test]
    fn ak_examples() {
        let w = Space::new(3, 3).unwrap();
        let gl = gl_group(&w);
        let basis = [1, 3, 9];
        let r = a_k_set(&w, &gl, &basis, 2, DEFAULT_AK_BUDGET).unwrap();
        assert_eq!(r.shape, AkShape::Empty);
        assert!(r.set.is_empty());
        let sym0 = sym_fixing_zero(27);
        let full = a_k_set(&w, &sym0, &basis, 2, DEFAULT_AK_BUDGET).unwrap();
        assert_eq!(full.shape, AkShape::Full);
        let pair = a_k_set(&w, &gl, &[1, 3], 2, DEFAULT_AK_BUDGET).unwrap();
        assert_eq!(pair.shape, AkShape::SubspaceImage);
        assert_eq!(pair.set, w.span(&[1, 3]).members);
        assert!([1, 3].iter().all(|x| pair.set.contains(x)));
        assert_eq!(pair.kandn, Some(true));
        assert!(a_k_set(&w, &gl, &[0], 2, 10).is_err());
    }

    #[test]
    fn ak_budget() {
        let w = Space::new(3, 3).unwrap();
        let err = a_k_set(&w, &gl_group(&w), &[1, 3, 9], 2, 1000).unwrap_err();
        assert_eq!(err, ClassifyError::BudgetExceeded(1000));
    }

    #[test]
    fn acl_examples() {
        let w = Space::new(3, 3).unwrap();
        let agl = agl_group(&w);
        let (e1, e2) = (1, 3);
        assert_eq!(acl_pair(&w, &agl, e1, e2).unwrap(), w.affine_closure(&[e1, e2]).unwrap().members);
        assert_eq!(acl_pair(&w, &agl, 0, e1).unwrap(), vec![0, 1, 2]);
        assert_eq!(acl_pair(&w, &sym_group(27), 5, 7).unwrap(), vec![5, 7]);
        let v = Space::new(3, 2).unwrap();
        assert_eq!(acl_pair(&v, &agl_group(&v), 1, 3).unwrap_err(), ClassifyError::DegenerateSpan);
    }
}
