use num_bigint::BigUint;

use super::{ClassifyError, SigmaGroup};
use crate::gamma::LabelledSpace;
use crate::perm::{Perm, PermGroup};

/// G* = the elements of `group` that fix every Γ-class setwise.
pub fn g_star(ls: &LabelledSpace, group: &PermGroup) -> Result<PermGroup, ClassifyError> {
    Ok(group.kernel_of_action(&ls.classes().to_partition())?)
}

/// The vector whose class witnesses H and N: the least nonzero vector.
fn witness(ls: &LabelledSpace) -> u32 {
    ls.classes().classes()[1][0]
}

/// H = {σ_f(g, v0) : g ∈ G*}. On G*, g ↦ σ_f(g, v0) is a homomorphism, so
/// its image is generated by the images of the generators.
pub fn extract_h(ls: &LabelledSpace, gstar: &PermGroup) -> Result<SigmaGroup, ClassifyError> {
    sigma_image(ls, gstar.gens())
}

/// N = {σ_f(g, v0) : g ∈ G*, g the identity off the class of v0}.
pub fn extract_n(ls: &LabelledSpace, gstar: &PermGroup) -> Result<SigmaGroup, ClassifyError> {
    let own = ls.classes().class_of(witness(ls));
    let outside: Vec<u32> = ls.space().points().filter(|&x| ls.classes().class_of(x) != own).collect();
    let fixer = gstar.pointwise_stabilizer(&outside)?;
    sigma_image(ls, fixer.gens())
}

fn sigma_image(ls: &LabelledSpace, gens: &[Perm]) -> Result<SigmaGroup, ClassifyError> {
    let v0 = witness(ls);
    let images = gens.iter().map(|g| ls.sigma(g, v0)).collect::<Result<Vec<_>, _>>()?;
    Ok(SigmaGroup::generated(ls.gamma().order(), &images))
}

/// (|H| / |N|) · |N|^c for c nonzero classes.
pub fn g_nh_order(n: &SigmaGroup, h: &SigmaGroup, classes: usize) -> BigUint {
    BigUint::from(h.order() / n.order()) * BigUint::from(n.order()).pow(classes as u32)
}

/// G(N, H): class-fixing permutations whose label permutations all lie in
/// one coset of N inside H.
///
/// Generated by N acting inside each class separately and by H acting on
/// every class at once. The order is checked against [`g_nh_order`].
pub fn build_g_nh(ls: &LabelledSpace, n: &SigmaGroup, h: &SigmaGroup) -> Result<PermGroup, ClassifyError> {
    if !n.is_normal_in(h) {
        return Err(ClassifyError::NotNormal);
    }
    let mut gens = Vec::new();
    let n_gens = n.generators();
    for c in ls.classes().nonzero() {
        gens.extend(n_gens.iter().map(|s| ls.lift_on_class(c, s)));
    }
    gens.extend(h.generators().iter().map(|s| ls.global_action(s)));
    let group = PermGroup::generate_on(ls.space().size() as usize, &gens, 0)?;
    let expected = g_nh_order(n, h, ls.classes().num_nonzero());
    if *group.order() != expected {
        return Err(ClassifyError::InternalCheck(format!(
            "G(N,H) has order {} but the formula gives {expected}",
            group.order()
        )));
    }
    Ok(group)
}

/// Membership in G(N, H) read directly off the σ-family of `g`.
pub fn in_g_nh(ls: &LabelledSpace, g: &Perm, n: &SigmaGroup, h: &SigmaGroup) -> bool {
    if g.degree() != ls.space().size() as usize || !ls.classes().is_fixed_by(g) {
        return false;
    }
    let sigmas: Option<Vec<Perm>> =
        ls.classes().nonzero().map(|c| ls.sigma(g, ls.classes().classes()[c][0]).ok()).collect();
    let Some(sigmas) = sigmas else {
        return false;
    };
    let first_inv = sigmas[0].inverse();
    sigmas.iter().all(|s| h.contains(s) && n.contains(&s.then(&first_inv)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::sigma_group::normal_pairs;
    use crate::field::Space;
    use crate::gamma::{gamma_subgroups, GammaSubgroup};
    use crate::perm::gl_group;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn flip() -> Perm {
        Perm::from_cycles(2, &[&[0, 1]]).unwrap()
    }

    #[test]
    fn gstar_and_extraction_for_gl() {
        let v = Space::new(3, 2).unwrap();
        let ls = LabelledSpace::new(&v, &GammaSubgroup::full(3));
        let gstar = g_star(&ls, &gl_group(&v)).unwrap();
        assert_eq!(*gstar.order(), BigUint::from(2u32));
        let h = extract_h(&ls, &gstar).unwrap();
        let n = extract_n(&ls, &gstar).unwrap();
        assert_eq!(h, SigmaGroup::generated(2, &[flip()]));
        assert_eq!(n, SigmaGroup::trivial(2));
        let trivial = PermGroup::trivial(9);
        assert_eq!(extract_h(&ls, &trivial).unwrap(), SigmaGroup::trivial(2));
        // the label-preserving group has trivial G*
        assert!(g_star(&ls, &ls.sym_f_group()).unwrap().is_trivial());
    }

    #[test]
    fn per_class_flips() {
        let v = Space::new(3, 2).unwrap();
        let ls = LabelledSpace::new(&v, &GammaSubgroup::full(3));
        let flips: Vec<Perm> = ls.classes().nonzero().map(|c| ls.lift_on_class(c, &flip())).collect();
        let gstar = PermGroup::generate(&flips).unwrap();
        let z2 = SigmaGroup::generated(2, &[flip()]);
        assert_eq!(extract_h(&ls, &gstar).unwrap(), z2);
        assert_eq!(extract_n(&ls, &gstar).unwrap(), z2);
        let joined = gl_group(&v).join(&gstar).unwrap();
        let brute = joined.elements().iter().filter(|g| ls.classes().is_fixed_by(g)).count();
        assert_eq!(brute, 16);
        assert_eq!(*g_star(&ls, &joined).unwrap().order(), BigUint::from(16u32));
        assert!(*joined.order() > BigUint::from(48u32) && *joined.order() < BigUint::from(40_320u32));
    }

    #[test]
    fn small_g_nh_examples() {
        let v = Space::new(3, 2).unwrap();
        let ls = LabelledSpace::new(&v, &GammaSubgroup::full(3));
        let one = SigmaGroup::trivial(2);
        let z2 = SigmaGroup::generated(2, &[flip()]);
        assert!(build_g_nh(&ls, &one, &one).unwrap().is_trivial());
        let minus = build_g_nh(&ls, &one, &z2).unwrap();
        assert_eq!(*minus.order(), BigUint::from(2u32));
        assert!(minus.contains(&ls.global_action(&flip())));
        assert_eq!(*build_g_nh(&ls, &z2, &z2).unwrap().order(), BigUint::from(16u32));
        let s3 = SigmaGroup::symmetric(3);
        let z2b = SigmaGroup::generated(3, &[Perm::from_cycles(3, &[&[0, 1]]).unwrap()]);
        let u = Space::new(7, 1).unwrap();
        let ls7 = LabelledSpace::new(&u, &GammaSubgroup::new(7, &[1, 2, 4]).unwrap());
        assert_eq!(build_g_nh(&ls7, &z2b, &s3).unwrap_err(), ClassifyError::NotNormal);
    }

    #[test]
    fn order_formula_all_pairs_small() {
        for (p, n) in [(3, 2), (5, 2)] {
            let v = Space::new(p, n).unwrap();
            for gamma in gamma_subgroups(p) {
                let ls = LabelledSpace::new(&v, &gamma);
                for (nn, hh) in normal_pairs(gamma.order()) {
                    let g = build_g_nh(&ls, &nn, &hh).unwrap();
                    assert_eq!(*g.order(), g_nh_order(&nn, &hh, ls.classes().num_nonzero()));
                }
            }
        }
    }

    #[test]
    fn membership_matches_definition() {
        let v = Space::new(3, 2).unwrap();
        let ls = LabelledSpace::new(&v, &GammaSubgroup::full(3));
        // all class-fixing permutations of F_3^2: 2^4 of them
        let flips: Vec<Perm> = ls.classes().nonzero().map(|c| ls.lift_on_class(c, &flip())).collect();
        let all = PermGroup::generate(&flips).unwrap().elements();
        assert_eq!(all.len(), 16);
        for (nn, hh) in normal_pairs(2) {
            let g = build_g_nh(&ls, &nn, &hh).unwrap();
            for x in &all {
                assert_eq!(g.contains(x), in_g_nh(&ls, x, &nn, &hh));
            }
        }
        let u = Space::new(5, 2).unwrap();
        let ls5 = LabelledSpace::new(&u, &GammaSubgroup::full(5));
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (nn, hh) in normal_pairs(4) {
            let g = build_g_nh(&ls5, &nn, &hh).unwrap();
            for _ in 0..20 {
                assert!(in_g_nh(&ls5, &g.random_element(&mut rng), &nn, &hh));
            }
        }
    }
}
