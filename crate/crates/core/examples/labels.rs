//! Γ-classes, labellings and σ on F_3^2, and a group G(N, H) built from a
//! normal pair of label groups with its order checked against the formula.

use reduct_atlas::classify::{build_g_nh, g_nh_order, normal_pairs};
use reduct_atlas::field::Space;
use reduct_atlas::gamma::{GammaSubgroup, LabelledSpace};
use reduct_atlas::perm::{gl_group, Perm};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let space = Space::new(3, 2)?;
    let gamma = GammaSubgroup::full(3);
    let ls = LabelledSpace::new(&space, &gamma);
    println!("classes: {:?}", ls.classes().classes());
    println!("labelling: {}", ls.labelling().to_json());

    let gl = gl_group(&space);
    let g = &gl.gens()[0];
    for v in [1, 3, 4] {
        println!("sigma(g, {v}) = {:?}", gamma.values(&ls.sigma(g, v)?));
    }
    let flip = ls.lift_on_class(1, &Perm::from_cycles(2, &[&[0, 1]])?);
    println!(
        "flip on class 1: {flip}, sigma at 1 = {:?}, at 3 = {:?}",
        gamma.values(&ls.sigma(&flip, 1)?),
        gamma.values(&ls.sigma(&flip, 3)?)
    );

    for (n, h) in normal_pairs(gamma.order()) {
        let group = build_g_nh(&ls, &n, &h)?;
        println!(
            "N = {:?}, H = {:?}: |G(N,H)| = {} (formula {})",
            n.values(&gamma),
            h.values(&gamma),
            group.order(),
            g_nh_order(&n, &h, ls.classes().num_nonzero())
        );
    }
    Ok(())
}
