//! Algebraic closure of pairs and the sets A_k(S) on F_3^3.

use reduct_atlas::classify::{a_k_set, acl_pair, DEFAULT_AK_BUDGET};
use reduct_atlas::field::Space;
use reduct_atlas::geometry::agl_group;
use reduct_atlas::perm::{gl_group, sym_fixing_zero};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let space = Space::new(3, 3)?;
    let agl = agl_group(&space);
    println!("acl(1, 3) under AGL = {:?}", acl_pair(&space, &agl, 1, 3)?);
    println!("affine line through 1, 3 = {:?}", space.affine_line(1, 3));

    for (name, group) in [("GL", gl_group(&space)), ("AGL", agl), ("Sym_0", sym_fixing_zero(27))] {
        for s in [vec![1], vec![1, 3], vec![1, 3, 9]] {
            let r = a_k_set(&space, &group, &s, 2, DEFAULT_AK_BUDGET)?;
            println!("{name:>5} A_2({s:?}) = {:<14} |set| = {:>2}", r.shape.as_str(), r.set.len());
        }
    }
    Ok(())
}
