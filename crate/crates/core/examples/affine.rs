//! Affine maps of F_3^2: translation-plus-linear decomposition, and the
//! automorphism group of the relation a + b = c + d found by brute force.

use reduct_atlas::field::Space;
use reduct_atlas::geometry::{agl_group, brute_aut_of_r, ftag_decompose, relation_r, translation};
use reduct_atlas::perm::{gl_group, Perm};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let space = Space::new(3, 2)?;
    let gl = gl_group(&space);
    let g = gl.gens()[0].then(&translation(&space, 4));
    let (t, phi) = ftag_decompose(&space, &g).expect("affine");
    println!("g = {g}\n  = linear {phi} then + {t}");

    let mut agl_count = 0;
    agl_group(&space).for_each_element(|x| agl_count += ftag_decompose(&space, x).is_some() as usize);
    println!("{agl_count} of 432 affine maps decompose");
    let swap = Perm::from_cycles(9, &[&[1, 2]])?;
    println!("transposition (1 2) decomposes: {}", ftag_decompose(&space, &swap).is_some());

    println!("|R| = {}", relation_r(&space).len());
    let aut = brute_aut_of_r(&space)?;
    println!("Aut(V, R) has order {} and equals AGL(2,3): {}", aut.order(), aut.equals(&agl_group(&space))?);
    Ok(())
}
