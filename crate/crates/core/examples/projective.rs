//! Recovers a linear map from its action on the projective points of F_3^3,
//! then shows why the plane is different: there every permutation of the
//! projective points preserves the (single) line.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use reduct_atlas::field::Space;
use reduct_atlas::geometry::{ProjPerm, ProjectiveSpace};
use reduct_atlas::perm::{gl_group, Perm};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let space = Space::new(3, 3)?;
    let ps = ProjectiveSpace::new(&space);
    let gl = gl_group(&space);
    println!("PG(2,3): {} points, {} lines", ps.points().len(), ps.lines().len());

    let g = gl.random_element(&mut rng);
    let q = ps.projective_action(&g)?;
    let m = ps.ftpg_reconstruct(&q)?.expect("linear maps induce collineations");
    println!("projective action      {}", q.perm());
    println!("reconstructed linear   {}", m);
    println!("same action: {}", ps.projective_action(&m)? == q);

    let swap = Perm::from_cycles(ps.points().len(), &[&[0, 1]])?;
    let bad = ProjPerm(q.perm().then(&swap));
    println!(
        "after one transposition: preserves lines {}, reconstruct {:?}",
        ps.preserves_projective_lines(&bad),
        ps.ftpg_reconstruct(&bad)?.map(|m| m.to_string())
    );

    let plane = ProjectiveSpace::new(&Space::new(5, 2)?);
    let any = ProjPerm(Perm::from_cycles(plane.points().len(), &[&[0, 1, 2]])?);
    println!(
        "PG(1,5): {} points on one line; a 3-cycle preserves lines: {}, yet reconstruction is refused: {}",
        plane.points().len(),
        plane.preserves_projective_lines(&any),
        plane.ftpg_reconstruct(&any).is_err()
    );
    Ok(())
}
