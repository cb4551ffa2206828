//! Classifies the group generated by a generator file, or by GL(2,3)
//! together with one extra permutation when no file is given.
//!
//! `cargo run --release --example classify_file -- path/to/group.gens`

use reduct_atlas::classify::Classifier;
use reduct_atlas::field::Space;
use reduct_atlas::perm::{gl_group, io, Perm, PermGroup};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (space, group) = match std::env::args().nth(1) {
        Some(path) => {
            let file = io::parse(&std::fs::read_to_string(path)?)?;
            let space = Space::new(file.p, file.n)?;
            let group = PermGroup::generate_on(space.size() as usize, &file.gens, 0)?;
            (space, group)
        }
        None => {
            let space = Space::new(3, 2)?;
            let extra = Perm::from_cycles(9, &[&[1, 2]])?;
            let group = gl_group(&space).join_with(&[extra])?;
            (space, group)
        }
    };
    println!("{}", io::write(space.p(), space.n(), group.gens()));
    let record = Classifier::new(&space).classify(&group)?;
    println!("{}", serde_json::to_string_pretty(&record.to_json())?);
    Ok(())
}
