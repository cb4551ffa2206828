//! Builds the catalog of overgroups of GL(n, p) and prints one line per group.
//!
//! Usage: cargo run --release --example catalog -- [p] [n]

use reduct_atlas::classify::{catalog, CatalogOptions};
use reduct_atlas::field::Space;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u32> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (p, n) = (args.first().copied().unwrap_or(3), args.get(1).copied().unwrap_or(2));
    let space = Space::new(p, n)?;
    let cat = catalog(&space, &CatalogOptions::default())?;
    println!("{} distinct groups between GL({n},{p}) and Sym({})", cat.entries.len(), space.size());
    for e in &cat.entries {
        let r = &e.record;
        let gamma = r.gamma.as_ref().map_or("-".to_string(), |g| format!("{:?}", g.elements()));
        let routes: Vec<String> = e
            .constructions
            .iter()
            .map(|c| format!("{}{}", c.route.as_str(), if c.faithful { "" } else { "*" }))
            .collect();
        println!(
            "#{:<3} order {:>30}  {:<13} gamma {:<10} |N| {:<2} |H| {:<2} built by {}",
            e.id,
            r.order,
            r.case.as_str(),
            gamma,
            r.n_group.as_ref().map_or(0, |s| s.order()),
            r.h_group.as_ref().map_or(0, |s| s.order()),
            routes.join(" ")
        );
    }
    println!("(* = construction collapsed into a group with other parameters)");
    Ok(())
}
