//! Enumerates every group between GL(n, p) and Sym(p^n) and compares the
//! result with the catalog.
//!
//! Usage: cargo run --release --example interval -- [p] [n]

use std::time::Instant;

use reduct_atlas::classify::{catalog, CatalogOptions};
use reduct_atlas::field::Space;
use reduct_atlas::interval::{cross_check, enumerate_overgroups, DEFAULT_MAX_POINTS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u32> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (p, n) = (args.first().copied().unwrap_or(3), args.get(1).copied().unwrap_or(2));
    let space = Space::new(p, n)?;
    let start = Instant::now();
    let report = enumerate_overgroups(&space, DEFAULT_MAX_POINTS)?;
    println!("{} groups, {} joins, {:.1?}", report.groups.len(), report.joins, start.elapsed());
    let cat = catalog(&space, &CatalogOptions::default())?;
    let check = cross_check(&report, &cat)?;
    for g in &report.groups {
        let in_catalog = check.matched.iter().find(|m| m.1 == g.id).map(|m| m.0);
        println!(
            "#{:<3} order {:>7}  fixes 0: {:<5}  {:<13} catalog {}",
            g.id,
            g.group.order(),
            g.record.fixes_zero,
            g.record.case.as_str(),
            in_catalog.map_or("-".to_string(), |id| format!("#{id}"))
        );
        if !g.record.notes.is_empty() {
            println!("      {}", g.record.notes.join("; "));
        }
    }
    println!("unmatched: {:?}  catalog entries not found: {:?}", check.unmatched, check.missing);
    Ok(())
}
