//! Runs one property suite and prints each check.
//!
//! `cargo run --release --example verify -- sigma-laws 3 2`

use reduct_atlas::field::Space;
use reduct_atlas::verify::{run_suite, Suite, VerifyOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let suite = Suite::parse(args.first().map(String::as_str).unwrap_or("sigma-laws"))?;
    let p = args.get(1).map_or(Ok(3), |s| s.parse())?;
    let n = args.get(2).map_or(Ok(2), |s| s.parse())?;
    let report = run_suite(suite, &Space::new(p, n)?, &VerifyOptions::default())?;
    for c in &report.checks {
        let status = if c.passed() { "ok" } else { "FAILED" };
        println!("{:<32} {:>7} {status}", c.name, c.instances);
        if let Some(ce) = &c.counterexample {
            println!("  {ce}");
        }
    }
    for note in &report.notes {
        println!("note: {note}");
    }
    Ok(())
}
