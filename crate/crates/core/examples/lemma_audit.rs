//! Brute-force audit of identities, lemmas and bound soundness over a seeded
//! random fleet.

use mixpaths::{audit_fleet, builtin_examples, inequality_lemma_grid, random_fleet, AuditOptions};

fn main() -> mixpaths::Result<()> {
    let grid = inequality_lemma_grid(101);
    println!("inequality grid: {} checks, {} violations", grid.checks, grid.violations.len());

    let mut fleet = builtin_examples();
    fleet.extend(random_fleet(42, 100, 5)?);
    let report = audit_fleet(&fleet, &AuditOptions::default())?;
    println!(
        "{} chains, {} checks, {} violations, {} notes",
        report.chains,
        report.checks,
        report.violations.len(),
        report.observations.len()
    );
    for note in report.observations.iter().take(3) {
        println!("  note on {}: {}", note.chain, note.note);
    }

    let faulty = audit_fleet(
        &fleet[..5],
        &AuditOptions {
            inject_fault: true,
            ..Default::default()
        },
    )?;
    println!("with an injected fault: {} violations", faulty.violations.len());
    if let Some(v) = faulty.violations.first() {
        println!("  {v}");
    }
    Ok(())
}
