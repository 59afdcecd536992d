//! Kochen-Specker colorability of the built-in scenarios.

use contextuality::assignments::{ks_colorability, Colorability};
use contextuality::catalog;

fn main() -> contextuality::Result<()> {
    for entry in catalog::catalog() {
        let report = ks_colorability(&entry.scenario)?;
        let verdict = match &report.result {
            Colorability::Sat(w) => format!("SAT, witness {w}"),
            Colorability::Unsat => "UNSAT".to_string(),
        };
        println!("{:>9}: {verdict} ({} nodes)", entry.name(), report.nodes_visited);
    }

    // every event lies in exactly two of the nine bases
    let counts = catalog::cabello18_scenario().membership_counts();
    println!("cabello18 membership counts: {counts:?}");
    Ok(())
}
