//! Deriving contexts from a vector realization, under both context
//! policies.

use contextuality::catalog;
use contextuality::quantum::{derive_scenario_with, ComplexVector, ContextPolicy};

fn main() -> contextuality::Result<()> {
    // a qutrit basis, a second basis sharing its first element, and a
    // stray vector orthogonal only to the third
    let vectors = [
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 1.0, 1.0],
        [0.0, 1.0, -1.0],
        [1.0, 1.0, 0.0],
    ]
    .iter()
    .map(|v| ComplexVector::real(v))
    .collect::<contextuality::Result<Vec<_>>>()?;

    for policy in [ContextPolicy::CompleteFirst, ContextPolicy::MaximalCliques] {
        let s = derive_scenario_with(&vectors, "qutrit", policy)?;
        println!("{policy:?}:");
        for c in s.contexts() {
            println!("  {:?} complete={}", c.members, c.complete);
        }
    }

    let cabello = derive_scenario_with(&catalog::cabello18_vectors(), "c", ContextPolicy::MaximalCliques)?;
    println!(
        "cabello18 rays: {} maximal orthogonal sets, {} of them bases",
        cabello.contexts().len(),
        cabello.complete_count()
    );
    Ok(())
}
