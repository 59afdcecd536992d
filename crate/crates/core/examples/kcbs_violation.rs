//! The pentagram inequality: classical bound from exclusive assignments,
//! quantum value from Born probabilities.

use contextuality::catalog;
use contextuality::inequality::evaluate_inequality;
use contextuality::quantum::{born_probabilities, projector_from_vector};

fn main() -> contextuality::Result<()> {
    let entry = catalog::lookup(catalog::KCBS)?;
    let projectors: Vec<_> = catalog::kcbs_vectors().iter().map(projector_from_vector).collect();

    for (name, state) in &entry.states {
        let p = born_probabilities(state, &projectors)?;
        let r = evaluate_inequality(&entry.scenario, &[1.0; 5], &p)?;
        println!(
            "{name:>9}: sum p = {:.10}  classical bound = {}  violated = {}",
            r.value, r.classical_bound, r.violated
        );
    }
    Ok(())
}
