//! Minimal-negativity distributions matching the KCBS quantum marginals,
//! over two support classes.

use contextuality::catalog;
use contextuality::distributions::{construct_jqd, negativity};
use contextuality::optimize::{min_negativity_jqd, support_for, MarginalConstraintSet, SupportClass};
use contextuality::quantum::{born_probabilities, projector_from_vector};

fn main() -> contextuality::Result<()> {
    let entry = catalog::lookup(catalog::KCBS)?;
    let s = &entry.scenario;
    let projectors: Vec<_> = catalog::kcbs_vectors().iter().map(projector_from_vector).collect();
    let p = born_probabilities(entry.state("symmetric").unwrap(), &projectors)?;
    let targets = MarginalConstraintSet::from_event_probabilities(s, &p)?;

    println!("construction negativity: {:.10}", negativity(&construct_jqd(s, &p)?));
    for class in [SupportClass::Exclusive, SupportClass::Full] {
        let support = support_for(s, class)?;
        let sol = min_negativity_jqd(s, &targets, &support)?;
        println!("{class:?} support ({} points): minimum {:.10}", support.len(), sol.objective);
        for (a, w) in sol.support.iter().zip(&sol.weights) {
            if w.abs() > 1e-12 {
                println!("  {a} {w:+.10}");
            }
        }
    }
    Ok(())
}
