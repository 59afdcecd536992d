//! The relaxed-completeness distribution over ω₀..ω_N and the marginal
//! checks that recover exclusivity and completeness.

use contextuality::catalog;
use contextuality::distributions::{
    construct_jqd, negativity, verify_observable_completeness, verify_observable_exclusivity,
    QuasiDistribution,
};
use contextuality::quantum::{born_probabilities, projector_from_vector, QuantumState};
use contextuality::scalar::Scalar;

fn report<T: Scalar>(q: &QuasiDistribution<T>) -> contextuality::Result<()> {
    let s = q.scenario();
    println!("{} ({} mode)", s.name(), q.mode());
    println!("  weight(ω0) = {}", q.support()[0].1.render());
    println!("  negativity = {}", negativity(q).render());
    let exclusive = verify_observable_exclusivity(q)?.iter().filter(|c| c.exclusive).count();
    let complete = verify_observable_completeness(q)?.iter().filter(|c| c.passes).count();
    println!("  exclusivity holds on {exclusive}/{} contexts", s.contexts().len());
    println!("  completeness holds on {complete}/{} contexts", s.contexts().len());
    Ok(())
}

fn main() -> contextuality::Result<()> {
    let kcbs = catalog::lookup(catalog::KCBS)?;
    let projectors: Vec<_> = catalog::kcbs_vectors().iter().map(projector_from_vector).collect();
    let p = born_probabilities(kcbs.state("symmetric").unwrap(), &projectors)?;
    report(&construct_jqd(&kcbs.scenario, &p)?)?;

    // 1/4 on every ray is recovered exactly, so the rational path applies
    let cabello = catalog::lookup(catalog::CABELLO18)?;
    let projectors: Vec<_> = catalog::cabello18_vectors().iter().map(projector_from_vector).collect();
    let p = born_probabilities(&QuantumState::maximally_mixed(4), &projectors)?
        .rationalize()
        .expect("maximally mixed probabilities are 1/4");
    report(&construct_jqd(&cabello.scenario, &p)?)?;
    Ok(())
}
