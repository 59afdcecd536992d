//! Three pairwise-measurable events, each pair exactly-one: no joint
//! distribution exists, but a signed one does.

use contextuality::catalog;
use contextuality::distributions::context_marginals;
use contextuality::optimize::{jpd_feasible, min_negativity_jqd, support_for, MarginalConstraintSet, SupportClass};

fn main() -> contextuality::Result<()> {
    let q = catalog::specker_jqd_fixture();
    let s = q.scenario_arc();
    for (ctx, table) in s.contexts().iter().zip(context_marginals(&q)?) {
        let cells: Vec<String> = table.entries().map(|(k, w)| format!("{k}:{w}")).collect();
        println!("{:?}: {}", ctx.members, cells.join(" "));
    }

    let targets = MarginalConstraintSet::from_distribution(&q)?;
    let full = support_for(s, SupportClass::Full)?;
    println!("JPD feasible: {}", jpd_feasible(s, &targets, &full)?.is_optimal());
    println!("minimal negativity: {}", min_negativity_jqd(s, &targets, &full)?.objective);
    Ok(())
}
