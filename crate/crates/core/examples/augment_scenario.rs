//! Trading completeness for a null event: every context becomes
//! exclusive-only and one new complete context covers all events.

use contextuality::catalog;
use contextuality::scenario::{augment_scenario, Scenario};

fn show(s: &Scenario) {
    println!("{} events, {} contexts", s.event_count(), s.contexts().len());
    for c in s.contexts() {
        let labels: Vec<&str> = c.members.iter().map(|&i| s.events()[i].as_str()).collect();
        println!("  {}{}", labels.join(" "), if c.complete { "  (complete)" } else { "" });
    }
}

fn main() {
    let s = catalog::specker_scenario();
    show(&s);
    let once = augment_scenario(&s);
    show(&once);
    show(&augment_scenario(&once));
}
