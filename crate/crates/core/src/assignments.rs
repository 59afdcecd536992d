//! Deterministic {0,1} outcome assignments and Kochen-Specker colorability.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scenario::{exclusivity_graph, Scenario};

/// Default cap on the number of assignments an enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: usize = 1 << 20;

/// Default cap on search nodes for [`ks_colorability`].
pub const DEFAULT_NODE_CAP: u64 = 50_000_000;

/// One outcome bit per event. Rendered as a bit string, event 0 first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Assignment(bits)
    }

    /// `ω₀`: every event is assigned 0.
    pub fn zeros(n: usize) -> Self {
        Assignment(vec![false; n])
    }

    /// `ωᵢ`: a single 1 at event `i` (0-based).
    pub fn single(n: usize, i: usize) -> Self {
        let mut bits = vec![false; n];
        bits[i] = true;
        Assignment(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    /// Restriction to `members`, packed so that `members[k]` is bit `k`
    /// counted from the most significant end. This matches reading the
    /// restricted bit string left to right as a binary number.
    pub fn restriction_index(&self, members: &[usize]) -> usize {
        members
            .iter()
            .fold(0, |acc, &m| (acc << 1) | usize::from(self.0[m]))
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Assignment({self})")
    }
}

impl FromStr for Assignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("invalid bit string {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Assignment)
    }
}

impl Serialize for Assignment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Assignment {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn check_len(s: &Scenario, a: &Assignment) -> Result<()> {
    if a.len() != s.event_count() {
        return Err(Error::LengthMismatch {
            expected: s.event_count(),
            found: a.len(),
        });
    }
    Ok(())
}

/// Every context holds at most one event assigned 1.
pub fn satisfies_exclusivity(s: &Scenario, a: &Assignment) -> Result<bool> {
    check_len(s, a)?;
    Ok(s.contexts()
        .iter()
        .all(|c| c.members.iter().filter(|&&i| a.get(i)).count() <= 1))
}

/// Every context flagged complete holds exactly one event assigned 1.
pub fn satisfies_completeness(s: &Scenario, a: &Assignment) -> Result<bool> {
    check_len(s, a)?;
    Ok(s.complete_contexts()
        .all(|c| c.members.iter().filter(|&&i| a.get(i)).count() == 1))
}

/// All exclusive assignments in lexicographic bit-string order, i.e. the
/// independent sets of the exclusivity graph. Fails once more than `cap`
/// assignments would be produced.
pub fn enumerate_exclusive_assignments_capped(s: &Scenario, cap: usize) -> Result<Vec<Assignment>> {
    let adj = exclusivity_graph(s).neighbors();
    let n = s.event_count();
    let mut out = Vec::new();
    let mut bits = vec![false; n];
    // blocked[i] counts chosen neighbours of i
    let mut blocked = vec![0usize; n];

    fn walk(
        i: usize,
        adj: &[Vec<usize>],
        bits: &mut Vec<bool>,
        blocked: &mut Vec<usize>,
        out: &mut Vec<Assignment>,
        cap: usize,
    ) -> Result<()> {
        if i == bits.len() {
            if out.len() == cap {
                return Err(Error::ResourceLimit {
                    what: "exclusive assignment enumeration",
                    limit: cap as u64,
                });
            }
            out.push(Assignment(bits.clone()));
            return Ok(());
        }
        walk(i + 1, adj, bits, blocked, out, cap)?;
        if blocked[i] == 0 {
            bits[i] = true;
            for &j in &adj[i] {
                blocked[j] += 1;
            }
            walk(i + 1, adj, bits, blocked, out, cap)?;
            for &j in &adj[i] {
                blocked[j] -= 1;
            }
            bits[i] = false;
        }
        Ok(())
    }

    walk(0, &adj, &mut bits, &mut blocked, &mut out, cap)?;
    Ok(out)
}

pub fn enumerate_exclusive_assignments(s: &Scenario) -> Result<Vec<Assignment>> {
    enumerate_exclusive_assignments_capped(s, DEFAULT_ENUMERATION_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Colorability {
    /// A witness satisfying exclusivity and completeness.
    Sat(Assignment),
    /// No such assignment exists; the search was exhausted.
    Unsat,
}

impl Colorability {
    pub fn is_sat(&self) -> bool {
        matches!(self, Colorability::Sat(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorabilityReport {
    pub result: Colorability,
    pub nodes_visited: u64,
}

/// Decides whether `s` admits an assignment that is exclusive on every
/// context and complete on every complete context.
pub fn ks_colorability(s: &Scenario) -> Result<ColorabilityReport> {
    ks_colorability_capped(s, DEFAULT_NODE_CAP)
}

pub fn ks_colorability_capped(s: &Scenario, node_cap: u64) -> Result<ColorabilityReport> {
    let mut search = Search::new(s, node_cap);
    let found = search.run()?;
    let result = match found {
        Some(bits) => Colorability::Sat(Assignment(bits)),
        None => Colorability::Unsat,
    };
    Ok(ColorabilityReport {
        result,
        nodes_visited: search.nodes,
    })
}

/// Backtracking over events in descending context-membership order (ties
/// by lowest index). Each decision tries 0 before 1 and is followed by
/// propagation of at-most-one and exactly-one constraints.
struct Search<'a> {
    scenario: &'a Scenario,
    order: Vec<usize>,
    contexts_of: Vec<Vec<usize>>,
    values: Vec<Option<bool>>,
    trail: Vec<usize>,
    nodes: u64,
    node_cap: u64,
}

impl<'a> Search<'a> {
    fn new(scenario: &'a Scenario, node_cap: u64) -> Self {
        let n = scenario.event_count();
        let counts = scenario.membership_counts();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| counts[b].cmp(&counts[a]).then(a.cmp(&b)));
        let mut contexts_of = vec![Vec::new(); n];
        for (ci, ctx) in scenario.contexts().iter().enumerate() {
            for &i in &ctx.members {
                contexts_of[i].push(ci);
            }
        }
        Search {
            scenario,
            order,
            contexts_of,
            values: vec![None; n],
            trail: Vec::new(),
            nodes: 0,
            node_cap,
        }
    }

    fn run(&mut self) -> Result<Option<Vec<bool>>> {
        // contexts whose constraints may already force values
        let all: Vec<usize> = (0..self.scenario.contexts().len()).collect();
        if !self.propagate(all) {
            return Ok(None);
        }
        if self.descend()? {
            Ok(Some(self.values.iter().map(|v| v.unwrap_or(false)).collect()))
        } else {
            Ok(None)
        }
    }

    fn descend(&mut self) -> Result<bool> {
        let Some(var) = self.order.iter().copied().find(|&i| self.values[i].is_none()) else {
            return Ok(true);
        };
        for value in [false, true] {
            self.nodes += 1;
            if self.nodes > self.node_cap {
                return Err(Error::ResourceLimit {
                    what: "colorability search nodes",
                    limit: self.node_cap,
                });
            }
            let mark = self.trail.len();
            if self.assign(var, value) && self.descend()? {
                return Ok(true);
            }
            self.undo(mark);
        }
        Ok(false)
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let i = self.trail.pop().unwrap();
            self.values[i] = None;
        }
    }

    fn set(&mut self, i: usize, value: bool) -> bool {
        match self.values[i] {
            Some(v) => v == value,
            None => {
                self.values[i] = Some(value);
                self.trail.push(i);
                true
            }
        }
    }

    fn assign(&mut self, i: usize, value: bool) -> bool {
        if !self.set(i, value) {
            return false;
        }
        let touched = self.contexts_of[i].clone();
        self.propagate(touched)
    }

    /// Fixpoint propagation over a worklist of context indices. Returns
    /// false on conflict.
    fn propagate(&mut self, mut queue: Vec<usize>) -> bool {
        while let Some(ci) = queue.pop() {
            let ctx = &self.scenario.contexts()[ci];
            let mut ones = 0;
            let mut free = Vec::new();
            for &m in &ctx.members {
                match self.values[m] {
                    Some(true) => ones += 1,
                    Some(false) => {}
                    None => free.push(m),
                }
            }
            let forced = match (ones, free.len(), ctx.complete) {
                (o, _, _) if o > 1 => return false,
                (1, _, _) => Some(false),
                (0, 0, true) => return false,
                (0, 1, true) => Some(true),
                _ => None,
            };
            if let Some(value) = forced {
                for m in free {
                    if !self.set(m, value) {
                        return false;
                    }
                    queue.extend(self.contexts_of[m].iter().copied());
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::Context;

    fn kcbs(complete: bool) -> Scenario {
        Scenario::with_numbered_events(
            "kcbs",
            5,
            (0..5)
                .map(|i| Context {
                    members: vec![i, (i + 1) % 5],
                    complete,
                })
                .collect(),
        )
        .unwrap()
    }

    fn a(bits: &str) -> Assignment {
        bits.parse().unwrap()
    }

    fn brute_force_count(s: &Scenario, completeness: bool) -> Vec<Assignment> {
        let n = s.event_count();
        (0u32..1 << n)
            .map(|m| Assignment((0..n).map(|i| m >> (n - 1 - i) & 1 == 1).collect()))
            .filter(|x| {
                satisfies_exclusivity(s, x).unwrap()
                    && (!completeness || satisfies_completeness(s, x).unwrap())
            })
            .collect()
    }

    #[test]
    fn kcbs_exclusivity_examples() {
        let s = kcbs(false);
        assert!(satisfies_exclusivity(&s, &a("10100")).unwrap());
        assert!(!satisfies_exclusivity(&s, &a("11000")).unwrap());
        assert!(satisfies_exclusivity(&s, &a("00000")).unwrap());
        assert!(matches!(
            satisfies_exclusivity(&s, &a("101")),
            Err(Error::LengthMismatch { expected: 5, found: 3 })
        ));
    }

    #[test]
    fn completeness_examples() {
        let s = Scenario::with_numbered_events("t", 3, vec![Context::complete([0, 1, 2])]).unwrap();
        assert!(satisfies_completeness(&s, &a("010")).unwrap());
        assert!(!satisfies_completeness(&s, &a("000")).unwrap());
        assert!(satisfies_completeness(&kcbs(false), &a("00000")).unwrap());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let s = kcbs(false);
        let got = enumerate_exclusive_assignments(&s).unwrap();
        assert_eq!(got.len(), 11);
        assert_eq!(got, brute_force_count(&s, false));
        assert!(got.windows(2).all(|w| w[0].to_string() < w[1].to_string()));

        let tri = Scenario::with_numbered_events("t", 3, vec![Context::complete([0, 1, 2])]).unwrap();
        let got: Vec<String> = enumerate_exclusive_assignments(&tri)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(got, ["000", "001", "010", "100"]);

        let specker = Scenario::with_numbered_events(
            "specker",
            3,
            vec![
                Context::complete([0, 1]),
                Context::complete([0, 2]),
                Context::complete([1, 2]),
            ],
        )
        .unwrap();
        assert_eq!(enumerate_exclusive_assignments(&specker).unwrap().len(), 4);
    }

    #[test]
    fn enumeration_cap_is_an_error() {
        let s = Scenario::with_numbered_events("free", 6, vec![]).unwrap();
        assert_eq!(enumerate_exclusive_assignments_capped(&s, 64).unwrap().len(), 64);
        assert!(matches!(
            enumerate_exclusive_assignments_capped(&s, 63),
            Err(Error::ResourceLimit { limit: 63, .. })
        ));
    }

    #[test]
    fn non_complete_scenario_is_colorable_by_zeros() {
        let r = ks_colorability(&kcbs(false)).unwrap();
        assert_eq!(r.result, Colorability::Sat(Assignment::zeros(5)));
    }

    #[test]
    fn odd_cycle_of_complete_pairs_is_not_colorable() {
        let s = kcbs(true);
        assert!(brute_force_count(&s, true).is_empty());
        assert_eq!(ks_colorability(&s).unwrap().result, Colorability::Unsat);
    }

    #[test]
    fn even_cycle_of_complete_pairs_is_colorable() {
        let s = Scenario::with_numbered_events(
            "c4",
            4,
            (0..4).map(|i| Context::complete([i, (i + 1) % 4])).collect(),
        )
        .unwrap();
        match ks_colorability(&s).unwrap().result {
            Colorability::Sat(w) => {
                assert!(satisfies_exclusivity(&s, &w).unwrap());
                assert!(satisfies_completeness(&s, &w).unwrap());
            }
            Colorability::Unsat => panic!("4-cycle should be colorable"),
        }
    }

    #[test]
    fn node_cap_is_enforced() {
        let s = Scenario::with_numbered_events("free", 10, vec![]).unwrap();
        // all-zero path needs one node per event
        assert!(ks_colorability_capped(&s, 10).is_ok());
        assert!(ks_colorability_capped(&s, 9).is_err());
    }

    #[test]
    fn bit_string_round_trip_and_restriction() {
        let x = a("0110");
        assert_eq!(x.to_string(), "0110");
        assert_eq!(x.restriction_index(&[0, 1]), 0b01);
        assert_eq!(x.restriction_index(&[1, 2, 3]), 0b110);
        assert!("01x".parse::<Assignment>().is_err());
        assert_eq!(serde_json::to_string(&x).unwrap(), "\"0110\"");
    }
}
