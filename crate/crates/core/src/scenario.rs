//! Measurement scenarios: events, contexts (hyperedges) and the exclusivity
//! structure they induce.
//!
//! A [`Scenario`] is always valid once constructed. Raw data coming from
//! files or callers is checked by [`validate_scenario`], which reports every
//! violation instead of stopping at the first one.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Label given to the auxiliary "none of the events occurs" vertex.
pub const NULL_EVENT_LABEL: &str = "ω0";

/// A jointly measurable set of mutually exclusive events.
///
/// `complete` marks contexts in which exactly one event must occur.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Context {
    pub members: Vec<usize>,
    pub complete: bool,
}

impl Context {
    pub fn exclusive<I: IntoIterator<Item = usize>>(members: I) -> Self {
        Context {
            members: members.into_iter().collect(),
            complete: false,
        }
    }

    pub fn complete<I: IntoIterator<Item = usize>>(members: I) -> Self {
        Context {
            members: members.into_iter().collect(),
            complete: true,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, event: usize) -> bool {
        self.members.contains(&event)
    }

    fn key(&self) -> Vec<usize> {
        let mut key = self.members.clone();
        key.sort_unstable();
        key
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoEvents,
    IndexOutOfRange { context: usize, index: usize },
    RepeatedMember { context: usize, index: usize },
    ContextTooSmall { context: usize, size: usize },
    DuplicateContext { first: usize, second: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoEvents => write!(f, "scenario has no events"),
            Violation::IndexOutOfRange { context, index } => {
                write!(f, "context {context} references event {index}, which does not exist")
            }
            Violation::RepeatedMember { context, index } => {
                write!(f, "context {context} lists event {index} more than once")
            }
            Violation::ContextTooSmall { context, size } => {
                write!(f, "context {context} has {size} event(s); at least 2 are required")
            }
            Violation::DuplicateContext { first, second } => {
                write!(f, "contexts {first} and {second} contain the same events")
            }
        }
    }
}

/// Checks raw scenario data against every scenario invariant.
///
/// Returns an empty list for well-formed data.
pub fn validate_scenario(event_count: usize, contexts: &[Context]) -> Vec<Violation> {
    let mut violations = Vec::new();
    if event_count == 0 {
        violations.push(Violation::NoEvents);
    }
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    for (ci, ctx) in contexts.iter().enumerate() {
        if ctx.len() < 2 {
            violations.push(Violation::ContextTooSmall {
                context: ci,
                size: ctx.len(),
            });
        }
        let mut members = BTreeSet::new();
        for &index in &ctx.members {
            if index >= event_count {
                violations.push(Violation::IndexOutOfRange { context: ci, index });
            }
            if !members.insert(index) {
                violations.push(Violation::RepeatedMember { context: ci, index });
            }
        }
        match seen.get(&ctx.key()) {
            Some(&first) => violations.push(Violation::DuplicateContext { first, second: ci }),
            None => {
                seen.insert(ctx.key(), ci);
            }
        }
    }
    violations
}

#[derive(Deserialize)]
struct RawScenario {
    name: String,
    events: Vec<String>,
    contexts: Vec<Context>,
}

/// Events plus contexts; the measurement hypergraph.
///
/// Context members are stored sorted. Indices are the identity of an event;
/// labels only appear in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawScenario")]
pub struct Scenario {
    name: String,
    events: Vec<String>,
    contexts: Vec<Context>,
}

impl TryFrom<RawScenario> for Scenario {
    type Error = Error;

    fn try_from(raw: RawScenario) -> Result<Self> {
        Scenario::new(raw.name, raw.events, raw.contexts)
    }
}

impl Scenario {
    pub fn new(
        name: impl Into<String>,
        events: Vec<String>,
        mut contexts: Vec<Context>,
    ) -> Result<Self> {
        let violations = validate_scenario(events.len(), &contexts);
        if !violations.is_empty() {
            return Err(Error::InvalidScenario(violations));
        }
        for ctx in &mut contexts {
            ctx.members.sort_unstable();
        }
        Ok(Scenario {
            name: name.into(),
            events,
            contexts,
        })
    }

    /// Builds a scenario with events labelled `A1..AN`.
    pub fn with_numbered_events(
        name: impl Into<String>,
        event_count: usize,
        contexts: Vec<Context>,
    ) -> Result<Self> {
        let events = (1..=event_count).map(|i| format!("A{i}")).collect();
        Scenario::new(name, events, contexts)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn events(&self) -> &[String] {
        &self.events
    }

    pub fn event_count(&self) -> usize {
        self.events.len()
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn complete_contexts(&self) -> impl Iterator<Item = &Context> {
        self.contexts.iter().filter(|c| c.complete)
    }

    pub fn complete_count(&self) -> usize {
        self.complete_contexts().count()
    }

    /// Number of contexts each event belongs to.
    pub fn membership_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.event_count()];
        for ctx in &self.contexts {
            for &i in &ctx.members {
                counts[i] += 1;
            }
        }
        counts
    }

    /// Same events, contexts and flags, ignoring context order and labels.
    pub fn same_structure(&self, other: &Scenario) -> bool {
        let key = |s: &Scenario| {
            let mut v: Vec<(Vec<usize>, bool)> = s
                .contexts
                .iter()
                .map(|c| (c.members.clone(), c.complete))
                .collect();
            v.sort();
            v
        };
        self.event_count() == other.event_count() && key(self) == key(other)
    }

    /// Returns a copy with contexts in lexicographic member order.
    pub fn canonical(&self) -> Scenario {
        let mut out = self.clone();
        out.contexts
            .sort_by(|a, b| a.members.cmp(&b.members).then(a.complete.cmp(&b.complete)));
        out
    }
}

/// Undirected exclusivity graph: an edge joins every pair of events that
/// co-occur in some context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExclusivityGraph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl ExclusivityGraph {
    pub fn new(vertex_count: usize) -> Self {
        ExclusivityGraph {
            vertex_count,
            edges: BTreeSet::new(),
        }
    }

    /// Inserts `{a, b}`; self-loops are ignored.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.vertex_count && b < self.vertex_count);
        if a != b {
            self.edges.insert((a.min(b), a.max(b)));
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

pub fn exclusivity_graph(s: &Scenario) -> ExclusivityGraph {
    let mut graph = ExclusivityGraph::new(s.event_count());
    for ctx in s.contexts() {
        for (k, &a) in ctx.members.iter().enumerate() {
            for &b in &ctx.members[k + 1..] {
                graph.add_edge(a, b);
            }
        }
    }
    graph
}

/// Relaxes completeness and re-closes the scenario with a null event.
///
/// Every original context is kept but demoted to exclusive-only; a new
/// event [`NULL_EVENT_LABEL`] is appended, and one complete context spanning
/// all `N + 1` events is added.
pub fn augment_scenario(s: &Scenario) -> Scenario {
    let n = s.event_count();
    let mut events = s.events.clone();
    // repeated augmentation primes the label to keep events distinguishable
    let mut label = NULL_EVENT_LABEL.to_string();
    while events.contains(&label) {
        label.push('\'');
    }
    events.push(label);
    let mut contexts: Vec<Context> = s
        .contexts
        .iter()
        .map(|c| Context::exclusive(c.members.iter().copied()))
        .collect();
    contexts.push(Context::complete(0..=n));
    Scenario::new(s.name.clone(), events, contexts)
        .expect("augmenting a valid scenario yields a valid scenario")
}
