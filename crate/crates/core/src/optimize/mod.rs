//! Marginal-matching linear programs.
//!
//! Both programs search for weights `q(ω)` over a caller-chosen support of
//! assignments whose context marginals equal prescribed tables:
//!
//! * [`jpd_feasible`] asks for `q ≥ 0` (a classical joint distribution);
//! * [`min_negativity_jqd`] allows signed weights and minimizes the total
//!   negative mass, using the split `q = q⁺ - q⁻`.
//!
//! In rational mode the optimal vertex is made unique by lexicographically
//! minimizing the weights in support order after the main objective.

mod simplex;

pub use simplex::{LpOutcome, StandardLp};

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::assignments::{enumerate_exclusive_assignments, Assignment};
use crate::distributions::{
    context_marginals, DistributionDocument, EventProbabilities, MarginalTable, QuasiDistribution,
};
use crate::error::{Error, Result};
use crate::scalar::{NumericMode, Scalar};
use crate::scenario::Scenario;

/// Largest support an LP may be built over.
pub const DEFAULT_SUPPORT_CAP: usize = 1 << 20;

/// Target marginal tables, one per scenario context, in context order.
#[derive(Clone, Debug, PartialEq)]
pub struct MarginalConstraintSet<T> {
    tables: Vec<MarginalTable<T>>,
}

impl<T: Scalar> MarginalConstraintSet<T> {
    /// Checks that tables match the scenario's contexts, are normalized,
    /// and agree on `p(Aᵢ = 1)` wherever contexts overlap.
    pub fn new(s: &Scenario, tables: Vec<MarginalTable<T>>) -> Result<Self> {
        if tables.len() != s.contexts().len() {
            return Err(Error::LengthMismatch {
                expected: s.contexts().len(),
                found: tables.len(),
            });
        }
        let mut seen: Vec<Option<T>> = vec![None; s.event_count()];
        for (ci, (table, ctx)) in tables.iter().zip(s.contexts()).enumerate() {
            if table.members() != ctx.members.as_slice() {
                return Err(Error::InconsistentTargets(format!(
                    "table {ci} does not cover context {ci}'s events"
                )));
            }
            if !table.total().approx_eq(&T::one()) {
                return Err(Error::InconsistentTargets(format!(
                    "table for context {ci} sums to {}",
                    table.total().render()
                )));
            }
            for (k, &event) in ctx.members.iter().enumerate() {
                let p = table.member_probability(k);
                match &seen[event] {
                    Some(prev) if !prev.approx_eq(&p) => {
                        return Err(Error::InconsistentTargets(format!(
                            "event {event} has probability {} in one context and {} in context {ci}",
                            prev.render(),
                            p.render()
                        )))
                    }
                    Some(_) => {}
                    None => seen[event] = Some(p),
                }
            }
        }
        Ok(MarginalConstraintSet { tables })
    }

    /// Reduced form: per-event probabilities with exclusivity inside each
    /// context (single-one outcomes get `pᵢ`, all-zeros `1 - Σ pᵢ`).
    pub fn from_event_probabilities(s: &Scenario, p: &EventProbabilities<T>) -> Result<Self> {
        if p.len() != s.event_count() {
            return Err(Error::LengthMismatch {
                expected: s.event_count(),
                found: p.len(),
            });
        }
        let tables = s
            .contexts()
            .iter()
            .map(|ctx| MarginalTable::from_event_probabilities(ctx, p))
            .collect::<Result<Vec<_>>>()?;
        Self::new(s, tables)
    }

    /// The context marginals of an existing (quasi)distribution.
    pub fn from_distribution(q: &QuasiDistribution<T>) -> Result<Self> {
        Self::new(q.scenario(), context_marginals(q)?)
    }

    pub fn tables(&self) -> &[MarginalTable<T>] {
        &self.tables
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    pub support: Vec<Assignment>,
    /// Empty when infeasible.
    pub weights: Vec<T>,
    /// Total negative mass of `weights`; zero when infeasible.
    pub objective: T,
}

impl<T: Scalar> LpSolution<T> {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    pub fn to_distribution(&self, scenario: &Arc<Scenario>) -> Result<QuasiDistribution<T>> {
        if !self.is_optimal() {
            return Err(Error::Infeasible);
        }
        QuasiDistribution::new(
            Arc::clone(scenario),
            self.support.iter().cloned().zip(self.weights.iter().cloned()).collect(),
        )
    }

    /// The distribution export format plus `objective` and `status`.
    pub fn to_document(&self, scenario: &str) -> LpDocument {
        LpDocument {
            distribution: DistributionDocument {
                scenario: scenario.to_string(),
                mode: T::MODE,
                support: self
                    .support
                    .iter()
                    .zip(&self.weights)
                    .map(|(a, w)| crate::distributions::WeightEntry {
                        bits: a.to_string(),
                        weight: w.to_json(),
                    })
                    .collect(),
            },
            objective: self.objective.to_json(),
            status: self.status,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpDocument {
    #[serde(flatten)]
    pub distribution: DistributionDocument,
    pub objective: serde_json::Value,
    pub status: LpStatus,
}

/// Rows of the marginal-matching system over `support`: one per (context,
/// outcome) pair plus the normalization row.
fn marginal_system<T: Scalar>(
    s: &Scenario,
    targets: &MarginalConstraintSet<T>,
    support: &[Assignment],
) -> Result<(Vec<Vec<T>>, Vec<T>)> {
    if support.is_empty() {
        return Err(Error::InvalidDistribution("LP support is empty".into()));
    }
    if support.len() > DEFAULT_SUPPORT_CAP {
        return Err(Error::ResourceLimit {
            what: "LP support size",
            limit: DEFAULT_SUPPORT_CAP as u64,
        });
    }
    if let Some(a) = support.iter().find(|a| a.len() != s.event_count()) {
        return Err(Error::LengthMismatch {
            expected: s.event_count(),
            found: a.len(),
        });
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for table in targets.tables() {
        let outcomes = table.weights().len();
        let index: Vec<usize> = support
            .iter()
            .map(|a| a.restriction_index(table.members()))
            .collect();
        for k in 0..outcomes {
            rows.push(
                index
                    .iter()
                    .map(|&i| if i == k { T::one() } else { T::zero() })
                    .collect(),
            );
            rhs.push(table.weights()[k].clone());
        }
    }
    rows.push(vec![T::one(); support.len()]);
    rhs.push(T::one());
    Ok((rows, rhs))
}

fn solve_or_fail<T: Scalar>(lp: &StandardLp<T>) -> Result<Option<(Vec<T>, T)>> {
    match lp.solve()? {
        LpOutcome::Optimal { x, value } => Ok(Some((x, value))),
        LpOutcome::Infeasible => Ok(None),
        // every program built here has a bounded objective
        LpOutcome::Unbounded => unreachable!("marginal LPs are bounded"),
    }
}

/// Minimizes `value_of(k)` for each support position in turn, freezing each
/// optimum as an equality. `coefficient(k)` gives the column pattern of
/// weight `k` in the variable vector.
fn lexicographic_refine<T: Scalar>(
    mut lp: StandardLp<T>,
    support_len: usize,
    coefficient: impl Fn(usize) -> Vec<T>,
) -> Result<Vec<T>> {
    let mut last = None;
    for k in 0..support_len {
        lp.cost = coefficient(k);
        let (x, value) = solve_or_fail(&lp)?.ok_or(Error::Infeasible)?;
        lp.rows.push(lp.cost.clone());
        lp.rhs.push(value);
        last = Some(x);
    }
    Ok(last.expect("nonempty support"))
}

fn lexicographic_enabled<T: Scalar>() -> bool {
    T::MODE == NumericMode::Rational
}

/// Looks for a nonnegative distribution over `support` reproducing every
/// target marginal. Status is `Infeasible` when only signed solutions (or
/// none) exist.
pub fn jpd_feasible<T: Scalar>(
    s: &Scenario,
    targets: &MarginalConstraintSet<T>,
    support: &[Assignment],
) -> Result<LpSolution<T>> {
    let (rows, rhs) = marginal_system(s, targets, support)?;
    let m = support.len();
    let lp = StandardLp {
        rows,
        rhs,
        cost: vec![T::zero(); m],
    };
    let Some((mut x, _)) = solve_or_fail(&lp)? else {
        return Ok(LpSolution {
            status: LpStatus::Infeasible,
            support: support.to_vec(),
            weights: Vec::new(),
            objective: T::zero(),
        });
    };
    if lexicographic_enabled::<T>() {
        x = lexicographic_refine(lp, m, |k| unit::<T>(m, k))?;
    }
    Ok(LpSolution {
        status: LpStatus::Optimal,
        support: support.to_vec(),
        weights: x,
        objective: T::zero(),
    })
}

/// Minimal total negative mass over signed distributions on `support`
/// reproducing every target marginal.
pub fn min_negativity_jqd<T: Scalar>(
    s: &Scenario,
    targets: &MarginalConstraintSet<T>,
    support: &[Assignment],
) -> Result<LpSolution<T>> {
    let (rows, rhs) = marginal_system(s, targets, support)?;
    let m = support.len();
    let rows = rows
        .into_iter()
        .map(|r| {
            let neg: Vec<T> = r.iter().map(|a| -a.clone()).collect();
            r.into_iter().chain(neg).collect()
        })
        .collect();
    let cost: Vec<T> = (0..2 * m)
        .map(|j| if j < m { T::zero() } else { T::one() })
        .collect();
    let mut lp = StandardLp { rows, rhs, cost };
    let (mut x, value) = solve_or_fail(&lp)?.ok_or(Error::Infeasible)?;
    if lexicographic_enabled::<T>() {
        lp.rows.push(lp.cost.clone());
        lp.rhs.push(value);
        x = lexicographic_refine(lp, m, |k| {
            let mut c = vec![T::zero(); 2 * m];
            c[k] = T::one();
            c[m + k] = -T::one();
            c
        })?;
    }
    let weights: Vec<T> = (0..m).map(|k| x[k].clone() - x[m + k].clone()).collect();
    let objective = T::sum(
        weights
            .iter()
            .filter(|w| w.sign_with(0.0).is_lt())
            .map(|w| -w.clone()),
    );
    Ok(LpSolution {
        status: LpStatus::Optimal,
        support: support.to_vec(),
        weights,
        objective,
    })
}

fn unit<T: Scalar>(m: usize, k: usize) -> Vec<T> {
    (0..m).map(|j| if j == k { T::one() } else { T::zero() }).collect()
}

/// Which assignments an LP may put weight on.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum SupportClass {
    /// Assignments obeying exclusivity on every context.
    #[default]
    Exclusive,
    /// All `2^N` assignments.
    Full,
}

pub fn support_for(s: &Scenario, class: SupportClass) -> Result<Vec<Assignment>> {
    match class {
        SupportClass::Exclusive => enumerate_exclusive_assignments(s),
        SupportClass::Full => {
            let n = s.event_count();
            if n >= usize::BITS as usize || (1usize << n) > DEFAULT_SUPPORT_CAP {
                return Err(Error::ResourceLimit {
                    what: "full support size",
                    limit: DEFAULT_SUPPORT_CAP as u64,
                });
            }
            Ok((0..1usize << n)
                .map(|m| Assignment::new((0..n).map(|i| m >> (n - 1 - i) & 1 == 1).collect()))
                .collect())
        }
    }
}
