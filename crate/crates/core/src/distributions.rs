//! Signed (quasi)probability distributions over outcome assignments.
//!
//! The central construction is [`construct_jqd`]: given per-event
//! probabilities `pᵢ`, it spreads mass `pᵢ` on each single-event assignment
//! `ωᵢ` and puts the remainder `1 - Σ pᵢ` (possibly negative) on the
//! all-zeros assignment `ω₀`. Every context marginal of the result is then a
//! proper distribution obeying exclusivity, and completeness wherever the
//! context probabilities sum to one.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::assignments::Assignment;
use crate::error::{Error, Result};
use crate::scalar::{NumericMode, Scalar};
use crate::scenario::{Context, Scenario};

/// Largest context for which a full outcome table is materialized.
pub const MAX_MARGINAL_CONTEXT: usize = 16;

/// Per-event occurrence probabilities `pᵢ = p(Aᵢ = 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EventProbabilities<T>(Vec<T>);

impl<T: Scalar> EventProbabilities<T> {
    pub fn new(p: Vec<T>) -> Result<Self> {
        for (i, x) in p.iter().enumerate() {
            if x.sign_with(0.0).is_lt() || *x > T::one() {
                return Err(Error::InvalidProbabilities(format!(
                    "p[{i}] = {} lies outside [0, 1]",
                    x.render()
                )));
            }
        }
        Ok(EventProbabilities(p))
    }

    pub fn uniform(n: usize, p: T) -> Result<Self> {
        Self::new(vec![p; n])
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> T {
        T::sum(self.0.iter().cloned())
    }

    /// Σ pᵢ over the members of `ctx`.
    pub fn context_total(&self, ctx: &Context) -> T {
        T::sum(ctx.members.iter().map(|&i| self.0[i].clone()))
    }
}

impl EventProbabilities<f64> {
    /// Exact rational copy when every entry is (numerically) a small
    /// rational; see [`crate::scalar::rationalize`].
    pub fn rationalize(&self) -> Option<EventProbabilities<num_rational::BigRational>> {
        self.0
            .iter()
            .map(|&x| crate::scalar::rationalize(x))
            .collect::<Option<Vec<_>>>()
            .map(EventProbabilities)
    }
}

/// Signed weights over distinct assignments, summing to one.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiDistribution<T> {
    scenario: Arc<Scenario>,
    support: Vec<(Assignment, T)>,
}

impl<T: Scalar> QuasiDistribution<T> {
    /// Checks lengths, distinctness and normalization (exact for rationals,
    /// within `1e-9` for floats).
    pub fn new(scenario: Arc<Scenario>, support: Vec<(Assignment, T)>) -> Result<Self> {
        let n = scenario.event_count();
        let mut seen = HashSet::new();
        for (a, _) in &support {
            if a.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: a.len(),
                });
            }
            if !seen.insert(a.clone()) {
                return Err(Error::InvalidDistribution(format!(
                    "assignment {a} appears more than once"
                )));
            }
        }
        let total = T::sum(support.iter().map(|(_, w)| w.clone()));
        if !total.approx_eq(&T::one()) {
            return Err(Error::InvalidDistribution(format!(
                "weights sum to {} instead of 1",
                total.render()
            )));
        }
        Ok(QuasiDistribution { scenario, support })
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn scenario_arc(&self) -> &Arc<Scenario> {
        &self.scenario
    }

    pub fn support(&self) -> &[(Assignment, T)] {
        &self.support
    }

    pub fn mode(&self) -> NumericMode {
        T::MODE
    }

    pub fn weight_of(&self, a: &Assignment) -> Option<&T> {
        self.support.iter().find(|(x, _)| x == a).map(|(_, w)| w)
    }

    pub fn total(&self) -> T {
        T::sum(self.support.iter().map(|(_, w)| w.clone()))
    }

    /// Total weight on assignments with `Aᵢ = 1`.
    pub fn event_probability(&self, i: usize) -> T {
        T::sum(
            self.support
                .iter()
                .filter(|(a, _)| a.get(i))
                .map(|(_, w)| w.clone()),
        )
    }

    pub fn event_probabilities(&self) -> Vec<T> {
        (0..self.scenario.event_count())
            .map(|i| self.event_probability(i))
            .collect()
    }

    pub fn is_jpd(&self) -> bool {
        negativity(self).is_negligible()
    }

    pub fn to_document(&self) -> DistributionDocument {
        DistributionDocument {
            scenario: self.scenario.name().to_string(),
            mode: T::MODE,
            support: self
                .support
                .iter()
                .map(|(a, w)| WeightEntry {
                    bits: a.to_string(),
                    weight: w.to_json(),
                })
                .collect(),
        }
    }

    pub fn from_document(doc: &DistributionDocument, scenario: Arc<Scenario>) -> Result<Self> {
        if doc.mode != T::MODE {
            return Err(Error::InvalidDistribution(format!(
                "document is in {} mode, expected {}",
                doc.mode,
                T::MODE
            )));
        }
        let support = doc
            .support
            .iter()
            .map(|e| Ok((e.bits.parse()?, T::from_json(&e.weight)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(scenario, support)
    }
}

/// The relaxed-completeness construction: support `{ω₀, ω₁, …, ω_N}` with
/// `q(ωᵢ) = pᵢ` and `q(ω₀) = 1 - Σ pᵢ`.
pub fn construct_jqd<T: Scalar>(
    s: &Arc<Scenario>,
    p: &EventProbabilities<T>,
) -> Result<QuasiDistribution<T>> {
    let n = s.event_count();
    if p.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: p.len(),
        });
    }
    let mut support = Vec::with_capacity(n + 1);
    support.push((Assignment::zeros(n), T::one() - p.total()));
    for (i, pi) in p.values().iter().enumerate() {
        support.push((Assignment::single(n, i), pi.clone()));
    }
    // normalization holds by construction (exactly, or to rounding)
    Ok(QuasiDistribution {
        scenario: Arc::clone(s),
        support,
    })
}

/// Outcome table of one context: entry `k` is the weight of the outcome
/// whose bit string (first member first) is `k` in binary.
#[derive(Clone, Debug, PartialEq)]
pub struct MarginalTable<T> {
    members: Vec<usize>,
    weights: Vec<T>,
}

impl<T: Scalar> MarginalTable<T> {
    pub fn new(members: Vec<usize>, weights: Vec<T>) -> Result<Self> {
        if members.len() > MAX_MARGINAL_CONTEXT {
            return Err(Error::ContextTooLarge {
                context: 0,
                size: members.len(),
                max: MAX_MARGINAL_CONTEXT,
            });
        }
        if weights.len() != 1 << members.len() {
            return Err(Error::LengthMismatch {
                expected: 1 << members.len(),
                found: weights.len(),
            });
        }
        Ok(MarginalTable { members, weights })
    }

    /// Table of a context under the exclusive reduced form: single-one
    /// outcomes get `pᵢ`, all-zeros gets `1 - Σ pᵢ`, the rest 0.
    pub fn from_event_probabilities(ctx: &Context, p: &EventProbabilities<T>) -> Result<Self> {
        let n = ctx.len();
        if n > MAX_MARGINAL_CONTEXT {
            return Err(Error::ContextTooLarge {
                context: 0,
                size: n,
                max: MAX_MARGINAL_CONTEXT,
            });
        }
        let mut weights = vec![T::zero(); 1 << n];
        weights[0] = T::one() - p.context_total(ctx);
        for (k, &i) in ctx.members.iter().enumerate() {
            weights[1 << (n - 1 - k)] = p.values()[i].clone();
        }
        Ok(MarginalTable {
            members: ctx.members.clone(),
            weights,
        })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn outcome_label(&self, index: usize) -> String {
        let n = self.members.len();
        (0..n)
            .map(|k| if index >> (n - 1 - k) & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// Weight of an outcome given as a bit string such as `"01"`.
    pub fn get(&self, outcome: &str) -> Option<&T> {
        if outcome.len() != self.members.len() {
            return None;
        }
        let index = usize::from_str_radix(outcome, 2).ok()?;
        self.weights.get(index)
    }

    pub fn entries(&self) -> impl Iterator<Item = (String, &T)> + '_ {
        self.weights
            .iter()
            .enumerate()
            .map(|(k, w)| (self.outcome_label(k), w))
    }

    /// Weight of "no event in the context occurs", `p₀^(𝒞)`.
    pub fn none_weight(&self) -> &T {
        &self.weights[0]
    }

    /// Weight of `{Aᵢ = 1}` for the context member at position `k`.
    pub fn member_probability(&self, k: usize) -> T {
        let n = self.members.len();
        T::sum(
            self.weights
                .iter()
                .enumerate()
                .filter(|(idx, _)| idx >> (n - 1 - k) & 1 == 1)
                .map(|(_, w)| w.clone()),
        )
    }

    pub fn total(&self) -> T {
        T::sum(self.weights.iter().cloned())
    }

    /// Total weight on outcomes with two or more ones.
    pub fn multi_occurrence_weight(&self) -> T {
        T::sum(
            self.weights
                .iter()
                .enumerate()
                .filter(|(idx, _)| idx.count_ones() >= 2)
                .map(|(_, w)| w.clone()),
        )
    }

    pub fn is_nonnegative(&self) -> bool {
        self.weights.iter().all(|w| !w.is_negative())
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.members == other.members
            && self
                .weights
                .iter()
                .zip(&other.weights)
                .all(|(a, b)| a.approx_eq(b))
    }
}

/// Sums the weights of all support assignments by their restriction to
/// `ctx`.
pub fn marginalize<T: Scalar>(q: &QuasiDistribution<T>, ctx: &Context) -> Result<MarginalTable<T>> {
    let n = ctx.len();
    if n > MAX_MARGINAL_CONTEXT {
        return Err(Error::ContextTooLarge {
            context: 0,
            size: n,
            max: MAX_MARGINAL_CONTEXT,
        });
    }
    let event_count = q.scenario.event_count();
    if let Some(&bad) = ctx.members.iter().find(|&&i| i >= event_count) {
        return Err(Error::LengthMismatch {
            expected: event_count,
            found: bad + 1,
        });
    }
    let mut weights = vec![T::zero(); 1 << n];
    for (a, w) in &q.support {
        let k = a.restriction_index(&ctx.members);
        weights[k] = weights[k].clone() + w.clone();
    }
    Ok(MarginalTable {
        members: ctx.members.clone(),
        weights,
    })
}

/// Marginals on every context of the distribution's scenario, in order.
pub fn context_marginals<T: Scalar>(q: &QuasiDistribution<T>) -> Result<Vec<MarginalTable<T>>> {
    q.scenario
        .contexts()
        .iter()
        .enumerate()
        .map(|(ci, ctx)| {
            marginalize(q, ctx).map_err(|e| match e {
                Error::ContextTooLarge { size, max, .. } => Error::ContextTooLarge {
                    context: ci,
                    size,
                    max,
                },
                other => other,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExclusivityCheck<T> {
    pub context: usize,
    /// Weight on outcomes where two or more context events occur.
    pub multi_occurrence: T,
    /// Every such outcome has zero weight.
    pub exclusive: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompletenessCheck<T> {
    pub context: usize,
    pub flagged_complete: bool,
    /// `p₀^(𝒞)`, the all-zeros marginal weight.
    pub none_weight: T,
    pub vanishes: bool,
    /// `vanishes` for complete contexts; always true otherwise.
    pub passes: bool,
}

pub fn verify_observable_exclusivity<T: Scalar>(
    q: &QuasiDistribution<T>,
) -> Result<Vec<ExclusivityCheck<T>>> {
    Ok(context_marginals(q)?
        .into_iter()
        .enumerate()
        .map(|(context, table)| {
            let exclusive = table
                .weights
                .iter()
                .enumerate()
                .filter(|(idx, _)| idx.count_ones() >= 2)
                .all(|(_, w)| w.is_negligible());
            ExclusivityCheck {
                context,
                multi_occurrence: table.multi_occurrence_weight(),
                exclusive,
            }
        })
        .collect())
}

pub fn verify_observable_completeness<T: Scalar>(
    q: &QuasiDistribution<T>,
) -> Result<Vec<CompletenessCheck<T>>> {
    let contexts = q.scenario.contexts();
    Ok(context_marginals(q)?
        .into_iter()
        .enumerate()
        .map(|(context, table)| {
            let none_weight = table.none_weight().clone();
            let vanishes = none_weight.is_negligible();
            let flagged_complete = contexts[context].complete;
            CompletenessCheck {
                context,
                flagged_complete,
                none_weight,
                vanishes,
                passes: !flagged_complete || vanishes,
            }
        })
        .collect())
}

/// Total negative mass `Σ max(0, -q(ω))`. Zero exactly for proper JPDs.
pub fn negativity<T: Scalar>(q: &QuasiDistribution<T>) -> T {
    T::sum(
        q.support
            .iter()
            .filter(|(_, w)| w.sign_with(0.0).is_lt())
            .map(|(_, w)| -w.clone()),
    )
}

/// The equivalent form `(Σ|q(ω)| - 1) / 2`.
pub fn negativity_l1<T: Scalar>(q: &QuasiDistribution<T>) -> T {
    let l1 = T::sum(q.support.iter().map(|(_, w)| w.abs_val()));
    (l1 - T::one()) / T::from_ratio(2, 1)
}

/// Weight entry of the distribution export format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub bits: String,
    pub weight: serde_json::Value,
}

/// `{"scenario": str, "mode": "rational"|"float", "support": [...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistributionDocument {
    pub scenario: String,
    pub mode: NumericMode,
    pub support: Vec<WeightEntry>,
}

/// A distribution in whichever numeric mode it was loaded.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyDistribution {
    Rational(QuasiDistribution<num_rational::BigRational>),
    Float(QuasiDistribution<f64>),
}

impl AnyDistribution {
    pub fn from_document(doc: &DistributionDocument, scenario: Arc<Scenario>) -> Result<Self> {
        if doc.scenario != scenario.name() {
            return Err(Error::InvalidDistribution(format!(
                "distribution belongs to scenario {:?}, not {:?}",
                doc.scenario,
                scenario.name()
            )));
        }
        Ok(match doc.mode {
            NumericMode::Rational => {
                AnyDistribution::Rational(QuasiDistribution::from_document(doc, scenario)?)
            }
            NumericMode::Float => {
                AnyDistribution::Float(QuasiDistribution::from_document(doc, scenario)?)
            }
        })
    }

    pub fn to_document(&self) -> DistributionDocument {
        match self {
            AnyDistribution::Rational(q) => q.to_document(),
            AnyDistribution::Float(q) => q.to_document(),
        }
    }
}
