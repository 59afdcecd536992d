//! Linear noncontextuality inequalities `Σ cᵢ ⟨Aᵢ⟩ ≤ bound`.

use crate::assignments::enumerate_exclusive_assignments;
use crate::distributions::EventProbabilities;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::scenario::Scenario;

#[derive(Clone, Debug, PartialEq)]
pub struct InequalityReport<T> {
    /// Max of `Σ cᵢ aᵢ` over exclusive assignments.
    pub classical_bound: T,
    /// `Σ cᵢ pᵢ`.
    pub value: T,
    pub violated: bool,
}

pub fn classical_bound<T: Scalar>(s: &Scenario, coefficients: &[T]) -> Result<T> {
    if coefficients.len() != s.event_count() {
        return Err(Error::LengthMismatch {
            expected: s.event_count(),
            found: coefficients.len(),
        });
    }
    let best = enumerate_exclusive_assignments(s)?
        .iter()
        .map(|a| T::sum(a.ones().map(|i| coefficients[i].clone())))
        .fold(None, |best: Option<T>, v| Some(best.map_or(v.clone(), |b| b.max_val(v))));
    Ok(best.unwrap_or_else(T::zero))
}

pub fn evaluate_inequality<T: Scalar>(
    s: &Scenario,
    coefficients: &[T],
    p: &EventProbabilities<T>,
) -> Result<InequalityReport<T>> {
    let classical_bound = classical_bound(s, coefficients)?;
    if p.len() != coefficients.len() {
        return Err(Error::LengthMismatch {
            expected: coefficients.len(),
            found: p.len(),
        });
    }
    let value = T::sum(
        coefficients
            .iter()
            .zip(p.values())
            .map(|(c, x)| c.clone() * x.clone()),
    );
    let violated = (value.clone() - classical_bound.clone()).sign().is_gt();
    Ok(InequalityReport {
        classical_bound,
        value,
        violated,
    })
}
