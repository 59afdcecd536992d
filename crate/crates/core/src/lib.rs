//! Contextuality scenarios, Kochen-Specker colorability and joint
//! quasiprobability distributions.
//!
//! The crate is organized around a measurement [`Scenario`]: a set of
//! events and the contexts (hyperedges) in which they can be jointly
//! measured. On top of that:
//!
//! - [`assignments`] enumerates exclusive outcome assignments and decides
//!   whether exclusive *and* complete assignments exist at all;
//! - [`distributions`] builds the relaxed-completeness quasidistribution
//!   over `{ω₀, ω₁, …, ω_N}` and checks what its marginals look like;
//! - [`quantum`] derives scenarios and event probabilities from rank-one
//!   projectors and density matrices;
//! - [`optimize`] solves marginal-matching LPs, exactly over rationals when
//!   the inputs allow it;
//! - [`catalog`] ships KCBS, the Specker triangle and the 18-ray KS set.
//!
//! Runnable walkthroughs of each capability live in this crate's
//! `examples/` directory (`cargo run -p contextuality --example <name>`);
//! the `ksq` binary exposes the same operations on the command line.

pub mod assignments;
pub mod catalog;
pub mod cli;
pub mod distributions;
pub mod error;
pub mod inequality;
pub mod io;
pub mod optimize;
pub mod quantum;
pub mod scalar;
pub mod scenario;

pub use assignments::{
    enumerate_exclusive_assignments, ks_colorability, satisfies_completeness,
    satisfies_exclusivity, Assignment, Colorability,
};
pub use distributions::{
    construct_jqd, marginalize, negativity, verify_observable_completeness,
    verify_observable_exclusivity, EventProbabilities, MarginalTable, QuasiDistribution,
};
pub use error::{Error, Result};
pub use optimize::{jpd_feasible, min_negativity_jqd, LpSolution, LpStatus, MarginalConstraintSet};
pub use quantum::{born_probabilities, derive_scenario, projector_from_vector, ComplexVector, QuantumState};
pub use scalar::{NumericMode, Scalar};
pub use scenario::{augment_scenario, exclusivity_graph, validate_scenario, Context, Scenario};

pub use num_rational::BigRational;
