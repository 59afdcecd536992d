//! Built-in scenarios, their vector realizations, reference states and
//! fixture distributions.

use std::f64::consts::PI;
use std::sync::Arc;

use num_rational::BigRational;

use crate::assignments::Assignment;
use crate::distributions::QuasiDistribution;
use crate::error::{Error, Result};
use crate::quantum::{ComplexVector, QuantumState};
use crate::scalar::Scalar;
use crate::scenario::{Context, Scenario};

pub const KCBS: &str = "kcbs";
pub const SPECKER: &str = "specker";
pub const CABELLO18: &str = "cabello18";

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub scenario: Arc<Scenario>,
    pub vectors: Option<Vec<ComplexVector>>,
    /// Named preparations, e.g. `maxmixed` and `symmetric`.
    pub states: Vec<(String, QuantumState)>,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        self.scenario.name()
    }

    pub fn state(&self, name: &str) -> Option<&QuantumState> {
        self.states.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn dimension(&self) -> Option<usize> {
        self.vectors.as_ref().and_then(|v| v.first()).map(ComplexVector::dim)
    }
}

pub fn catalog() -> Vec<CatalogEntry> {
    vec![kcbs_entry(), specker_entry(), cabello18_entry()]
}

pub fn lookup(name: &str) -> Result<CatalogEntry> {
    catalog()
        .into_iter()
        .find(|e| e.name() == name)
        .ok_or_else(|| Error::UnknownCatalogEntry(name.to_string()))
}

/// Pentagram rays in `C^3`: `vⱼ = (cos θ, sin θ cos(4πj/5), sin θ sin(4πj/5))`
/// with `cos²θ = 1/√5`, so that consecutive rays are orthogonal and the
/// symmetry axis `(1, 0, 0)` sees each with probability `1/√5`.
pub fn kcbs_vectors() -> Vec<ComplexVector> {
    let cos2 = 1.0 / 5f64.sqrt();
    let (c, s) = (cos2.sqrt(), (1.0 - cos2).sqrt());
    (0..5)
        .map(|j| {
            let phi = 4.0 * PI * j as f64 / 5.0;
            ComplexVector::real(&[c, s * phi.cos(), s * phi.sin()]).unwrap()
        })
        .collect()
}

pub fn kcbs_scenario() -> Scenario {
    Scenario::with_numbered_events(
        KCBS,
        5,
        (0..5).map(|i| Context::exclusive([i, (i + 1) % 5])).collect(),
    )
    .unwrap()
    .canonical()
}

fn kcbs_entry() -> CatalogEntry {
    let axis = ComplexVector::real(&[1.0, 0.0, 0.0]).unwrap();
    CatalogEntry {
        scenario: Arc::new(kcbs_scenario()),
        vectors: Some(kcbs_vectors()),
        states: vec![
            ("maxmixed".into(), QuantumState::maximally_mixed(3)),
            ("symmetric".into(), QuantumState::pure(&axis)),
        ],
    }
}

/// Three events, each pair jointly measurable and exactly-one. No quantum
/// realization exists, so the entry carries no vectors.
pub fn specker_scenario() -> Scenario {
    Scenario::new(
        SPECKER,
        vec!["A".into(), "B".into(), "C".into()],
        vec![
            Context::complete([0, 1]),
            Context::complete([0, 2]),
            Context::complete([1, 2]),
        ],
    )
    .unwrap()
}

fn specker_entry() -> CatalogEntry {
    CatalogEntry {
        scenario: Arc::new(specker_scenario()),
        vectors: None,
        states: Vec::new(),
    }
}

/// The 18 rays of the nine-basis Kochen-Specker set in `C^4`.
pub const CABELLO18_RAYS: [[i8; 4]; 18] = [
    [0, 0, 0, 1],
    [0, 0, 1, 0],
    [1, 1, 0, 0],
    [1, -1, 0, 0],
    [0, 1, 0, 0],
    [1, 0, 1, 0],
    [1, 0, -1, 0],
    [1, -1, 1, -1],
    [1, -1, -1, 1],
    [0, 0, 1, 1],
    [1, 1, 1, 1],
    [0, 1, 0, -1],
    [1, 0, 0, 1],
    [1, 0, 0, -1],
    [0, 1, -1, 0],
    [1, 1, -1, 1],
    [1, 1, 1, -1],
    [-1, 1, 1, 1],
];

/// The nine orthogonal bases, as indices into [`CABELLO18_RAYS`].
pub const CABELLO18_BASES: [[usize; 4]; 9] = [
    [0, 1, 2, 3],
    [0, 4, 5, 6],
    [1, 4, 12, 13],
    [2, 7, 8, 9],
    [3, 9, 15, 16],
    [5, 11, 15, 17],
    [6, 7, 10, 11],
    [8, 10, 13, 14],
    [12, 14, 16, 17],
];

pub fn cabello18_vectors() -> Vec<ComplexVector> {
    CABELLO18_RAYS
        .iter()
        .map(|r| ComplexVector::real(&r.map(f64::from)).unwrap())
        .collect()
}

pub fn cabello18_scenario() -> Scenario {
    Scenario::with_numbered_events(
        CABELLO18,
        18,
        CABELLO18_BASES.iter().map(|b| Context::complete(*b)).collect(),
    )
    .unwrap()
    .canonical()
}

fn cabello18_entry() -> CatalogEntry {
    CatalogEntry {
        scenario: Arc::new(cabello18_scenario()),
        vectors: Some(cabello18_vectors()),
        states: vec![("maxmixed".into(), QuantumState::maximally_mixed(4))],
    }
}

fn bits(s: &str) -> Assignment {
    s.parse().expect("fixture bit strings are valid")
}

/// Six-point classical distribution for KCBS at `pᵢ = 1/3`: weight `1/6`
/// on `10100, 10010, 01010, 01001, 00101, 00000`.
pub fn kcbs_jpd_fixture() -> QuasiDistribution<BigRational> {
    let sixth = BigRational::from_ratio(1, 6);
    let support = ["10100", "10010", "01010", "01001", "00101", "00000"]
        .iter()
        .map(|b| (bits(b), sixth.clone()))
        .collect();
    QuasiDistribution::new(Arc::new(kcbs_scenario()), support).unwrap()
}

/// Signed distribution for KCBS at `pᵢ = 1/√5`: weight `1/(2√5)` on the
/// five weight-two exclusive assignments and `1 - 5/(2√5)` on `00000`.
pub fn kcbs_jqd_fixture() -> QuasiDistribution<f64> {
    let w = 1.0 / (2.0 * 5f64.sqrt());
    let mut support: Vec<(Assignment, f64)> = ["10100", "10010", "01010", "01001", "00101"]
        .iter()
        .map(|b| (bits(b), w))
        .collect();
    support.push((bits("00000"), 1.0 - 5.0 * w));
    QuasiDistribution::new(Arc::new(kcbs_scenario()), support).unwrap()
}

/// Specker-triangle quasidistribution over all eight assignments:
/// `-1/4` on `000` and `111`, `1/4` elsewhere.
pub fn specker_jqd_fixture() -> QuasiDistribution<BigRational> {
    let support = (0..8u8)
        .map(|m| {
            let a = Assignment::new((0..3).map(|i| m >> (2 - i) & 1 == 1).collect());
            let w = if m == 0 || m == 7 {
                BigRational::from_ratio(-1, 4)
            } else {
                BigRational::from_ratio(1, 4)
            };
            (a, w)
        })
        .collect();
    QuasiDistribution::new(Arc::new(specker_scenario()), support).unwrap()
}
