//! Rank-one projective realizations of scenarios in `C^d`.
//!
//! Events are rays `|v⟩`; exclusivity is orthogonality and a context is
//! complete when its projectors resolve the identity. All linear algebra is
//! double precision.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::distributions::EventProbabilities;
use crate::error::{Error, Result};
use crate::scenario::{Context, Scenario};

/// Tolerance on `|⟨vᵢ|vⱼ⟩|` (normalized) for orthogonality, and on the
/// entrywise identity check for completeness.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-9;
pub const PROJECTOR_TOLERANCE: f64 = 1e-12;
const STATE_TOLERANCE: f64 = 1e-10;

/// A nonzero vector in `C^d`. Serialized as `[[re, im], ...]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct ComplexVector(Vec<Complex64>);

impl TryFrom<Vec<[f64; 2]>> for ComplexVector {
    type Error = Error;

    fn try_from(entries: Vec<[f64; 2]>) -> Result<Self> {
        ComplexVector::new(entries.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}

impl From<ComplexVector> for Vec<[f64; 2]> {
    fn from(v: ComplexVector) -> Self {
        v.0.into_iter().map(|z| [z.re, z.im]).collect()
    }
}

impl ComplexVector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() || entries.iter().all(|z| z.norm_sqr() == 0.0) {
            return Err(Error::InvalidQuantum("zero vector".into()));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidQuantum("non-finite vector entry".into()));
        }
        Ok(ComplexVector(entries))
    }

    pub fn real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &ComplexVector) -> Complex64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum()
    }

    fn to_dvector(&self) -> DVector<Complex64> {
        DVector::from_column_slice(&self.0)
    }
}

fn max_entry_distance(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// A Hermitian idempotent trace-one matrix `|v̂⟩⟨v̂|`.
#[derive(Clone, Debug, PartialEq)]
pub struct Projector(DMatrix<Complex64>);

impl Projector {
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn hermiticity_error(&self) -> f64 {
        max_entry_distance(&self.0, &self.0.adjoint())
    }

    pub fn idempotency_error(&self) -> f64 {
        max_entry_distance(&(&self.0 * &self.0), &self.0)
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn satisfies_invariants(&self) -> bool {
        self.hermiticity_error() <= PROJECTOR_TOLERANCE
            && self.idempotency_error() <= PROJECTOR_TOLERANCE
            && (self.trace() - Complex64::new(1.0, 0.0)).norm() <= PROJECTOR_TOLERANCE
    }
}

pub fn projector_from_vector(v: &ComplexVector) -> Projector {
    let col = v.to_dvector();
    Projector(&col * col.adjoint() / Complex64::new(v.norm_sqr(), 0.0))
}

/// A density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState(DMatrix<Complex64>);

impl QuantumState {
    pub fn new(rho: DMatrix<Complex64>) -> Result<Self> {
        if rho.nrows() != rho.ncols() || rho.nrows() == 0 {
            return Err(Error::InvalidQuantum("density matrix must be square and nonempty".into()));
        }
        if max_entry_distance(&rho, &rho.adjoint()) > STATE_TOLERANCE {
            return Err(Error::InvalidQuantum("density matrix is not Hermitian".into()));
        }
        if (rho.trace() - Complex64::new(1.0, 0.0)).norm() > STATE_TOLERANCE {
            return Err(Error::InvalidQuantum("density matrix does not have unit trace".into()));
        }
        let min_eigen = rho
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min_eigen < -STATE_TOLERANCE {
            return Err(Error::InvalidQuantum(format!(
                "density matrix has negative eigenvalue {min_eigen}"
            )));
        }
        Ok(QuantumState(rho))
    }

    pub fn pure(psi: &ComplexVector) -> Self {
        QuantumState(projector_from_vector(psi).0)
    }

    /// `𝟙/d`.
    pub fn maximally_mixed(d: usize) -> Self {
        QuantumState(DMatrix::identity(d, d) / Complex64::new(d as f64, 0.0))
    }

    /// Builds a state from row-major `[re, im]` pairs.
    pub fn from_rows(rows: &[Vec<[f64; 2]>]) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidQuantum("density matrix must be square".into()));
        }
        let rho = DMatrix::from_fn(d, d, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1]));
        Self::new(rho)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }
}

/// `pᵢ = Tr(ρ Aᵢ)`, clamped to `[0, 1]`.
pub fn born_probabilities(
    state: &QuantumState,
    projectors: &[Projector],
) -> Result<EventProbabilities<f64>> {
    let mut p = Vec::with_capacity(projectors.len());
    for proj in projectors {
        if proj.dim() != state.dim() {
            return Err(Error::DimensionMismatch {
                expected: state.dim(),
                found: proj.dim(),
            });
        }
        let value = (&state.0 * &proj.0).trace();
        if value.im.abs() > STATE_TOLERANCE {
            return Err(Error::InvalidQuantum(format!(
                "Tr(ρA) has imaginary part {}",
                value.im
            )));
        }
        p.push(value.re.clamp(0.0, 1.0));
    }
    EventProbabilities::new(p)
}

/// How [`derive_scenario`] turns the orthogonality graph into contexts.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum ContextPolicy {
    /// Use the complete orthogonal bases if any exist; otherwise every
    /// maximal orthogonal set of two or more vectors.
    ///
    /// KS-set constructions are stated in terms of their bases, and
    /// realizations such as the 18-vector set in `C^4` have incidental
    /// orthogonalities outside those bases.
    #[default]
    CompleteFirst,
    /// Every maximal orthogonal set of two or more vectors, flagged complete
    /// when its projectors resolve the identity.
    MaximalCliques,
}

fn check_dims(vectors: &[ComplexVector]) -> Result<usize> {
    let d = vectors.first().map(ComplexVector::dim).unwrap_or(0);
    for v in vectors {
        if v.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: v.dim(),
            });
        }
    }
    Ok(d)
}

/// Adjacency of the orthogonality graph of `vectors`.
pub fn orthogonality_graph(vectors: &[ComplexVector]) -> Result<Vec<Vec<bool>>> {
    check_dims(vectors)?;
    let n = vectors.len();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let overlap =
                vectors[i].inner(&vectors[j]).norm() / (vectors[i].norm_sqr() * vectors[j].norm_sqr()).sqrt();
            if overlap < ORTHOGONALITY_TOLERANCE {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    Ok(adj)
}

/// Bron-Kerbosch with pivoting; cliques come back sorted.
fn maximal_cliques(adj: &[Vec<bool>], cap: usize) -> Vec<Vec<usize>> {
    fn expand(
        adj: &[Vec<bool>],
        r: &mut Vec<usize>,
        p: Vec<usize>,
        x: Vec<usize>,
        cap: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
            }
            return;
        }
        if r.len() == cap {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| adj[u][v]).count())
            .unwrap();
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
        let mut p = p;
        let mut x = x;
        for v in candidates {
            r.push(v);
            let np = p.iter().copied().filter(|&u| adj[v][u]).collect();
            let nx = x.iter().copied().filter(|&u| adj[v][u]).collect();
            expand(adj, r, np, nx, cap, out);
            r.pop();
            p.retain(|&u| u != v);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    let n = adj.len();
    expand(adj, &mut Vec::new(), (0..n).collect(), Vec::new(), cap.max(1), &mut out);
    out.sort();
    out.dedup();
    out
}

/// Whether the projectors of `members` sum to the identity.
pub fn resolves_identity(vectors: &[ComplexVector], members: &[usize]) -> bool {
    let Some(first) = members.first() else {
        return false;
    };
    let d = vectors[*first].dim();
    let sum = members
        .iter()
        .fold(DMatrix::zeros(d, d), |acc, &i| acc + projector_from_vector(&vectors[i]).0);
    max_entry_distance(&sum, &DMatrix::identity(d, d)) <= ORTHOGONALITY_TOLERANCE
}

/// Scenario realized by `vectors` under [`ContextPolicy::CompleteFirst`].
pub fn derive_scenario(vectors: &[ComplexVector], name: &str) -> Result<Scenario> {
    derive_scenario_with(vectors, name, ContextPolicy::default())
}

pub fn derive_scenario_with(
    vectors: &[ComplexVector],
    name: &str,
    policy: ContextPolicy,
) -> Result<Scenario> {
    let d = check_dims(vectors)?;
    let adj = orthogonality_graph(vectors)?;
    let cliques: Vec<Context> = maximal_cliques(&adj, d)
        .into_iter()
        .filter(|c| c.len() >= 2)
        .map(|members| Context {
            complete: resolves_identity(vectors, &members),
            members,
        })
        .collect();
    let any_complete = cliques.iter().any(|c| c.complete);
    let contexts = match policy {
        ContextPolicy::CompleteFirst if any_complete => {
            cliques.into_iter().filter(|c| c.complete).collect()
        }
        _ => cliques,
    };
    Ok(Scenario::with_numbered_events(name, vectors.len(), contexts)?.canonical())
}
