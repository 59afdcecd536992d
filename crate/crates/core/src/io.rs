//! Scenario file format:
//!
//! ```json
//! {"name": "kcbs", "events": ["A1", ...],
//!  "contexts": [{"members": [0, 1], "complete": false}, ...],
//!  "vectors": [[[re, im], ...], ...]}
//! ```
//!
//! `vectors` is optional; when present there is one vector per event and all
//! share one dimension.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::quantum::ComplexVector;
use crate::scenario::Scenario;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioFile {
    #[serde(flatten)]
    pub scenario: Scenario,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vectors: Option<Vec<ComplexVector>>,
}

impl ScenarioFile {
    pub fn new(scenario: Scenario, vectors: Option<Vec<ComplexVector>>) -> Result<Self> {
        let file = ScenarioFile { scenario, vectors };
        file.check_vectors()?;
        Ok(file)
    }

    fn check_vectors(&self) -> Result<()> {
        let Some(vs) = &self.vectors else {
            return Ok(());
        };
        if vs.len() != self.scenario.event_count() {
            return Err(Error::LengthMismatch {
                expected: self.scenario.event_count(),
                found: vs.len(),
            });
        }
        let d = vs.first().map(ComplexVector::dim).unwrap_or(0);
        if let Some(v) = vs.iter().find(|v| v.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: v.dim(),
            });
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ScenarioFile = serde_json::from_str(text)?;
        file.check_vectors()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario files always serialize")
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn into_parts(self) -> (Arc<Scenario>, Option<Vec<ComplexVector>>) {
        (Arc::new(self.scenario), self.vectors)
    }
}

impl From<&CatalogEntry> for ScenarioFile {
    fn from(entry: &CatalogEntry) -> Self {
        ScenarioFile {
            scenario: (*entry.scenario).clone(),
            vectors: entry.vectors.clone(),
        }
    }
}
