//! Scenario and distribution files: write, read back, compare.

use std::sync::Arc;

use contextuality::catalog;
use contextuality::distributions::{AnyDistribution, DistributionDocument};
use contextuality::io::ScenarioFile;

fn main() -> contextuality::Result<()> {
    let dir = std::env::temp_dir().join("contextuality-example");
    std::fs::create_dir_all(&dir)?;

    for entry in catalog::catalog() {
        let file = ScenarioFile::from(&entry);
        let path = dir.join(format!("{}.json", entry.name()));
        file.write(&path)?;
        let back = ScenarioFile::read(&path)?;
        println!("{} -> {} (identical: {})", entry.name(), path.display(), back == file);
    }

    let q = catalog::kcbs_jpd_fixture();
    let text = serde_json::to_string_pretty(&q.to_document())?;
    println!("{text}");
    let doc: DistributionDocument = serde_json::from_str(&text)?;
    let back = AnyDistribution::from_document(&doc, Arc::new(catalog::kcbs_scenario()))?;
    println!("distribution identical: {}", back == AnyDistribution::Rational(q));
    Ok(())
}
