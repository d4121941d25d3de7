//! Generate a small labeled corpus on disk, then score the detector on it.

use scalediff::fixturegen::{generate_corpus, write_corpus, CorpusSpec};
use scalediff::pipeline::{evaluate_dir, load_labels};
use scalediff::AnalysisConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = CorpusSpec {
        seed: 7,
        clean_cases: 4,
        buggy_cases: 6,
        ..CorpusSpec::default()
    };
    let dir = tempfile::tempdir()?;
    write_corpus(&generate_corpus(&spec)?, dir.path())?;
    let labels = load_labels(dir.path().join("labels.json"))?;
    let (metrics, outcomes) = evaluate_dir(dir.path(), &labels, &AnalysisConfig::default())?;

    for o in &outcomes {
        let missed: Vec<_> = o.labeled_views.difference(&o.predicted_views).collect();
        println!(
            "{} truth {:?} predicted {:?} missed {:?}",
            o.case, o.truth, o.predicted, missed
        );
    }
    println!("{}", serde_json::to_string_pretty(&metrics)?);
    Ok(())
}
