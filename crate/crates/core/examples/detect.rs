//! Full analysis of a snapshot pair. Pass two snapshot directories, or run
//! without arguments to analyze a generated page with one missing view.
//!
//!     cargo run --example detect -- shots/dd shots/ll

use scalediff::fixturegen::{generate_case, BugInjection, FixtureSpec};
use scalediff::{analyze, analyze_dirs, AnalysisConfig, Category};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = AnalysisConfig::default();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let report = match args.as_slice() {
        [a, b] => analyze_dirs(a, b, &cfg)?,
        _ => {
            let mut spec = FixtureSpec::new(4);
            spec.injections = vec![BugInjection::new(Category::ComponentMissing)];
            let case = generate_case("demo", &spec)?;
            println!("labeled buggy views: {:?}", case.labels.buggy_views);
            analyze(&case.default, &case.scaled, &cfg)
        }
    };
    print!("{}", report.to_text());
    println!("canonical hash {}", report.canonical_hash());
    Ok(())
}
