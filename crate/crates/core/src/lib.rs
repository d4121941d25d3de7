//! Detects GUI scaling issues by comparing a view-tree snapshot taken at the
//! default scale with one taken at a larger display or font scale.
//!
//! ```no_run
//! use scalediff::pipeline::{analyze_dirs, AnalysisConfig};
//!
//! let report = analyze_dirs("shots/dd", "shots/ll", &AnalysisConfig::default())?;
//! println!("{}", report.to_text());
//! # Ok::<(), scalediff::snapshot::SnapshotError>(())
//! ```

pub mod finding;
pub mod fixturegen;
pub mod geometry;
pub mod imaging;
pub mod interview;
pub mod intraview;
pub mod pairing;
pub mod pipeline;
pub mod snapshot;

pub use finding::{Category, Finding, FindingKind};
pub use geometry::Rect;
pub use pipeline::{analyze, analyze_dirs, AnalysisConfig, Report, Verdict};
pub use snapshot::{load_snapshot, write_snapshot, Snapshot, ViewNode};
