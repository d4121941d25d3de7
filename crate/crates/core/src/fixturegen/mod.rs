//! Synthetic snapshot pairs with exact ground truth.
//!
//! A random page design is laid out once per scale setting, optional bugs
//! are injected into the larger-scale layout only, and both layouts are
//! rendered with the same compositing model the detector assumes. Text is
//! drawn as one filled block per character so glyph areas scale exactly.

mod design;
mod glyphs;
mod inject;
mod layout;
mod render;

use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finding::Category;
use crate::geometry::Rect;
use crate::pipeline::{CaseLabels, CorpusLabels, Verdict};
use crate::snapshot::{write_snapshot, ScaleLabel, ScaleSetting, Snapshot, SnapshotError};

pub use design::{build_page, DesignKind, DesignNode, Orientation, Shape, ShapeKind, TreeShape};
pub use glyphs::{glyph_size, layout_text, GlyphRun};
pub use inject::{
    apply_injections, BugInjection, InjectionMode, InjectionRecord, ScaleRatios, TargetSelector,
};
pub use layout::{layout, Content, IconContent, ResolvedNode, TextContent};
pub use render::{own_image, render_snapshot, render_with_provenance, OwnerMap, Provenance};

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("geometry overflow: {0}")]
    GeometryOverflow(String),
    #[error("no view eligible for a {kind:?} injection ({selector})")]
    InjectionInfeasible { kind: Category, selector: String },
    #[error("invalid fixture spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Snapshot(#[from] SnapshotError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub fn default_screen() -> Rect {
    Rect::new(0, 0, 540, 960)
}

pub fn ld_scale() -> ScaleSetting {
    ScaleSetting {
        label: ScaleLabel::LD,
        display_scale: 1.5,
        font_scale: 1.0,
    }
}

pub fn ll_scale() -> ScaleSetting {
    ScaleSetting {
        label: ScaleLabel::LL,
        display_scale: 1.5,
        font_scale: 1.3,
    }
}

/// One page: design parameters, the two scale settings and the bugs to inject.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixtureSpec {
    pub seed: u64,
    #[serde(default = "default_screen")]
    pub screen: Rect,
    #[serde(default)]
    pub tree_shape: TreeShape,
    /// Default setting first, larger setting second.
    #[serde(default = "default_pair")]
    pub scale_pair: (ScaleSetting, ScaleSetting),
    #[serde(default)]
    pub injections: Vec<BugInjection>,
}

fn default_pair() -> (ScaleSetting, ScaleSetting) {
    (ScaleSetting::DEFAULT, ld_scale())
}

impl FixtureSpec {
    pub fn new(seed: u64) -> Self {
        FixtureSpec {
            seed,
            screen: default_screen(),
            tree_shape: TreeShape::default(),
            scale_pair: default_pair(),
            injections: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<(), FixtureError> {
        let (a, b) = &self.scale_pair;
        a.validate()?;
        b.validate()?;
        if self.screen.is_empty() {
            return Err(FixtureError::InvalidSpec("screen must be non-empty".into()));
        }
        let (lo, hi) = self.tree_shape.text_size;
        if !(lo > 0.0 && hi >= lo) {
            return Err(FixtureError::InvalidSpec(
                "text_size range must be positive and ordered".into(),
            ));
        }
        if self.tree_shape.items.0 > self.tree_shape.items.1 {
            return Err(FixtureError::InvalidSpec(
                "items range must be ordered".into(),
            ));
        }
        Ok(())
    }

    pub fn ratios(&self) -> ScaleRatios {
        let (a, b) = &self.scale_pair;
        ScaleRatios {
            display: b.display_scale / a.display_scale,
            text: (b.display_scale * b.font_scale) / (a.display_scale * a.font_scale),
        }
    }
}

/// A generated pair and its ground truth.
#[derive(Clone, Debug)]
pub struct GeneratedCase {
    pub name: String,
    pub default: Snapshot,
    pub scaled: Snapshot,
    pub labels: CaseLabels,
    pub injections: Vec<InjectionRecord>,
}

/// Resolved layouts of both settings, with injections applied to the second.
pub fn resolve_case(
    spec: &FixtureSpec,
) -> Result<(ResolvedNode, ResolvedNode, Vec<InjectionRecord>), FixtureError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let design = build_page(&spec.tree_shape, &mut rng);
    let default = layout(&design, &spec.scale_pair.0, spec.screen)?;
    let mut scaled = layout(&design, &spec.scale_pair.1, spec.screen)?;
    let records = apply_injections(&mut scaled, &spec.injections, spec.ratios(), &mut rng)?;
    Ok((default, scaled, records))
}

/// Builds, lays out, injects and renders one page.
pub fn generate_case(name: &str, spec: &FixtureSpec) -> Result<GeneratedCase, FixtureError> {
    let (default, scaled, records) = resolve_case(spec)?;
    let default = render_snapshot(&default, spec.scale_pair.0, spec.screen)?;
    let scaled = render_snapshot(&scaled, spec.scale_pair.1, spec.screen)?;
    let mut buggy: Vec<String> = records
        .iter()
        .flat_map(|r| r.views.iter().cloned())
        .collect();
    buggy.sort();
    buggy.dedup();
    let labels = CaseLabels {
        case: name.to_string(),
        verdict: if records.is_empty() {
            Verdict::Clean
        } else {
            Verdict::Buggy
        },
        buggy_views: buggy,
        injections: records
            .iter()
            .map(|r| serde_json::to_value(r).expect("record serializes"))
            .collect(),
    };
    Ok(GeneratedCase {
        name: name.to_string(),
        default,
        scaled,
        labels,
        injections: records,
    })
}

/// A whole corpus: clean pages first, then pages with one to
/// `max_injections` bugs whose first bug cycles through every category.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CorpusSpec {
    pub seed: u64,
    pub screen: Rect,
    pub tree_shape: TreeShape,
    pub clean_cases: usize,
    pub buggy_cases: usize,
    pub max_injections: usize,
    /// Larger settings to alternate between; the default setting is always DD.
    pub scales: Vec<ScaleSetting>,
    pub categories: Vec<Category>,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            seed: 2024,
            screen: default_screen(),
            tree_shape: TreeShape::default(),
            clean_cases: 30,
            buggy_cases: 30,
            max_injections: 3,
            scales: vec![ld_scale(), ll_scale()],
            categories: Category::ALL.to_vec(),
        }
    }
}

/// Tries before a buggy page whose design cannot host its bugs is redrawn.
const MAX_ATTEMPTS: u64 = 32;

impl CorpusSpec {
    /// The fixture behind case `i` (0-based) at a given attempt.
    fn fixture(&self, i: usize, attempt: u64) -> FixtureSpec {
        let case_seed = self
            .seed
            .wrapping_mul(0x9e37_79b9_7f4a_7c15)
            .wrapping_add((i as u64) << 8 | attempt);
        let mut rng = ChaCha8Rng::seed_from_u64(case_seed ^ 0x5151);
        let larger = if self.scales.is_empty() {
            ld_scale()
        } else {
            self.scales[i % self.scales.len()]
        };
        let injections = if i < self.clean_cases || self.categories.is_empty() {
            Vec::new()
        } else {
            let j = i - self.clean_cases;
            let n = rng.gen_range(1..=self.max_injections.max(1));
            let mut kinds = vec![self.categories[j % self.categories.len()]];
            for _ in 1..n {
                kinds.push(*self.categories.choose(&mut rng).expect("non-empty"));
            }
            kinds.into_iter().map(BugInjection::new).collect()
        };
        FixtureSpec {
            seed: case_seed,
            screen: self.screen,
            tree_shape: self.tree_shape.clone(),
            scale_pair: (ScaleSetting::DEFAULT, larger),
            injections,
        }
    }

    pub fn case_name(i: usize) -> String {
        format!("case-{:03}", i + 1)
    }
}

/// Generates every case of `spec`, in parallel. Output order and content
/// depend only on the spec.
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Vec<GeneratedCase>, FixtureError> {
    (0..spec.clean_cases + spec.buggy_cases)
        .into_par_iter()
        .map(|i| {
            let name = CorpusSpec::case_name(i);
            let mut last = None;
            for attempt in 0..MAX_ATTEMPTS {
                match generate_case(&name, &spec.fixture(i, attempt)) {
                    Err(e @ FixtureError::InjectionInfeasible { .. }) => last = Some(e),
                    other => return other,
                }
            }
            Err(last.expect("at least one attempt"))
        })
        .collect()
}

/// Writes `case-<n>/default`, `case-<n>/scaled` and `labels.json` under `dir`.
pub fn write_corpus(
    cases: &[GeneratedCase],
    dir: impl AsRef<Path>,
) -> Result<CorpusLabels, FixtureError> {
    let dir = dir.as_ref();
    cases
        .par_iter()
        .try_for_each(|c| -> Result<(), FixtureError> {
            write_snapshot(&c.default, dir.join(&c.name).join("default"))?;
            write_snapshot(&c.scaled, dir.join(&c.name).join("scaled"))?;
            Ok(())
        })?;
    let labels = CorpusLabels {
        cases: cases.iter().map(|c| c.labels.clone()).collect(),
    };
    let path = dir.join("labels.json");
    let text = serde_json::to_string_pretty(&labels).expect("labels serialize") + "\n";
    std::fs::write(&path, text).map_err(|source| FixtureError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(labels)
}
