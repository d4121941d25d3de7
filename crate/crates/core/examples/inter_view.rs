//! Visibility, overlap and crop analysis on each tree, then the cross-tree
//! comparison, for a page where one sibling slides over another.

use scalediff::fixturegen::{generate_case, BugInjection, FixtureSpec};
use scalediff::interview::{analyze_tree, compare_inter, ExemptionConfig, TreeAnalysis};
use scalediff::pairing::pair_views;
use scalediff::Category;

fn main() {
    let mut spec = FixtureSpec::new(9);
    spec.injections = vec![
        BugInjection::new(Category::ContentOverlapping),
        BugInjection::new(Category::ComponentCropping),
    ];
    let case = generate_case("demo", &spec).expect("fixture");
    for r in &case.injections {
        println!("injected {:?} ({:?}) on {:?}", r.kind, r.mode, r.views);
    }

    let cfg = ExemptionConfig::default();
    let a = TreeAnalysis {
        snapshot: &case.default,
        state: analyze_tree(&case.default, &cfg),
    };
    let b = TreeAnalysis {
        snapshot: &case.scaled,
        state: analyze_tree(&case.scaled, &cfg),
    };
    for (name, t) in [("default", &a), ("scaled", &b)] {
        println!(
            "{name}: {} visible, overlaps {:?}, crops {:?}",
            t.state.visible.len(),
            t.state.overlaps,
            t.state.crops
        );
    }
    for f in compare_inter(&a, &b, &pair_views(&case.default, &case.scaled)) {
        println!(
            "{:?} {:?}: {:?} -> {:?}",
            f.category, f.kind, f.views.default, f.views.scaled
        );
    }
}
