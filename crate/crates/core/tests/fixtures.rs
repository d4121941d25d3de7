mod common;

use std::collections::BTreeSet;
use std::path::Path;

use scalediff::fixturegen::{
    generate_case, generate_corpus, render_with_provenance, resolve_case, write_corpus,
    BugInjection, CorpusSpec, FixtureSpec, ResolvedNode,
};
use scalediff::interview::detect_visibility;
use scalediff::{Category, Verdict};

fn files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                let rel = p.strip_prefix(dir).unwrap().display().to_string();
                out.push((rel, std::fs::read(&p).unwrap()));
            }
        }
    }
    out.sort();
    out
}

fn small_corpus() -> CorpusSpec {
    CorpusSpec {
        seed: 99,
        clean_cases: 3,
        buggy_cases: 5,
        ..CorpusSpec::default()
    }
}

#[test]
fn corpus_output_is_byte_identical_across_runs() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    write_corpus(&generate_corpus(&small_corpus()).unwrap(), a.path()).unwrap();
    write_corpus(&generate_corpus(&small_corpus()).unwrap(), b.path()).unwrap();
    let (fa, fb) = (files(a.path()), files(b.path()));
    assert!(fa.len() > 8 * 20);
    assert!(fa == fb, "corpus differs between runs");
}

#[test]
fn labels_follow_injections() {
    let cases = generate_corpus(&small_corpus()).unwrap();
    for (i, c) in cases.iter().enumerate() {
        assert_eq!(c.name, format!("case-{:03}", i + 1));
        if i < 3 {
            assert_eq!(c.labels.verdict, Verdict::Clean);
            assert!(c.labels.buggy_views.is_empty());
        } else {
            assert_eq!(c.labels.verdict, Verdict::Buggy);
            assert!((1..=3).contains(&c.injections.len()));
            let from_records: BTreeSet<&String> =
                c.injections.iter().flat_map(|r| &r.views).collect();
            let labeled: BTreeSet<&String> = c.labels.buggy_views.iter().collect();
            assert_eq!(from_records, labeled);
        }
    }
    // the first bug of each buggy page cycles through the categories
    let firsts: Vec<Category> = cases[3..].iter().map(|c| c.injections[0].kind).collect();
    assert_eq!(firsts, Category::ALL.to_vec());
}

#[test]
fn spec_round_trips_through_json() {
    let spec = CorpusSpec::default();
    let back: CorpusSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
    assert_eq!(back, spec);
    let partial: CorpusSpec = serde_json::from_str(r#"{"seed": 5, "clean_cases": 2}"#).unwrap();
    assert_eq!(
        (partial.seed, partial.clean_cases, partial.buggy_cases),
        (5, 2, 30)
    );
}

fn subtree(n: &ResolvedNode, out: &mut BTreeSet<String>) {
    out.insert(n.uid.clone());
    for c in &n.children {
        subtree(c, out);
    }
}

fn walk<'a>(n: &'a ResolvedNode, out: &mut Vec<(&'a ResolvedNode, &'a ResolvedNode)>) {
    for c in &n.children {
        out.push((n, c));
        walk(c, out);
    }
}

/// Provenance against the visibility oracle: a view whose region in its
/// (visible) parent is owned entirely by its own subtree is visible, and a
/// view owning none of it is not.
#[test]
fn provenance_bounds_visibility() {
    let kinds = [
        Category::ComponentOverlapping,
        Category::ComponentMissing,
        Category::ComponentCropping,
    ];
    let (mut owned, mut hidden) = (0, 0);
    for seed in 0..24u64 {
        let mut spec = FixtureSpec::new(500 + seed);
        spec.injections = vec![BugInjection::new(kinds[seed as usize % 3])];
        let Ok((_, scaled, _)) = resolve_case(&spec) else {
            continue;
        };
        let (snap, prov) = render_with_provenance(&scaled, spec.scale_pair.1, spec.screen).unwrap();
        let visible = detect_visibility(&snap);
        let mut edges = Vec::new();
        walk(&scaled, &mut edges);
        for (parent, child) in edges {
            if !visible.contains(&parent.uid) {
                assert!(!visible.contains(&child.uid));
                continue;
            }
            let mut mine = BTreeSet::new();
            subtree(child, &mut mine);
            let (mut total, mut ours) = (0u64, 0u64);
            if let Some(r) = child.bounds.intersect(&parent.bounds) {
                let rel = r.relative_to(&parent.bounds);
                for y in rel.y as u32..rel.y as u32 + rel.h {
                    for x in rel.x as u32..rel.x as u32 + rel.w {
                        total += 1;
                        if mine.contains(prov.owner(&parent.uid, x, y).unwrap()) {
                            ours += 1;
                        }
                    }
                }
            }
            if total > 0 && ours == total {
                owned += 1;
                assert!(
                    visible.contains(&child.uid),
                    "seed {seed}: {} fully owned but invisible",
                    child.uid
                );
            }
            if ours == 0 {
                hidden += 1;
                assert!(
                    !visible.contains(&child.uid),
                    "seed {seed}: {} hidden but visible",
                    child.uid
                );
            }
        }
    }
    assert!(owned > 200 && hidden > 0, "owned {owned}, hidden {hidden}");
}

#[test]
fn clean_case_layouts_differ_only_by_scale() {
    let spec = FixtureSpec::new(3);
    let c = generate_case("x", &spec).unwrap();
    let ids = |s: &scalediff::Snapshot| {
        scalediff::snapshot::preorder(&s.root)
            .iter()
            .map(|n| (n.uid.clone(), n.mapping_id.clone()))
            .collect::<Vec<_>>()
    };
    assert_eq!(ids(&c.default), ids(&c.scaled));
    assert!(c.scaled.root.bounds.h >= c.default.root.bounds.h);
    assert_eq!(c.default.screen, c.scaled.screen);
}
