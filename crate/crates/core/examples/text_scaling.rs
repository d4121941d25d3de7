//! Glyph areas of faithfully scaled text grow with the square of the text
//! size ratio; text stuck at its old size does not.

use scalediff::fixturegen::ll_scale;
use scalediff::fixturegen::{generate_case, BugInjection, FixtureSpec, TargetSelector};
use scalediff::intraview::{check_pair, IntraCheckConfig, ViewImage};
use scalediff::snapshot::{preorder, ScaleSetting};
use scalediff::Category;

fn main() {
    let mut spec = FixtureSpec::new(21);
    spec.scale_pair = (ScaleSetting::DEFAULT, ll_scale());
    spec.injections = vec![BugInjection {
        kind: Category::ContentCropping,
        target: TargetSelector::Uid("v3".into()),
        magnitude: None,
    }];
    let case = generate_case("demo", &spec).expect("fixture");
    let rec = &case.injections[0];
    println!("{} injected as {:?}", rec.views[0], rec.mode);

    let cfg = IntraCheckConfig::default();
    let scaled = case.scaled.index();
    for a in preorder(&case.default.root)
        .into_iter()
        .filter(|n| n.is_text())
    {
        let Some(b) = scaled.get(&a.uid) else {
            continue;
        };
        let va = ViewImage {
            node: a,
            image: case.default.image_of(a),
        };
        let vb = ViewImage {
            node: b,
            image: case.scaled.image_of(b),
        };
        let gamma = b.text_size.unwrap() / a.text_size.unwrap();
        match check_pair(va, vb, &cfg).expect("text sizes present") {
            Some(f) => println!(
                "{:4} gamma {gamma:.2}: FLAGGED area ratio {} vs {:.2}",
                a.uid,
                f.evidence
                    .get("area_ratio")
                    .map_or("-".into(), |v| format!("{:.2}", v.as_f64().unwrap())),
                gamma * gamma
            ),
            None => println!("{:4} gamma {gamma:.2}: ok", a.uid),
        }
    }
}
