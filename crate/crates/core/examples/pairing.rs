//! Views are matched across scales by mapping id; repeated ids (list rows)
//! are told apart by the texts below them.

use scalediff::fixturegen::{generate_case, FixtureSpec};
use scalediff::pairing::{compute_keys, pair_views};

fn main() {
    let case = generate_case("demo", &FixtureSpec::new(12)).expect("fixture");
    let keys = compute_keys(&case.default);
    for (uid, key) in keys
        .keys
        .iter()
        .filter(|(_, k)| !k.enhancement.is_empty())
        .take(4)
    {
        let tokens: Vec<String> = key
            .enhancement
            .iter()
            .map(|(id, t)| format!("{id}={t:?}"))
            .collect();
        println!("{uid}: {} + [{}]", key.base, tokens.join(", "));
    }

    let pairing = pair_views(&case.default, &case.scaled);
    println!(
        "{} pairs, {} unmatched default, {} unmatched scaled, {} duplicate keys",
        pairing.pairs.len(),
        pairing.unmatched_a.len(),
        pairing.unmatched_b.len(),
        pairing.duplicates_a.len()
    );
}
