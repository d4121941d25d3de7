//! View correspondence between the default-scale and larger-scale trees.
//!
//! Every view is keyed by its mapping id. Mapping ids that occur more than once
//! in a tree (list rows inflated from one layout) are disambiguated by the
//! `(mapping id, text)` of the non-repetitive text views found in the row's
//! subtree.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::snapshot::{preorder, Snapshot, ViewNode};

const SEPARATOR: char = '\u{1f}';

/// Pairing key of one view: its mapping id plus, for repetitive ids, the
/// text tokens of its subtree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairingKey {
    pub base: String,
    pub enhancement: Vec<(String, String)>,
}

impl PairingKey {
    /// `base`, then each token as `mapping id` and `text`, joined with U+001F.
    pub fn serialize(&self) -> String {
        let mut s = self.base.clone();
        for (id, text) in &self.enhancement {
            s.push(SEPARATOR);
            s.push_str(id);
            s.push(SEPARATOR);
            s.push_str(text);
        }
        s
    }
}

/// Keys for one tree.
#[derive(Clone, Debug, Default)]
pub struct TreeKeys {
    /// Key per uid, for views carrying a mapping id.
    pub keys: BTreeMap<String, PairingKey>,
    /// Views whose serialized key repeats an earlier view's (pre-order); not paired.
    pub duplicates: BTreeSet<String>,
    /// Views without a mapping id; excluded from pairing.
    pub unkeyed: Vec<String>,
}

pub fn compute_keys(snap: &Snapshot) -> TreeKeys {
    let nodes = preorder(&snap.root);
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for n in &nodes {
        if let Some(id) = &n.mapping_id {
            *counts.entry(id.as_str()).or_default() += 1;
        }
    }
    let repetitive = |id: &str| counts.get(id).copied().unwrap_or(0) > 1;

    let mut out = TreeKeys::default();
    let mut seen: HashMap<String, &str> = HashMap::new();
    for n in &nodes {
        let Some(id) = &n.mapping_id else {
            out.unkeyed.push(n.uid.clone());
            continue;
        };
        let enhancement = if repetitive(id) {
            enhancement_tokens(n, &repetitive)
        } else {
            Vec::new()
        };
        let key = PairingKey {
            base: id.clone(),
            enhancement,
        };
        if seen.insert(key.serialize(), &n.uid).is_some() {
            out.duplicates.insert(n.uid.clone());
        }
        out.keys.insert(n.uid.clone(), key);
    }
    out
}

fn enhancement_tokens(
    node: &ViewNode,
    repetitive: &impl Fn(&str) -> bool,
) -> Vec<(String, String)> {
    preorder(node)
        .into_iter()
        .filter_map(|n| match (&n.mapping_id, &n.text) {
            (Some(id), Some(text)) if !repetitive(id) => Some((id.clone(), text.clone())),
            _ => None,
        })
        .collect()
}

/// Correspondence between two trees' views.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ViewPairing {
    pub pairs: Vec<(String, String)>,
    /// Keyed views of the first tree without a counterpart (includes duplicates).
    pub unmatched_a: Vec<String>,
    pub unmatched_b: Vec<String>,
    /// Keyed views dropped because an earlier view had the same key.
    pub duplicates_a: Vec<String>,
    pub duplicates_b: Vec<String>,
    /// Views without a mapping id.
    pub unkeyed_a: Vec<String>,
    pub unkeyed_b: Vec<String>,
}

impl ViewPairing {
    pub fn a_to_b(&self) -> HashMap<&str, &str> {
        self.pairs
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect()
    }

    pub fn b_to_a(&self) -> HashMap<&str, &str> {
        self.pairs
            .iter()
            .map(|(a, b)| (b.as_str(), a.as_str()))
            .collect()
    }

    /// Same correspondence with the roles of the two trees exchanged.
    pub fn swapped(&self) -> ViewPairing {
        ViewPairing {
            pairs: self
                .pairs
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
            unmatched_a: self.unmatched_b.clone(),
            unmatched_b: self.unmatched_a.clone(),
            duplicates_a: self.duplicates_b.clone(),
            duplicates_b: self.duplicates_a.clone(),
            unkeyed_a: self.unkeyed_b.clone(),
            unkeyed_b: self.unkeyed_a.clone(),
        }
    }
}

/// Pairs views whose serialized keys are equal. Pairs are listed in `a`'s
/// pre-order; unmatched lists in each tree's own pre-order.
pub fn pair_views(a: &Snapshot, b: &Snapshot) -> ViewPairing {
    let ka = compute_keys(a);
    let kb = compute_keys(b);
    pair_keys(a, &ka, b, &kb)
}

pub(crate) fn pair_keys(a: &Snapshot, ka: &TreeKeys, b: &Snapshot, kb: &TreeKeys) -> ViewPairing {
    let index_b: HashMap<String, &str> = preorder(&b.root)
        .into_iter()
        .filter(|n| !kb.duplicates.contains(&n.uid))
        .filter_map(|n| kb.keys.get(&n.uid).map(|k| (k.serialize(), n.uid.as_str())))
        .collect();

    let mut pairing = ViewPairing::default();
    let mut matched_b: BTreeSet<&str> = BTreeSet::new();
    for n in preorder(&a.root) {
        let Some(key) = ka.keys.get(&n.uid) else {
            continue;
        };
        if ka.duplicates.contains(&n.uid) {
            pairing.unmatched_a.push(n.uid.clone());
            continue;
        }
        match index_b.get(&key.serialize()) {
            Some(&ub) => {
                pairing.pairs.push((n.uid.clone(), ub.to_string()));
                matched_b.insert(ub);
            }
            None => pairing.unmatched_a.push(n.uid.clone()),
        }
    }
    for n in preorder(&b.root) {
        if kb.keys.contains_key(&n.uid) && !matched_b.contains(n.uid.as_str()) {
            pairing.unmatched_b.push(n.uid.clone());
        }
    }
    let in_order = |snap: &Snapshot, set: &BTreeSet<String>| -> Vec<String> {
        preorder(&snap.root)
            .into_iter()
            .filter(|n| set.contains(&n.uid))
            .map(|n| n.uid.clone())
            .collect()
    };
    pairing.duplicates_a = in_order(a, &ka.duplicates);
    pairing.duplicates_b = in_order(b, &kb.duplicates);
    pairing.unkeyed_a = ka.unkeyed.clone();
    pairing.unkeyed_b = kb.unkeyed.clone();
    pairing
}
