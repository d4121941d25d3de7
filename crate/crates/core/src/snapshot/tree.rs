use std::collections::HashMap;

use super::ViewNode;

/// Depth-first, parent before children, children in stored order.
pub fn preorder(root: &ViewNode) -> Vec<&ViewNode> {
    let mut out = Vec::new();
    let mut stack = vec![root];
    while let Some(node) = stack.pop() {
        out.push(node);
        stack.extend(node.children.iter().rev());
    }
    out
}

/// Children in the order they are drawn: ascending z-order, stored order on ties.
pub fn draw_order(parent: &ViewNode) -> Vec<&ViewNode> {
    let mut kids: Vec<&ViewNode> = parent.children.iter().collect();
    // sort_by_key is stable, so equal z keeps stored order
    kids.sort_by_key(|c| c.z_order);
    kids
}

/// Lookup tables over one tree: uid to node, parent, and pre-order position.
pub struct TreeIndex<'a> {
    order: Vec<&'a ViewNode>,
    by_uid: HashMap<&'a str, usize>,
    parent: HashMap<&'a str, &'a ViewNode>,
}

impl<'a> TreeIndex<'a> {
    pub fn new(root: &'a ViewNode) -> Self {
        let order = preorder(root);
        let by_uid = order
            .iter()
            .enumerate()
            .map(|(i, n)| (n.uid.as_str(), i))
            .collect();
        let mut parent = HashMap::new();
        for node in &order {
            for child in &node.children {
                parent.insert(child.uid.as_str(), *node);
            }
        }
        TreeIndex {
            order,
            by_uid,
            parent,
        }
    }

    pub fn preorder(&self) -> &[&'a ViewNode] {
        &self.order
    }

    pub fn get(&self, uid: &str) -> Option<&'a ViewNode> {
        self.by_uid.get(uid).map(|&i| self.order[i])
    }

    pub fn parent(&self, uid: &str) -> Option<&'a ViewNode> {
        self.parent.get(uid).copied()
    }

    pub fn position(&self, uid: &str) -> Option<usize> {
        self.by_uid.get(uid).copied()
    }

    pub fn contains(&self, uid: &str) -> bool {
        self.by_uid.contains_key(uid)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}
