//! Skeletal sub-trees and their occurrences.
//!
//! A skeletal tree `S` matches at a node `v` of an EOL-tree when the root of
//! `S` has `v`'s label and every child of an `S` node, reached over an edge
//! of kind `k`, matches the `k`-child of the corresponding tree node. Leaves
//! of `S` may land on inner nodes. Because every node has at most one child
//! per edge kind, a match from a given root is unique.

use std::collections::HashMap;

use super::{EdgeKind, EolTree, NodeIx};
use crate::formula::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkeletalNode {
    pub label: Formula,
    /// Sorted by kind: empty, `[U]` or `[L, R]`.
    pub children: Vec<(EdgeKind, usize)>,
}

/// A rooted tree with the local arity constraints of an EOL-tree but no
/// levels or bitstrings. Node 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkeletalTree {
    nodes: Vec<SkeletalNode>,
}

impl SkeletalTree {
    pub fn leaf(label: Formula) -> SkeletalTree {
        SkeletalTree {
            nodes: vec![SkeletalNode {
                label,
                children: Vec::new(),
            }],
        }
    }

    pub fn new(mut nodes: Vec<SkeletalNode>) -> Result<SkeletalTree, String> {
        if nodes.is_empty() {
            return Err("empty skeletal tree".into());
        }
        let mut parents = vec![0usize; nodes.len()];
        for (i, n) in nodes.iter_mut().enumerate() {
            n.children.sort_by_key(|(k, _)| *k);
            let kinds: Vec<EdgeKind> = n.children.iter().map(|(k, _)| *k).collect();
            if !matches!(
                kinds.as_slice(),
                [] | [EdgeKind::U] | [EdgeKind::L, EdgeKind::R]
            ) {
                return Err(format!("node {i} has children {kinds:?}"));
            }
            for (_, c) in &n.children {
                if *c >= parents.len() || *c == 0 {
                    return Err(format!("node {i} points at invalid child {c}"));
                }
                parents[*c] += 1;
            }
        }
        if let Some(i) = parents.iter().skip(1).position(|p| *p != 1) {
            return Err(format!("node {} has {} parents", i + 1, parents[i + 1]));
        }
        let t = SkeletalTree { nodes };
        if t.preorder().len() != t.nodes.len() {
            return Err("not connected".into());
        }
        Ok(t)
    }

    /// The full subtree of `t` below `v`.
    pub fn from_subtree(t: &EolTree, v: NodeIx) -> SkeletalTree {
        let ids = t.subtree(v);
        let pos: HashMap<NodeIx, usize> = ids.iter().enumerate().map(|(i, u)| (*u, i)).collect();
        SkeletalTree {
            nodes: ids
                .iter()
                .map(|u| SkeletalNode {
                    label: t.label(*u).clone(),
                    children: t
                        .node(*u)
                        .children
                        .iter()
                        .map(|(k, c)| (*k, pos[c]))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn nodes(&self) -> &[SkeletalNode] {
        &self.nodes
    }

    pub fn root(&self) -> &SkeletalNode {
        &self.nodes[0]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![0];
        let mut seen = vec![false; self.nodes.len()];
        while let Some(u) = stack.pop() {
            if std::mem::replace(&mut seen[u], true) {
                continue;
            }
            out.push(u);
            for (_, c) in self.nodes[u].children.iter().rev() {
                stack.push(*c);
            }
        }
        out
    }

    pub fn height(&self) -> usize {
        fn go(s: &SkeletalTree, u: usize) -> usize {
            s.nodes[u]
                .children
                .iter()
                .map(|(_, c)| 1 + go(s, *c))
                .max()
                .unwrap_or(0)
        }
        go(self, 0)
    }
}

/// One occurrence of a skeletal tree. `image[i]` is the tree node matched
/// by skeletal node `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occurrence {
    pub root: NodeIx,
    pub level: u32,
    pub image: Vec<NodeIx>,
}

/// Hash-consed class of the full subtree below every node: two nodes share
/// a class iff their subtrees are equal as labelled edge-ordered trees.
/// Nodes not reachable from the root get `u32::MAX`.
pub fn subtree_classes(t: &EolTree) -> Vec<u32> {
    let mut class = vec![u32::MAX; t.len()];
    let mut table: HashMap<(u32, Vec<(EdgeKind, u32)>), u32> = HashMap::new();
    for v in t.bfs().into_iter().rev() {
        let node = t.node(v);
        let key = (
            node.label,
            node.children
                .iter()
                .map(|(k, c)| (*k, class[c.0]))
                .collect(),
        );
        let next = table.len() as u32;
        class[v.0] = *table.entry(key).or_insert(next);
    }
    class
}

/// All occurrences of `s` in `t`, ordered by root id.
pub fn skeletal_match(s: &SkeletalTree, t: &EolTree) -> Vec<Occurrence> {
    let labels: Option<Vec<u32>> = s
        .nodes
        .iter()
        .map(|n| t.order().index_of(&n.label))
        .collect();
    let Some(labels) = labels else {
        return Vec::new();
    };
    let class = subtree_classes(t);
    let mut memo: HashMap<(usize, u32), bool> = HashMap::new();

    fn matches(
        s: &SkeletalTree,
        labels: &[u32],
        t: &EolTree,
        class: &[u32],
        memo: &mut HashMap<(usize, u32), bool>,
        x: usize,
        y: NodeIx,
    ) -> bool {
        if let Some(r) = memo.get(&(x, class[y.0])) {
            return *r;
        }
        let node = t.node(y);
        let r = node.label == labels[x]
            && s.nodes[x]
                .children
                .iter()
                .all(|(k, xc)| match node.child(*k) {
                    Some(yc) => matches(s, labels, t, class, memo, *xc, yc),
                    None => false,
                });
        memo.insert((x, class[y.0]), r);
        r
    }

    let mut out = Vec::new();
    let mut roots = t.bfs();
    roots.sort();
    for y in roots {
        if t.node(y).label != labels[0] || !matches(s, &labels, t, &class, &mut memo, 0, y) {
            continue;
        }
        let mut image = vec![y; s.len()];
        for x in s.preorder() {
            for (k, xc) in &s.nodes[x].children {
                image[*xc] = t.node(image[x]).child(*k).expect("matched");
            }
        }
        out.push(Occurrence {
            root: y,
            level: t.level(y),
            image,
        });
    }
    out
}
