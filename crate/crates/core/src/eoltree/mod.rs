//! Edge-ordered labelled trees (EOL-trees) built from derivations.
//!
//! Every formula occurrence of a derivation becomes a node. An elimination
//! has its minor premise as `L` child and its major premise as `R` child; an
//! introduction has its premise as `U` child. The edge entering a node is
//! labelled with the dependency set of the sub-derivation rooted there,
//! stored as a bitstring over a [`FormulaOrder`]. The conclusion's own
//! dependency set hangs on one extra edge from a root point, kept in
//! [`EolTree::root_deps`].
//!
//! Levels start at 0 on the conclusion.

mod export;
mod skeletal;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use bitvec::prelude::*;
use thiserror::Error;

use crate::deduction::Derivation;
use crate::formula::{subformula_closure, Formula, Measured, TreeMeasures};

pub use export::{export, parse_export};
pub use skeletal::{skeletal_match, subtree_classes, Occurrence, SkeletalNode, SkeletalTree};

/// A dependency set, one bit per formula of the order.
pub type DepSet = BitVec<u64, Lsb0>;

/// Renders a dependency set with bit 0 leftmost.
pub fn bitstring(bits: &DepSet) -> String {
    bits.iter().map(|b| if *b { '1' } else { '0' }).collect()
}

pub fn parse_bitstring(s: &str) -> Option<DepSet> {
    s.chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EolError {
    #[error("formula order does not cover {0}")]
    OrderIncomplete(Formula),
    #[error("formula {0} appears twice in the order")]
    DuplicateInOrder(Formula),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

/// A linear order over formulas; position `k` is bit `k` of every
/// dependency set.
#[derive(Debug, Clone)]
pub struct FormulaOrder {
    formulas: Vec<Formula>,
    index: HashMap<Formula, u32>,
}

impl PartialEq for FormulaOrder {
    fn eq(&self, other: &Self) -> bool {
        self.formulas == other.formulas
    }
}

impl Eq for FormulaOrder {}

impl FormulaOrder {
    pub fn new(formulas: Vec<Formula>) -> Result<FormulaOrder, EolError> {
        let mut index = HashMap::with_capacity(formulas.len());
        for (i, f) in formulas.iter().enumerate() {
            if index.insert(f.clone(), i as u32).is_some() {
                return Err(EolError::DuplicateInOrder(f.clone()));
            }
        }
        Ok(FormulaOrder { formulas, index })
    }

    /// Sub-formula closure of everything occurring in `d`, canonically
    /// ordered.
    pub fn canonical_for(d: &Derivation) -> FormulaOrder {
        let occurring = d.formulas();
        FormulaOrder::new(subformula_closure(occurring.iter())).expect("closure has no duplicates")
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn get(&self, i: u32) -> &Formula {
        &self.formulas[i as usize]
    }

    pub fn index_of(&self, f: &Formula) -> Option<u32> {
        self.index.get(f).copied()
    }

    pub fn empty_set(&self) -> DepSet {
        bitvec![u64, Lsb0; 0; self.len()]
    }

    pub fn singleton(&self, i: u32) -> DepSet {
        let mut s = self.empty_set();
        s.set(i as usize, true);
        s
    }

    pub fn encode<'a, I: IntoIterator<Item = &'a Formula>>(
        &self,
        set: I,
    ) -> Result<DepSet, EolError> {
        let mut bits = self.empty_set();
        for f in set {
            let i = self
                .index_of(f)
                .ok_or_else(|| EolError::OrderIncomplete(f.clone()))?;
            bits.set(i as usize, true);
        }
        Ok(bits)
    }

    pub fn decode(&self, bits: &DepSet) -> Vec<Formula> {
        bits.iter_ones().map(|i| self.formulas[i].clone()).collect()
    }

    /// `A, B, A -> B`
    pub fn render(&self) -> String {
        self.formulas
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn parse(text: &str) -> Result<FormulaOrder, EolError> {
        let text = text.trim();
        let text = text.strip_prefix("order").map_or(text, str::trim_start);
        let mut formulas = Vec::new();
        for part in text.split(',') {
            let f = crate::formula::parse(part.trim()).map_err(|e| EolError::Format {
                line: 1,
                message: format!("bad formula {:?} in order: {e}", part.trim()),
            })?;
            formulas.push(f);
        }
        FormulaOrder::new(formulas)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    /// Minor premise of an elimination.
    L,
    /// Major premise of an elimination.
    R,
    /// Premise of an introduction.
    U,
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeKind::L => "L",
            EdgeKind::R => "R",
            EdgeKind::U => "U",
        })
    }
}

impl std::str::FromStr for EdgeKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "L" => Ok(EdgeKind::L),
            "R" => Ok(EdgeKind::R),
            "U" => Ok(EdgeKind::U),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeIx(pub usize);

impl fmt::Display for NodeIx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EolNode {
    pub(crate) label: u32,
    pub(crate) level: u32,
    pub(crate) parent: Option<NodeIx>,
    pub(crate) children: Vec<(EdgeKind, NodeIx)>,
    /// Dependency set on the edge entering this node.
    pub(crate) deps: DepSet,
}

impl EolNode {
    pub fn label_index(&self) -> u32 {
        self.label
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn parent(&self) -> Option<NodeIx> {
        self.parent
    }

    pub fn children(&self) -> &[(EdgeKind, NodeIx)] {
        &self.children
    }

    pub fn deps(&self) -> &DepSet {
        &self.deps
    }

    pub fn child(&self, kind: EdgeKind) -> Option<NodeIx> {
        self.children
            .iter()
            .find(|(k, _)| *k == kind)
            .map(|(_, c)| *c)
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EolTree {
    order: FormulaOrder,
    nodes: Vec<EolNode>,
    root: NodeIx,
    root_deps: DepSet,
}

/// Raw material for an EOL-tree that may violate any of the structural
/// conditions; see [`EolTree::from_parts`].
#[derive(Debug, Clone)]
pub struct RawNode {
    pub label: u32,
    pub level: u32,
}

#[derive(Debug, Clone)]
pub struct RawEdge {
    pub kind: EdgeKind,
    pub parent: usize,
    pub child: usize,
    pub deps: DepSet,
}

impl EolTree {
    /// Builds the tree of a derivation. Node ids follow the derivation's
    /// preorder, so node `i` is derivation node `i`.
    pub fn from_derivation(d: &Derivation, order: &FormulaOrder) -> Result<EolTree, EolError> {
        fn go(
            d: &Derivation,
            level: u32,
            parent: Option<NodeIx>,
            order: &FormulaOrder,
            nodes: &mut Vec<EolNode>,
        ) -> Result<NodeIx, EolError> {
            let label = order
                .index_of(d.conclusion())
                .ok_or_else(|| EolError::OrderIncomplete(d.conclusion().clone()))?;
            let id = NodeIx(nodes.len());
            nodes.push(EolNode {
                label,
                level,
                parent,
                children: Vec::new(),
                deps: DepSet::new(),
            });
            let (children, deps) = match d {
                Derivation::Hypothesis { .. } => (Vec::new(), order.singleton(label)),
                Derivation::Intro {
                    conclusion,
                    premise,
                    ..
                } => {
                    let c = go(premise, level + 1, Some(id), order, nodes)?;
                    let mut deps = nodes[c.0].deps.clone();
                    if let Some(i) = conclusion.antecedent().and_then(|a| order.index_of(a)) {
                        deps.set(i as usize, false);
                    }
                    (vec![(EdgeKind::U, c)], deps)
                }
                Derivation::Elim { minor, major, .. } => {
                    let l = go(minor, level + 1, Some(id), order, nodes)?;
                    let r = go(major, level + 1, Some(id), order, nodes)?;
                    let mut deps = nodes[l.0].deps.clone();
                    deps |= &nodes[r.0].deps;
                    (vec![(EdgeKind::L, l), (EdgeKind::R, r)], deps)
                }
            };
            nodes[id.0].children = children;
            nodes[id.0].deps = deps;
            Ok(id)
        }
        let mut nodes = Vec::with_capacity(d.size());
        let root = go(d, 0, None, order, &mut nodes)?;
        let root_deps = nodes[root.0].deps.clone();
        Ok(EolTree {
            order: order.clone(),
            nodes,
            root,
            root_deps,
        })
    }

    /// Assembles a tree from unchecked parts. Without an explicit `root` the
    /// root is the first node without a parent (node 0 if every node has
    /// one). Use [`validate`] to find out which conditions hold.
    pub fn from_parts(
        order: FormulaOrder,
        raw: Vec<RawNode>,
        edges: Vec<RawEdge>,
        root: Option<usize>,
        root_deps: DepSet,
    ) -> EolTree {
        let mut nodes: Vec<EolNode> = raw
            .into_iter()
            .map(|r| EolNode {
                label: r.label,
                level: r.level,
                parent: None,
                children: Vec::new(),
                deps: DepSet::new(),
            })
            .collect();
        for e in edges {
            if e.parent >= nodes.len() || e.child >= nodes.len() {
                continue;
            }
            nodes[e.parent].children.push((e.kind, NodeIx(e.child)));
            // A second parent is recorded as a tree violation by `validate`.
            if nodes[e.child].parent.is_none() {
                nodes[e.child].parent = Some(NodeIx(e.parent));
            }
            nodes[e.child].deps = e.deps;
        }
        for n in &mut nodes {
            n.children.sort_by_key(|(k, _)| *k);
        }
        let root = root
            .filter(|r| *r < nodes.len())
            .or_else(|| nodes.iter().position(|n| n.parent.is_none()))
            .map_or(NodeIx(0), NodeIx);
        if let Some(n) = nodes.get_mut(root.0) {
            n.deps = root_deps.clone();
        }
        EolTree {
            order,
            nodes,
            root,
            root_deps,
        }
    }

    pub fn order(&self) -> &FormulaOrder {
        &self.order
    }

    pub fn nodes(&self) -> &[EolNode] {
        &self.nodes
    }

    pub fn node(&self, v: NodeIx) -> &EolNode {
        &self.nodes[v.0]
    }

    pub fn root(&self) -> NodeIx {
        self.root
    }

    pub fn root_deps(&self) -> &DepSet {
        &self.root_deps
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn label(&self, v: NodeIx) -> &Formula {
        self.order.get(self.nodes[v.0].label)
    }

    pub fn level(&self, v: NodeIx) -> u32 {
        self.nodes[v.0].level
    }

    /// Largest level of any node.
    pub fn height(&self) -> u32 {
        self.nodes.iter().map(|n| n.level).max().unwrap_or(0)
    }

    /// Distinct labels occurring in the tree, in order position.
    pub fn label_set(&self) -> Vec<Formula> {
        let used: BTreeSet<u32> = self.nodes.iter().map(|n| n.label).collect();
        used.into_iter()
            .map(|i| self.order.get(i).clone())
            .collect()
    }

    /// Nodes reachable from the root in breadth-first order; a node is
    /// visited at most once even if the structure is not a tree.
    pub fn bfs(&self) -> Vec<NodeIx> {
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::with_capacity(self.nodes.len());
        if self.nodes.is_empty() {
            return out;
        }
        let mut queue = VecDeque::from([self.root]);
        seen[self.root.0] = true;
        while let Some(v) = queue.pop_front() {
            out.push(v);
            for (_, c) in &self.nodes[v.0].children {
                if !seen[c.0] {
                    seen[c.0] = true;
                    queue.push_back(*c);
                }
            }
        }
        out
    }

    /// The full subtree below `v` in preorder.
    pub fn subtree(&self, v: NodeIx) -> Vec<NodeIx> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.push(u);
            for (_, c) in self.nodes[u.0].children.iter().rev() {
                stack.push(*c);
            }
        }
        out
    }

    /// Copies the full subtree below `v` into a tree of its own, with levels
    /// counted from `v`.
    pub fn extract_subtree(&self, v: NodeIx) -> EolTree {
        let ids = self.subtree(v);
        let pos: HashMap<NodeIx, usize> = ids.iter().enumerate().map(|(i, u)| (*u, i)).collect();
        let base = self.nodes[v.0].level;
        let nodes = ids
            .iter()
            .map(|u| {
                let n = &self.nodes[u.0];
                EolNode {
                    label: n.label,
                    level: n.level - base,
                    parent: if *u == v {
                        None
                    } else {
                        n.parent.map(|p| NodeIx(pos[&p]))
                    },
                    children: n
                        .children
                        .iter()
                        .map(|(k, c)| (*k, NodeIx(pos[c])))
                        .collect(),
                    deps: n.deps.clone(),
                }
            })
            .collect();
        EolTree {
            order: self.order.clone(),
            nodes,
            root: NodeIx(0),
            root_deps: self.nodes[v.0].deps.clone(),
        }
    }
}

impl Measured for EolTree {
    fn measures(&self) -> TreeMeasures {
        TreeMeasures {
            size: self.nodes.len(),
            height: self.height() as usize,
        }
    }
}

/// A violated structural condition. `condition()` gives the number of the
/// defining condition (1-9) where one applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotATree {
        node: NodeIx,
        reason: String,
    },
    UnknownLabel {
        node: NodeIx,
    },
    OverlappingEdgeKinds {
        parent: NodeIx,
        child: NodeIx,
    },
    DuplicateRight {
        node: NodeIx,
    },
    DuplicateLeft {
        node: NodeIx,
    },
    UnpairedBinary {
        node: NodeIx,
    },
    DuplicateUnary {
        node: NodeIx,
    },
    ForcedLabel {
        node: NodeIx,
        reason: String,
    },
    UnaryLabel {
        node: NodeIx,
        reason: String,
    },
    Level {
        node: NodeIx,
        expected: u32,
        found: u32,
    },
    BitstringLength {
        node: Option<NodeIx>,
        found: usize,
        expected: usize,
    },
    Dependency {
        node: Option<NodeIx>,
        reason: String,
    },
}

impl Violation {
    pub fn condition(&self) -> Option<u8> {
        Some(match self {
            Violation::NotATree { .. } => 1,
            Violation::UnknownLabel { .. } => 2,
            Violation::OverlappingEdgeKinds { .. } => 3,
            Violation::DuplicateRight { .. } => 4,
            Violation::DuplicateLeft { .. } => 5,
            Violation::UnpairedBinary { .. } => 6,
            Violation::DuplicateUnary { .. } => 7,
            Violation::ForcedLabel { .. } => 8,
            Violation::UnaryLabel { .. } => 9,
            _ => return None,
        })
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.condition() {
            write!(f, "condition {c}: ")?;
        }
        match self {
            Violation::NotATree { node, reason } => write!(f, "node {node}: {reason}"),
            Violation::UnknownLabel { node } => {
                write!(f, "node {node} has a label outside the order")
            }
            Violation::OverlappingEdgeKinds { parent, child } => {
                write!(f, "edge {parent}->{child} carries more than one kind")
            }
            Violation::DuplicateRight { node } => write!(f, "node {node} has two R-children"),
            Violation::DuplicateLeft { node } => write!(f, "node {node} has two L-children"),
            Violation::UnpairedBinary { node } => write!(
                f,
                "node {node} has an L-child without an R-child or vice versa"
            ),
            Violation::DuplicateUnary { node } => write!(f, "node {node} has two U-children"),
            Violation::ForcedLabel { node, reason } | Violation::UnaryLabel { node, reason } => {
                write!(f, "node {node}: {reason}")
            }
            Violation::Level {
                node,
                expected,
                found,
            } => {
                write!(f, "node {node} at level {found}, expected {expected}")
            }
            Violation::BitstringLength {
                node,
                found,
                expected,
            } => match node {
                Some(n) => write!(f, "edge into {n} has {found} bits, expected {expected}"),
                None => write!(f, "root edge has {found} bits, expected {expected}"),
            },
            Violation::Dependency { node, reason } => match node {
                Some(n) => write!(f, "dependency set of {n}: {reason}"),
                None => write!(f, "root edge: {reason}"),
            },
        }
    }
}

/// Checks the nine structural conditions, level numbering, bitstring
/// lengths and dependency coherence (a leaf depends on itself, an
/// elimination on the union of its premises, an introduction on its
/// premise minus the discharged antecedent).
pub fn validate(t: &EolTree) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = t.nodes.len();
    if n == 0 {
        out.push(Violation::NotATree {
            node: NodeIx(0),
            reason: "empty tree".into(),
        });
        return out;
    }
    let width = t.order.len();

    // Condition 1: a single root, every node reached exactly once.
    let mut parents = vec![0usize; n];
    for node in &t.nodes {
        for (_, c) in &node.children {
            parents[c.0] += 1;
        }
    }
    for (i, p) in parents.iter().enumerate() {
        if NodeIx(i) == t.root && *p > 0 {
            out.push(Violation::NotATree {
                node: NodeIx(i),
                reason: "root has a parent".into(),
            });
        } else if NodeIx(i) != t.root && *p != 1 {
            out.push(Violation::NotATree {
                node: NodeIx(i),
                reason: format!("{p} parents"),
            });
        }
    }
    let reached = t.bfs();
    if reached.len() != n {
        let set: HashSet<NodeIx> = reached.iter().copied().collect();
        for i in (0..n).map(NodeIx).filter(|v| !set.contains(v)) {
            out.push(Violation::NotATree {
                node: i,
                reason: "unreachable from the root".into(),
            });
        }
    }

    for (i, node) in t.nodes.iter().enumerate() {
        let v = NodeIx(i);
        if node.label as usize >= width {
            out.push(Violation::UnknownLabel { node: v });
        }
        let count = |k: EdgeKind| node.children.iter().filter(|(kk, _)| *kk == k).count();
        let (l, r, u) = (count(EdgeKind::L), count(EdgeKind::R), count(EdgeKind::U));
        if node.children.len() > 2 {
            out.push(Violation::NotATree {
                node: v,
                reason: format!("{} children", node.children.len()),
            });
        }
        let mut targets: Vec<NodeIx> = node.children.iter().map(|(_, c)| *c).collect();
        targets.sort();
        for w in targets.windows(2) {
            if w[0] == w[1] {
                out.push(Violation::OverlappingEdgeKinds {
                    parent: v,
                    child: w[0],
                });
            }
        }
        if r > 1 {
            out.push(Violation::DuplicateRight { node: v });
        }
        if l > 1 {
            out.push(Violation::DuplicateLeft { node: v });
        }
        if (l > 0) != (r > 0) {
            out.push(Violation::UnpairedBinary { node: v });
        }
        if u > 1 {
            out.push(Violation::DuplicateUnary { node: v });
        }
        let labelled = |c: NodeIx| -> Option<&Formula> {
            let idx = t.nodes.get(c.0)?.label as usize;
            t.order.formulas.get(idx)
        };
        let Some(own) = t.order.formulas.get(node.label as usize) else {
            continue;
        };
        if l == 1 && r == 1 {
            let lc = node.child(EdgeKind::L).unwrap();
            let rc = node.child(EdgeKind::R).unwrap();
            if let (Some(minor), Some(major)) = (labelled(lc), labelled(rc)) {
                let expected = Formula::implies(minor.clone(), own.clone());
                if *major != expected {
                    out.push(Violation::ForcedLabel {
                        node: v,
                        reason: format!("R-child labelled {major}, expected {expected}"),
                    });
                }
            }
        }
        if u == 1 {
            let c = node.child(EdgeKind::U).unwrap();
            if let Some(child) = labelled(c) {
                match own {
                    Formula::Implication(a, b) if **b == *child => {
                        if t.order.index_of(a).is_none() {
                            out.push(Violation::UnaryLabel {
                                node: v,
                                reason: format!("antecedent {a} is not a label"),
                            });
                        }
                    }
                    _ => out.push(Violation::UnaryLabel {
                        node: v,
                        reason: format!("{own} is not an implication with consequent {child}"),
                    }),
                }
            }
        }
    }

    // Levels along the reachable part.
    if t.nodes[t.root.0].level != 0 {
        out.push(Violation::Level {
            node: t.root,
            expected: 0,
            found: t.nodes[t.root.0].level,
        });
    }
    for v in &reached {
        let node = &t.nodes[v.0];
        for (_, c) in &node.children {
            let found = t.nodes[c.0].level;
            if found != node.level + 1 {
                out.push(Violation::Level {
                    node: *c,
                    expected: node.level + 1,
                    found,
                });
            }
        }
    }

    // Bitstrings.
    if t.root_deps.len() != width {
        out.push(Violation::BitstringLength {
            node: None,
            found: t.root_deps.len(),
            expected: width,
        });
    }
    let mut lengths_ok = t.root_deps.len() == width;
    for (i, node) in t.nodes.iter().enumerate() {
        if node.deps.len() != width {
            lengths_ok = false;
            out.push(Violation::BitstringLength {
                node: Some(NodeIx(i)),
                found: node.deps.len(),
                expected: width,
            });
        }
    }
    if lengths_ok && out.is_empty() {
        out.extend(dependency_violations(t));
    }
    out
}

fn dependency_violations(t: &EolTree) -> Vec<Violation> {
    let mut out = Vec::new();
    for (i, node) in t.nodes.iter().enumerate() {
        let v = NodeIx(i);
        let expected = match (
            node.child(EdgeKind::L),
            node.child(EdgeKind::R),
            node.child(EdgeKind::U),
        ) {
            (Some(l), Some(r), _) => {
                let mut s = t.nodes[l.0].deps.clone();
                s |= &t.nodes[r.0].deps;
                s
            }
            (_, _, Some(c)) => {
                let mut s = t.nodes[c.0].deps.clone();
                if let Some(i) = t
                    .order
                    .get(node.label)
                    .antecedent()
                    .and_then(|a| t.order.index_of(a))
                {
                    s.set(i as usize, false);
                }
                s
            }
            _ => t.order.singleton(node.label),
        };
        if node.deps != expected {
            out.push(Violation::Dependency {
                node: Some(v),
                reason: format!(
                    "found {}, expected {}",
                    bitstring(&node.deps),
                    bitstring(&expected)
                ),
            });
        }
    }
    if t.root_deps != t.nodes[t.root.0].deps {
        out.push(Violation::Dependency {
            node: None,
            reason: "differs from the conclusion's dependency set".into(),
        });
    }
    out
}

/// `V_T^{i,q}`: nodes at level `i` labelled `q`.
pub fn nodes_at(t: &EolTree, level: u32, q: &Formula) -> Vec<NodeIx> {
    let Some(label) = t.order.index_of(q) else {
        return Vec::new();
    };
    t.nodes
        .iter()
        .enumerate()
        .filter(|(_, n)| n.level == level && n.label == label)
        .map(|(i, _)| NodeIx(i))
        .collect()
}

pub fn occ(t: &EolTree, level: u32, q: &Formula) -> usize {
    nodes_at(t, level, q).len()
}

/// Counts of nodes per (level, label).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelHistogram {
    order: FormulaOrder,
    rows: Vec<BTreeMap<u32, usize>>,
}

impl LevelHistogram {
    pub fn levels(&self) -> usize {
        self.rows.len()
    }

    pub fn total(&self) -> usize {
        self.rows.iter().flat_map(|r| r.values()).sum()
    }

    pub fn get(&self, level: u32, q: &Formula) -> usize {
        let Some(label) = self.order.index_of(q) else {
            return 0;
        };
        self.rows
            .get(level as usize)
            .and_then(|r| r.get(&label))
            .copied()
            .unwrap_or(0)
    }

    /// Occupied labels of one level, in order position, with their counts.
    pub fn row(&self, level: u32) -> Vec<(&Formula, usize)> {
        self.rows
            .get(level as usize)
            .map(|r| r.iter().map(|(l, c)| (self.order.get(*l), *c)).collect())
            .unwrap_or_default()
    }

    pub fn row_total(&self, level: u32) -> usize {
        self.rows
            .get(level as usize)
            .map_or(0, |r| r.values().sum())
    }

    /// `(level, label, count)` sorted by level, then order position.
    pub fn entries(&self) -> impl Iterator<Item = (u32, &Formula, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(i, r)| {
            r.iter()
                .map(move |(l, c)| (i as u32, self.order.get(*l), *c))
        })
    }

    /// Largest count in the table.
    pub fn max_count(&self) -> usize {
        self.rows
            .iter()
            .flat_map(|r| r.values())
            .copied()
            .max()
            .unwrap_or(0)
    }
}

pub fn level_histogram(t: &EolTree) -> LevelHistogram {
    let mut rows: Vec<BTreeMap<u32, usize>> = vec![BTreeMap::new(); t.height() as usize + 1];
    for n in &t.nodes {
        *rows[n.level as usize].entry(n.label).or_default() += 1;
    }
    LevelHistogram {
        order: t.order.clone(),
        rows,
    }
}

/// `(minor label, major label)` pairs below binary nodes labelled `q`.
pub fn label2_suc(t: &EolTree, q: &Formula) -> BTreeSet<(Formula, Formula)> {
    let Some(label) = t.order.index_of(q) else {
        return BTreeSet::new();
    };
    t.nodes
        .iter()
        .filter(|n| n.label == label)
        .filter_map(|n| match (n.child(EdgeKind::L), n.child(EdgeKind::R)) {
            (Some(l), Some(r)) => Some((t.label(l).clone(), t.label(r).clone())),
            _ => None,
        })
        .collect()
}
