//! Horizontal collapse of EOL-trees into DAG proofs.
//!
//! Identical sub-trees whose roots sit on the same level, with equal
//! incoming dependency sets, are stored once. The DAG keeps levels and
//! bitstrings, so [`verify`] checks it locally without unfolding.
//!
//! Text form:
//!
//! ```text
//! dag 1
//! order A, B, A -> B
//! node 0 0 elim B 1 2 101
//! node 1 1 leaf A 100
//! node 2 1 leaf A -> B 001
//! root 0
//! ```
//!
//! Intro nodes are written `node <id> <level> intro <label> <child> <mark>
//! <bits>`, where the mark is the position of the discharged antecedent in
//! the order plus one.

use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Write as _};
use std::hash::{Hash, Hasher};

use bitvec::field::BitField;

use thiserror::Error;

use crate::eoltree::{
    bitstring, parse_bitstring, DepSet, EdgeKind, EolTree, FormulaOrder, RawEdge, RawNode,
};
use crate::formula::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DagKind {
    Leaf,
    Intro { child: usize, mark: u32 },
    Elim { minor: usize, major: usize },
}

impl DagKind {
    pub fn children(&self) -> Vec<(EdgeKind, usize)> {
        match *self {
            DagKind::Leaf => Vec::new(),
            DagKind::Intro { child, .. } => vec![(EdgeKind::U, child)],
            DagKind::Elim { minor, major } => vec![(EdgeKind::L, minor), (EdgeKind::R, major)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DagNode {
    pub level: u32,
    pub label: u32,
    pub kind: DagKind,
    /// Dependency set on the edge entering this node.
    pub deps: DepSet,
}

impl Hash for DagNode {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.level.hash(state);
        self.label.hash(state);
        self.kind.hash(state);
        self.deps.len().hash(state);
        for chunk in self.deps.chunks(64) {
            chunk.load_le::<u64>().hash(state);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DagProof {
    pub order: FormulaOrder,
    pub nodes: Vec<DagNode>,
    pub root: usize,
}

impl DagProof {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn label(&self, id: usize) -> &Formula {
        self.order.get(self.nodes[id].label)
    }

    /// Number of parents of every node; the root counts the root edge.
    pub fn ref_counts(&self) -> Vec<usize> {
        let mut refs = vec![0; self.nodes.len()];
        if let Some(r) = refs.get_mut(self.root) {
            *r += 1;
        }
        for n in &self.nodes {
            for (_, c) in n.kind.children() {
                if let Some(r) = refs.get_mut(c) {
                    *r += 1;
                }
            }
        }
        refs
    }

    /// Node count of the unfolded tree.
    pub fn unfolded_size(&self) -> u128 {
        let mut size: Vec<Option<u128>> = vec![None; self.nodes.len()];
        let mut stack = vec![(self.root, false)];
        while let Some((v, done)) = stack.pop() {
            if size[v].is_some() {
                continue;
            }
            let kids = self.nodes[v].kind.children();
            if done {
                size[v] = Some(
                    1 + kids
                        .iter()
                        .map(|(_, c)| size[*c].unwrap_or(0))
                        .sum::<u128>(),
                );
            } else {
                stack.push((v, true));
                stack.extend(
                    kids.iter()
                        .filter(|(_, c)| size[*c].is_none())
                        .map(|(_, c)| (*c, false)),
                );
            }
        }
        size[self.root].unwrap_or(0)
    }

    pub fn render(&self) -> String {
        let mut s = String::from("dag 1\n");
        let _ = writeln!(s, "order {}", self.order.render());
        for (i, n) in self.nodes.iter().enumerate() {
            let label = self.order.get(n.label);
            let bits = bitstring(&n.deps);
            let _ = match n.kind {
                DagKind::Leaf => writeln!(s, "node {i} {} leaf {label} {bits}", n.level),
                DagKind::Intro { child, mark } => writeln!(
                    s,
                    "node {i} {} intro {label} {child} {mark} {bits}",
                    n.level
                ),
                DagKind::Elim { minor, major } => writeln!(
                    s,
                    "node {i} {} elim {label} {minor} {major} {bits}",
                    n.level
                ),
            };
        }
        let _ = writeln!(s, "root {}", self.root);
        s
    }

    pub fn parse(text: &str) -> Result<DagProof, DagFormatError> {
        parse_dag(text)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("dag line {line}: {message}")]
pub struct DagFormatError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompressError {
    #[error("unfolding needs {needed} nodes, budget is {budget}")]
    Budget { needed: u128, budget: u64 },
}

/// Merges identical same-level sub-trees. Ids of the result follow a
/// breadth-first walk from the root.
pub fn compress(t: &EolTree) -> DagProof {
    let order = t.order();
    let mut table: HashMap<DagNode, usize> = HashMap::new();
    let mut built: Vec<DagNode> = Vec::new();
    let mut id_of: Vec<usize> = vec![usize::MAX; t.len()];
    for v in t.bfs().into_iter().rev() {
        let n = t.node(v);
        let kind = match (
            n.child(EdgeKind::L),
            n.child(EdgeKind::R),
            n.child(EdgeKind::U),
        ) {
            (Some(l), Some(r), _) => DagKind::Elim {
                minor: id_of[l.0],
                major: id_of[r.0],
            },
            (_, _, Some(c)) => DagKind::Intro {
                child: id_of[c.0],
                mark: intro_mark(order, order.get(n.label_index())),
            },
            _ => DagKind::Leaf,
        };
        let node = DagNode {
            level: n.level(),
            label: n.label_index(),
            kind,
            deps: n.deps().clone(),
        };
        id_of[v.0] = match table.get(&node) {
            Some(id) => *id,
            None => {
                built.push(node.clone());
                table.insert(node, built.len() - 1);
                built.len() - 1
            }
        };
    }
    renumber(DagProof {
        order: order.clone(),
        nodes: built,
        root: id_of[t.root().0],
    })
}

fn intro_mark(order: &FormulaOrder, label: &Formula) -> u32 {
    label
        .antecedent()
        .and_then(|a| order.index_of(a))
        .map_or(0, |i| i + 1)
}

fn renumber(d: DagProof) -> DagProof {
    let mut new_id = vec![usize::MAX; d.nodes.len()];
    let mut seq = Vec::with_capacity(d.nodes.len());
    let mut queue = VecDeque::from([d.root]);
    new_id[d.root] = 0;
    while let Some(v) = queue.pop_front() {
        seq.push(v);
        for (_, c) in d.nodes[v].kind.children() {
            if new_id[c] == usize::MAX {
                new_id[c] = seq.len() + queue.len();
                queue.push_back(c);
            }
        }
    }
    let nodes = seq
        .iter()
        .map(|v| {
            let mut n = d.nodes[*v].clone();
            n.kind = match n.kind {
                DagKind::Leaf => DagKind::Leaf,
                DagKind::Intro { child, mark } => DagKind::Intro {
                    child: new_id[child],
                    mark,
                },
                DagKind::Elim { minor, major } => DagKind::Elim {
                    minor: new_id[minor],
                    major: new_id[major],
                },
            };
            n
        })
        .collect();
    DagProof {
        order: d.order,
        nodes,
        root: 0,
    }
}

/// Unfolds a DAG into its tree. The DAG should pass [`verify`].
pub fn expand(d: &DagProof, budget: u64) -> Result<EolTree, CompressError> {
    let needed = d.unfolded_size();
    if needed > budget as u128 {
        return Err(CompressError::Budget { needed, budget });
    }
    let mut nodes = Vec::with_capacity(needed as usize);
    let mut edges = Vec::with_capacity(needed as usize);
    // (dag node, parent tree id, edge kind)
    let mut stack: Vec<(usize, Option<(usize, EdgeKind)>)> = vec![(d.root, None)];
    while let Some((v, parent)) = stack.pop() {
        let id = nodes.len();
        let n = &d.nodes[v];
        nodes.push(RawNode {
            label: n.label,
            level: n.level,
        });
        if let Some((p, kind)) = parent {
            edges.push(RawEdge {
                kind,
                parent: p,
                child: id,
                deps: n.deps.clone(),
            });
        }
        for (kind, c) in n.kind.children().into_iter().rev() {
            stack.push((c, Some((id, kind))));
        }
    }
    let root_deps = d.nodes[d.root].deps.clone();
    Ok(EolTree::from_parts(
        d.order.clone(),
        nodes,
        edges,
        Some(0),
        root_deps,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectKind {
    Reference,
    Label,
    BitstringLength,
    Acyclicity,
    Level,
    Reachability,
    RuleShape,
    Mark,
    Dependency,
    Sharing,
}

impl fmt::Display for RejectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RejectKind::Reference => "reference",
            RejectKind::Label => "label",
            RejectKind::BitstringLength => "bitstring-length",
            RejectKind::Acyclicity => "acyclicity",
            RejectKind::Level => "level",
            RejectKind::Reachability => "reachability",
            RejectKind::RuleShape => "rule-shape",
            RejectKind::Mark => "mark",
            RejectKind::Dependency => "dependency",
            RejectKind::Sharing => "sharing",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("rejected ({kind}) at node {node}: {reason}")]
pub struct Rejection {
    pub kind: RejectKind,
    pub node: usize,
    pub reason: String,
}

fn reject(kind: RejectKind, node: usize, reason: impl Into<String>) -> Result<(), Rejection> {
    Err(Rejection {
        kind,
        node,
        reason: reason.into(),
    })
}

/// Checks a DAG proof without unfolding it. The first violation found is
/// returned.
pub fn verify(d: &DagProof) -> Result<(), Rejection> {
    let n = d.nodes.len();
    let width = d.order.len();
    if d.root >= n {
        return reject(RejectKind::Reference, d.root, "root is not a node");
    }
    for (i, node) in d.nodes.iter().enumerate() {
        if let Some((_, c)) = node.kind.children().into_iter().find(|(_, c)| *c >= n) {
            return reject(
                RejectKind::Reference,
                i,
                format!("child {c} does not exist"),
            );
        }
        if node.label as usize >= width {
            return reject(RejectKind::Label, i, "label outside the order");
        }
        if node.deps.len() != width {
            return reject(
                RejectKind::BitstringLength,
                i,
                format!("{} bits, order has {width}", node.deps.len()),
            );
        }
    }

    // 0 unseen, 1 on the stack, 2 finished
    let mut state = vec![0u8; n];
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        state[start] = 1;
        while let Some((v, next)) = stack.pop() {
            let kids = d.nodes[v].kind.children();
            if let Some((_, c)) = kids.get(next) {
                stack.push((v, next + 1));
                match state[*c] {
                    0 => {
                        state[*c] = 1;
                        stack.push((*c, 0));
                    }
                    1 => {
                        return reject(
                            RejectKind::Acyclicity,
                            v,
                            format!("edge to {c} closes a cycle"),
                        )
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
            }
        }
    }

    if d.nodes[d.root].level != 0 {
        return reject(RejectKind::Level, d.root, "root is not at level 0");
    }
    for node in &d.nodes {
        for (_, c) in node.kind.children() {
            if d.nodes[c].level != node.level + 1 {
                return reject(
                    RejectKind::Level,
                    c,
                    format!(
                        "level {} below a node at level {}",
                        d.nodes[c].level, node.level
                    ),
                );
            }
        }
    }

    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([d.root]);
    seen[d.root] = true;
    while let Some(v) = queue.pop_front() {
        for (_, c) in d.nodes[v].kind.children() {
            if !std::mem::replace(&mut seen[c], true) {
                queue.push_back(c);
            }
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return reject(RejectKind::Reachability, i, "not reachable from the root");
    }

    for (i, node) in d.nodes.iter().enumerate() {
        let label = d.order.get(node.label);
        let expected = match node.kind {
            DagKind::Leaf => d.order.singleton(node.label),
            DagKind::Elim { minor, major } => {
                let want = Formula::implies(d.label(minor).clone(), label.clone());
                if *d.label(major) != want {
                    return reject(
                        RejectKind::RuleShape,
                        i,
                        format!("major premise {} should be {want}", d.label(major)),
                    );
                }
                let mut s = d.nodes[minor].deps.clone();
                s |= &d.nodes[major].deps;
                s
            }
            DagKind::Intro { child, mark } => {
                let (a, b) = match label {
                    Formula::Implication(a, b) => (a, b),
                    _ => {
                        return reject(
                            RejectKind::RuleShape,
                            i,
                            format!("introduction of atomic {label}"),
                        )
                    }
                };
                if **b != *d.label(child) {
                    return reject(
                        RejectKind::RuleShape,
                        i,
                        format!("premise {} should be {b}", d.label(child)),
                    );
                }
                let Some(ai) = d.order.index_of(a) else {
                    return reject(
                        RejectKind::Mark,
                        i,
                        format!("antecedent {a} is not in the order"),
                    );
                };
                if mark != ai + 1 {
                    return reject(
                        RejectKind::Mark,
                        i,
                        format!("mark {mark}, expected {}", ai + 1),
                    );
                }
                let mut s = d.nodes[child].deps.clone();
                s.set(ai as usize, false);
                s
            }
        };
        if node.deps != expected {
            return reject(
                RejectKind::Dependency,
                i,
                format!(
                    "bits {}, expected {}",
                    bitstring(&node.deps),
                    bitstring(&expected)
                ),
            );
        }
    }

    let mut keys: HashMap<&DagNode, usize> = HashMap::with_capacity(n);
    for (i, node) in d.nodes.iter().enumerate() {
        if let Some(j) = keys.insert(node, i) {
            return reject(RejectKind::Sharing, i, format!("duplicates node {j}"));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ratio {
    pub tree: usize,
    pub dag: usize,
    pub quotient: f64,
}

pub fn ratio(t: &EolTree) -> Ratio {
    let dag = compress(t).len();
    Ratio {
        tree: t.len(),
        dag,
        quotient: t.len() as f64 / dag as f64,
    }
}

/// A single-field change to a DAG, for checking that [`verify`] notices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    Label {
        node: usize,
        label: u32,
    },
    SwapPremises {
        node: usize,
    },
    Level {
        node: usize,
        up: bool,
    },
    FlipBit {
        node: usize,
        bit: usize,
    },
    Mark {
        node: usize,
        mark: u32,
    },
    /// Points child slot `slot` of `node` at `target`.
    Redirect {
        node: usize,
        slot: usize,
        target: usize,
    },
}

/// Applies `m`, or returns `None` if it does not apply or would not change
/// anything.
pub fn mutate(d: &DagProof, m: Mutation) -> Option<DagProof> {
    let mut out = d.clone();
    let node = match m {
        Mutation::Label { node, .. }
        | Mutation::SwapPremises { node }
        | Mutation::Level { node, .. }
        | Mutation::FlipBit { node, .. }
        | Mutation::Mark { node, .. }
        | Mutation::Redirect { node, .. } => out.nodes.get_mut(node)?,
    };
    match m {
        Mutation::Label { label, .. } => {
            if label == node.label || label as usize >= d.order.len() {
                return None;
            }
            node.label = label;
        }
        Mutation::SwapPremises { .. } => match node.kind {
            DagKind::Elim { minor, major } if minor != major => {
                node.kind = DagKind::Elim {
                    minor: major,
                    major: minor,
                }
            }
            _ => return None,
        },
        Mutation::Level { up, .. } => {
            node.level = if up {
                node.level + 1
            } else {
                node.level.checked_sub(1)?
            };
        }
        Mutation::FlipBit { bit, .. } => {
            let b = *node.deps.get(bit)?;
            node.deps.set(bit, !b);
        }
        Mutation::Mark { mark, .. } => match &mut node.kind {
            DagKind::Intro { mark: m, .. } if *m != mark => *m = mark,
            _ => return None,
        },
        Mutation::Redirect { slot, target, .. } => match &mut node.kind {
            DagKind::Intro { child, .. } if slot == 0 && *child != target => *child = target,
            DagKind::Elim { minor, .. } if slot == 0 && *minor != target => *minor = target,
            DagKind::Elim { major, .. } if slot == 1 && *major != target => *major = target,
            _ => return None,
        },
    }
    Some(out)
}

fn parse_dag(text: &str) -> Result<DagProof, DagFormatError> {
    let err = |line: usize, message: String| DagFormatError { line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, "dag 1")) => {}
        Some((n, l)) => return Err(err(n, format!("expected header 'dag 1', found {l:?}"))),
        None => return Err(err(1, "empty input".into())),
    }
    let order = match lines.next() {
        Some((n, l)) if l.starts_with("order") => {
            FormulaOrder::parse(l).map_err(|e| err(n, e.to_string()))?
        }
        Some((n, _)) => return Err(err(n, "expected an order line".into())),
        None => return Err(err(2, "missing order line".into())),
    };
    let mut nodes = Vec::new();
    let mut root = None;
    for (ln, l) in lines {
        let words: Vec<&str> = l.split_whitespace().collect();
        match words.as_slice() {
            ["root", id] => {
                root = Some(
                    id.parse::<usize>()
                        .map_err(|_| err(ln, "bad root id".into()))?,
                );
            }
            ["node", id, level, kind, rest @ ..] => {
                let num = |w: &str, what: &str| {
                    w.parse::<usize>()
                        .map_err(|_| err(ln, format!("bad {what} {w:?}")))
                };
                if num(id, "node id")? != nodes.len() {
                    return Err(err(
                        ln,
                        format!("node ids must be consecutive, expected {}", nodes.len()),
                    ));
                }
                let level = num(level, "level")? as u32;
                let extra = match *kind {
                    "leaf" => 0,
                    "intro" | "elim" => 2,
                    other => return Err(err(ln, format!("unknown node kind {other:?}"))),
                };
                if rest.len() < extra + 2 {
                    return Err(err(ln, "node line is too short".into()));
                }
                let (label, tail) = rest.split_at(rest.len() - extra - 1);
                let deps =
                    parse_bitstring(tail[extra]).ok_or_else(|| err(ln, "bad bitstring".into()))?;
                let f = crate::formula::parse(&label.join(" "))
                    .map_err(|e| err(ln, format!("bad label: {e}")))?;
                let label = order
                    .index_of(&f)
                    .ok_or_else(|| err(ln, format!("label {f} is not in the order")))?;
                let kind = match *kind {
                    "leaf" => DagKind::Leaf,
                    "intro" => DagKind::Intro {
                        child: num(tail[0], "child")?,
                        mark: num(tail[1], "mark")? as u32,
                    },
                    _ => DagKind::Elim {
                        minor: num(tail[0], "child")?,
                        major: num(tail[1], "child")?,
                    },
                };
                nodes.push(DagNode {
                    level,
                    label,
                    kind,
                    deps,
                });
            }
            _ => return Err(err(ln, format!("unexpected line {l:?}"))),
        }
    }
    let root = root.ok_or_else(|| err(0, "missing root line".into()))?;
    Ok(DagProof { order, nodes, root })
}
