//! Line-based text form of an EOL-tree.
//!
//! ```text
//! eol 1
//! order A, B, A -> B
//! node 0 0 B
//! node 1 1 A
//! node 2 1 A -> B
//! edge U . 0 101
//! edge L 0 1 100
//! edge R 0 2 001
//! ```
//!
//! `edge U . <id> <bits>` is the edge from the root point. Blank lines and
//! lines starting with `#` are ignored.

use super::{
    bitstring, parse_bitstring, EdgeKind, EolError, EolTree, FormulaOrder, RawEdge, RawNode,
};

pub fn export(t: &EolTree) -> String {
    let mut s = String::from("eol 1\n");
    s.push_str(&format!("order {}\n", t.order().render()));
    for (i, n) in t.nodes().iter().enumerate() {
        s.push_str(&format!(
            "node {i} {} {}\n",
            n.level,
            t.order().get(n.label)
        ));
    }
    s.push_str(&format!(
        "edge U . {} {}\n",
        t.root(),
        bitstring(t.root_deps())
    ));
    for (i, n) in t.nodes().iter().enumerate() {
        for (k, c) in &n.children {
            s.push_str(&format!(
                "edge {k} {i} {c} {}\n",
                bitstring(&t.node(*c).deps)
            ));
        }
    }
    s
}

fn err(line: usize, message: impl Into<String>) -> EolError {
    EolError::Format {
        line,
        message: message.into(),
    }
}

/// Parses the text form. The result is not validated; run
/// [`super::validate`] on it.
pub fn parse_export(text: &str) -> Result<EolTree, EolError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, "eol 1")) => {}
        Some((n, l)) => return Err(err(n, format!("expected header 'eol 1', found {l:?}"))),
        None => return Err(err(1, "empty input")),
    }
    let order = match lines.next() {
        Some((n, l)) if l.starts_with("order") => FormulaOrder::parse(l).map_err(|e| match e {
            EolError::Format { message, .. } => err(n, message),
            other => err(n, other.to_string()),
        })?,
        Some((n, _)) => return Err(err(n, "expected an order line")),
        None => return Err(err(2, "missing order line")),
    };
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    let mut root: Option<(usize, super::DepSet)> = None;
    for (n, l) in lines {
        let mut words = l.splitn(4, char::is_whitespace);
        match words.next() {
            Some("node") => {
                let id: usize = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| err(n, "bad node id"))?;
                if id != nodes.len() {
                    return Err(err(
                        n,
                        format!("node ids must be consecutive, expected {}", nodes.len()),
                    ));
                }
                let level: u32 = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| err(n, "bad level"))?;
                let text = words.next().ok_or_else(|| err(n, "missing label"))?;
                let f =
                    crate::formula::parse(text).map_err(|e| err(n, format!("bad label: {e}")))?;
                let label = order
                    .index_of(&f)
                    .ok_or_else(|| err(n, format!("label {f} is not in the order")))?;
                nodes.push(RawNode { label, level });
            }
            Some("edge") => {
                let rest: Vec<&str> = l.split_whitespace().skip(1).collect();
                let [kind, parent, child, bits] = rest.as_slice() else {
                    return Err(err(n, "edge needs kind, parent, child and bits"));
                };
                let kind: EdgeKind = kind
                    .parse()
                    .map_err(|_| err(n, format!("bad edge kind {kind:?}")))?;
                let child: usize = child.parse().map_err(|_| err(n, "bad child id"))?;
                let deps = parse_bitstring(bits).ok_or_else(|| err(n, "bad bitstring"))?;
                if *parent == "." {
                    if kind != EdgeKind::U || root.is_some() {
                        return Err(err(n, "a single U edge may leave the root point"));
                    }
                    root = Some((child, deps));
                } else {
                    let parent: usize = parent.parse().map_err(|_| err(n, "bad parent id"))?;
                    edges.push(RawEdge {
                        kind,
                        parent,
                        child,
                        deps,
                    });
                }
            }
            _ => return Err(err(n, format!("unexpected line {l:?}"))),
        }
    }
    let (root, root_deps) = root.ok_or_else(|| err(0, "missing root edge"))?;
    if root >= nodes.len()
        || edges
            .iter()
            .any(|e| e.parent >= nodes.len() || e.child >= nodes.len())
    {
        return Err(err(0, "edge refers to an unknown node"));
    }
    Ok(EolTree::from_parts(
        order,
        nodes,
        edges,
        Some(root),
        root_deps,
    ))
}
