//! Repeated sub-trees in EOL-trees.
//!
//! [`analyze`] looks for the least level holding at least `threshold` nodes
//! with one label, then grows a skeletal pattern downward from those nodes.
//! At each pattern leaf the occurrences are split by what hangs below them
//! (nothing, one `U` child, or an `L`/`R` pair, with child labels); the
//! largest class is followed while it keeps at least half the threshold.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::eoltree::{
    export, level_histogram, nodes_at, EdgeKind, EolNode, EolTree, LevelHistogram, NodeIx,
    SkeletalNode, SkeletalTree,
};
use crate::formula::Formula;

/// Default threshold: twice the number of distinct labels.
pub fn default_threshold(t: &EolTree) -> usize {
    2 * t.label_set().len()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub level: u32,
    pub label: Formula,
    /// Nodes labelled `label` at `level`.
    pub occ: usize,
    pub pattern: SkeletalTree,
    /// Occurrence roots of `pattern` at `level`.
    pub roots: Vec<NodeIx>,
    /// The pattern as found below the first root, with its bitstrings.
    pub subtree: EolTree,
}

impl Finding {
    pub fn multiplicity(&self) -> usize {
        self.roots.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedundancyReport {
    pub histogram: LevelHistogram,
    pub threshold: usize,
    pub finding: Option<Finding>,
}

impl RedundancyReport {
    pub fn is_empty(&self) -> bool {
        self.finding.is_none()
    }

    /// `level label count` lines, the pattern in EOL export form and a
    /// closing `multiplicity <k> at level <i>` line.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for (level, label, count) in self.histogram.entries() {
            let _ = writeln!(s, "{level} {label} {count}");
        }
        match &self.finding {
            Some(f) => {
                s.push_str(&export(&f.subtree));
                let _ = writeln!(s, "multiplicity {} at level {}", f.multiplicity(), f.level);
            }
            None => {
                let _ = writeln!(s, "no level reaches threshold {}", self.threshold);
            }
        }
        s
    }
}

/// Index of a maximal entry, the first one on ties.
pub fn dominant_term(row: &[usize]) -> Option<usize> {
    row.iter()
        .enumerate()
        .fold(None, |best: Option<(usize, usize)>, (i, c)| match best {
            Some((_, b)) if b >= *c => best,
            _ => Some((i, *c)),
        })
        .map(|(i, _)| i)
}

/// Greatest level `j` such that no level up to `j` has a label occurring
/// more than `|B|^p` times.
pub fn polyfront(t: &EolTree, p: u32) -> u32 {
    let bound = (t.label_set().len() as u128).saturating_pow(p);
    let h = level_histogram(t);
    let mut j = 0;
    for level in 0..h.levels() as u32 {
        if h.row(level).iter().any(|(_, c)| *c as u128 > bound) {
            break;
        }
        j = level;
    }
    j
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Shape {
    Leaf,
    Unary(u32),
    Binary(u32, u32),
}

impl Shape {
    fn of(n: &EolNode, t: &EolTree) -> Shape {
        let lab = |c: NodeIx| t.node(c).label_index();
        match (
            n.child(EdgeKind::L),
            n.child(EdgeKind::R),
            n.child(EdgeKind::U),
        ) {
            (Some(l), Some(r), _) => Shape::Binary(lab(l), lab(r)),
            (_, _, Some(u)) => Shape::Unary(lab(u)),
            _ => Shape::Leaf,
        }
    }

    fn width(&self) -> usize {
        match self {
            Shape::Leaf => 0,
            Shape::Unary(_) => 1,
            Shape::Binary(..) => 2,
        }
    }
}

pub fn analyze(t: &EolTree, threshold: usize) -> RedundancyReport {
    let histogram = level_histogram(t);
    let threshold = threshold.max(1);
    let start = (0..histogram.levels() as u32).find_map(|level| {
        let row = histogram.row(level);
        let counts: Vec<usize> = row.iter().map(|(_, c)| *c).collect();
        let i = dominant_term(&counts)?;
        (counts[i] >= threshold).then(|| (level, row[i].0.clone(), counts[i]))
    });
    let finding = start.map(|(level, label, occ)| grow(t, level, label, occ, threshold));
    RedundancyReport {
        histogram,
        threshold,
        finding,
    }
}

fn grow(t: &EolTree, level: u32, label: Formula, occ: usize, threshold: usize) -> Finding {
    let keep = threshold.div_ceil(2);
    let mut pattern = vec![SkeletalNode {
        label: label.clone(),
        children: Vec::new(),
    }];
    // images[o][x]: tree node under occurrence o for pattern node x.
    let mut images: Vec<Vec<NodeIx>> = nodes_at(t, level, &label)
        .into_iter()
        .map(|v| vec![v])
        .collect();
    let mut frontier = VecDeque::from([0usize]);
    while let Some(x) = frontier.pop_front() {
        let mut classes: HashMap<Shape, Vec<usize>> = HashMap::new();
        for (o, img) in images.iter().enumerate() {
            classes
                .entry(Shape::of(t.node(img[x]), t))
                .or_default()
                .push(o);
        }
        let best = classes
            .into_iter()
            .filter(|(s, _)| *s != Shape::Leaf)
            .max_by(|(sa, a), (sb, b)| {
                a.len()
                    .cmp(&b.len())
                    .then(sa.width().cmp(&sb.width()))
                    .then(sb.cmp(sa))
            });
        let Some((shape, members)) = best.filter(|(_, m)| m.len() >= keep) else {
            continue;
        };
        let mut kept: Vec<Vec<NodeIx>> = members
            .into_iter()
            .map(|o| std::mem::take(&mut images[o]))
            .collect();
        let kinds: &[EdgeKind] = match shape {
            Shape::Binary(..) => &[EdgeKind::L, EdgeKind::R],
            _ => &[EdgeKind::U],
        };
        for kind in kinds {
            let id = pattern.len();
            let child = t.node(kept[0][x]).child(*kind).expect("shape checked");
            pattern.push(SkeletalNode {
                label: t.label(child).clone(),
                children: Vec::new(),
            });
            pattern[x].children.push((*kind, id));
            for img in &mut kept {
                let c = t.node(img[x]).child(*kind).expect("shape checked");
                img.push(c);
            }
            frontier.push_back(id);
        }
        images = kept;
    }
    let mut roots: Vec<NodeIx> = images.iter().map(|img| img[0]).collect();
    roots.sort();
    images.sort_by_key(|img| img[0]);
    let subtree = realise(t, &pattern, &images[0]);
    Finding {
        level,
        label,
        occ,
        pattern: SkeletalTree::new(pattern).expect("grown pattern is a tree"),
        roots,
        subtree,
    }
}

/// The pattern nodes of one occurrence as a stand-alone tree, keeping the
/// pattern's node numbering.
fn realise(t: &EolTree, pattern: &[SkeletalNode], image: &[NodeIx]) -> EolTree {
    use crate::eoltree::{RawEdge, RawNode};
    let base = t.level(image[0]);
    let nodes = image
        .iter()
        .map(|v| RawNode {
            label: t.node(*v).label_index(),
            level: t.level(*v) - base,
        })
        .collect();
    let mut edges = Vec::new();
    for (x, p) in pattern.iter().enumerate() {
        for (kind, c) in &p.children {
            edges.push(RawEdge {
                kind: *kind,
                parent: x,
                child: *c,
                deps: t.node(image[*c]).deps().clone(),
            });
        }
    }
    EolTree::from_parts(
        t.order().clone(),
        nodes,
        edges,
        Some(0),
        t.node(image[0]).deps().clone(),
    )
}
