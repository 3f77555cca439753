//! Natural-deduction derivations with implication introduction and
//! elimination under the greedy discharge discipline.
//!
//! A derivation is a tree. Nodes are addressed by [`NodeId`], their index in
//! preorder (an introduction before its premise, an elimination before its
//! minor premise, the minor before the major).
//!
//! Greedy discharge means an introduction of `A -> B` discharges every
//! occurrence of `A` still open in its premise. Marks on hypotheses are
//! therefore determined by the tree shape: a hypothesis `A` is discharged by
//! the nearest introduction below it whose antecedent is `A`, or is open if
//! there is none. [`Derivation::with_greedy_marks`] computes them.

mod text;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::formula::{sort_canonical, Formula, Measured, TreeMeasures};

pub use text::{parse_proof, render_proof, ProofTextError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Derivation {
    /// A top-formula. `mark` is `None` for open assumptions.
    Hypothesis { formula: Formula, mark: Option<u32> },
    Intro {
        conclusion: Formula,
        mark: u32,
        premise: Box<Derivation>,
    },
    Elim {
        conclusion: Formula,
        minor: Box<Derivation>,
        major: Box<Derivation>,
    },
}

/// `Γ ⊢ α`: the conclusion and the multiset of open assumptions, the latter
/// sorted canonically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Judgment {
    pub conclusion: Formula,
    pub open: Vec<Formula>,
}

impl Judgment {
    pub fn open_set(&self) -> BTreeSet<Formula> {
        self.open.iter().cloned().collect()
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open: Vec<String> = self.open.iter().map(|g| g.to_string()).collect();
        write!(f, "{} |- {}", open.join(", "), self.conclusion)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("ill-formed rule at {node}: {reason}")]
    IllFormedRule { node: NodeId, reason: String },
    #[error("dangling mark {mark} at {node}")]
    DanglingMark { node: NodeId, mark: u32 },
    #[error("non-greedy discharge at {node}: {reason}")]
    NonGreedyDischarge { node: NodeId, reason: String },
}

impl CheckError {
    pub fn node(&self) -> NodeId {
        match self {
            CheckError::IllFormedRule { node, .. }
            | CheckError::DanglingMark { node, .. }
            | CheckError::NonGreedyDischarge { node, .. } => *node,
        }
    }
}

impl Derivation {
    pub fn hypothesis(formula: Formula) -> Derivation {
        Derivation::Hypothesis {
            formula,
            mark: None,
        }
    }

    pub fn discharged(formula: Formula, mark: u32) -> Derivation {
        Derivation::Hypothesis {
            formula,
            mark: Some(mark),
        }
    }

    pub fn intro(conclusion: Formula, mark: u32, premise: Derivation) -> Derivation {
        Derivation::Intro {
            conclusion,
            mark,
            premise: Box::new(premise),
        }
    }

    pub fn elim(conclusion: Formula, minor: Derivation, major: Derivation) -> Derivation {
        Derivation::Elim {
            conclusion,
            minor: Box::new(minor),
            major: Box::new(major),
        }
    }

    /// Introduces `antecedent -> conclusion(premise)`. The mark is a
    /// placeholder until [`Derivation::with_greedy_marks`] is applied.
    pub fn intro_over(antecedent: Formula, premise: Derivation) -> Derivation {
        let conclusion = Formula::implies(antecedent, premise.conclusion().clone());
        Derivation::intro(conclusion, 0, premise)
    }

    /// Modus ponens. The conclusion is read off the major premise, which
    /// must be an implication.
    ///
    /// # Panics
    /// If the major premise's conclusion is atomic.
    pub fn apply(minor: Derivation, major: Derivation) -> Derivation {
        let conclusion = major
            .conclusion()
            .consequent()
            .expect("major premise must be an implication")
            .clone();
        Derivation::elim(conclusion, minor, major)
    }

    pub fn conclusion(&self) -> &Formula {
        match self {
            Derivation::Hypothesis { formula, .. } => formula,
            Derivation::Intro { conclusion, .. } | Derivation::Elim { conclusion, .. } => {
                conclusion
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Derivation::Hypothesis { .. } => 1,
            Derivation::Intro { premise, .. } => 1 + premise.size(),
            Derivation::Elim { minor, major, .. } => 1 + minor.size() + major.size(),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            Derivation::Hypothesis { .. } => 0,
            Derivation::Intro { premise, .. } => 1 + premise.height(),
            Derivation::Elim { minor, major, .. } => 1 + minor.height().max(major.height()),
        }
    }

    pub fn elim_count(&self) -> usize {
        match self {
            Derivation::Hypothesis { .. } => 0,
            Derivation::Intro { premise, .. } => premise.elim_count(),
            Derivation::Elim { minor, major, .. } => 1 + minor.elim_count() + major.elim_count(),
        }
    }

    /// Visits every node in preorder together with its id.
    pub fn for_each_node<'a>(&'a self, mut f: impl FnMut(NodeId, &'a Derivation)) {
        let mut stack = vec![self];
        let mut next = 0;
        while let Some(d) = stack.pop() {
            f(NodeId(next), d);
            next += 1;
            match d {
                Derivation::Hypothesis { .. } => {}
                Derivation::Intro { premise, .. } => stack.push(premise),
                Derivation::Elim { minor, major, .. } => {
                    stack.push(major);
                    stack.push(minor);
                }
            }
        }
    }

    /// All nodes in preorder.
    pub fn nodes(&self) -> Vec<&Derivation> {
        let mut out = Vec::new();
        self.for_each_node(|_, d| out.push(d));
        out
    }

    pub fn node(&self, id: NodeId) -> Option<&Derivation> {
        self.nodes().get(id.0).copied()
    }

    /// Distinct formulas occurring anywhere in the derivation, canonically
    /// ordered.
    pub fn formulas(&self) -> Vec<Formula> {
        let mut set = HashSet::new();
        self.for_each_node(|_, d| {
            set.insert(d.conclusion().clone());
        });
        let mut v: Vec<Formula> = set.into_iter().collect();
        sort_canonical(&mut v);
        v
    }

    /// Re-derives every discharge mark from the tree shape: introductions are
    /// numbered 1, 2, .. in preorder and each hypothesis is bound to the
    /// nearest introduction below it with a matching antecedent.
    pub fn with_greedy_marks(&self) -> Derivation {
        fn go(d: &Derivation, scope: &mut Vec<(Formula, u32)>, counter: &mut u32) -> Derivation {
            match d {
                Derivation::Hypothesis { formula, .. } => {
                    let mark = scope
                        .iter()
                        .rev()
                        .find(|(a, _)| a == formula)
                        .map(|(_, m)| *m);
                    Derivation::Hypothesis {
                        formula: formula.clone(),
                        mark,
                    }
                }
                Derivation::Intro {
                    conclusion,
                    premise,
                    ..
                } => {
                    *counter += 1;
                    let mark = *counter;
                    let pushed = match conclusion.antecedent() {
                        Some(a) => {
                            scope.push((a.clone(), mark));
                            true
                        }
                        None => false,
                    };
                    let premise = go(premise, scope, counter);
                    if pushed {
                        scope.pop();
                    }
                    Derivation::intro(conclusion.clone(), mark, premise)
                }
                Derivation::Elim {
                    conclusion,
                    minor,
                    major,
                } => {
                    let minor = go(minor, scope, counter);
                    let major = go(major, scope, counter);
                    Derivation::elim(conclusion.clone(), minor, major)
                }
            }
        }
        go(self, &mut Vec::new(), &mut 0)
    }
}

impl Measured for Derivation {
    fn measures(&self) -> TreeMeasures {
        TreeMeasures {
            size: self.size(),
            height: self.height(),
        }
    }
}

/// Checks rule shapes and the greedy discharge discipline, returning the
/// judgment the derivation establishes.
pub fn check(d: &Derivation) -> Result<Judgment, CheckError> {
    struct Checker {
        next: usize,
        marks_seen: HashSet<u32>,
        // (antecedent, mark) of introductions between the root and the
        // current node, innermost last.
        scope: Vec<(Formula, u32)>,
        open: Vec<Formula>,
    }

    impl Checker {
        fn visit(&mut self, d: &Derivation) -> Result<(), CheckError> {
            let node = NodeId(self.next);
            self.next += 1;
            match d {
                Derivation::Hypothesis { formula, mark } => {
                    let nearest = self
                        .scope
                        .iter()
                        .rev()
                        .find(|(a, _)| a == formula)
                        .map(|(_, m)| *m);
                    match (mark, nearest) {
                        (None, None) => self.open.push(formula.clone()),
                        (None, Some(m)) => {
                            return Err(CheckError::NonGreedyDischarge {
                                node,
                                reason: format!("open hypothesis {formula} lies above introduction {m} discharging it"),
                            })
                        }
                        (Some(m), nearest) => {
                            let Some((ante, _)) = self.scope.iter().find(|(_, s)| s == m) else {
                                return Err(CheckError::DanglingMark { node, mark: *m });
                            };
                            if ante != formula {
                                return Err(CheckError::IllFormedRule {
                                    node,
                                    reason: format!("hypothesis {formula} discharged by introduction of antecedent {ante}"),
                                });
                            }
                            if nearest != Some(*m) {
                                return Err(CheckError::NonGreedyDischarge {
                                    node,
                                    reason: format!(
                                        "hypothesis {formula} bound to {m} but introduction {} is nearer",
                                        nearest.unwrap()
                                    ),
                                });
                            }
                        }
                    }
                    Ok(())
                }
                Derivation::Intro {
                    conclusion,
                    mark,
                    premise,
                } => {
                    let Formula::Implication(a, b) = conclusion else {
                        return Err(CheckError::IllFormedRule {
                            node,
                            reason: format!("introduction concludes atom {conclusion}"),
                        });
                    };
                    if premise.conclusion() != &**b {
                        return Err(CheckError::IllFormedRule {
                            node,
                            reason: format!(
                                "premise {} does not match consequent {b}",
                                premise.conclusion()
                            ),
                        });
                    }
                    if *mark == 0 {
                        return Err(CheckError::IllFormedRule {
                            node,
                            reason: "marks must be positive".into(),
                        });
                    }
                    if !self.marks_seen.insert(*mark) {
                        return Err(CheckError::IllFormedRule {
                            node,
                            reason: format!("mark {mark} used by more than one introduction"),
                        });
                    }
                    self.scope.push(((**a).clone(), *mark));
                    self.visit(premise)?;
                    self.scope.pop();
                    Ok(())
                }
                Derivation::Elim {
                    conclusion,
                    minor,
                    major,
                } => {
                    let expected = Formula::implies(minor.conclusion().clone(), conclusion.clone());
                    if major.conclusion() != &expected {
                        return Err(CheckError::IllFormedRule {
                            node,
                            reason: format!(
                                "major premise {} is not {expected}",
                                major.conclusion()
                            ),
                        });
                    }
                    self.visit(minor)?;
                    self.visit(major)
                }
            }
        }
    }

    let mut c = Checker {
        next: 0,
        marks_seen: HashSet::new(),
        scope: Vec::new(),
        open: Vec::new(),
    };
    c.visit(d)?;
    sort_canonical_multiset(&mut c.open);
    Ok(Judgment {
        conclusion: d.conclusion().clone(),
        open: c.open,
    })
}

fn sort_canonical_multiset(v: &mut [Formula]) {
    v.sort_by_cached_key(|f| (!f.is_atom(), f.tree_size(), f.to_string()));
}

/// Open assumptions as a set, without validating the derivation.
pub fn open_assumptions(d: &Derivation) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    d.for_each_node(|_, n| {
        if let Derivation::Hypothesis {
            formula,
            mark: None,
        } = n
        {
            out.insert(formula.clone());
        }
    });
    out
}

/// The two derivations of `A -> (A -> A)` discussed for the discharge
/// policies.
///
/// The first is the only greedy proof: the upper introduction discharges
/// `A`. The second is the variant where neither introduction discharges
/// anything, leaving `A` open; [`check`] rejects it as non-greedy.
pub fn prove_identity_pair() -> (Derivation, Derivation) {
    let a = Formula::atom("A");
    let aa = Formula::implies(a.clone(), a.clone());
    let aaa = Formula::implies(a.clone(), aa.clone());
    let greedy = Derivation::intro(
        aaa.clone(),
        1,
        Derivation::intro(aa.clone(), 2, Derivation::discharged(a.clone(), 2)),
    );
    let vacuous = Derivation::intro(aaa, 1, Derivation::intro(aa, 2, Derivation::hypothesis(a)));
    (greedy, vacuous)
}

/// A branch: formula occurrences from a top-formula down through major
/// premises and introduction premises, ending at the conclusion or at a
/// minor premise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub nodes: Vec<NodeId>,
    pub formulas: Vec<Formula>,
    /// Index of the minimal formula: the first occurrence that is not the
    /// major premise of an elimination. Everything before it is the E-part.
    pub minimal: usize,
}

impl Branch {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn e_part(&self) -> &[Formula] {
        &self.formulas[..self.minimal]
    }

    pub fn i_part(&self) -> &[Formula] {
        &self.formulas[self.minimal..]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Link {
    Major,
    IntroPremise,
}

/// Decomposes a derivation into branches. The main branch (ending at the
/// conclusion) comes first, the others follow in preorder of their last
/// occurrence.
pub fn branches(d: &Derivation) -> Vec<Branch> {
    // For each node: the link to its parent, or None if it ends a branch.
    type Info = Vec<(NodeId, Formula, Option<(Link, NodeId)>)>;
    let mut info: Info = Vec::new();
    fn go(d: &Derivation, parent: Option<(Link, NodeId)>, info: &mut Info) {
        let id = NodeId(info.len());
        info.push((id, d.conclusion().clone(), parent));
        match d {
            Derivation::Hypothesis { .. } => {}
            Derivation::Intro { premise, .. } => go(premise, Some((Link::IntroPremise, id)), info),
            Derivation::Elim { minor, major, .. } => {
                go(minor, None, info);
                go(major, Some((Link::Major, id)), info);
            }
        }
    }
    go(d, None, &mut info);

    let is_leaf: Vec<bool> = {
        let mut v = vec![true; info.len()];
        for (_, _, p) in &info {
            if let Some((_, parent)) = p {
                v[parent.0] = false;
            }
        }
        v
    };
    // Walk down from every leaf until a branch end.
    let mut out = Vec::new();
    for (leaf, _, _) in info.iter().filter(|(id, _, _)| is_leaf[id.0]) {
        let mut nodes = vec![*leaf];
        let mut links = Vec::new();
        let mut cur = *leaf;
        while let Some((link, parent)) = info[cur.0].2 {
            links.push(link);
            nodes.push(parent);
            cur = parent;
        }
        let minimal = links.iter().take_while(|l| **l == Link::Major).count();
        let formulas = nodes.iter().map(|n| info[n.0].1.clone()).collect();
        out.push(Branch {
            nodes,
            formulas,
            minimal,
        });
    }
    out.sort_by_key(|b| *b.nodes.last().unwrap());
    out
}

/// Introduction conclusions that are also major premises.
pub fn maximal_formulas(d: &Derivation) -> Vec<NodeId> {
    let mut out = Vec::new();
    let mut next = 0usize;
    fn go(d: &Derivation, next: &mut usize, out: &mut Vec<NodeId>) {
        *next += 1;
        match d {
            Derivation::Hypothesis { .. } => {}
            Derivation::Intro { premise, .. } => go(premise, next, out),
            Derivation::Elim { minor, major, .. } => {
                go(minor, next, out);
                if matches!(**major, Derivation::Intro { .. }) {
                    out.push(NodeId(*next));
                }
                go(major, next, out);
            }
        }
    }
    go(d, &mut next, &mut out);
    out
}

pub fn is_normal(d: &Derivation) -> bool {
    maximal_formulas(d).is_empty()
}

/// Replaces every hypothesis carrying `mark` with a copy of `replacement`.
fn substitute(d: &Derivation, mark: u32, replacement: &Derivation) -> Derivation {
    match d {
        Derivation::Hypothesis { mark: Some(m), .. } if *m == mark => replacement.clone(),
        Derivation::Hypothesis { .. } => d.clone(),
        Derivation::Intro {
            conclusion,
            mark: m,
            premise,
        } => Derivation::intro(
            conclusion.clone(),
            *m,
            substitute(premise, mark, replacement),
        ),
        Derivation::Elim {
            conclusion,
            minor,
            major,
        } => Derivation::elim(
            conclusion.clone(),
            substitute(minor, mark, replacement),
            substitute(major, mark, replacement),
        ),
    }
}

/// Contracts the leftmost-outermost maximal formula, if any.
fn contract_once(d: &Derivation) -> Option<Derivation> {
    match d {
        Derivation::Hypothesis { .. } => None,
        Derivation::Intro {
            conclusion,
            mark,
            premise,
        } => contract_once(premise).map(|p| Derivation::intro(conclusion.clone(), *mark, p)),
        Derivation::Elim {
            conclusion,
            minor,
            major,
        } => {
            if let Derivation::Intro { mark, premise, .. } = &**major {
                return Some(substitute(premise, *mark, minor));
            }
            if let Some(m) = contract_once(minor) {
                return Some(Derivation::elim(conclusion.clone(), m, (**major).clone()));
            }
            contract_once(major).map(|m| Derivation::elim(conclusion.clone(), (**minor).clone(), m))
        }
    }
}

/// Normalizes by repeatedly contracting the leftmost-outermost maximal
/// formula. Hypotheses of the substituted minor premise may be captured by
/// introductions of the reduct; marks are recomputed greedily after every
/// step, so open assumptions can only shrink.
pub fn normalize(d: &Derivation) -> Derivation {
    let mut cur = d.with_greedy_marks();
    while let Some(next) = contract_once(&cur) {
        cur = next.with_greedy_marks();
    }
    cur
}

/// Every occurrence is a sub-formula of the conclusion or of an open
/// assumption.
pub fn subformula_principle_check(d: &Derivation) -> bool {
    let mut roots: Vec<Formula> = open_assumptions(d).into_iter().collect();
    roots.push(d.conclusion().clone());
    let allowed: HashSet<Formula> = crate::formula::subformula_closure(roots.iter())
        .into_iter()
        .collect();
    let mut ok = true;
    d.for_each_node(|_, n| ok &= allowed.contains(n.conclusion()));
    ok
}

/// The major premise of the topmost elimination of the branch, i.e. its
/// top-formula when the E-part is non-empty; `None` for a branch without
/// E-part.
pub fn epart_signature(b: &Branch) -> Option<Formula> {
    (b.minimal > 0).then(|| b.formulas[0].clone())
}

/// Distinct E-part signatures over all branches, with their E-parts.
pub fn epart_table(d: &Derivation) -> BTreeMap<Formula, Vec<Vec<Formula>>> {
    let mut table: BTreeMap<Formula, Vec<Vec<Formula>>> = BTreeMap::new();
    for b in branches(d) {
        if let Some(sig) = epart_signature(&b) {
            let parts = table.entry(sig).or_default();
            let e = b.e_part().to_vec();
            if !parts.contains(&e) {
                parts.push(e);
            }
        }
    }
    table
}
