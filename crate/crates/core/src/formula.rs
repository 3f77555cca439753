//! Implicational formulas: parsing, rendering, sub-formulas and abstract
//! syntax trees.
//!
//! The only connective is implication, written `->` in text and grouped to
//! the right, so `A -> B -> C` reads as `A -> (B -> C)`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

/// A formula of minimal implicational logic.
///
/// Cloning is cheap: sub-terms are reference counted and shared.
#[derive(Clone)]
pub enum Formula {
    Atom(Arc<str>),
    Implication(Arc<Formula>, Arc<Formula>),
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Formula::Atom(a), Formula::Atom(b)) => a == b,
            (Formula::Implication(a1, c1), Formula::Implication(a2, c2)) => {
                (Arc::ptr_eq(a1, a2) || a1 == a2) && (Arc::ptr_eq(c1, c2) || c1 == c2)
            }
            _ => false,
        }
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Formula::Atom(name) => {
                0u8.hash(state);
                name.hash(state);
            }
            Formula::Implication(a, c) => {
                1u8.hash(state);
                a.hash(state);
                c.hash(state);
            }
        }
    }
}

/// Structural order: atoms before implications, atoms by name,
/// implications by antecedent then consequent. Used for map keys; the
/// sub-formula listing uses [`canonical_cmp`] instead.
impl Ord for Formula {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Formula::Atom(a), Formula::Atom(b)) => a.cmp(b),
            (Formula::Atom(_), Formula::Implication(..)) => Ordering::Less,
            (Formula::Implication(..), Formula::Atom(_)) => Ordering::Greater,
            (Formula::Implication(a1, c1), Formula::Implication(a2, c2)) => {
                a1.cmp(a2).then_with(|| c1.cmp(c2))
            }
        }
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Formula {
    /// Builds an atom. The name is not validated; use [`parse`] for text.
    pub fn atom(name: impl AsRef<str>) -> Formula {
        Formula::Atom(Arc::from(name.as_ref()))
    }

    pub fn implies(antecedent: Formula, consequent: Formula) -> Formula {
        Formula::Implication(Arc::new(antecedent), Arc::new(consequent))
    }

    /// Right-nested implication `a1 -> (a2 -> ... -> last)`.
    pub fn chain<I>(antecedents: I, last: Formula) -> Formula
    where
        I: IntoIterator<Item = Formula>,
        I::IntoIter: DoubleEndedIterator,
    {
        antecedents
            .into_iter()
            .rev()
            .fold(last, |acc, a| Formula::implies(a, acc))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    pub fn atom_name(&self) -> Option<&str> {
        match self {
            Formula::Atom(name) => Some(name),
            Formula::Implication(..) => None,
        }
    }

    pub fn antecedent(&self) -> Option<&Formula> {
        match self {
            Formula::Implication(a, _) => Some(a),
            Formula::Atom(_) => None,
        }
    }

    pub fn consequent(&self) -> Option<&Formula> {
        match self {
            Formula::Implication(_, c) => Some(c),
            Formula::Atom(_) => None,
        }
    }

    /// Number of nodes of the abstract syntax tree.
    pub fn tree_size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Implication(a, c) => 1 + a.tree_size() + c.tree_size(),
        }
    }

    /// Length of the rendered string.
    pub fn text_len(&self) -> usize {
        self.to_string().len()
    }

    /// Nesting depth of implications; atoms have degree 1.
    pub fn degree(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Implication(a, c) => 1 + a.degree().max(c.degree()),
        }
    }

    /// `true` if `self` occurs as a sub-term of `other` (reflexive).
    pub fn is_subformula_of(&self, other: &Formula) -> bool {
        if self == other {
            return true;
        }
        match other {
            Formula::Atom(_) => false,
            Formula::Implication(a, c) => self.is_subformula_of(a) || self.is_subformula_of(c),
        }
    }

    pub fn antecedents(&self) -> (Vec<Formula>, Formula) {
        antecedents(self)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => f.write_str(name),
            Formula::Implication(a, c) => {
                if a.is_atom() {
                    write!(f, "{a} -> {c}")
                } else {
                    write!(f, "({a}) -> {c}")
                }
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula({self})")
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token<'a> {
    Ident(&'a str),
    Arrow,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token<'_>)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'(' => {
                tokens.push((i, Token::LParen));
                i += 1;
            }
            b')' => {
                tokens.push((i, Token::RParen));
                i += 1;
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                tokens.push((i, Token::Arrow));
                i += 2;
            }
            b if b.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push((start, Token::Ident(&text[start..i])));
            }
            _ => {
                return Err(ParseError {
                    offset: i,
                    message: format!(
                        "unexpected character {:?}",
                        text[i..].chars().next().unwrap()
                    ),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token<'a>)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let left = self.primary()?;
        if let Some((_, Token::Arrow)) = self.tokens.get(self.pos) {
            self.pos += 1;
            let right = self.formula()?;
            Ok(Formula::implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let offset = self.offset();
        match self.tokens.get(self.pos).cloned() {
            Some((_, Token::Ident(name))) => {
                self.pos += 1;
                Ok(Formula::atom(name))
            }
            Some((_, Token::LParen)) => {
                self.pos += 1;
                let inner = self.formula()?;
                match self.tokens.get(self.pos) {
                    Some((_, Token::RParen)) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(ParseError {
                        offset: self.offset(),
                        message: "expected ')'".into(),
                    }),
                }
            }
            Some((_, tok)) => Err(ParseError {
                offset,
                message: format!("expected a variable or '(', found {tok:?}"),
            }),
            None => Err(ParseError {
                offset,
                message: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parses a formula. `->` is right associative; whitespace between tokens
/// is ignored.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let f = parser.formula()?;
    if parser.pos != parser.tokens.len() {
        return Err(ParseError {
            offset: parser.offset(),
            message: "trailing input".into(),
        });
    }
    Ok(f)
}

pub fn render(f: &Formula) -> String {
    f.to_string()
}

/// Canonical order on formulas: atoms first, then by tree size, ties broken
/// by the rendered string.
pub fn canonical_cmp(a: &Formula, b: &Formula) -> Ordering {
    (!a.is_atom(), a.tree_size())
        .cmp(&(!b.is_atom(), b.tree_size()))
        .then_with(|| a.to_string().cmp(&b.to_string()))
}

/// Sorts formulas in canonical order and drops duplicates.
pub fn sort_canonical(formulas: &mut Vec<Formula>) {
    formulas.sort_by_cached_key(|f| (!f.is_atom(), f.tree_size(), f.to_string()));
    formulas.dedup();
}

/// Distinct sub-formulas of `f` (including `f`) in canonical order.
pub fn subformulas(f: &Formula) -> Vec<Formula> {
    subformula_closure(std::iter::once(f))
}

/// Distinct sub-formulas of every formula in `formulas`, in canonical order.
pub fn subformula_closure<'a, I>(formulas: I) -> Vec<Formula>
where
    I: IntoIterator<Item = &'a Formula>,
{
    let mut seen = HashSet::new();
    let mut stack: Vec<&Formula> = formulas.into_iter().collect();
    while let Some(g) = stack.pop() {
        if seen.insert(g.clone()) {
            if let Formula::Implication(a, c) = g {
                stack.push(a);
                stack.push(c);
            }
        }
    }
    let mut out: Vec<Formula> = seen.into_iter().collect();
    sort_canonical(&mut out);
    out
}

/// Splits `a1 -> (a2 -> ... -> q)` into `([a1, .., an], q)` with `q` atomic.
pub fn antecedents(f: &Formula) -> (Vec<Formula>, Formula) {
    let mut out = Vec::new();
    let mut cur = f;
    while let Formula::Implication(a, c) = cur {
        out.push((**a).clone());
        cur = c;
    }
    (out, cur.clone())
}

/// Size and height of a tree. Height counts edges, so a single node has
/// height 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeMeasures {
    pub size: usize,
    pub height: usize,
}

impl TreeMeasures {
    /// `floor(log2 |T|) <= h(T) <= floor(|T| / 2)`.
    pub fn satisfies_height_bounds(&self) -> bool {
        let lower = (usize::BITS - 1 - self.size.leading_zeros()) as usize;
        lower <= self.height && self.height <= self.size / 2
    }
}

/// Anything with a node count and a height.
pub trait Measured {
    fn measures(&self) -> TreeMeasures;
}

pub fn tree_measures<T: Measured + ?Sized>(t: &T) -> TreeMeasures {
    t.measures()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxNode {
    pub formula: Formula,
    /// `(antecedent, consequent)` node indices for implications.
    pub children: Option<(usize, usize)>,
}

/// The abstract syntax tree of a formula: leaves are atoms, internal nodes
/// are implications with the antecedent on the left. Node 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxTree {
    nodes: Vec<SyntaxNode>,
}

impl SyntaxTree {
    pub fn nodes(&self) -> &[SyntaxNode] {
        &self.nodes
    }

    pub fn root(&self) -> &SyntaxNode {
        &self.nodes[0]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Internal nodes on the path that always follows the consequent.
    pub fn right_spine(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut cur = 0;
        while let Some((_, c)) = self.nodes[cur].children {
            out.push(&self.nodes[cur].formula);
            cur = c;
        }
        out
    }

    /// Bracketed rendering, e.g. `[-> [-> A B] A]`.
    pub fn bracketed(&self) -> String {
        fn go(t: &SyntaxTree, i: usize, out: &mut String) {
            match t.nodes[i].children {
                None => out.push_str(&t.nodes[i].formula.to_string()),
                Some((a, c)) => {
                    out.push_str("[-> ");
                    go(t, a, out);
                    out.push(' ');
                    go(t, c, out);
                    out.push(']');
                }
            }
        }
        let mut s = String::new();
        go(self, 0, &mut s);
        s
    }

    fn height_from(&self, i: usize) -> usize {
        match self.nodes[i].children {
            None => 0,
            Some((a, c)) => 1 + self.height_from(a).max(self.height_from(c)),
        }
    }
}

impl Measured for SyntaxTree {
    fn measures(&self) -> TreeMeasures {
        TreeMeasures {
            size: self.nodes.len(),
            height: self.height_from(0),
        }
    }
}

pub fn syntax_tree(f: &Formula) -> SyntaxTree {
    fn go(f: &Formula, nodes: &mut Vec<SyntaxNode>) -> usize {
        let idx = nodes.len();
        nodes.push(SyntaxNode {
            formula: f.clone(),
            children: None,
        });
        if let Formula::Implication(a, c) = f {
            let ai = go(a, nodes);
            let ci = go(c, nodes);
            nodes[idx].children = Some((ai, ci));
        }
        idx
    }
    let mut nodes = Vec::with_capacity(f.tree_size());
    go(f, &mut nodes);
    SyntaxTree { nodes }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn arrow_groups_to_the_right() {
        let f = p("A -> B -> C");
        assert_eq!(f, Formula::implies(Formula::atom("A"), p("B -> C")));
        let g = p("(A -> B) -> A");
        assert_eq!(g, Formula::implies(p("A -> B"), Formula::atom("A")));
    }

    #[test]
    fn truncated_input_reports_end_offset() {
        let err = parse("A ->").unwrap_err();
        assert_eq!(err.offset, 4);
    }

    #[test]
    fn other_syntax_errors() {
        assert_eq!(parse("").unwrap_err().offset, 0);
        assert_eq!(parse("(A -> B").unwrap_err().offset, 7);
        assert_eq!(parse("A B").unwrap_err().offset, 2);
        assert_eq!(parse("A - B").unwrap_err().offset, 2);
        assert_eq!(parse("1A").unwrap_err().offset, 0);
        assert!(parse("  x_1 ->(y)  ").is_ok());
    }

    #[test]
    fn render_uses_minimal_parentheses() {
        assert_eq!(render(&p("A -> (B -> C)")), "A -> B -> C");
        assert_eq!(render(&p("((A -> B)) -> A")), "(A -> B) -> A");
        assert_eq!(render(&p("A")), "A");
        assert_eq!(render(&p("((A->B)->A)->A")), "((A -> B) -> A) -> A");
    }

    #[test]
    fn subformula_listing() {
        let names: Vec<String> = subformulas(&p("A -> B -> C")).iter().map(render).collect();
        assert_eq!(names, ["A", "B", "C", "B -> C", "A -> B -> C"]);
        assert_eq!(subformulas(&p("A")), vec![p("A")]);
        let names: Vec<String> = subformulas(&p("(A -> B) -> A"))
            .iter()
            .map(render)
            .collect();
        assert_eq!(names, ["A", "B", "A -> B", "(A -> B) -> A"]);
    }

    #[test]
    fn syntax_trees_of_the_two_displayed_formulas() {
        let t = syntax_tree(&p("((A -> B) -> A) -> A"));
        assert_eq!(t.len(), 7);
        assert_eq!(t.bracketed(), "[-> [-> [-> A B] A] A]");
        let t = syntax_tree(&p("(A -> B) -> (B -> C) -> A -> C"));
        assert_eq!(t.len(), 11);
        assert_eq!(t.bracketed(), "[-> [-> A B] [-> [-> B C] [-> A C]]]");
        let t = syntax_tree(&p("A"));
        assert_eq!(t.measures(), TreeMeasures { size: 1, height: 0 });
    }

    #[test]
    fn antecedent_split() {
        assert_eq!(
            antecedents(&p("A -> B -> C")),
            (vec![p("A"), p("B")], p("C"))
        );
        assert_eq!(antecedents(&p("A")), (vec![], p("A")));
        assert_eq!(
            antecedents(&p("(A -> B) -> q")),
            (vec![p("A -> B")], p("q"))
        );
    }

    #[test]
    fn right_unbalanced_height_equals_antecedent_count() {
        for n in 1..12 {
            let f = Formula::chain(
                (1..=n).map(|i| Formula::atom(format!("a{i}"))),
                Formula::atom("b"),
            );
            let t = syntax_tree(&f);
            assert_eq!(t.measures().height, n);
            assert_eq!(t.right_spine().len(), antecedents(&f).0.len());
        }
    }

    #[test]
    fn balanced_seven_node_tree() {
        let t = syntax_tree(&p("(a -> b) -> c -> d"));
        assert_eq!(t.measures(), TreeMeasures { size: 7, height: 2 });
        assert!(t.measures().satisfies_height_bounds());
    }

    #[test]
    fn canonical_order_puts_atoms_first() {
        let a = p("B -> C");
        let b = p("Z");
        assert_eq!(canonical_cmp(&b, &a), Ordering::Less);
        assert_eq!(canonical_cmp(&p("A10"), &p("A2")), Ordering::Less);
    }

    #[test]
    fn subformula_relation() {
        assert!(p("B -> C").is_subformula_of(&p("A -> B -> C")));
        assert!(!p("A -> B").is_subformula_of(&p("A -> B -> C")));
    }
}
