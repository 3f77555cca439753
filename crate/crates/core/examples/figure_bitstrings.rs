//! Dependency bitstrings of the EOL-tree for A -> C from A -> B, B -> C.

use mimp::deduction::Derivation;
use mimp::eoltree::{bitstring, export, validate, EolTree, FormulaOrder};
use mimp::formula::parse;

fn main() {
    let f = |s: &str| parse(s).unwrap();
    let b = Derivation::apply(
        Derivation::hypothesis(f("A")),
        Derivation::hypothesis(f("A -> B")),
    );
    let c = Derivation::apply(b, Derivation::hypothesis(f("B -> C")));
    let d = Derivation::intro_over(f("A"), c).with_greedy_marks();

    let order = FormulaOrder::new(
        ["A", "B", "C", "A -> B", "B -> C", "A -> C"]
            .map(f)
            .to_vec(),
    )
    .unwrap();
    let t = EolTree::from_derivation(&d, &order).unwrap();
    assert!(validate(&t).is_empty());

    println!(
        "{:<8} | {:<8} {}",
        "root",
        t.label(t.root()).to_string(),
        bitstring(t.root_deps())
    );
    for v in t.bfs().into_iter().skip(1) {
        let parent = t.node(v).parent().unwrap();
        let (p, c) = (t.label(parent).to_string(), t.label(v).to_string());
        println!("{p:<8} | {c:<8} {}", bitstring(t.node(v).deps()));
    }
    println!();
    print!("{}", export(&t));
}
