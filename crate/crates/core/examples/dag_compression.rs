//! Sharing equal same-level sub-trees and checking the resulting DAG.

use mimp::compress::{compress, expand, mutate, ratio, verify, Mutation};
use mimp::eoltree::{EolTree, FormulaOrder};
use mimp::generators::{fibonacci_derivation, nonham_certificate, Graph, DEFAULT_BUDGET};

fn tree(d: &mimp::deduction::Derivation) -> EolTree {
    EolTree::from_derivation(d, &FormulaOrder::canonical_for(d)).unwrap()
}

fn main() {
    println!(
        "{:<12} {:>8} {:>5} {:>9}",
        "proof", "tree", "dag", "quotient"
    );
    for n in [5, 10, 15, 20] {
        let r = ratio(&tree(&fibonacci_derivation(n)));
        println!(
            "{:<12} {:>8} {:>5} {:>9.1}",
            format!("fib {n}"),
            r.tree,
            r.dag,
            r.quotient
        );
    }
    for n in [3, 4] {
        let d = nonham_certificate(&Graph::edgeless(n), DEFAULT_BUDGET).unwrap();
        let r = ratio(&tree(&d));
        println!(
            "{:<12} {:>8} {:>5} {:>9.1}",
            format!("nonham {n}"),
            r.tree,
            r.dag,
            r.quotient
        );
    }

    let t = tree(&fibonacci_derivation(8));
    let dag = compress(&t);
    verify(&dag).unwrap();
    assert_eq!(expand(&dag, DEFAULT_BUDGET).unwrap(), t);
    print!("\n{}", dag.render());

    let broken = mutate(&dag, Mutation::SwapPremises { node: 0 }).unwrap();
    println!(
        "\nswapped premises at the root: {}",
        verify(&broken).unwrap_err()
    );
}
