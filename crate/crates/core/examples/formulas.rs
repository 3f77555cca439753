//! Parsing formulas and looking at their syntax trees.
//!
//! ```text
//! cargo run --example formulas -- "(A -> B) -> (B -> C) -> A -> C"
//! ```

use mimp::formula::{antecedents, parse, subformulas, syntax_tree, Measured};

fn main() {
    let inputs: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if inputs.is_empty() {
        vec![
            "((A -> B) -> A) -> A".to_string(),
            "(A -> B) -> (B -> C) -> A -> C".to_string(),
        ]
    } else {
        inputs
    };
    for text in &inputs {
        let f = match parse(text) {
            Ok(f) => f,
            Err(e) => {
                eprintln!("{text}: {e}");
                std::process::exit(1);
            }
        };
        let tree = syntax_tree(&f);
        let m = tree.measures();
        let (ants, head) = antecedents(&f);
        println!("{f}");
        println!("  tree      {}", tree.bracketed());
        println!("  size {} height {}", m.size, m.height);
        println!("  head {head}, {} antecedents", ants.len());
        for g in subformulas(&f) {
            println!("    {g}");
        }
    }
}
