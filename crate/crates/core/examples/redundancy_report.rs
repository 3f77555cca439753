//! Locating a repeated sub-tree in a large derivation.

use mimp::eoltree::{skeletal_match, EolTree, FormulaOrder};
use mimp::generators::fibonacci_derivation;
use mimp::redundancy::{analyze, default_threshold, polyfront};

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(15);
    let d = fibonacci_derivation(n);
    let t = EolTree::from_derivation(&d, &FormulaOrder::canonical_for(&d)).unwrap();
    let threshold = default_threshold(&t);
    let report = analyze(&t, threshold);
    println!(
        "{} nodes, threshold {threshold}, levels up to {} stay below |B|",
        t.len(),
        polyfront(&t, 1)
    );
    match &report.finding {
        Some(f) => {
            let confirmed = skeletal_match(&f.pattern, &t)
                .iter()
                .filter(|o| o.level == f.level)
                .count();
            println!(
                "level {}: {} x {} ; pattern of {} nodes occurs {} times (matcher: {confirmed})",
                f.level,
                f.occ,
                f.label,
                f.pattern.len(),
                f.multiplicity()
            );
        }
        None => println!("nothing repeats often enough"),
    }
    if std::env::args().any(|a| a == "--full") {
        print!("{}", report.render());
    }
}
