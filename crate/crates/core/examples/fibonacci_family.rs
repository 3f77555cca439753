//! The Fibonacci derivations: occurrence counts per level and growth.
//!
//! ```text
//! cargo run --example fibonacci_family -- 16
//! ```

use mimp::eoltree::{level_histogram, occ, EolTree, FormulaOrder};
use mimp::generators::{
    family_stats, fib_atom, fibonacci_derivation, fibonacci_expected, Family, DEFAULT_BUDGET,
};

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(12);
    let d = fibonacci_derivation(n);
    let t = EolTree::from_derivation(&d, &FormulaOrder::canonical_for(&d)).unwrap();
    println!(
        "A{n}: {} nodes, height {}, {} labels",
        t.len(),
        t.height(),
        t.label_set().len()
    );
    println!("level label occ expected");
    for l in 0..n {
        let q = fib_atom(n - l);
        println!(
            "{l:>5} {q:<5} {:>3} {:>8}",
            occ(&t, l as u32, &q),
            fibonacci_expected(n, l).unwrap()
        );
    }
    assert_eq!(level_histogram(&t).total(), t.len());

    let stats = family_stats(Family::Fibonacci, 10..=n.max(12), DEFAULT_BUDGET).unwrap();
    print!("\n{}", stats.to_csv());
    println!("per-step ratio {:.4}", stats.per_step_ratio());
}
