//! Checking a derivation with a detour and normalizing it.

use mimp::deduction::{branches, check, maximal_formulas, normalize, render_proof, Derivation};
use mimp::formula::parse;

fn main() {
    let f = |s: &str| parse(s).unwrap();
    let hyp = |s: &str| Derivation::hypothesis(f(s));

    // B from A and A -> B, routed through an introduction of A -> B.
    let body = Derivation::apply(hyp("A"), hyp("A -> B"));
    let detour = Derivation::apply(
        Derivation::apply(hyp("P"), hyp("P -> A")),
        Derivation::intro_over(f("A"), body),
    )
    .with_greedy_marks();

    let j = check(&detour).expect("well formed");
    println!("{}", render_proof(&detour));
    println!("  {j}");
    println!("  maximal formulas at {:?}", maximal_formulas(&detour));

    let n = normalize(&detour);
    println!("{}", render_proof(&n));
    println!("  {}", check(&n).unwrap());
    for b in branches(&n) {
        let names: Vec<String> = b.formulas.iter().map(|g| g.to_string()).collect();
        println!(
            "  branch {} (E-part {})",
            names.join(" ; "),
            b.e_part().len()
        );
    }
}
