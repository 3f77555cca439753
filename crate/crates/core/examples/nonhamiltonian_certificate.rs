//! Certificates that a directed graph has no Hamiltonian path.
//!
//! ```text
//! cargo run --example nonhamiltonian_certificate -- graph.txt
//! ```
//!
//! Without an argument, a small built-in graph is used.

use mimp::deduction::{check, is_normal, subformula_principle_check};
use mimp::generators::{encode_hamiltonian, nonham_certificate, GenError, Graph, DEFAULT_BUDGET};

fn main() {
    let g = match std::env::args().nth(1) {
        Some(p) => Graph::parse(&std::fs::read_to_string(&p).expect("readable graph file"))
            .expect("graph file"),
        None => Graph::new(3, [(1, 2), (3, 2)]).unwrap(),
    };
    let ctx = encode_hamiltonian(&g);
    println!(
        "{} vertices, {} edges, {} hypotheses",
        g.n(),
        g.edge_count(),
        ctx.hypotheses().len()
    );
    match nonham_certificate(&g, DEFAULT_BUDGET) {
        Ok(d) => {
            let j = check(&d).unwrap();
            println!("certificate: {} nodes, height {}", d.size(), d.height());
            println!(
                "  concludes {} from {} hypotheses",
                j.conclusion,
                j.open_set().len()
            );
            println!(
                "  normal {}, subformula principle {}",
                is_normal(&d),
                subformula_principle_check(&d)
            );
        }
        Err(GenError::Hamiltonian(p)) => {
            let p: Vec<String> = p.iter().map(|v| v.to_string()).collect();
            println!("hamiltonian path {}", p.join(" "));
        }
        Err(e) => println!("{e}"),
    }
}
