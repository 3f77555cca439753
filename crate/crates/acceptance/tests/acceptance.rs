//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use common::*;
use mimp::compress::{compress, expand, mutate, verify, DagKind, DagProof, Mutation};
use mimp::deduction::{
    check, is_normal, normalize, open_assumptions, parse_proof, subformula_principle_check,
    Derivation,
};
use mimp::eoltree::{bitstring, label2_suc, level_histogram, occ, EdgeKind, EolTree, FormulaOrder};
use mimp::formula::{parse, Formula, Measured};
use mimp::generators::{
    encode_hamiltonian, fib_atom, fibonacci_derivation, hamiltonian_oracle, nonham_certificate,
    Graph, DEFAULT_BUDGET,
};
use mimp::redundancy::{analyze, default_threshold};
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn fib_oracle(k: u32) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..k {
        (a, b) = (b, a + b);
    }
    a
}

/// Hamiltonian path by trying every permutation.
fn permutation_oracle(g: &Graph) -> bool {
    fn next_perm(p: &mut [usize]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|i| p[i - 1] < p[*i]) else {
            return false;
        };
        let j = (i..p.len()).rev().find(|j| p[*j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }
    let mut p: Vec<usize> = (1..=g.n()).collect();
    loop {
        if p.windows(2).all(|w| g.has_edge(w[0], w[1])) {
            return true;
        }
        if !next_perm(&mut p) {
            return false;
        }
    }
}

struct Corpus {
    fib: Vec<(usize, Derivation, EolTree)>,
    certificates: Vec<(Graph, Derivation)>,
    hamiltonian: Vec<Graph>,
}

fn corpus() -> Corpus {
    let fib = (1..=22)
        .map(|n| {
            let d = fibonacci_derivation(n);
            let t = tree_of(&d);
            (n, d, t)
        })
        .collect();
    let mut certificates = Vec::new();
    let mut hamiltonian = Vec::new();
    for n in 1..=4 {
        for g in Graph::all_on(n) {
            match nonham_certificate(&g, DEFAULT_BUDGET) {
                Ok(d) => certificates.push((g, d)),
                Err(_) => hamiltonian.push(g),
            }
        }
    }
    certificates.push((
        Graph::edgeless(5),
        nonham_certificate(&Graph::edgeless(5), DEFAULT_BUDGET).unwrap(),
    ));
    Corpus {
        fib,
        certificates,
        hamiltonian,
    }
}

fn criterion_1(c: &Corpus) -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for (n, _, t) in c.fib.iter().filter(|(n, ..)| (2..=20).contains(n)) {
        for l in 0..*n {
            let found = occ(t, l as u32, &fib_atom(n - l)) as u64;
            if found != fib_oracle(l as u32 + 1) || found != binet(l as u32 + 1) {
                bad.push((*n, l, found));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        bad.is_empty() && secs < 10.0,
        format!("{} mismatches, {secs:.2}s", bad.len()),
    )
}

fn criterion_2(c: &Corpus) -> Outcome {
    let sizes: Vec<(usize, usize)> = (10..=25)
        .map(|n| match c.fib.iter().find(|(m, ..)| *m == n) {
            Some((_, d, _)) => (n, d.size()),
            None => (n, fibonacci_derivation(n).size()),
        })
        .collect();
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for w in sizes.windows(2) {
        let (n, v) = w[0];
        let ratio = w[1].1 as f64 / v as f64;
        if (15..24).contains(&n) {
            ok &= (1.52..=1.72).contains(&ratio);
            worst = worst.max((ratio - 1.618).abs());
        }
    }
    for (n, v) in sizes.iter().filter(|(n, _)| *n <= 24) {
        ok &= *v as u64 >= fib_oracle(*n as u32);
    }
    outcome(
        ok,
        format!("largest deviation of the step ratio from 1.618: {worst:.4}"),
    )
}

fn criterion_3() -> Outcome {
    let d = parse_proof(
        r#"(intro "A -> C" 1 (elim "C" (elim "B" (hyp "A" 1) (hyp "A -> B")) (hyp "B -> C")))"#,
    )
    .unwrap();
    let order = FormulaOrder::new(
        ["A", "B", "C", "A -> B", "B -> C", "A -> C"]
            .iter()
            .map(|s| parse(s).unwrap())
            .collect(),
    )
    .unwrap();
    let t = EolTree::from_derivation(&d, &order).unwrap();
    let edge = |parent: &str, kind: EdgeKind| -> String {
        let p = (0..t.len())
            .map(mimp::eoltree::NodeIx)
            .find(|v| t.label(*v).to_string() == parent)
            .unwrap();
        bitstring(t.node(t.node(p).child(kind).unwrap()).deps())
    };
    let found = [
        bitstring(t.root_deps()),
        edge("A -> C", EdgeKind::U),
        edge("C", EdgeKind::R),
        edge("C", EdgeKind::L),
        edge("B", EdgeKind::R),
        edge("B", EdgeKind::L),
    ];
    let want = ["000110", "100110", "000010", "100100", "000100", "100000"];
    outcome(found == want, found.join(" "))
}

fn criterion_4(c: &Corpus) -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut count = 0;
    for (g, d) in c.certificates.iter().filter(|(g, _)| g.n() <= 4) {
        count += 1;
        let ctx = encode_hamiltonian(g);
        let sound = check(d).is_ok_and(|j| j.conclusion == *ctx.q())
            && open_assumptions(d).iter().all(|h| ctx.contains(h))
            && is_normal(d)
            && subformula_principle_check(d);
        ok &= sound && !permutation_oracle(g) && hamiltonian_oracle(g).unwrap().is_none();
    }
    for g in &c.hamiltonian {
        ok &= permutation_oracle(g);
    }
    ok &= count + c.hamiltonian.len() == 1 + 4 + 64 + 4096;
    let secs = start.elapsed().as_secs_f64();
    outcome(
        ok && secs < 300.0,
        format!(
            "{count} certificates, {} hamiltonian graphs, {secs:.1}s",
            c.hamiltonian.len()
        ),
    )
}

fn criterion_5(c: &Corpus) -> Outcome {
    let total = c.certificates.len();
    let mut size_ok = 0;
    let mut height_ok = 0;
    let mut tallest = BTreeSet::new();
    for (g, d) in &c.certificates {
        let n = g.n();
        let m = d.measures();
        size_ok += usize::from(m.size as u64 <= 20 * (n as u64).pow(n as u32));
        height_ok += usize::from(m.height <= 3 * n + 4);
        tallest.insert((n, m.height, 3 * n + 4));
    }
    let heights: Vec<String> = tallest
        .iter()
        .map(|(n, h, b)| format!("n={n} h={h} bound {b}"))
        .collect();
    outcome(
        size_ok == total && height_ok == total,
        format!(
            "{size_ok}/{total} within 20 n^n nodes, {height_ok}/{total} within 3n+4 height; {}",
            heights.join(", ")
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    let mut done = 0;
    let mut ok = true;
    let mut shrunk = 0;
    let (mut before_size, mut after_size) = (0, 0);
    while done < 1000 {
        let d = random_derivation(
            &mut r,
            GenConfig {
                depth: 5,
                redex: 0.35,
            },
        );
        if is_normal(&d) {
            continue;
        }
        done += 1;
        let nf = normalize(&d);
        let before = open_assumptions(&d);
        let after = open_assumptions(&nf);
        shrunk += usize::from(after.len() < before.len());
        before_size += d.size();
        after_size += nf.size();
        ok &= check(&nf).is_ok()
            && is_normal(&nf)
            && nf.conclusion() == d.conclusion()
            && after.is_subset(&before)
            && normalize(&nf) == nf;
    }
    outcome(
        ok,
        format!(
            "{done} derivations with redexes, mean size {:.1} -> {:.1}, {shrunk} with fewer open assumptions",
            before_size as f64 / done as f64,
            after_size as f64 / done as f64
        ),
    )
}

fn criterion_7(c: &Corpus) -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    let mut trees: Vec<(String, EolTree)> = c
        .fib
        .iter()
        .filter(|(n, ..)| *n >= 2)
        .map(|(n, _, t)| (format!("fib {n}"), t.clone()))
        .collect();
    for n in 2..=5 {
        let (_, d) = c
            .certificates
            .iter()
            .find(|(g, _)| g.n() == n && g.edge_count() == 0)
            .unwrap();
        trees.push((format!("nonham {n}"), tree_of(d)));
    }
    for (name, t) in &trees {
        let m = t.measures();
        let log = usize::BITS - 1 - m.size.leading_zeros();
        let height_ok = log as usize <= m.height && m.height <= m.size / 2;
        let bound = t.label_set().len() / 3;
        let widest = t
            .label_set()
            .iter()
            .map(|q| label2_suc(t, q).len())
            .max()
            .unwrap_or(0);
        if !height_ok || widest > bound {
            notes.push(format!(
                "{name}: h={} |T|={} max|Label2|={widest} > {bound}",
                m.height, m.size
            ));
        }
        ok &= height_ok && widest <= bound;
    }
    let detail = if notes.is_empty() {
        format!("{} trees", trees.len())
    } else {
        notes.join("; ")
    };
    outcome(ok, detail)
}

fn criterion_8(c: &Corpus) -> Outcome {
    let (_, _, t) = c.fib.iter().find(|(n, ..)| *n == 15).unwrap();
    let threshold = default_threshold(t);
    let report = analyze(t, threshold);
    let Some(f) = report.finding else {
        return outcome(false, "no finding");
    };
    let brute = brute_force_matches(&f.pattern, t)
        .into_iter()
        .filter(|v| t.level(*v) == f.level)
        .count();
    let labels = t.label_set();
    let lower_clear = (0..f.level).all(|l| labels.iter().all(|q| count_at(t, l, q) < threshold));
    outcome(
        brute == f.multiplicity() && lower_clear && f.multiplicity() > 0,
        format!(
            "threshold {threshold}, level {}, label {}, pattern of {} nodes, multiplicity {} (brute force {brute})",
            f.level,
            f.label,
            f.pattern.len(),
            f.multiplicity()
        ),
    )
}

fn random_mutation(r: &mut rand_chacha::ChaCha8Rng, d: &DagProof) -> Option<DagProof> {
    let node = r.gen_range(0..d.len());
    let m = match r.gen_range(0..6) {
        0 => Mutation::Label {
            node,
            label: r.gen_range(0..d.order.len() as u32),
        },
        1 => Mutation::SwapPremises { node },
        2 => Mutation::Level { node, up: r.gen() },
        3 => Mutation::FlipBit {
            node,
            bit: r.gen_range(0..d.order.len()),
        },
        4 => Mutation::Mark {
            node,
            mark: r.gen_range(0..=d.order.len() as u32 + 1),
        },
        _ => Mutation::Redirect {
            node,
            slot: r.gen_range(0..2),
            target: r.gen_range(0..d.len()),
        },
    };
    mutate(d, m)
}

fn criterion_9(c: &Corpus) -> Outcome {
    let mut ok = true;
    let mut dags = Vec::new();
    let mut worst_fib = 0.0f64;
    for (n, _, t) in &c.fib {
        let d = compress(t);
        ok &=
            verify(&d).is_ok() && expand(&d, DEFAULT_BUDGET).as_ref() == Ok(t) && d.len() <= 8 * n;
        worst_fib = worst_fib.max(d.len() as f64 / *n as f64);
        dags.push(d);
    }
    for (g, d) in c.certificates.iter().filter(|(g, _)| g.n() <= 4) {
        let t = tree_of(d);
        let dag = compress(&t);
        ok &= verify(&dag).is_ok() && expand(&dag, DEFAULT_BUDGET).as_ref() == Ok(&t);
        if g.edge_count() == 0 {
            dags.push(dag);
        }
    }
    let mut r = rng(9);
    let mut tried = 0;
    let mut rejected = 0;
    let mut kinds = BTreeSet::new();
    while tried < 500 {
        let d = &dags[r.gen_range(0..dags.len())];
        let Some(m) = random_mutation(&mut r, d) else {
            continue;
        };
        tried += 1;
        if let Err(e) = verify(&m) {
            rejected += 1;
            kinds.insert(e.kind.to_string());
        }
    }
    ok &= rejected == tried;
    let intro_dags = dags
        .iter()
        .filter(|d| {
            d.nodes
                .iter()
                .any(|n| matches!(n.kind, DagKind::Intro { .. }))
        })
        .count();
    outcome(
        ok,
        format!(
            "largest dag/n {worst_fib:.2}, {rejected}/{tried} mutations rejected ({}), {intro_dags} dags with intros",
            kinds.into_iter().collect::<Vec<_>>().join(", ")
        ),
    )
}

fn criterion_10(c: &Corpus) -> Outcome {
    let mut ok = true;
    let mut count = 0;
    let mut check_tree = |t: &EolTree| {
        count += 1;
        let h = level_histogram(t);
        ok &= h.total() == t.len()
            && (0..h.levels() as u32)
                .map(|l| h.row_total(l))
                .sum::<usize>()
                == t.len();
    };
    for (_, _, t) in &c.fib {
        check_tree(t);
    }
    for (_, d) in c.certificates.iter().step_by(7) {
        check_tree(&tree_of(d));
    }
    let mut r = rng(10);
    for _ in 0..300 {
        check_tree(&tree_of(&random_derivation(&mut r, GenConfig::default())));
    }
    check_tree(&tree_of(&Derivation::hypothesis(Formula::atom("A"))));
    outcome(ok, format!("{count} trees"))
}

fn main() {
    let start = Instant::now();
    let c = corpus();
    println!("corpus built in {:.1}s", start.elapsed().as_secs_f64());
    let criteria: [(&str, &dyn Fn() -> Outcome); 10] = [
        ("1 Fibonacci occurrence law", &|| criterion_1(&c)),
        ("2 Fibonacci growth", &|| criterion_2(&c)),
        ("3 figure bitstrings", &criterion_3),
        ("4 certificate soundness and completeness", &|| {
            criterion_4(&c)
        }),
        ("5 certificate size and height bounds", &|| criterion_5(&c)),
        ("6 normalization suite", &criterion_6),
        ("7 structural invariants", &|| criterion_7(&c)),
        ("8 redundancy detection", &|| criterion_8(&c)),
        ("9 compression round trip and ratio", &|| criterion_9(&c)),
        ("10 histogram identity", &|| criterion_10(&c)),
    ];
    let mut results = Vec::new();
    for (name, run) in criteria {
        let t = Instant::now();
        let o = run();
        println!(
            "criterion {name}: {} ({}) [{:.1}s]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t.elapsed().as_secs_f64()
        );
        results.push(o);
    }
    let mut failed = 0;
    for o in &results {
        failed += usize::from(!o.pass);
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        results.len() - failed,
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
