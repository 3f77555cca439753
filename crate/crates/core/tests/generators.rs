mod common;

use std::collections::BTreeSet;

use common::{binet, count_at, tree_of};
use mimp::deduction::{check, is_normal, subformula_principle_check, Derivation};
use mimp::formula::Formula;
use mimp::generators::{
    certificate_size, encode_hamiltonian, family_stats, fib_atom, fib_axiom, fibonacci_derivation,
    fibonacci_expected, fibonacci_proof, fibonacci_size, hamiltonian_oracle, nonham_certificate,
    refute_path, Family, GenError, Graph, DEFAULT_BUDGET,
};

/// Hypothesis formulas of `d`, with repetitions.
fn hypotheses(d: &Derivation) -> Vec<Formula> {
    let mut out = Vec::new();
    d.for_each_node(|_, n| {
        if let Derivation::Hypothesis { formula, .. } = n {
            out.push(formula.clone());
        }
    });
    out
}

fn is_x(f: &Formula) -> bool {
    f.atom_name().is_some_and(|s| s.starts_with("X_"))
}

/// `X_a -> X_b -> q`, the shape of the repetition, exclusivity and
/// missing-edge hypotheses.
fn is_clash(f: &Formula) -> bool {
    match (f.antecedent(), f.consequent().and_then(|c| c.antecedent())) {
        (Some(a), Some(b)) => is_x(a) && is_x(b),
        _ => false,
    }
}

/// Every permutation of 1..=n, in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn is_path(g: &Graph, p: &[usize]) -> bool {
    p.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

fn all_sequences(n: usize) -> Vec<Vec<usize>> {
    (0..n.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let v = code % n + 1;
                    code /= n;
                    v
                })
                .collect()
        })
        .collect()
}

#[test]
fn fibonacci_family_up_to_twenty() {
    for n in 1..=20 {
        let d = fibonacci_derivation(n);
        let j = check(&d).unwrap();
        assert_eq!(j.conclusion, fib_atom(n));
        let mut expected: BTreeSet<Formula> = (2..=n).map(fib_axiom).collect();
        expected.insert(fib_atom(1));
        assert_eq!(j.open_set(), expected);
        assert!(is_normal(&d));
        assert_eq!(d.size() as u128, fibonacci_size(n));
        assert!(binet(n as u32) as usize <= d.size());
        let t = tree_of(&d);
        for l in 0..n {
            let want = binet(l as u32 + 1);
            assert_eq!(
                count_at(&t, l as u32, &fib_atom(n - l)) as u64,
                want,
                "n={n} l={l}"
            );
            assert_eq!(fibonacci_expected(n, l).unwrap(), want);
        }
    }
}

#[test]
fn fibonacci_examples() {
    let p2 = fibonacci_derivation(2);
    assert_eq!((p2.size(), p2.elim_count()), (3, 1));
    let p5 = fibonacci_proof(5);
    let j = check(&p5).unwrap();
    assert_eq!(j.conclusion, Formula::implies(fib_atom(1), fib_atom(5)));
    assert_eq!(j.open_set(), (2..=5).map(fib_axiom).collect());
    assert_eq!(fibonacci_expected(7, 0).unwrap(), 1);
    assert_eq!(fibonacci_expected(7, 1).unwrap(), 1);
    assert_eq!(fibonacci_expected(10, 9).unwrap(), 55);
    assert!(matches!(
        fibonacci_expected(10, 10),
        Err(GenError::LevelOutOfRange { .. })
    ));
    for k in 3..40 {
        assert_eq!(
            fibonacci_size(k),
            fibonacci_size(k - 1) + fibonacci_size(k - 2) + 3
        );
    }
}

#[test]
fn encoding_examples() {
    let one = encode_hamiltonian(&Graph::edgeless(1));
    let schema = one.schema(1);
    assert!(one.contains(&schema));
    assert_eq!(
        schema,
        Formula::chain(
            [Formula::implies(one.x(1, 1).clone(), one.q().clone())],
            Formula::implies(one.orx(1).clone(), one.q().clone())
        )
    );

    let two = encode_hamiltonian(&Graph::edgeless(2));
    for v in 1..=2 {
        for w in 1..=2 {
            assert!(two.contains(&two.clash(two.x(1, v), two.x(2, w))));
        }
    }

    let triangle = encode_hamiltonian(&Graph::new(3, [(1, 2), (2, 3), (3, 1)]).unwrap());
    for (v, w) in [(1, 2), (2, 3), (3, 1)] {
        for i in 1..3 {
            assert!(!triangle.contains(&triangle.clash(triangle.x(i, v), triangle.x(i + 1, w))));
        }
    }
    assert!(triangle.contains(&triangle.clash(triangle.x(1, 2), triangle.x(2, 1))));
    let all: Vec<&Formula> = triangle.hypotheses().iter().collect();
    assert_eq!(all.len(), all.iter().collect::<BTreeSet<_>>().len());
}

#[test]
fn oracle_examples() {
    let path3 = Graph::new(3, [(1, 2), (2, 3)]).unwrap();
    assert_eq!(hamiltonian_oracle(&path3).unwrap(), Some(vec![1, 2, 3]));
    assert_eq!(
        hamiltonian_oracle(&Graph::new(3, [(1, 2)]).unwrap()).unwrap(),
        None
    );
    assert_eq!(
        hamiltonian_oracle(&Graph::edgeless(1)).unwrap(),
        Some(vec![1])
    );
    assert!(hamiltonian_oracle(&Graph::edgeless(13)).is_err());
}

#[test]
fn oracle_agrees_with_permutation_search() {
    for n in 1..=4 {
        for g in Graph::all_on(n) {
            let found = permutations(n).into_iter().find(|p| is_path(&g, p));
            assert_eq!(hamiltonian_oracle(&g).unwrap(), found);
        }
    }
}

#[test]
fn refutation_examples() {
    let g = Graph::new(3, [(1, 2)]).unwrap();
    let ctx = encode_hamiltonian(&g);
    let r = refute_path(&ctx, &[1, 1, 2]).unwrap();
    assert!(hypotheses(&r).contains(&ctx.clash(ctx.x(1, 1), ctx.x(2, 1))));
    let r = refute_path(&ctx, &[1, 2, 3]).unwrap();
    assert!(hypotheses(&r).contains(&ctx.clash(ctx.x(2, 2), ctx.x(3, 3))));
    let path = encode_hamiltonian(&Graph::new(3, [(1, 2), (2, 3)]).unwrap());
    assert!(matches!(
        refute_path(&path, &[1, 2, 3]),
        Err(GenError::ValidPath(_))
    ));
    assert!(matches!(
        refute_path(&path, &[1, 2]),
        Err(GenError::BadPath(_))
    ));
}

#[test]
fn every_refutation_uses_one_clash_and_two_eliminations() {
    for n in 1..=3 {
        for g in Graph::all_on(n) {
            let ctx = encode_hamiltonian(&g);
            for p in all_sequences(n) {
                let distinct = p.iter().collect::<BTreeSet<_>>().len() == n;
                match refute_path(&ctx, &p) {
                    Ok(d) => {
                        let j = check(&d).unwrap();
                        assert_eq!(j.conclusion, *ctx.q());
                        assert_eq!(d.elim_count(), 2);
                        let hyps = hypotheses(&d);
                        let clashes: Vec<&Formula> = hyps.iter().filter(|f| is_clash(f)).collect();
                        assert_eq!(clashes.len(), 1);
                        assert!(ctx.contains(clashes[0]));
                        let xp: BTreeSet<Formula> =
                            (1..=n).map(|i| ctx.x(i, p[i - 1]).clone()).collect();
                        assert!(hyps.iter().filter(|f| is_x(f)).all(|f| xp.contains(f)));
                    }
                    Err(GenError::ValidPath(_)) => assert!(distinct && is_path(&g, &p)),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
}

#[test]
fn certificates_for_small_graphs() {
    for n in 1..=3 {
        for g in Graph::all_on(n) {
            match nonham_certificate(&g, DEFAULT_BUDGET) {
                Ok(d) => {
                    assert_eq!(hamiltonian_oracle(&g).unwrap(), None);
                    let ctx = encode_hamiltonian(&g);
                    let j = check(&d).unwrap();
                    assert_eq!(j.conclusion, *ctx.q());
                    assert!(j.open.iter().all(|f| ctx.contains(f)));
                    assert!(is_normal(&d));
                    assert!(subformula_principle_check(&d));
                    assert_eq!(d.size() as u128, certificate_size(n));
                    let leaves = hypotheses(&d).iter().filter(|f| is_clash(f)).count();
                    assert_eq!(leaves, n.pow(n as u32));
                }
                Err(GenError::Hamiltonian(p)) => {
                    assert_eq!(hamiltonian_oracle(&g).unwrap(), Some(p));
                }
                Err(e) => panic!("{e}"),
            }
        }
    }
    let triangle = Graph::new(3, [(1, 2), (2, 3), (3, 1)]).unwrap();
    assert_eq!(
        nonham_certificate(&triangle, DEFAULT_BUDGET).unwrap_err(),
        GenError::Hamiltonian(vec![1, 2, 3])
    );
    assert!(nonham_certificate(&Graph::new(3, [(1, 2)]).unwrap(), DEFAULT_BUDGET).is_ok());
    assert!(matches!(
        nonham_certificate(&Graph::edgeless(4), 100),
        Err(GenError::Budget { budget: 100, .. })
    ));
}

#[test]
fn two_vertex_certificate_splits_twice() {
    let d = nonham_certificate(&Graph::edgeless(2), DEFAULT_BUDGET).unwrap();
    let ctx = encode_hamiltonian(&Graph::edgeless(2));
    let splits = hypotheses(&d)
        .iter()
        .filter(|f| **f == ctx.schema(1) || **f == ctx.schema(2))
        .count();
    assert_eq!(splits, 1 + 2);
}

#[test]
fn stats_examples() {
    let fib = family_stats(Family::Fibonacci, 10..=24, DEFAULT_BUDGET).unwrap();
    assert_eq!(fib.rows.len(), 15);
    assert!(
        (fib.per_step_ratio() - 1.618).abs() <= 0.1,
        "{}",
        fib.per_step_ratio()
    );
    for r in &fib.rows {
        assert_eq!(r.labels, 3 * r.n - 3);
        assert_eq!(r.height, r.n - 1);
    }

    let constant = family_stats(Family::Constant, 1..=8, DEFAULT_BUDGET).unwrap();
    assert_eq!(constant.exponent_per_step, 0.0);
    assert_eq!(constant.exponent_per_label, 0.0);

    let nonham = family_stats(Family::NonHam, 2..=5, DEFAULT_BUDGET).unwrap();
    for r in &nonham.rows {
        let nn = r.n.pow(r.n as u32);
        assert!(r.nodes <= 20 * nn, "n={} nodes={}", r.n, r.nodes);
        assert_eq!(r.nodes as u128, certificate_size(r.n));
    }
    let csv = nonham.to_csv();
    assert!(csv.starts_with("n,labels,nodes,height,max_occ,ratio\n2,"));
    assert_eq!(csv.lines().count(), 5);

    let (from, to) = (5, 4);
    assert_eq!(
        family_stats(Family::Fibonacci, from..=to, DEFAULT_BUDGET).unwrap_err(),
        GenError::EmptyRange
    );
    assert!(matches!(
        family_stats(Family::Fibonacci, 30..=31, 1000),
        Err(GenError::Budget { .. })
    ));
}

#[test]
fn graph_file_format() {
    let g = Graph::parse("3 2\n1 2\n2 3\n").unwrap();
    assert_eq!(g.n(), 3);
    assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2), (2, 3)]);
    assert_eq!(Graph::parse(&g.to_string()).unwrap(), g);
    assert_eq!(Graph::parse("2 1\n1 1\n").unwrap_err().line, 2);
    assert_eq!(Graph::parse("2 2\n1 2\n1 2\n").unwrap_err().line, 3);
    assert!(Graph::parse("2 2\n1 2\n").is_err());
    assert!(Graph::parse("2 1\n1 3\n").is_err());
}
