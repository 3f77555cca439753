//! Families of large derivations: the Fibonacci derivations and
//! non-Hamiltonicity certificates, plus growth measurements over a family.

mod graph;
mod nonham;

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use thiserror::Error;

use crate::deduction::Derivation;
use crate::eoltree::{level_histogram, EolTree, FormulaOrder};
use crate::formula::Formula;

pub use graph::{Graph, GraphError};
pub use nonham::{
    certificate_size, encode_hamiltonian, hamiltonian_oracle, nonham_certificate, refute_path,
    EncodingContext,
};

/// Default node budget for generated derivations.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("graph is hamiltonian: {0:?}")]
    Hamiltonian(Vec<usize>),
    #[error("construction needs {needed} nodes, budget is {budget}")]
    Budget { needed: u128, budget: u64 },
    #[error("exhaustive search limited to {limit} vertices, graph has {n}")]
    OracleTooLarge { n: usize, limit: usize },
    #[error("{0:?} is a hamiltonian path")]
    ValidPath(Vec<usize>),
    #[error("{0:?} is not a vertex sequence of the right length")]
    BadPath(Vec<usize>),
    #[error("level {level} out of range for n = {n}")]
    LevelOutOfRange { n: usize, level: usize },
    #[error("empty range")]
    EmptyRange,
    #[error("index {0} outside the family")]
    BadIndex(usize),
}

/// `Fibonacci(k)` with `Fibonacci(1) = Fibonacci(2) = 1`.
pub fn fibonacci(k: u32) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..k {
        (a, b) = (b, a + b);
    }
    a
}

pub fn fib_atom(k: usize) -> Formula {
    Formula::atom(format!("A{k}"))
}

/// `A_{k-2} -> A_{k-1} -> A_k`; for `k = 2` the single step `A1 -> A2`.
pub fn fib_axiom(k: usize) -> Formula {
    match k {
        2 => Formula::implies(fib_atom(1), fib_atom(2)),
        _ => Formula::chain([fib_atom(k - 2), fib_atom(k - 1)], fib_atom(k)),
    }
}

/// Derives `A_n` from `A1`, `A1 -> A2` and `A_{k-2} -> A_{k-1} -> A_k` for
/// `3 <= k <= n`. The derivations of `A_{n-1}` and `A_{n-2}` are built
/// separately, so the tree grows like the Fibonacci numbers.
///
/// # Panics
/// If `n == 0`.
pub fn fibonacci_derivation(n: usize) -> Derivation {
    assert!(n >= 1, "the family starts at n = 1");
    match n {
        1 => Derivation::hypothesis(fib_atom(1)),
        2 => Derivation::apply(
            Derivation::hypothesis(fib_atom(1)),
            Derivation::hypothesis(fib_axiom(2)),
        ),
        _ => {
            let step = Derivation::apply(
                fibonacci_derivation(n - 2),
                Derivation::hypothesis(fib_axiom(n)),
            );
            Derivation::apply(fibonacci_derivation(n - 1), step)
        }
    }
}

/// `A1 -> A_n`, closing the derivation above with an introduction.
pub fn fibonacci_proof(n: usize) -> Derivation {
    Derivation::intro_over(fib_atom(1), fibonacci_derivation(n)).with_greedy_marks()
}

/// Node count of [`fibonacci_derivation`].
pub fn fibonacci_size(n: usize) -> u128 {
    let (mut a, mut b) = (1u128, 3u128);
    match n {
        0 => 0,
        1 => 1,
        _ => {
            for _ in 2..n {
                (a, b) = (b, a + b + 3);
            }
            b
        }
    }
}

/// Expected number of `A_{n-l}` occurrences at level `l`.
pub fn fibonacci_expected(n: usize, l: usize) -> Result<u64, GenError> {
    if l >= n {
        return Err(GenError::LevelOutOfRange { n, level: l });
    }
    Ok(fibonacci(l as u32 + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Fibonacci,
    /// Certificates for the edgeless graph on `n` vertices.
    NonHam,
    /// A single hypothesis, whatever `n`.
    Constant,
}

impl Family {
    pub fn build(self, n: usize, budget: u64) -> Result<Derivation, GenError> {
        match self {
            Family::Fibonacci => {
                if n == 0 {
                    return Err(GenError::BadIndex(n));
                }
                let needed = fibonacci_size(n);
                if needed > budget as u128 {
                    return Err(GenError::Budget { needed, budget });
                }
                Ok(fibonacci_derivation(n))
            }
            Family::NonHam => {
                if n < 2 {
                    return Err(GenError::BadIndex(n));
                }
                nonham_certificate(&Graph::edgeless(n), budget)
            }
            Family::Constant => Ok(Derivation::hypothesis(Formula::atom("A"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatsRow {
    pub n: usize,
    /// Distinct labels.
    pub labels: usize,
    pub nodes: usize,
    pub height: usize,
    pub max_occ: usize,
    /// `nodes / previous nodes`.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyStats {
    pub rows: Vec<StatsRow>,
    /// Least-squares slope of `ln |V|` against `|B|`.
    pub exponent_per_label: f64,
    /// Least-squares slope of `ln |V|` against `n`.
    pub exponent_per_step: f64,
}

impl FamilyStats {
    pub fn per_step_ratio(&self) -> f64 {
        self.exponent_per_step.exp()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,labels,nodes,height,max_occ,ratio\n");
        for r in &self.rows {
            let ratio = r.ratio.map(|x| format!("{x:.6}")).unwrap_or_default();
            let _ = writeln!(
                s,
                "{},{},{},{},{},{ratio}",
                r.n, r.labels, r.nodes, r.height, r.max_occ
            );
        }
        s
    }
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return 0.0;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    sxy / sxx
}

pub fn family_stats(
    family: Family,
    range: RangeInclusive<usize>,
    budget: u64,
) -> Result<FamilyStats, GenError> {
    measure(range, |n| family.build(n, budget))
}

/// Measures the derivations `build(n)` for `n` in `range`.
pub fn measure<F>(range: RangeInclusive<usize>, mut build: F) -> Result<FamilyStats, GenError>
where
    F: FnMut(usize) -> Result<Derivation, GenError>,
{
    if range.is_empty() {
        return Err(GenError::EmptyRange);
    }
    let mut rows: Vec<StatsRow> = Vec::new();
    for n in range {
        let d = build(n)?;
        let t = EolTree::from_derivation(&d, &FormulaOrder::canonical_for(&d))
            .expect("canonical order is complete");
        let nodes = t.len();
        rows.push(StatsRow {
            n,
            labels: t.label_set().len(),
            nodes,
            height: t.height() as usize,
            max_occ: level_histogram(&t).max_count(),
            ratio: rows.last().map(|p| nodes as f64 / p.nodes as f64),
        });
    }
    let ln_v: Vec<f64> = rows.iter().map(|r| (r.nodes as f64).ln()).collect();
    let labels: Vec<f64> = rows.iter().map(|r| r.labels as f64).collect();
    let steps: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    Ok(FamilyStats {
        exponent_per_label: slope(&labels, &ln_v),
        exponent_per_step: slope(&steps, &ln_v),
        rows,
    })
}
