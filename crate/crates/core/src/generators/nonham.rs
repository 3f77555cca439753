//! Implicational encoding of "G has no Hamiltonian path" and certificates
//! for it.
//!
//! Atoms: `X_i_v` (vertex `v` is visited at step `i`), `ORX_i` (some vertex
//! is visited at step `i`), `ORV_v` (vertex `v` is visited at some step) and
//! the absurdity atom `q`. Disjunctions are replaced by their fresh atoms
//! together with introduction axioms and an elimination schema concluding
//! `q`.

use std::collections::HashSet;

use super::{GenError, Graph};
use crate::deduction::Derivation;
use crate::formula::Formula;

/// The hypothesis set of a graph together with its atoms.
#[derive(Debug, Clone)]
pub struct EncodingContext {
    graph: Graph,
    q: Formula,
    x: Vec<Vec<Formula>>,
    orx: Vec<Formula>,
    orv: Vec<Formula>,
    hypotheses: Vec<Formula>,
    members: HashSet<Formula>,
}

impl EncodingContext {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn q(&self) -> &Formula {
        &self.q
    }

    /// `X_i_v`, both indices from 1.
    pub fn x(&self, i: usize, v: usize) -> &Formula {
        &self.x[i - 1][v - 1]
    }

    pub fn orx(&self, i: usize) -> &Formula {
        &self.orx[i - 1]
    }

    pub fn orv(&self, v: usize) -> &Formula {
        &self.orv[v - 1]
    }

    /// `a -> (b -> q)`
    pub fn clash(&self, a: &Formula, b: &Formula) -> Formula {
        Formula::implies(a.clone(), Formula::implies(b.clone(), self.q.clone()))
    }

    /// `(X_k_1 -> q) -> ... -> (X_k_n -> q) -> ORX_k -> q`
    pub fn schema(&self, k: usize) -> Formula {
        let cases = (1..=self.n()).map(|v| Formula::implies(self.x(k, v).clone(), self.q.clone()));
        let tail = Formula::implies(self.orx(k).clone(), self.q.clone());
        Formula::chain(cases, tail)
    }

    /// The hypotheses in emission order: the repetition, exclusivity and
    /// missing-edge families, then the step atoms with their schemas and
    /// introduction axioms, then the per-vertex atoms with theirs.
    pub fn hypotheses(&self) -> &[Formula] {
        &self.hypotheses
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.members.contains(f)
    }
}

pub fn encode_hamiltonian(g: &Graph) -> EncodingContext {
    let n = g.n();
    let x: Vec<Vec<Formula>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|v| Formula::atom(format!("X_{i}_{v}")))
                .collect()
        })
        .collect();
    let mut ctx = EncodingContext {
        graph: g.clone(),
        q: Formula::atom("q"),
        x,
        orx: (1..=n).map(|i| Formula::atom(format!("ORX_{i}"))).collect(),
        orv: (1..=n).map(|v| Formula::atom(format!("ORV_{v}"))).collect(),
        hypotheses: Vec::new(),
        members: HashSet::new(),
    };
    let mut out = Vec::new();
    for v in 1..=n {
        for i in 1..=n {
            for j in i + 1..=n {
                out.push(ctx.clash(ctx.x(i, v), ctx.x(j, v)));
            }
        }
    }
    for i in 1..=n {
        for v in 1..=n {
            for w in (1..=n).filter(|w| *w != v) {
                out.push(ctx.clash(ctx.x(i, v), ctx.x(i, w)));
            }
        }
    }
    for i in 1..n {
        for v in 1..=n {
            for w in (1..=n).filter(|w| !g.has_edge(v, *w)) {
                out.push(ctx.clash(ctx.x(i, v), ctx.x(i + 1, w)));
            }
        }
    }
    for k in 1..=n {
        out.push(ctx.orx(k).clone());
        out.push(ctx.schema(k));
        for v in 1..=n {
            out.push(Formula::implies(ctx.x(k, v).clone(), ctx.orx(k).clone()));
        }
    }
    for v in 1..=n {
        out.push(ctx.orv(v).clone());
        for i in 1..=n {
            out.push(Formula::implies(ctx.x(i, v).clone(), ctx.orv(v).clone()));
        }
    }
    let mut seen = HashSet::new();
    out.retain(|f| seen.insert(f.clone()));
    ctx.members = seen;
    ctx.hypotheses = out;
    ctx
}

/// Exhaustive search for a Hamiltonian path; the first one in
/// lexicographic order is returned.
pub fn hamiltonian_oracle(g: &Graph) -> Result<Option<Vec<usize>>, GenError> {
    const LIMIT: usize = 12;
    if g.n() > LIMIT {
        return Err(GenError::OracleTooLarge {
            n: g.n(),
            limit: LIMIT,
        });
    }
    fn extend(g: &Graph, path: &mut Vec<usize>, used: &mut [bool]) -> bool {
        if path.len() == g.n() {
            return true;
        }
        for v in 1..=g.n() {
            if used[v] || path.last().is_some_and(|u| !g.has_edge(*u, v)) {
                continue;
            }
            used[v] = true;
            path.push(v);
            if extend(g, path, used) {
                return true;
            }
            path.pop();
            used[v] = false;
        }
        false
    }
    let mut path = Vec::with_capacity(g.n());
    let mut used = vec![false; g.n() + 1];
    Ok(extend(g, &mut path, &mut used).then_some(path))
}

/// Derives `q` from `X_1_p1, .., X_n_pn` and one clash hypothesis. A
/// repeated vertex is reported before a missing edge, each at the least
/// position.
pub fn refute_path(ctx: &EncodingContext, p: &[usize]) -> Result<Derivation, GenError> {
    let n = ctx.n();
    if p.len() != n || p.iter().any(|v| !(1..=n).contains(v)) {
        return Err(GenError::BadPath(p.to_vec()));
    }
    let repeat = (0..n).find_map(|i| (i + 1..n).find(|j| p[*j] == p[i]).map(|j| (i, j)));
    let (a, b) = match repeat {
        Some((i, j)) => (ctx.x(i + 1, p[i]), ctx.x(j + 1, p[j])),
        None => match (0..n.saturating_sub(1)).find(|j| !ctx.graph.has_edge(p[*j], p[j + 1])) {
            Some(j) => (ctx.x(j + 1, p[j]), ctx.x(j + 2, p[j + 1])),
            None => return Err(GenError::ValidPath(p.to_vec())),
        },
    };
    let clash = ctx.clash(a, b);
    let step = Derivation::apply(
        Derivation::hypothesis(a.clone()),
        Derivation::hypothesis(clash),
    );
    Ok(Derivation::apply(Derivation::hypothesis(b.clone()), step))
}

/// Node count of the certificate for `n` vertices.
pub fn certificate_size(n: usize) -> u128 {
    let n = n as u128;
    let leaves = n.pow(n as u32);
    let inner: u128 = (0..n as u32).map(|k| n.pow(k)).sum();
    5 * leaves + (2 * n + 3) * inner
}

/// A normal derivation of `q` from the hypotheses of `g`, splitting on
/// `ORX_1, .., ORX_n` in turn and refuting every resulting vertex sequence.
pub fn nonham_certificate(g: &Graph, budget: u64) -> Result<Derivation, GenError> {
    if let Some(path) = hamiltonian_oracle(g)? {
        return Err(GenError::Hamiltonian(path));
    }
    let needed = certificate_size(g.n());
    if needed > budget as u128 {
        return Err(GenError::Budget { needed, budget });
    }
    let ctx = encode_hamiltonian(g);
    let mut prefix = Vec::with_capacity(g.n());
    Ok(split(&ctx, &mut prefix)?.with_greedy_marks())
}

fn split(ctx: &EncodingContext, prefix: &mut Vec<usize>) -> Result<Derivation, GenError> {
    let n = ctx.n();
    if prefix.len() == n {
        return refute_path(ctx, prefix);
    }
    let k = prefix.len() + 1;
    let mut chain = Derivation::hypothesis(ctx.schema(k));
    for v in 1..=n {
        prefix.push(v);
        let case = split(ctx, prefix)?;
        prefix.pop();
        chain = Derivation::apply(Derivation::intro_over(ctx.x(k, v).clone(), case), chain);
    }
    Ok(Derivation::apply(
        Derivation::hypothesis(ctx.orx(k).clone()),
        chain,
    ))
}
