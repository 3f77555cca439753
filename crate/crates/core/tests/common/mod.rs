//! Shared helpers for the integration tests: a seeded random derivation
//! generator and independent oracles.
#![allow(dead_code)]

use mimp::deduction::Derivation;
use mimp::eoltree::{EdgeKind, EolTree, FormulaOrder, NodeIx, SkeletalTree};
use mimp::formula::Formula;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn atoms() -> Vec<Formula> {
    ["P", "Q", "R", "S"].iter().map(Formula::atom).collect()
}

pub fn random_formula(rng: &mut ChaCha8Rng, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.45) {
        atoms().choose(rng).unwrap().clone()
    } else {
        Formula::implies(
            random_formula(rng, depth - 1),
            random_formula(rng, depth - 1),
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GenConfig {
    /// Maximum rule nesting.
    pub depth: u32,
    /// Chance that an elimination gets an introduction as major premise.
    pub redex: f64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            depth: 5,
            redex: 0.3,
        }
    }
}

/// A random derivation of `goal`. Marks are assigned greedily, so the
/// result always checks.
pub fn random_derivation_of(rng: &mut ChaCha8Rng, goal: &Formula, cfg: GenConfig) -> Derivation {
    fn go(rng: &mut ChaCha8Rng, goal: &Formula, depth: u32, cfg: GenConfig) -> Derivation {
        go_at(rng, goal, depth, cfg, true)
    }
    fn go_at(
        rng: &mut ChaCha8Rng,
        goal: &Formula,
        depth: u32,
        cfg: GenConfig,
        intro_ok: bool,
    ) -> Derivation {
        if depth == 0 || rng.gen_bool(0.2) {
            return Derivation::hypothesis(goal.clone());
        }
        let intro = intro_ok && goal.antecedent().is_some() && rng.gen_bool(0.35);
        if intro {
            let a = goal.antecedent().unwrap().clone();
            let b = goal.consequent().unwrap();
            return Derivation::intro_over(a, go(rng, b, depth - 1, cfg));
        }
        let a = if rng.gen_bool(0.7) {
            atoms().choose(rng).unwrap().clone()
        } else {
            random_formula(rng, 1)
        };
        let major_goal = Formula::implies(a.clone(), goal.clone());
        let minor = go(rng, &a, depth - 1, cfg);
        let major = if rng.gen_bool(cfg.redex) {
            Derivation::intro_over(a, go(rng, goal, depth - 1, cfg))
        } else {
            go_at(rng, &major_goal, depth - 1, cfg, cfg.redex > 0.0)
        };
        Derivation::apply(minor, major)
    }
    go(rng, goal, cfg.depth, cfg).with_greedy_marks()
}

pub fn random_derivation(rng: &mut ChaCha8Rng, cfg: GenConfig) -> Derivation {
    let goal = random_formula(rng, 2);
    random_derivation_of(rng, &goal, cfg)
}

/// A random derivation with no maximal formula: with `redex` zero, majors
/// are never introductions.
pub fn random_normal_derivation(rng: &mut ChaCha8Rng, depth: u32) -> Derivation {
    random_derivation(rng, GenConfig { depth, redex: 0.0 })
}

pub fn tree_of(d: &Derivation) -> EolTree {
    EolTree::from_derivation(d, &FormulaOrder::canonical_for(d)).unwrap()
}

/// Fibonacci numbers by the closed form, rounded.
pub fn binet(k: u32) -> u64 {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    (phi.powi(k as i32) / 5f64.sqrt()).round() as u64
}

/// Skeletal occurrences by trying every node as root and walking both
/// trees side by side without any sharing.
pub fn brute_force_matches(s: &SkeletalTree, t: &EolTree) -> Vec<NodeIx> {
    fn walk(s: &SkeletalTree, x: usize, t: &EolTree, y: NodeIx) -> bool {
        if s.nodes()[x].label != *t.label(y) {
            return false;
        }
        s.nodes()[x].children.iter().all(|(k, xc)| {
            let yc = t
                .node(y)
                .children()
                .iter()
                .find(|(kk, _)| kk == k)
                .map(|(_, c)| *c);
            yc.is_some_and(|yc| walk(s, *xc, t, yc))
        })
    }
    (0..t.len())
        .map(NodeIx)
        .filter(|v| walk(s, 0, t, *v))
        .collect()
}

/// Count of nodes per (level, label) by a plain scan.
pub fn count_at(t: &EolTree, level: u32, label: &Formula) -> usize {
    (0..t.len())
        .map(NodeIx)
        .filter(|v| t.level(*v) == level && t.label(*v) == label)
        .count()
}

pub fn kinds_below(t: &EolTree, v: NodeIx) -> Vec<EdgeKind> {
    t.node(v).children().iter().map(|(k, _)| *k).collect()
}
