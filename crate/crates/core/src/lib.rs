//! Natural-deduction proofs in minimal implicational logic, and the tools to
//! see why some of them are so large.
//!
//! The crate goes from formulas to derivations, from derivations to
//! edge-labelled trees carrying dependency bitstrings, and from those trees
//! to DAGs in which equal sub-proofs at the same level are stored once.
//!
//! - [`formula`]: the `->` language, parsing and syntax trees.
//! - [`deduction`]: derivations with greedy discharge, checking, branches and
//!   normalization.
//! - [`eoltree`]: the tree form of a derivation, validation, per-level counts
//!   and skeletal matching.
//! - [`generators`]: the Fibonacci family and non-Hamiltonicity certificates.
//! - [`redundancy`]: finds a level where one sub-tree repeats many times.
//! - [`compress`]: same-level sharing, expansion and a DAG verifier.
//! - [`cli`]: the `mimp` command line.
//!
//! ```
//! use mimp::compress::{compress, verify};
//! use mimp::eoltree::{EolTree, FormulaOrder};
//! use mimp::generators::fibonacci_derivation;
//!
//! let d = fibonacci_derivation(12);
//! let t = EolTree::from_derivation(&d, &FormulaOrder::canonical_for(&d)).unwrap();
//! let dag = compress(&t);
//! assert!(verify(&dag).is_ok());
//! assert_eq!((t.len(), dag.len()), (751, 33));
//! ```

pub mod cli;
pub mod compress;
pub mod deduction;
pub mod eoltree;
pub mod formula;
pub mod generators;
pub mod redundancy;
