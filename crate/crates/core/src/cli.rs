//! Command-line front end.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 rejected by a checker,
//! 3 graph is hamiltonian, 4 node budget exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::compress::{compress, verify, DagProof};
use crate::deduction::{check, is_normal, normalize, parse_proof, render_proof, Derivation};
use crate::eoltree::{export, occ, parse_export, validate, EolTree, FormulaOrder};
use crate::formula::{parse, syntax_tree, Measured};
use crate::generators::{
    family_stats, fib_atom, fibonacci_derivation, fibonacci_expected, fibonacci_proof,
    nonham_certificate, Family, GenError, Graph, DEFAULT_BUDGET,
};
use crate::redundancy::{analyze, default_threshold};

#[derive(Debug, Parser)]
#[command(
    name = "mimp",
    version,
    about = "Proofs in minimal implicational logic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse formulas, one per line, and print their syntax trees.
    Parse { input: PathBuf },
    /// Check a proof and print the judgment it establishes.
    Check { input: PathBuf },
    /// Normalize a proof.
    Normalize {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the EOL-tree of a proof.
    ExportEol {
        input: PathBuf,
        /// `canonical` or a file holding an `order` line.
        #[arg(long, default_value = "canonical")]
        order: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate the Fibonacci derivation of A_n.
    GenFib {
        #[arg(short)]
        n: usize,
        /// Print the occurrence table against the Fibonacci numbers instead.
        #[arg(long)]
        expect_occ: bool,
        /// Close the derivation with an introduction of A1 -> A_n.
        #[arg(long)]
        close: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a non-Hamiltonicity certificate for a graph file.
    GenNonham {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, env = "MIMP_BUDGET")]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report repeated sub-trees of an EOL-tree or proof.
    Analyze {
        input: PathBuf,
        #[arg(long)]
        threshold: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compress an EOL-tree or proof into a DAG.
    Compress {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a DAG file.
    Verify { input: PathBuf },
    /// Growth table of a family as CSV.
    Stats {
        family: StatsFamily,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, env = "MIMP_BUDGET")]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StatsFamily {
    Fib,
    Nonham,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Rejected(String),
    Hamiltonian(Vec<usize>),
    Budget(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Rejected(_) => 2,
            Failure::Hamiltonian(_) => 3,
            Failure::Budget(_) => 4,
        }
    }
}

impl From<GenError> for Failure {
    fn from(e: GenError) -> Failure {
        match e {
            GenError::Hamiltonian(p) => Failure::Hamiltonian(p),
            GenError::Budget { .. } => Failure::Budget(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

/// Runs one command. Results go to `out` (or the `--out` file), messages
/// to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let _ = match &f {
                Failure::Hamiltonian(p) => {
                    let path: Vec<String> = p.iter().map(|v| v.to_string()).collect();
                    writeln!(err, "graph is hamiltonian: {}", path.join(" "))
                }
                Failure::Input(m) | Failure::Rejected(m) | Failure::Budget(m) => {
                    writeln!(err, "{m}")
                }
            };
            f.code()
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(text: &str, to: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match to {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
        }
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Input(format!("stdout: {e}"))),
    }
}

fn load_proof(path: &Path) -> Result<Derivation, Failure> {
    parse_proof(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn checked_proof(path: &Path) -> Result<Derivation, Failure> {
    let d = load_proof(path)?;
    check(&d).map_err(|e| Failure::Rejected(e.to_string()))?;
    Ok(d)
}

/// An EOL file, or a proof turned into its tree under the canonical order.
fn load_tree(path: &Path) -> Result<EolTree, Failure> {
    let text = read(path)?;
    let t = if text.trim_start().starts_with("eol") {
        parse_export(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
    } else {
        let d =
            parse_proof(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        check(&d).map_err(|e| Failure::Rejected(e.to_string()))?;
        EolTree::from_derivation(&d, &FormulaOrder::canonical_for(&d))
            .expect("canonical order is complete")
    };
    let violations = validate(&t);
    if !violations.is_empty() {
        let lines: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Failure::Rejected(lines.join("\n")));
    }
    Ok(t)
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Parse { input } => {
            let mut s = String::new();
            for (i, line) in read(&input)?.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let f = parse(line).map_err(|e| Failure::Input(format!("line {}: {e}", i + 1)))?;
                let tree = syntax_tree(&f);
                let m = tree.measures();
                let _ = writeln!(
                    s,
                    "{f}\t{}\tsize {} height {}",
                    tree.bracketed(),
                    m.size,
                    m.height
                );
            }
            emit(&s, None, out)
        }
        Command::Check { input } => {
            let d = load_proof(&input)?;
            let j = check(&d).map_err(|e| Failure::Rejected(e.to_string()))?;
            let open: Vec<String> = j.open_set().iter().map(|f| f.to_string()).collect();
            let normal = if is_normal(&d) {
                "normal"
            } else {
                "not normal"
            };
            emit(
                &format!("{} |- {}\n{normal}\n", open.join(", "), j.conclusion),
                None,
                out,
            )
        }
        Command::Normalize { input, out: to } => {
            let d = checked_proof(&input)?;
            emit(&(render_proof(&normalize(&d)) + "\n"), to.as_deref(), out)
        }
        Command::ExportEol {
            input,
            order,
            out: to,
        } => {
            let d = checked_proof(&input)?;
            let order = if order == "canonical" {
                FormulaOrder::canonical_for(&d)
            } else {
                FormulaOrder::parse(read(Path::new(&order))?.trim())
                    .map_err(|e| Failure::Input(e.to_string()))?
            };
            let t =
                EolTree::from_derivation(&d, &order).map_err(|e| Failure::Input(e.to_string()))?;
            emit(&export(&t), to.as_deref(), out)
        }
        Command::GenFib {
            n,
            expect_occ,
            close,
            out: to,
        } => {
            if n == 0 {
                return Err(Failure::Input("-n must be at least 1".into()));
            }
            if expect_occ {
                let d = fibonacci_derivation(n);
                let t = EolTree::from_derivation(&d, &FormulaOrder::canonical_for(&d))
                    .expect("complete order");
                let mut s = String::from("level label occ expected\n");
                let mut ok = true;
                for l in 0..n {
                    let found = occ(&t, l as u32, &fib_atom(n - l)) as u64;
                    let expected = fibonacci_expected(n, l)?;
                    ok &= found == expected;
                    let _ = writeln!(s, "{l} {} {found} {expected}", fib_atom(n - l));
                }
                emit(&s, to.as_deref(), out)?;
                return if ok {
                    Ok(())
                } else {
                    Err(Failure::Rejected(
                        "occurrence table differs from the Fibonacci numbers".into(),
                    ))
                };
            }
            let d = if close {
                fibonacci_proof(n)
            } else {
                fibonacci_derivation(n)
            };
            emit(&(render_proof(&d) + "\n"), to.as_deref(), out)
        }
        Command::GenNonham {
            graph,
            budget,
            out: to,
        } => {
            let g = Graph::parse(&read(&graph)?)
                .map_err(|e| Failure::Input(format!("{}: {e}", graph.display())))?;
            let d = nonham_certificate(&g, budget.unwrap_or(DEFAULT_BUDGET))?;
            let _ = writeln!(
                err,
                "certificate: {} nodes, height {}",
                d.size(),
                d.height()
            );
            emit(&(render_proof(&d) + "\n"), to.as_deref(), out)
        }
        Command::Analyze {
            input,
            threshold,
            out: to,
        } => {
            let t = load_tree(&input)?;
            let threshold = threshold.unwrap_or_else(|| default_threshold(&t));
            emit(&analyze(&t, threshold).render(), to.as_deref(), out)
        }
        Command::Compress { input, out: to } => {
            let t = load_tree(&input)?;
            let d = compress(&t);
            let _ = writeln!(err, "{} tree nodes, {} dag nodes", t.len(), d.len());
            emit(&d.render(), to.as_deref(), out)
        }
        Command::Verify { input } => {
            let d = DagProof::parse(&read(&input)?)
                .map_err(|e| Failure::Input(format!("{}: {e}", input.display())))?;
            verify(&d).map_err(|r| Failure::Rejected(r.to_string()))?;
            emit("accepted\n", None, out)
        }
        Command::Stats {
            family,
            from,
            to: last,
            budget,
            out: to,
        } => {
            if from > last {
                return Err(Failure::Input(format!("empty range {from}..{last}")));
            }
            let family = match family {
                StatsFamily::Fib => Family::Fibonacci,
                StatsFamily::Nonham => Family::NonHam,
            };
            let stats = family_stats(family, from..=last, budget.unwrap_or(DEFAULT_BUDGET))?;
            emit(&stats.to_csv(), to.as_deref(), out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("mimp").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn gen_fib_table() {
        let (code, out, _) = call(&["gen-fib", "-n", "10", "--expect-occ"]);
        assert_eq!(code, 0);
        assert!(out.contains("9 A1 55 55\n"));
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(call(&["frobnicate"]).0, 1);
        assert_eq!(call(&["gen-fib"]).0, 1);
        assert_eq!(call(&["check", "/nonexistent/file"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
    }
}
