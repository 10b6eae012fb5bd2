//! The `robcert` command line.
//!
//! Exit status: 0 when the input is Robinsonian (or has no obstruction),
//! 1 when a certificate of non-membership is printed or a checked
//! certificate fails, 2 on unreadable or malformed input (and on the
//! internal errors that should never occur).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::certificates::Certificate;
use crate::certify::certify;
use crate::formats::{
    parse_certificate, parse_graph, parse_matrix, write_certificate, write_graph, write_matrix,
    VerifiedCertificate,
};
use crate::matrix::SymMatrix;
use crate::submatrix::{enumerate_families, greedy_robinsonian_core};
use crate::uig::{is_unit_interval, UigVerdict};
use crate::wat_enum::{count_wats, find_one_wat, wat_triples};
use crate::{gen, Error, Label, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OBSTRUCTION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Environment variable capping the worker threads.
pub const THREADS_VAR: &str = "ROBCERT_THREADS";

#[derive(Parser, Debug)]
#[command(name = "robcert", version, about = "Certifying recognition of Robinsonian matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a Robinson ordering or a weighted asteroidal triple.
    Certify {
        file: PathBuf,
        /// Emit a JSON document instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Find, list or count weighted asteroidal triples.
    Wats {
        file: PathBuf,
        #[command(flatten)]
        mode: WatsMode,
    },
    /// Decide whether a graph is a unit interval graph.
    Uig { file: PathBuf },
    /// Write a generated matrix or graph to stdout.
    Gen {
        /// robinson, perturbed, random, or graph:<path|cycle|complete|claw|net|random>
        kind: String,
        #[arg(short, long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Entry swaps applied by `perturbed`.
        #[arg(long)]
        swaps: Option<usize>,
        /// Largest entry drawn by `random`.
        #[arg(long, default_value_t = 3)]
        max: i64,
        /// Edge probability for `graph:random`.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
    },
    /// Check a certificate (text or JSON) against a matrix.
    Verify { matrix: PathBuf, certificate: PathBuf },
    /// Explore Robinsonian submatrices.
    Submatrix {
        file: PathBuf,
        #[command(flatten)]
        mode: SubmatrixMode,
    },
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct WatsMode {
    /// Print one triple with its paths (the default).
    #[arg(long)]
    first: bool,
    /// Print every triple, one per line.
    #[arg(long)]
    all: bool,
    /// Print the number of triples.
    #[arg(long)]
    count: bool,
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct SubmatrixMode {
    /// Delete elements greedily until the rest is Robinsonian (heuristic).
    #[arg(long)]
    greedy: bool,
    /// List all maximal Robinsonian subsets, their complements and the
    /// minimal non-Robinsonian subsets (small matrices only).
    #[arg(long)]
    enumerate: bool,
}

/// Runs the command line with explicit streams and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    configure_threads();
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "robcert: {e}");
            EXIT_INPUT
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_VAR).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        // A pool that already exists (from an earlier call) is kept.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Value(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &PathBuf) -> Result<SymMatrix> {
    parse_matrix(&read(path)?)
}

fn labels(ls: &[Label]) -> String {
    ls.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Certify { file, json } => {
            let a = load_matrix(&file)?;
            let cert = certify(&a)?;
            let verified = cert.verify(&a)?;
            if !verified {
                return Err(Error::Invariant("emitted certificate does not verify".into()));
            }
            if json {
                let doc = VerifiedCertificate { verified, certificate: cert.clone() };
                let text = serde_json::to_string_pretty(&doc).map_err(|e| Error::Value(e.to_string()))?;
                writeln!(out, "{text}")?;
            } else {
                write!(out, "{}", write_certificate(&cert))?;
            }
            Ok(if cert.is_robinsonian() { EXIT_OK } else { EXIT_OBSTRUCTION })
        }
        Command::Wats { file, mode } => {
            let a = load_matrix(&file)?;
            if mode.count {
                let c = count_wats(&a);
                writeln!(out, "{c}")?;
                return Ok(if c == 0 { EXIT_OK } else { EXIT_OBSTRUCTION });
            }
            if mode.all {
                let all = wat_triples(&a);
                if all.is_empty() {
                    writeln!(out, "A has no weighted asteroidal triple")?;
                    return Ok(EXIT_OK);
                }
                for t in all {
                    writeln!(out, "{}", labels(&t))?;
                }
                return Ok(EXIT_OBSTRUCTION);
            }
            match find_one_wat(&a) {
                None => {
                    writeln!(out, "A has no weighted asteroidal triple")?;
                    Ok(EXIT_OK)
                }
                Some(w) => {
                    let text = write_certificate(&Certificate::from(w));
                    write!(out, "{}", text.trim_start_matches("not robinsonian\n"))?;
                    Ok(EXIT_OBSTRUCTION)
                }
            }
        }
        Command::Uig { file } => {
            let g = parse_graph(&read(&file)?)?;
            match is_unit_interval(&g)? {
                UigVerdict::Ordering(o) => {
                    writeln!(out, "unit interval graph")?;
                    writeln!(out, "ordering: {}", labels(o.as_slice()))?;
                    Ok(EXIT_OK)
                }
                UigVerdict::Obstruction(o) => {
                    writeln!(out, "{o}")?;
                    Ok(EXIT_OBSTRUCTION)
                }
            }
        }
        Command::Gen { kind, n, seed, swaps, max, p } => {
            let text = match kind.as_str() {
                "robinson" => write_matrix(&gen::robinson(n, seed)?)?,
                "perturbed" => write_matrix(&gen::perturbed(n, swaps.unwrap_or(n.div_ceil(2)), seed)?)?,
                "random" => write_matrix(&gen::random(n, max, seed)?)?,
                "graph:random" => write_graph(&gen::random_graph(n, p, seed)),
                other => match other.strip_prefix("graph:") {
                    Some(name) => write_graph(&gen::named_graph(name, n)?),
                    None => return Err(Error::Value(format!("unknown kind {other:?}"))),
                },
            };
            write!(out, "{text}")?;
            Ok(EXIT_OK)
        }
        Command::Verify { matrix, certificate } => {
            let a = load_matrix(&matrix)?;
            let cert = parse_certificate(&read(&certificate)?)?;
            if cert.verify(&a)? {
                writeln!(out, "valid")?;
                Ok(EXIT_OK)
            } else {
                writeln!(out, "invalid")?;
                Ok(EXIT_OBSTRUCTION)
            }
        }
        Command::Submatrix { file, mode } => {
            let a = load_matrix(&file)?;
            if mode.enumerate {
                let f = enumerate_families(&a)?;
                let show = |out: &mut dyn Write, title: &str, sets: &[Vec<Label>]| -> Result<()> {
                    writeln!(out, "{title}: {}", sets.len())?;
                    for s in sets {
                        writeln!(out, "  {{{}}}", labels(s))?;
                    }
                    Ok(())
                };
                show(out, "maximal robinsonian subsets", &f.maximal_robinsonian)?;
                show(out, "minimal deletion sets", &f.minimal_deletions)?;
                show(out, "minimal weighted asteroidal cycles", &f.minimal_cycles)?;
            } else {
                let g = greedy_robinsonian_core(&a)?;
                writeln!(out, "greedy heuristic (Robinsonian, not necessarily maximum)")?;
                writeln!(out, "kept: {}", labels(&g.kept))?;
                writeln!(out, "removed: {}", labels(&g.removed))?;
                writeln!(out, "ordering: {}", labels(g.ordering.as_slice()))?;
            }
            Ok(EXIT_OK)
        }
    }
}
