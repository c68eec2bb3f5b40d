//! `orbitgroup` command-line tool.
//!
//! Exit codes: 0 on success, 1 on validation or domain errors, 2 on parse
//! errors. Diagnostics go to standard error, one JSON object per line.

mod selftest;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use orbitgroup::element::{self, ElementError};
use orbitgroup::engine::{self, EngineError};
use orbitgroup::model::{self, Severity, SurfaceModel, Target};
use orbitgroup::term::{self, Term, TermError};
use orbitgroup::{gen, kr, parse_term};

#[derive(Parser)]
#[command(
    name = "orbitgroup",
    version,
    about = "Orbit fundamental groups of Morse maps on surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    R,
    S1,
}

#[derive(Subcommand)]
enum Command {
    /// Compute pi_1 of the orbit and the graph group of a model file.
    Compute { model: PathBuf },
    /// Build a Morse model realizing a class-P term.
    Realize {
        #[arg(long)]
        term: String,
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        boundary: u32,
        #[arg(long, value_enum, default_value = "r")]
        target: TargetArg,
        /// Output file; standard output if omitted.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Print the canonical form of a term.
    Normalize { term: String },
    /// Compare the canonical forms of two terms.
    Eq { left: String, right: String },
    /// Order of a term, or "infinite".
    Order { term: String },
    /// Upper bound on the derived length.
    Solvable { term: String },
    /// Image of a class-P term under the levelwise quotient map.
    Q { term: String },
    /// Kronrod-Reeb graphs of the pieces of a model.
    Kr {
        model: PathBuf,
        /// Write the graphs in DOT format to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check a model file and list diagnostics.
    Validate { model: PathBuf },
    /// Realize random class-P terms and recompute them.
    Roundtrip {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        max_m: u64,
        #[arg(long, default_value_t = 12)]
        max_atoms: usize,
    },
    /// Run the built-in consistency checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Full report for a model file, as JSON.
    Report { model: PathBuf },
    /// Multiply two elements of a term.
    Mul { term: String, x: String, y: String },
    /// Invert an element of a term.
    Inv { term: String, x: String },
}

enum CliError {
    Parse {
        message: String,
        offset: Option<usize>,
    },
    Domain(String),
    Invalid(Vec<model::Diagnostic>),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::Domain(_) | CliError::Invalid(_) => 1,
        }
    }

    fn emit(&self) {
        match self {
            CliError::Parse { message, offset } => eprintln!(
                "{}",
                json!({"level": "error", "kind": "parse", "message": message, "offset": offset})
            ),
            CliError::Domain(message) => eprintln!(
                "{}",
                json!({"level": "error", "kind": "domain", "message": message})
            ),
            CliError::Invalid(diags) => emit_diagnostics(diags),
        }
    }
}

impl From<TermError> for CliError {
    fn from(e: TermError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Invalid(d) => CliError::Invalid(d),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<ElementError> for CliError {
    fn from(e: ElementError) -> Self {
        match e {
            ElementError::Syntax { offset, message } => CliError::Parse {
                message,
                offset: Some(offset),
            },
            other => CliError::Domain(other.to_string()),
        }
    }
}

fn emit_diagnostics(diags: &[model::Diagnostic]) {
    for d in diags {
        let level = match d.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        eprintln!(
            "{}",
            json!({"level": level, "kind": "validation", "path": d.path, "message": d.message})
        );
    }
}

fn term_arg(s: &str) -> Result<Term, CliError> {
    let t = parse_term(s).map_err(|e| CliError::Parse {
        message: e.message,
        offset: Some(e.offset),
    })?;
    t.validate()?;
    Ok(t)
}

// Byte offset of a 1-based line/column position.
fn byte_offset(src: &str, line: usize, column: usize) -> usize {
    let start: usize = src
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    (start + column.saturating_sub(1)).min(src.len())
}

fn load_model(path: &Path) -> Result<SurfaceModel, CliError> {
    let src = fs::read_to_string(path)
        .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", path.display())))?;
    SurfaceModel::from_json(&src).map_err(|e| CliError::Parse {
        message: format!("{}: {e}", path.display()),
        offset: Some(byte_offset(&src, e.line(), e.column())),
    })
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compute { model } => {
            let m = load_model(&model)?;
            let pi1 = engine::compute_model(&m)?;
            let g = engine::graph_group(&m)?;
            println!(
                "{}",
                json!({"pi1": pi1.to_string(), "graph_group": g.to_string()})
            );
        }
        Command::Realize {
            term,
            genus,
            boundary,
            target,
            output,
        } => {
            let t = term_arg(&term)?;
            let target = match target {
                TargetArg::R => Target::Real,
                TargetArg::S1 => Target::Circle,
            };
            let m = engine::realize_surface(&t, genus, boundary, target)?;
            write_out(output.as_deref(), &format!("{}\n", m.to_json()))?;
        }
        Command::Normalize { term } => println!("{}", term::normalize(&term_arg(&term)?)?),
        Command::Eq { left, right } => {
            println!("{}", term::struct_eq(&term_arg(&left)?, &term_arg(&right)?))
        }
        Command::Order { term } => println!("{}", term::order_r(&term_arg(&term)?)),
        Command::Solvable { term } => {
            println!("{}", term::solvable_length_bound(&term_arg(&term)?))
        }
        Command::Q { term } => println!("{}", term::graph_image(&term_arg(&term)?)?),
        Command::Kr { model, dot } => {
            let m = load_model(&model)?;
            let diags = model::validate(&m);
            if model::has_errors(&diags) {
                return Err(CliError::Invalid(diags));
            }
            let mut dot_text = String::new();
            for (i, p) in m.pieces.iter().enumerate() {
                let g = kr::build_kr(p);
                let aut = kr::aut_count_rooted(&g)
                    .map(|n| json!(n.to_string()))
                    .unwrap_or(serde_json::Value::Null);
                println!(
                    "{}",
                    json!({"piece": i, "vertices": g.vertex_count(), "edges": g.edge_count(), "aut_count": aut})
                );
                dot_text.push_str(&g.to_dot_named(&format!("kr_{i}")));
            }
            if let Some(path) = dot {
                write_out(Some(&path), &dot_text)?;
            }
        }
        Command::Validate { model } => {
            let m = load_model(&model)?;
            let diags = model::validate(&m);
            if model::has_errors(&diags) {
                println!("invalid");
                return Err(CliError::Invalid(diags));
            }
            emit_diagnostics(&diags);
            println!("valid");
        }
        Command::Roundtrip {
            count,
            depth,
            seed,
            max_m,
            max_atoms,
        } => {
            let mut rng = gen::rng(seed);
            let mut failures = Vec::new();
            for _ in 0..count {
                let t = gen::canonical_p_term(&mut rng, depth, max_m, max_atoms);
                if let Err(why) = selftest::round_trip_one(&t) {
                    failures.push(json!({"term": t.to_string(), "reason": why}));
                }
            }
            println!(
                "{}",
                json!({"count": count, "passed": count - failures.len(), "failures": failures})
            );
            if !failures.is_empty() {
                return Err(CliError::Domain(format!(
                    "{} of {count} round trips failed",
                    failures.len()
                )));
            }
        }
        Command::Selftest { seed } => {
            let results = selftest::run_all(seed);
            let mut failed = 0;
            for r in &results {
                match &r.outcome {
                    Ok(()) => println!("PASS {}", r.name),
                    Err(why) => {
                        failed += 1;
                        println!("FAIL {}: {why}", r.name);
                    }
                }
            }
            if failed > 0 {
                return Err(CliError::Domain(format!(
                    "{failed} self-test checks failed"
                )));
            }
        }
        Command::Report { model } => {
            let m = load_model(&model)?;
            let r = engine::report(&m)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&r).expect("report serializes")
            );
        }
        Command::Mul { term, x, y } => {
            let t = term_arg(&term)?;
            let x = element::parse_element(&t, &x)?;
            let y = element::parse_element(&t, &y)?;
            println!("{}", element::multiply(&t, &x, &y)?);
        }
        Command::Inv { term, x } => {
            let t = term_arg(&term)?;
            let x = element::parse_element(&t, &x)?;
            println!("{}", element::inverse(&t, &x)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            e.emit();
            ExitCode::from(e.exit_code())
        }
    }
}
