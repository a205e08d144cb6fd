use std::io::{Read, Write};
use std::process::ExitCode;

use bincx::json::{self, Document};
use bincx::parse_field;
use bincx::suites::{run_suite, Selection};
use bincx_core::constructions::*;
use bincx_core::randgen::{GenConfig, Generator};
use bincx_core::{binary_torsion, chain_torsion, FieldDesc};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "bincx", version, about = "Binary acyclic complexes, shortening and torsion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Complex,
    Binary,
    Generator,
    Ladder,
    IdentityLadder,
    Ses,
    SplitSes,
    Nenashev,
}

#[derive(Clone, Copy, ValueEnum)]
enum Part {
    Ge1,
    Le2,
    Tau,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance as JSON.
    Gen {
        #[arg(long, value_enum, default_value = "binary")]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "fp:101", value_parser = parse_field)]
        field: FieldDesc,
        #[arg(long, default_value_t = 2)]
        max_rank: usize,
        /// Top degree of the support window.
        #[arg(long, default_value_t = 2)]
        length: usize,
        #[arg(long, default_value_t = 3)]
        entry_bound: u64,
        /// Matrix size for `--kind generator`.
        #[arg(long, default_value_t = 2)]
        size: usize,
    },
    /// Print the torsion of a complex or binary complex.
    Torsion { input: String },
    /// Shorten a binary complex, ladder or short exact sequence.
    Shorten { input: String },
    /// Print a truncation or τ_P of a binary complex.
    Truncate {
        input: String,
        #[arg(long, value_enum)]
        part: Part,
    },
    /// Total complex of a ladder or of a 3x3 diagram.
    Total { input: String },
    /// Run a named verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, env = "BINCX_TRIALS", default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "fp:101")]
        field: String,
    },
}

enum Failure {
    Input(String),
    Identity,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_input(path: &str) -> Result<Document, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?
    };
    Ok(json::parse_document(&text)?)
}

/// Writes a line to stdout; a closed pipe is not an error.
fn out(line: &str) {
    let _ = writeln!(std::io::stdout(), "{line}");
}

fn print(v: &Value) {
    out(&serde_json::to_string_pretty(v).expect("serialisable"));
}

fn wrong_kind(cmd: &str, d: &Document) -> Failure {
    Failure::Input(format!("{cmd} does not accept a {} document", d.kind()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen {
            kind,
            seed,
            field,
            max_rank,
            length,
            entry_bound,
            size,
        } => {
            let cfg = GenConfig::new(seed, field)
                .with_max_rank(max_rank)
                .with_length(length)
                .with_entry_bound(entry_bound);
            let mut g = Generator::new(cfg);
            let doc = match kind {
                Kind::Complex => Document::Complex(g.gen_acyclic()),
                Kind::Binary => Document::Binary(g.gen_binary()),
                Kind::Generator => Document::Binary(g.gen_generator(size)),
                Kind::Ladder => Document::Ladder(g.gen_ladder()),
                Kind::IdentityLadder => Document::Ladder(g.gen_identity_ladder()),
                Kind::Ses => Document::Ses(g.gen_ses(false)),
                Kind::SplitSes => Document::Ses(g.gen_ses(true)),
                Kind::Nenashev => Document::Nenashev(g.gen_nenashev()),
            };
            print(&json::document_to_value(&doc));
        }
        Command::Torsion { input } => match read_input(&input)? {
            Document::Complex(c) => out(&chain_torsion(&c)?.to_string()),
            Document::Binary(b) => out(&binary_torsion(&b).to_string()),
            d => return Err(wrong_kind("torsion", &d)),
        },
        Command::Shorten { input } => {
            let out = match read_input(&input)? {
                Document::Binary(b) => Document::Binary(grayson_shorten(&b)?),
                Document::Ladder(l) => Document::Ladder(shorten_ladder(&l)?),
                Document::Ses(s) => Document::Ses(ses_shorten(&s)?),
                d => return Err(wrong_kind("shorten", &d)),
            };
            print(&json::document_to_value(&out));
        }
        Command::Truncate { input, part } => {
            let b = match read_input(&input)? {
                Document::Binary(b) => b,
                d => return Err(wrong_kind("truncate", &d)),
            };
            let out = match part {
                Part::Ge1 => truncate_ge1(&b)?,
                Part::Le2 => truncate_le2(&b)?,
                Part::Tau => tau_of(&b)?,
            };
            print(&json::binary_to_value(&out));
        }
        Command::Total { input } => {
            let out = match read_input(&input)? {
                Document::Ladder(l) => ladder_total(&l)?,
                Document::Nenashev(d) => nenashev_total(&d)?,
                d => return Err(wrong_kind("total", &d)),
            };
            print(&json::binary_to_value(&out));
        }
        Command::Verify {
            suite,
            trials,
            seed,
            field,
        } => {
            let selection: Selection = suite.parse()?;
            let field = parse_field(&field)?;
            let report = run_suite(selection, field, trials, seed);
            print(&serde_json::to_value(&report).expect("serialisable"));
            eprintln!(
                "{} over {}: {} trials, {} checks, {} failures ({:.2}s)",
                report.suite,
                report.field,
                report.trials,
                report.checks,
                report.failures.len(),
                report.elapsed_secs
            );
            for f in &report.failures {
                eprintln!("  seed {}: {}: {} != {}", f.seed, f.identity, f.lhs, f.rhs);
            }
            if !report.passed() {
                return Err(Failure::Identity);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Identity) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
