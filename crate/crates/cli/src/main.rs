//! `glocal`: generate, transform, analyse and compare graph states.

mod commands;
mod input;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use glocal::qoracle::ORACLE_HARD_LIMIT;
use glocal::{Caps, Level};

use crate::output::Format;

#[derive(Parser, Debug)]
#[command(name = "glocal", version, about = "Local complementation tools for graph states")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Order limit for MLS enumeration, LC-orbit search and the statevector oracle.
    #[arg(long, global = true, env = "GLOCAL_CAPS_N", value_parser = clap::value_parser!(u32).range(1..))]
    caps_n: Option<u32>,
    /// Largest LC orbit explored before giving up.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    orbit_cap: Option<u64>,
    /// Bit budget of the r-LC witness search.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=128))]
    witness_bits: Option<u32>,
    /// Tolerance for statevector comparisons.
    #[arg(long, global = true, value_parser = parse_tol)]
    tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit a graph.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Apply a JSON list of moves to a graph.
    Apply {
        graph: String,
        moves: String,
        /// Re-check the incidence of every r-LC before and after it is applied.
        #[arg(long)]
        verify: bool,
    },
    /// MLS list, vertex types, standard-form flag and cut ranks.
    Analyze {
        graph: String,
        /// Comma-separated vertex list; repeatable.
        #[arg(long)]
        cut: Vec<String>,
    },
    /// Decide equivalence and print a certificate.
    Equiv {
        g1: String,
        g2: String,
        /// `1`, any `r >= 1`, or `lu`.
        #[arg(long, default_value = "lu", value_parser = parse_level)]
        level: Level,
    },
    /// Parameters of the family pair separating level r from level r - 1.
    Hierarchy {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=40))]
        r: u32,
        /// Include the congruences and the refutation one level down.
        #[arg(long)]
        validate: bool,
        /// Largest t scanned when the formula pair fails.
        #[arg(long, default_value_t = 31)]
        t_max: usize,
    },
    /// Statevector checks.
    Oracle {
        #[command(subcommand)]
        check: OracleCheck,
    },
}

#[derive(Subcommand, Debug)]
enum GenKind {
    Family {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        /// `C` or `C'`.
        #[arg(long, default_value = "C", value_parser = parse_variant)]
        variant: glocal::Variant,
    },
    Repeater {
        #[arg(long, value_enum)]
        kind: RepeaterArg,
        #[arg(long)]
        n: usize,
    },
    /// Erdős–Rényi graph from `--seed`.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5, value_parser = parse_probability)]
        p: f64,
    },
    /// One of the built-in example graphs.
    Fixture { name: String },
}

#[derive(Subcommand, Debug)]
enum OracleCheck {
    /// Every graph up to `--n-max` (or the given graph), every non-empty D.
    Stabilizers {
        #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
        n_max: Option<usize>,
        #[arg(long)]
        graph: Option<String>,
    },
    /// LC unitaries on every vertex.
    Lc {
        #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
        exhaustive: Option<usize>,
        #[arg(long)]
        graph: Option<String>,
    },
    /// Pivot unitaries on every edge.
    Pivot {
        #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
        exhaustive: Option<usize>,
        #[arg(long)]
        graph: Option<String>,
    },
    /// r-LC unitary against the combinatorial r-LC.
    Rlc {
        /// `fig2` or `fig3`.
        #[arg(long, conflicts_with_all = ["graph", "mult", "r"], required_unless_present = "graph")]
        fixture: Option<String>,
        #[arg(long, requires_all = ["mult", "r"])]
        graph: Option<String>,
        /// `vertex:count` pairs, comma separated.
        #[arg(long)]
        mult: Option<String>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: Option<u32>,
    },
    /// Single-qubit projections against vertex deletion.
    Project {
        #[arg(long)]
        graph: String,
        /// Defaults to every vertex (every isolated vertex for `xplus`).
        #[arg(long)]
        vertex: Option<usize>,
        #[arg(long, value_enum)]
        basis: BasisArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RepeaterArg {
    Complete,
    Biclique,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    Z0,
    Z1,
    Xplus,
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err("tolerance must be positive and finite".into())
    }
}

fn parse_probability(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err("probability must lie in [0, 1]".into())
    }
}

fn parse_level(s: &str) -> Result<Level, String> {
    match s.parse::<Level>() {
        Ok(Level::R(0)) => Err("level must be at least 1".into()),
        Ok(l) => Ok(l),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_variant(s: &str) -> Result<glocal::Variant, String> {
    match s {
        "C" | "c" => Ok(glocal::Variant::C),
        "C'" | "c'" | "Cp" | "cp" | "C-prime" => Ok(glocal::Variant::CPrime),
        _ => Err(format!("unknown variant {s:?}; expected C or C'")),
    }
}

/// Caps, tolerance and output settings shared by every command.
pub struct RunConfig {
    pub caps: Caps,
    pub tol: Option<f64>,
    pub seed: u64,
    pub format: Option<Format>,
}

impl RunConfig {
    fn from_global(g: &Global) -> Self {
        let mut caps = Caps::default();
        if let Some(n) = g.caps_n {
            let n = n as usize;
            caps.mls_max_n = n;
            caps.orbit_max_n = n;
            caps.oracle_max_n = n.min(ORACLE_HARD_LIMIT);
        }
        if let Some(c) = g.orbit_cap {
            caps.orbit_max_size = usize::try_from(c).unwrap_or(usize::MAX);
        }
        if let Some(b) = g.witness_bits {
            caps.witness_bits = b;
        }
        RunConfig {
            caps,
            tol: g.tol,
            seed: g.seed,
            format: g.format,
        }
    }
}

/// What a command prints and the exit status it ends with.
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

/// Failures carry their exit status.
#[derive(Debug)]
pub enum Failure {
    Negative(String),
    Capped(String),
    Usage(String),
    Data(String),
    NoInput(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Negative(_) => 1,
            Failure::Capped(_) => 2,
            Failure::Usage(_) => 64,
            Failure::Data(_) => 65,
            Failure::NoInput(_) => 66,
            Failure::Internal(_) => 70,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Negative(m)
            | Failure::Capped(m)
            | Failure::Usage(m)
            | Failure::Data(m)
            | Failure::NoInput(m)
            | Failure::Internal(m) => m,
        }
    }
}

impl From<glocal::Error> for Failure {
    fn from(e: glocal::Error) -> Self {
        use glocal::Error as E;
        match e {
            E::CapExceeded { .. } => Failure::Capped(e.to_string()),
            E::InvalidMove { .. } => Failure::Negative(e.to_string()),
            E::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Data(e.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let cfg = RunConfig::from_global(&cli.global);
    let mut stdin = input::Stdin::default();
    match cli.command {
        Command::Gen { kind } => commands::gen(&cfg, kind),
        Command::Apply { graph, moves, verify } => commands::apply(&cfg, &mut stdin, &graph, &moves, verify),
        Command::Analyze { graph, cut } => commands::analyze(&cfg, &mut stdin, &graph, &cut),
        Command::Equiv { g1, g2, level } => commands::equiv(&cfg, &mut stdin, &g1, &g2, level),
        Command::Hierarchy { r, validate, t_max } => commands::hierarchy(&cfg, r, validate, t_max),
        Command::Oracle { check } => commands::oracle(&cfg, &mut stdin, check),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    let output = cli.global.output.clone();
    match run(cli) {
        Ok(out) => {
            let written = match &output {
                Some(path) => std::fs::write(path, &out.stdout).map_err(|e| format!("{}: {e}", path.display())),
                None => std::io::stdout()
                    .write_all(out.stdout.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => ExitCode::from(out.code),
                Err(e) => {
                    eprintln!("glocal: {e}");
                    ExitCode::from(74)
                }
            }
        }
        Err(f) => {
            eprintln!("glocal: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
