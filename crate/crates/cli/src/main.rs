//! `superteich` command-line front end. Reports are `key: value` lines.
//! Exit codes: 0 success, 1 invalid input, 2 numerical tolerance failure.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "superteich", version, about = "Decorated super-Teichmüller coordinates at desk scale")]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
pub struct Flags {
    /// Numerical tolerance for verdicts.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed for sampled points.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Depth of lifts.
    #[arg(long, global = true, default_value_t = 2)]
    pub depth: usize,
    /// Grassmann rank used when parsing.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u8).range(1..=16))]
    pub rank: u8,
}

/// Input files, or a builtin spine with λ ≡ 1 and μ ≡ 0.
#[derive(Args)]
pub struct Inputs {
    /// Files holding `fatgraph v1`, `coords v1` and `domain v1` sections (`-` reads stdin).
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    pub files: Vec<PathBuf>,
    /// theta, planar-theta, dumbbell, k4, genus-two or spine:<g>,<s>.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Membership test for a supermatrix file (three rows, entries separated by `|`).
    CheckOsp { file: PathBuf },
    /// Flip an edge and write the new fatgraph and coordinates.
    Flip {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        edge: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Write the flipped bundle here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spin identifier and puncture types; every class when no orientation is given.
    Spin {
        #[command(flatten)]
        inputs: Inputs,
        /// Enumerate every spin structure even if an orientation is given.
        #[arg(long)]
        all: bool,
    },
    /// Generator matrices of the super Fuchsian representation with diagnostics.
    BuildRep {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Flip invariance of the two-form at an edge.
    CheckForm {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        edge: usize,
        /// Extra random coordinate points on the same spine.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Lifted ideal triangles around the base triangle.
    Lift {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Shear coordinates, and the flip laws at an edge.
    Shear {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        edge: Option<usize>,
    },
}

#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    Numerical(String),
}

impl From<superteich::Error> for Failure {
    fn from(e: superteich::Error) -> Self {
        use superteich::Error as E;
        match e {
            E::AmbiguousTrace { .. } | E::NotMember { .. } | E::NotOnLightCone { .. } => Failure::Numerical(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

/// Lines of a report and whether a tolerance check failed.
#[derive(Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub exceeded: Vec<String>,
}

impl Report {
    pub fn line(&mut self, key: impl AsRef<str>, value: impl std::fmt::Display) {
        self.lines.push(format!("{}: {value}", key.as_ref()));
    }

    /// Reports `value` under `key` and records it if it is not below `tol`.
    pub fn within(&mut self, key: &str, value: f64, tol: f64) {
        self.line(key, format!("{value:e}"));
        if value.is_nan() || value > tol {
            self.exceeded.push(key.to_string());
        }
    }
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let f = cli.flags;
    match cli.command {
        Command::CheckOsp { file } => commands::check_osp(&file, f),
        Command::Flip { inputs, edge, count, out } => commands::flip(&inputs, edge, count, out.as_deref(), f),
        Command::Spin { inputs, all } => commands::spin(&inputs, all, f),
        Command::BuildRep { inputs } => commands::build_rep(&inputs, f),
        Command::CheckForm { inputs, edge, samples } => commands::check_form(&inputs, edge, samples, f),
        Command::Lift { inputs } => commands::lift(&inputs, f),
        Command::Shear { inputs, edge } => commands::shear(&inputs, edge, f),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(rep) => {
            let mut out = std::io::stdout().lock();
            for l in &rep.lines {
                // a closed pipe ends the report early
                if writeln!(out, "{l}").is_err() {
                    break;
                }
            }
            if rep.exceeded.is_empty() {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: tolerance exceeded: {}", rep.exceeded.join(", "));
                ExitCode::from(2)
            }
        }
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
