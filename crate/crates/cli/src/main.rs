//! `accmod`: checks accessibility and uniformity claims for modules over bound quiver algebras.

mod commands;
mod inputs;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use accmod_core::config::{DEFAULT_CAP, DEFAULT_SEED};
use accmod_core::exactlin::FieldSpec;
use accmod_core::Config;
use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CheckKind, ModuleArgs};
use report::Builder;

#[derive(Parser, Debug)]
#[command(name = "accmod", version, about)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Global {
    /// Base field: a prime `p` or `rational`. Fixtures default to GF(2).
    #[arg(long, global = true)]
    field: Option<String>,
    /// Seed for every randomized search (decimal or 0x-prefixed hex).
    #[arg(long, global = true, value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Maximum number of submodules an enumeration may produce.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Questions about an algebra.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Run one predicate on a module.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        #[command(flatten)]
        src: AlgebraSource,
        /// Module file.
        #[arg(long)]
        module: Option<PathBuf>,
        /// A family module such as `W(3)`, `R(2)`, `M(1)` or `V`.
        #[arg(long)]
        family: Option<String>,
        /// Submodule file (generators, flat coordinates of the module).
        #[arg(long)]
        sub: Option<PathBuf>,
        /// A family submodule of the same ambient module, or `X` / `Y`.
        #[arg(long)]
        sub_family: Option<String>,
    },
    /// Instance verification of the constructions.
    Paper {
        #[command(subcommand)]
        cmd: PaperCmd,
    },
}

#[derive(Args, Debug)]
struct AlgebraSource {
    /// Built-in algebra: kronecker, local-b or three-subspace.
    #[arg(long)]
    fixture: Option<String>,
    /// Algebra file.
    #[arg(long)]
    algebra: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum AlgebraCmd {
    /// Find a non-distributivity witness, or validate a given one.
    Witness {
        #[command(flatten)]
        src: AlgebraSource,
        /// Witness file to validate instead of searching.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum PaperCmd {
    /// Run the whole suite for families up to `--n`.
    Verify {
        #[arg(long, default_value = "kronecker")]
        fixture: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let t = s.trim();
    match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => t.replace('_', "").parse(),
    }
    .map_err(|e| format!("bad seed `{s}`: {e}"))
}

fn run(
    cli: &Cli,
    field: Option<FieldSpec>,
    cfg: &Config,
    out: &mut Builder,
) -> accmod_core::Result<FieldSpec> {
    match &cli.cmd {
        Cmd::Algebra {
            cmd: AlgebraCmd::Witness { src, witness },
        } => commands::witness(
            src.fixture.as_deref(),
            src.algebra.as_deref(),
            witness.as_deref(),
            field,
            cfg,
            out,
        ),
        Cmd::Check {
            kind,
            src,
            module,
            family,
            sub,
            sub_family,
        } => {
            let args = ModuleArgs {
                fixture: src.fixture.as_deref(),
                algebra: src.algebra.as_deref(),
                module: module.as_deref(),
                family: family.as_deref(),
                sub: sub.as_deref(),
                sub_family: sub_family.as_deref(),
            };
            commands::check(*kind, &args, field, cfg, out)
        }
        Cmd::Paper {
            cmd: PaperCmd::Verify { fixture, n },
        } => commands::paper_verify(fixture, *n, field, cfg, out),
    }
}

fn emit(g: &Global, text: &str) -> Result<(), String> {
    match &g.out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let started = Instant::now();
    let outcome = g
        .field
        .as_deref()
        .map(FieldSpec::parse)
        .transpose()
        .and_then(|field| {
            let cfg = Config {
                seed: g.seed,
                cap: g.cap,
                parallel: !g.sequential && Config::default().parallel,
                ..Config::default()
            };
            let mut out = Builder::default();
            let f = run(&cli, field, &cfg, &mut out)?;
            let command = std::env::args()
                .skip(1)
                .filter(|a| !a.is_empty())
                .collect::<Vec<_>>()
                .join(" ");
            Ok(out.finish(command, f.to_label(), g.seed, g.cap))
        });
    let report = match outcome {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match g.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(started.elapsed()),
    };
    if let Err(e) = emit(g, &text) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code() as u8)
}
