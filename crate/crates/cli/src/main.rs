//! `glrack`: command-line front end for glrack-core.
//!
//! Exit status is 0 on success, 1 when a rack fails validation or a suite
//! fails, and 2 on usage, input or computation errors.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use glrack_core::census::Census;
use glrack_core::coloring::{self, Method};
use glrack_core::diagram::StabilizationKind;
use glrack_core::glrack::text;
use glrack_core::verify::{self, NamedCode, NamedRack};
use glrack_core::{FrontCode, GlRack};

use render::Output;

#[derive(Parser)]
#[command(name = "glrack", version, about = "Exact computation with finite GL-racks")]
struct Cli {
    /// Output mode
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Brute,
    Backtrack,
    Blocks,
    Lifts,
    Perm,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Brute => Method::Brute,
            MethodArg::Backtrack => Method::Backtrack,
            MethodArg::Blocks => Method::Blocks,
            MethodArg::Lifts => Method::Lifts,
            MethodArg::Perm => Method::Perm,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a GL-rack file against every axiom
    Validate { rack: PathBuf },
    /// Split a GL-rack along the cycles of x ↦ x∗x
    Decompose { rack: PathBuf },
    /// Classical invariants of a front code
    Invariants { knot: PathBuf },
    /// Count colorings of a front code by a GL-rack
    Color {
        rack: PathBuf,
        knot: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Add stabilizations to a front code
    Stabilize {
        knot: PathBuf,
        /// positive stabilizations (two extra down cusps each)
        #[arg(long, default_value_t = 0)]
        plus: u32,
        /// negative stabilizations (two extra up cusps each)
        #[arg(long, default_value_t = 0)]
        minus: u32,
        /// 1-based arc carrying the stabilizations
        #[arg(long, default_value_t = 1)]
        at: usize,
        /// write the code here instead of standard output
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Enumerate every GL-rack of one order
    Census {
        #[arg(long)]
        order: usize,
        /// list one representative per isomorphism class
        #[arg(long)]
        up_to_iso: bool,
    },
    /// Run verification suites
    Check {
        /// suite name, or "all"
        #[arg(long, default_value = "all")]
        suite: String,
        /// directory of .front files replacing the built-in knot corpus
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// file of GL-rack records replacing the census grid
        #[arg(long)]
        racks: Option<PathBuf>,
        /// write failing inputs here for replay
        #[arg(long)]
        dump: Option<PathBuf>,
        /// also report opposite-invariant pairs with different counts on
        /// non-permutation racks, without asserting anything
        #[arg(long)]
        explore: bool,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_rack(path: &Path) -> Result<GlRack> {
    let raw = text::parse_raw(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    raw.into_rack().map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn load_code(path: &Path) -> Result<FrontCode> {
    FrontCode::parse(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn load_corpus(dir: &Path) -> Result<Vec<NamedCode>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("cannot read directory {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    paths.retain(|p| p.extension().is_some_and(|e| e == "front"));
    paths.sort();
    if paths.is_empty() {
        bail!("{}: no .front files", dir.display());
    }
    paths
        .iter()
        .map(|p| {
            Ok(NamedCode {
                name: p.file_name().unwrap().to_string_lossy().into_owned(),
                code: load_code(p)?,
            })
        })
        .collect()
}

fn load_racks(path: &Path) -> Result<Vec<NamedRack>> {
    let records = text::parse_many(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    records
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let rack = r
                .into_rack()
                .map_err(|e| anyhow!("{}: record {}: {e}", path.display(), i + 1))?;
            Ok(NamedRack {
                name: format!("record {}", i + 1),
                rack,
            })
        })
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode> {
    let out = Output::new(cli.format == Format::Json);
    match cli.command {
        Command::Validate { rack } => {
            let raw = text::parse_raw(&read(&rack)?).map_err(|e| anyhow!("{}: {e}", rack.display()))?;
            let report = raw.validate();
            out.validation(&report);
            return Ok(if report.is_valid() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
        Command::Decompose { rack } => out.decomposition(&load_rack(&rack)?),
        Command::Invariants { knot } => out.invariants(&load_code(&knot)?),
        Command::Color { rack, knot, method } => {
            let rack = load_rack(&rack)?;
            let code = load_code(&knot)?;
            let report = coloring::color(&code, &rack, method.into(), coloring::budget_from_env())?;
            out.coloring(&report);
        }
        Command::Stabilize {
            knot,
            plus,
            minus,
            at,
            output,
        } => {
            let code = load_code(&knot)?;
            if at == 0 {
                bail!("arcs are numbered from 1");
            }
            let code = code
                .stabilize(StabilizationKind::Plus, at - 1, plus)
                .and_then(|k| k.stabilize(StabilizationKind::Minus, at - 1, minus))?;
            match output {
                Some(path) => fs::write(&path, code.serialize())
                    .with_context(|| format!("cannot write {}", path.display()))?,
                None => out.code(&code),
            }
        }
        Command::Census { order, up_to_iso } => {
            let census = Census::build(order)?;
            out.census(&census, up_to_iso);
        }
        Command::Check {
            suite,
            corpus,
            racks,
            dump,
            explore,
        } => {
            let names: Vec<&str> = if suite == "all" {
                verify::SUITES.to_vec()
            } else if verify::SUITES.contains(&suite.as_str()) {
                vec![suite.as_str()]
            } else {
                bail!(
                    "unknown suite '{suite}'; expected one of: all, {}",
                    verify::SUITES.join(", ")
                );
            };
            let codes = match corpus {
                Some(dir) => load_corpus(&dir)?,
                None => verify::corpus(),
            };
            let racks = match racks {
                Some(path) => load_racks(&path)?,
                None => verify::default_racks(),
            };
            let mut results = Vec::new();
            for name in names {
                let result = verify::run_suite(name, &racks, &codes).expect("known suite")?;
                results.push(result);
            }
            if let Some(dir) = dump {
                render::dump_failures(&dir, &results)?;
            }
            let observations = explore.then(|| verify::explore_opposite_invariants(&racks));
            out.suites(&results, observations.as_deref());
            return Ok(if results.iter().all(|r| r.passed()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
