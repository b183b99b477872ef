//! Command-line front end: build graphs, reconstruct parameters, compute
//! automorphism groups and run the verification suites.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::autgroup::{analyze, DEFAULT_NODE_BUDGET};
use crate::error::{Error, Result};
use crate::graphfam::io::{parse, write_bigraph, write_simple, GraphFile};
use crate::graphfam::{build_bigraph, build_simple, FamilySpec, Mode};
use crate::reconstruct::{reconstruct, reconstruct_simple};
use crate::verify::{run_suite, Options, DEFAULT_SEED, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REJECTED: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
/// A verification suite ran but some check failed.
pub const EXIT_CHECK_FAILED: i32 = 1;

#[derive(Parser, Debug)]
#[command(name = "weylgraph", version, about = "Incidence graphs of finite projective spaces and finite sets")]
struct Cli {
    /// worker threads (results do not depend on it)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Geom {
    Thick,
    Thin,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    AtLeast,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Write the graph of a family member (WBG1, or WSG1 with --simple).
    Build {
        #[arg(long, value_enum)]
        geom: Geom,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        i: i32,
        #[arg(long, allow_hyphen_values = true)]
        j: i32,
        #[arg(long, allow_hyphen_values = true)]
        k: i32,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        /// the graph on one side (requires i = j)
        #[arg(long)]
        simple: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recover family parameters from a graph file ("-" reads stdin).
    Reconstruct {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Automorphism group order of a graph file.
    Aut {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Run a verification suite ("all" runs every suite).
    Verify {
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// random samples per round-up family
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        /// random disjoint-space instances
        #[arg(long, default_value_t = 10_000)]
        instances: usize,
        /// also write the results as JSON
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::InvalidSpec(_)
        | Error::UnsupportedSpec(_)
        | Error::UnsupportedOrder(_)
        | Error::PreconditionViolation(_)
        | Error::DimensionMismatch(_) => EXIT_USAGE,
        Error::SearchBudgetExceeded(_) | Error::TooLarge { .. } => EXIT_BUDGET,
        _ => EXIT_REJECTED,
    }
}

fn read_input(p: &Path) -> Result<String> {
    let mut s = String::new();
    if p == Path::new("-") {
        io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(e.to_string()))?;
    } else {
        s = fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
    }
    Ok(s)
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Error::Parse(e.to_string())),
    }
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    if let Some(t) = cli.threads {
        // the global pool can only be set once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match dispatch(cli.cmd, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Cmd, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Cmd::Build {
            geom,
            q,
            n,
            i,
            j,
            k,
            mode,
            simple,
            output,
        } => {
            let mode = match mode {
                ModeArg::Exact => Mode::Exact,
                ModeArg::AtLeast => Mode::AtLeast,
            };
            let spec = match geom {
                Geom::Thick => {
                    let q = q.ok_or_else(|| Error::InvalidSpec("--q is required for thick graphs".into()))?;
                    FamilySpec::thick(q, n, i, j, k, mode)
                }
                Geom::Thin => FamilySpec::thin(n, i, j, k, mode),
            };
            spec.validate()?;
            let text = if simple {
                let g = build_simple(&spec)?;
                let _ = writeln!(err, "vertices {} valence {:?}", g.graph.order(), g.graph.valence());
                write_simple(&g.graph, Some(&spec))
            } else {
                let g = build_bigraph(&spec)?;
                let _ = writeln!(err, "biparts {} {} bivalence {:?}", g.graph.na(), g.graph.nb(), g.graph.bivalence());
                write_bigraph(&g.graph, Some(&spec))
            };
            emit(out, output.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        Cmd::Reconstruct { input, output } => {
            let report = match parse(&read_input(&input)?)? {
                GraphFile::Bi { graph, .. } => reconstruct(&graph)?,
                GraphFile::Simple { graph, .. } => reconstruct_simple(&graph)?,
            };
            emit(out, output.as_deref(), &(report.to_json() + "\n"))?;
            Ok(EXIT_OK)
        }
        Cmd::Aut { input, budget } => {
            let g = match parse(&read_input(&input)?)? {
                GraphFile::Bi { graph, .. } => graph.to_simple(),
                GraphFile::Simple { graph, .. } => graph,
            };
            let (group, _) = analyze(&g, g.order(), budget)?;
            let _ = writeln!(out, "order {}", group.order());
            let _ = writeln!(out, "generators {}", group.generators.len());
            Ok(EXIT_OK)
        }
        Cmd::Verify {
            suite,
            seed,
            samples,
            instances,
            json,
        } => {
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else if SUITES.contains(&suite.as_str()) {
                vec![suite.as_str()]
            } else {
                return Err(Error::Parse(format!("unknown suite {suite:?}; expected one of {SUITES:?} or all")));
            };
            let _ = writeln!(out, "SEED {seed}");
            let opts = Options { seed, samples, instances };
            let mut results = Vec::new();
            for name in names {
                let r = run_suite(name, &opts)?;
                let _ = write!(out, "{}", r.render());
                results.push(r);
            }
            if let Some(p) = json {
                let text = serde_json::to_string_pretty(&results).expect("results serialize");
                emit(out, Some(&p), &text)?;
            }
            Ok(if results.iter().all(|r| r.passed()) { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
    }
}
