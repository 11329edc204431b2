//! The `oml` command line.
//!
//! Exit codes: 0 success, 1 a checked claim or validation level failed,
//! 2 unreadable or malformed input, 3 invalid generation spec.

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use oml_core::generator::{brute_force_generate, GenSpec};
use oml_core::lattice::build_oml;
use oml_core::mmp::validate;
use oml_core::symmetry::canonical_form;
use rayon::prelude::*;

use crate::check::check_corpus;
use crate::corpus;
use crate::error::Error;
use crate::format::{read_lines, InputLine};
use crate::parallel::{generate_parallel, ParallelOptions, DEFAULT_SPLIT_DEPTH};
use crate::poset::poset_json;
use crate::render::render_dot;
use crate::report::{states_line, ErrorLine, StateChecks, ValidateLine};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_FORMAT: u8 = 2;
pub const EXIT_SPEC: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "oml", version, about = "Greechie/MMP diagrams of orthomodular lattices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check MMP lines structurally; one JSON report per line.
    Validate {
        /// Input files (`-` for stdin).
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Require only the three MMP conditions.
        #[arg(long, conflicts_with = "greechie")]
        mmp: bool,
        /// Require a Greechie diagram (the default).
        #[arg(long)]
        greechie: bool,
    },
    /// Analyse the states of every line; one JSON report per line.
    States {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Decide whether some set of states is strong.
        #[arg(long)]
        strong: bool,
        /// The same decision restricted to 0-1 states.
        #[arg(long)]
        zero_one: bool,
        /// Decide whether a classically strong state exists.
        #[arg(long)]
        classical: bool,
    },
    /// Generate all diagrams of a size, one canonical MMP line each.
    Generate(GenerateArgs),
    /// Graphviz DOT for every line.
    Render { file: PathBuf },
    /// Canonical MMP line and automorphism count for every line.
    Canon { files: Vec<PathBuf> },
    /// The pasted lattice of every line as JSON.
    Poset { file: PathBuf },
    /// The built-in corpus of published lattices.
    Corpus {
        #[arg(long, conflicts_with_all = ["show", "check"])]
        list: bool,
        #[arg(long, value_name = "NAME", conflicts_with = "check")]
        show: Option<String>,
        /// Recompute every claimed property; exit 1 on any mismatch.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub atoms: usize,
    #[arg(long)]
    pub blocks: usize,
    #[arg(long, default_value_t = 3)]
    pub block_size: usize,
    #[arg(long, default_value_t = 5)]
    pub min_girth: usize,
    /// Also emit disconnected diagrams.
    #[arg(long)]
    pub allow_disconnected: bool,
    #[arg(long, default_value_t = 1)]
    pub min_degree: usize,
    /// Print only the number of diagrams.
    #[arg(long)]
    pub count_only: bool,
    /// Resumable progress file (JSON).
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Compare with the brute-force oracle (small sizes only).
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, default_value_t = DEFAULT_SPLIT_DEPTH)]
    pub split_depth: usize,
    /// Print search statistics to stderr.
    #[arg(long)]
    pub stats: bool,
}

impl GenerateArgs {
    pub fn spec(&self) -> GenSpec {
        GenSpec {
            atom_count: self.atoms,
            block_count: self.blocks,
            block_size: self.block_size,
            min_girth: self.min_girth,
            require_connected: !self.allow_disconnected,
            min_atom_degree: self.min_degree,
        }
    }
}

/// Runs a command, writing to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<u8> {
    match cli.command {
        Command::Validate { files, mmp, .. } => validate_cmd(&files, mmp, out, err),
        Command::States {
            files,
            strong,
            zero_one,
            classical,
        } => {
            let checks = StateChecks {
                strong,
                zero_one,
                classical,
            };
            states_cmd(&files, checks, out, err)
        }
        Command::Generate(args) => generate_cmd(&args, out, err),
        Command::Render { file } => per_line(&[file], out, err, |d| Ok(render_dot(d)?)),
        Command::Canon { files } => per_line(&files, out, err, |d| {
            let cf = canonical_form(d)?;
            Ok(format!("{} {}\n", cf.canonical_text()?, cf.automorphism_count))
        }),
        Command::Poset { file } => per_line(&[file], out, err, |d| {
            let p = build_oml(d)?;
            Ok(format!("{}\n", serde_json::to_string(&poset_json(&p))?))
        }),
        Command::Corpus { list, show, check } => corpus_cmd(list, show, check, out, err),
    }
}

fn read_all(files: &[PathBuf], err: &mut dyn Write) -> io::Result<Option<Vec<InputLine>>> {
    let mut all = Vec::new();
    for f in files {
        match read_lines(f) {
            Ok(lines) => all.extend(lines),
            Err(e) => {
                writeln!(err, "oml: {e}")?;
                return Ok(None);
            }
        }
    }
    Ok(Some(all))
}

fn json_line<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn validate_cmd(files: &[PathBuf], mmp_only: bool, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<u8> {
    let Some(lines) = read_all(files, err)? else {
        return Ok(EXIT_FORMAT);
    };
    let mut code = EXIT_OK;
    for l in &lines {
        match &l.diagram {
            Ok(d) => {
                let r = validate(d);
                let passed = if mmp_only { r.mmp() } else { r.greechie_admissible };
                if !passed {
                    code = code.max(EXIT_MISMATCH);
                }
                out.write_all(json_line(&ValidateLine::new(l.number, d, &r)).as_bytes())?;
            }
            Err(e) => {
                code = EXIT_FORMAT;
                let line = ErrorLine {
                    line: l.number,
                    error: e.to_string(),
                };
                out.write_all(json_line(&line).as_bytes())?;
            }
        }
    }
    Ok(code)
}

fn states_cmd(files: &[PathBuf], checks: StateChecks, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<u8> {
    let Some(lines) = read_all(files, err)? else {
        return Ok(EXIT_FORMAT);
    };
    let rendered: Vec<String> = lines
        .par_iter()
        .map(|l| {
            let result = match &l.diagram {
                Ok(d) => states_line(l.number, None, d, checks).map_err(|e| e.to_string()),
                Err(e) => Err(e.to_string()),
            };
            match result {
                Ok(r) => json_line(&r),
                Err(error) => json_line(&ErrorLine { line: l.number, error }),
            }
        })
        .collect();
    for r in rendered {
        out.write_all(r.as_bytes())?;
    }
    Ok(EXIT_OK)
}

/// Applies `f` to every line in order; failures go to stderr and set exit 2.
fn per_line<F>(files: &[PathBuf], out: &mut dyn Write, err: &mut dyn Write, f: F) -> io::Result<u8>
where
    F: Fn(&oml_core::MmpDiagram) -> Result<String, Error> + Sync,
{
    let Some(lines) = read_all(files, err)? else {
        return Ok(EXIT_FORMAT);
    };
    let rendered: Vec<Result<String, String>> = lines
        .par_iter()
        .map(|l| match &l.diagram {
            Ok(d) => f(d).map_err(|e| format!("line {}: {e}", l.number)),
            Err(e) => Err(format!("line {}: {e}", l.number)),
        })
        .collect();
    let mut code = EXIT_OK;
    for r in rendered {
        match r {
            Ok(s) => out.write_all(s.as_bytes())?,
            Err(e) => {
                code = EXIT_FORMAT;
                writeln!(err, "oml: {e}")?;
            }
        }
    }
    Ok(code)
}

fn generate_cmd(args: &GenerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<u8> {
    let spec = args.spec();
    if let Err(e) = spec.validate() {
        writeln!(err, "oml: {e}")?;
        return Ok(EXIT_SPEC);
    }
    let opts = ParallelOptions {
        workers: args.workers,
        split_depth: args.split_depth,
        checkpoint: args.checkpoint.clone(),
    };
    let run = match generate_parallel(&spec, &opts) {
        Ok(r) => r,
        Err(e) => {
            writeln!(err, "oml: {e}")?;
            return Ok(match e {
                Error::Core(oml_core::Error::InvalidSpec(_)) => EXIT_SPEC,
                _ => EXIT_FORMAT,
            });
        }
    };
    if args.count_only {
        writeln!(out, "{}", run.lines.len())?;
    } else {
        for l in &run.lines {
            writeln!(out, "{l}")?;
        }
    }
    if args.stats {
        let s = &run.stats;
        writeln!(
            err,
            "nodes {} canonical_rejections {} girth_prunes {} emitted {} resumed_tasks {} wall {:.3}s",
            s.nodes_explored,
            s.canonical_rejections,
            s.girth_prunes,
            run.lines.len(),
            run.resumed_tasks,
            s.wall_time.as_secs_f64()
        )?;
    }
    if args.oracle {
        let oracle = match brute_force_generate(&spec) {
            Ok(o) => o,
            Err(e) => {
                writeln!(err, "oml: oracle: {e}")?;
                return Ok(EXIT_SPEC);
            }
        };
        let mut want: Vec<String> = oracle
            .iter()
            .map(|c| c.canonical_text().expect("fits the alphabet"))
            .collect();
        let mut got = run.lines.clone();
        want.sort();
        got.sort();
        if want != got {
            writeln!(
                err,
                "oml: oracle mismatch: generator {} classes, oracle {}",
                got.len(),
                want.len()
            )?;
            return Ok(EXIT_MISMATCH);
        }
        writeln!(err, "oracle agrees: {} classes", want.len())?;
    }
    Ok(EXIT_OK)
}

fn corpus_cmd(
    list: bool,
    show: Option<String>,
    check: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<u8> {
    if let Some(name) = show {
        return match corpus::entry(&name) {
            Ok(e) => {
                writeln!(out, "{}", e.mmp_line)?;
                Ok(EXIT_OK)
            }
            Err(e) => {
                writeln!(err, "oml: {e}")?;
                Ok(EXIT_FORMAT)
            }
        };
    }
    if check && !list {
        let checks = check_corpus();
        let mut code = EXIT_OK;
        for c in &checks {
            if !c.ok() {
                code = EXIT_MISMATCH;
            }
            let status = if c.ok() { "ok" } else { "MISMATCH" };
            writeln!(
                out,
                "{status:8} {:14} {:28} expected {} got {}",
                c.name, c.property, c.expected, c.actual
            )?;
        }
        return Ok(code);
    }
    for name in corpus::names() {
        writeln!(out, "{name}")?;
    }
    Ok(EXIT_OK)
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut err = io::stderr();
    let code = match run(cli, &mut out, &mut err) {
        Ok(c) => c,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "oml: {e}");
            EXIT_FORMAT
        }
    };
    if let Err(e) = out.flush() {
        if e.kind() != io::ErrorKind::BrokenPipe {
            return ExitCode::from(EXIT_FORMAT);
        }
    }
    ExitCode::from(code)
}
