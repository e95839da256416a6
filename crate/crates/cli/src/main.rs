use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use plumbook_core::io::{read_graph, FormatError};
use plumbook_core::report::{build_report, ReportError};
use plumbook_core::{export, validate, ConfigGraph, Pipeline};
use plumbook_core::{disconnected_boundary_obstruction, fillability_obstruction, ObstructionReport};

const EXIT_OK: u8 = 0;
const EXIT_PRECONDITION: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_NOT_OBSTRUCTED: u8 = 3;

#[derive(Parser)]
#[command(name = "plumbook", version, about = "Open books for plumbings and symplectic configuration graphs")]
struct Cli {
    /// Worker threads when several files are given (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PipelineArg {
    Positive,
    Plumbing,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Dot,
    Surgery,
}

#[derive(Subcommand)]
enum Command {
    /// Check graph files for structural errors.
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Page, monodromy, framings, boundary homology and obstructions.
    Report {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "positive")]
        pipeline: PipelineArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// DOT drawing of the graph or a surgery framing listing.
    Export {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "dot")]
        what: What,
        /// Only affects the surgery listing.
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Fillability obstruction for one graph, disconnected-boundary
    /// obstruction for two.
    Obstruct {
        #[arg(required = true, num_args = 1..=2)]
        paths: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Output of one command on one input.
struct Outcome {
    code: u8,
    stdout: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout }
    }
}

fn load(path: &Path) -> Result<ConfigGraph> {
    read_graph(path).with_context(|| format!("{}", path.display()))
}

fn require_valid(g: &ConfigGraph, path: &Path) -> Result<Option<Outcome>> {
    let report = validate(g);
    if report.is_ok() {
        return Ok(None);
    }
    let mut out = format!("{}: invalid\n", path.display());
    for v in &report.violations {
        out.push_str(&format!("  - {v}\n"));
    }
    Ok(Some(Outcome {
        code: EXIT_PRECONDITION,
        stdout: out,
    }))
}

fn cmd_validate(path: &Path) -> Result<Outcome> {
    let g = load(path)?;
    if let Some(bad) = require_valid(&g, path)? {
        return Ok(bad);
    }
    Ok(Outcome::ok(format!(
        "{}: ok ({} vertices, {} edges)\n",
        path.display(),
        g.vertex_count(),
        g.edge_count()
    )))
}

fn cmd_report(path: &Path, pipeline: Pipeline, format: Format) -> Result<Outcome> {
    let g = load(path)?;
    match build_report(&g, pipeline) {
        Ok(r) => Ok(Outcome::ok(match format {
            Format::Text => r.to_text(),
            Format::Json => r.to_json() + "\n",
        })),
        Err(e @ ReportError::Pipeline(_)) => Err(e).with_context(|| format!("{}", path.display())),
        Err(e) => Ok(Outcome {
            code: EXIT_PRECONDITION,
            stdout: format!("{}: precondition failed: {e}\n", path.display()),
        }),
    }
}

fn cmd_export(path: &Path, what: What, format: Format) -> Result<Outcome> {
    let g = load(path)?;
    if let Some(bad) = require_valid(&g, path)? {
        return Ok(bad);
    }
    let text = match (what, format) {
        (What::Dot, _) => export::to_dot(&g),
        (What::Surgery, Format::Text) => export::surgery_text(&g)?,
        (What::Surgery, Format::Json) => export::surgery_json(&g)? + "\n",
    };
    Ok(Outcome::ok(text))
}

fn render(report: &ObstructionReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize") + "\n",
        Format::Text => {
            let verdict = if report.is_obstructed() { "obstructed" } else { "not obstructed by these criteria" };
            let mut out = format!("verdict: {verdict}\n{}\n", report.certificate);
            if report.undetermined {
                out.push_str("note: b+ = 1, the criteria are silent here\n");
            }
            out
        }
    }
}

fn cmd_obstruct(paths: &[PathBuf], format: Format) -> Result<Outcome> {
    let graphs = paths.iter().map(|p| load(p)).collect::<Result<Vec<_>>>()?;
    for (g, p) in graphs.iter().zip(paths) {
        if let Some(bad) = require_valid(g, p)? {
            return Ok(bad);
        }
        if !g.is_unsigned() {
            return Ok(Outcome {
                code: EXIT_PRECONDITION,
                stdout: format!("{}: precondition failed: obstructions need an unsigned graph\n", p.display()),
            });
        }
    }
    let report = match graphs.as_slice() {
        [g] => fillability_obstruction(g),
        [g1, g2] => disconnected_boundary_obstruction(g1, g2),
        _ => bail!("obstruct takes one or two graph files"),
    };
    Ok(Outcome {
        code: if report.is_obstructed() { EXIT_OK } else { EXIT_NOT_OBSTRUCTED },
        stdout: render(&report, format),
    })
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<FormatError>().is_some() {
        EXIT_PARSE
    } else {
        EXIT_PRECONDITION
    }
}

/// Runs `f` over every path, in parallel when there are several, and
/// prints results in input order. The exit code is the largest one seen.
fn fan_out<F>(paths: &[PathBuf], jobs: Option<usize>, f: F) -> Result<u8>
where
    F: Fn(&Path) -> Result<Outcome> + Sync + Send,
{
    let run = || plumbook_core::batch::map(paths, |p| f(p));
    let results = match jobs {
        Some(n) if paths.len() > 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .context("cannot start worker threads")?
            .install(run),
        _ => run(),
    };
    let mut code = EXIT_OK;
    for r in results {
        match r {
            Ok(o) => {
                print!("{}", o.stdout);
                code = code.max(o.code);
            }
            Err(e) => {
                eprintln!("error: {e:#}");
                code = code.max(exit_code(&e));
            }
        }
    }
    Ok(code)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Validate { paths } => fan_out(&paths, cli.jobs, cmd_validate),
        Command::Report { paths, pipeline, format } => {
            let pipeline = match pipeline {
                PipelineArg::Positive => Pipeline::Positive,
                PipelineArg::Plumbing => Pipeline::Plumbing,
            };
            fan_out(&paths, cli.jobs, |p| cmd_report(p, pipeline, format))
        }
        Command::Export { path, what, format } => fan_out(&[path], cli.jobs, |p| cmd_export(p, what, format)),
        Command::Obstruct { paths, format } => match cmd_obstruct(&paths, format) {
            Ok(o) => {
                print!("{}", o.stdout);
                Ok(o.code)
            }
            Err(e) => {
                eprintln!("error: {e:#}");
                Ok(exit_code(&e))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
