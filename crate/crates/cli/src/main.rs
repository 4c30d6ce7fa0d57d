use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gridstate::criteria::Interpretation;
use gridstate::format::{
    check, emit_matrix, parse_spec, print_spec, render, verify, MatrixFormat, MatrixKind, RenderFormat, Report, Spec,
    VerifyOptions,
};
use gridstate::graph::{cross_hatch, cross_hatch_hybrid, embed_compose, tile_compose, EdgeKind, GridGraph, Weight};
use gridstate::quantum::DEFAULT_PPT_TOL;
use gridstate::surgery::{default_max_depth, prove_entangled, surgery_trace};
use gridstate::Rational;
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "gridstate", version, about = "Grid-labelled graphs as bipartite quantum states")]
struct Cli {
    /// Worker threads for batch runs and the range search (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a spec for a cross-hatch graph or a composition.
    Build {
        #[command(subcommand)]
        family: Family,
        /// Write the spec here instead of stdout.
        #[arg(short, long, global = true)]
        out: Option<PathBuf>,
    },
    /// Degree criterion and numeric PPT check.
    Check {
        file: PathBuf,
        #[command(flatten)]
        opts: CriterionOpts,
        #[arg(long)]
        pretty: bool,
    },
    /// Search for a surgery proof of entanglement.
    Surgery {
        file: PathBuf,
        #[arg(long)]
        max_depth: Option<usize>,
        /// Print the proof tree as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Full pipeline: degree criterion, PPT check and surgery.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        opts: PipelineOpts,
        #[arg(long)]
        pretty: bool,
    },
    /// Draw a spec as Graphviz DOT or ASCII.
    Render {
        file: PathBuf,
        #[arg(long, default_value = "dot")]
        format: String,
    },
    /// Dump a matrix of a spec.
    Matrix {
        file: PathBuf,
        /// L, Q, hybrid, density or ppt.
        #[arg(long, default_value = "hybrid")]
        which: String,
        /// json (exact fractions) or csv (decimals).
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Verify every spec in a directory, one JSON report per line.
    Batch {
        dir: PathBuf,
        #[command(flatten)]
        opts: PipelineOpts,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Cross-hatch graph on an M x N grid.
    CrossHatch {
        rows: usize,
        cols: usize,
        #[arg(long, value_enum, default_value = "l")]
        kind: HatchKind,
        /// Uniform edge weight, as p/q.
        #[arg(long, default_value = "1")]
        weight: String,
    },
    /// Embed INNER into OUTER at an offset.
    Embed {
        outer: PathBuf,
        inner: PathBuf,
        /// Offset as ROW,COL.
        #[arg(long, value_parser = parse_pair)]
        at: (usize, usize),
    },
    /// Place tiles given as FILE@ROW,COL on a fresh grid.
    Tile {
        /// Grid size as ROWS,COLS.
        #[arg(long, value_parser = parse_pair)]
        size: (usize, usize),
        #[arg(required = true)]
        tiles: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum HatchKind {
    L,
    Q,
    Hybrid,
}

#[derive(Clone, Copy, ValueEnum)]
enum InterpretationArg {
    #[value(name = "L", alias = "l")]
    L,
    #[value(name = "Q", alias = "q")]
    Q,
    Hybrid,
    Auto,
}

#[derive(Args, Clone)]
struct CriterionOpts {
    #[arg(long, value_enum, default_value = "auto")]
    interpretation: InterpretationArg,
    /// Tolerance on the smallest partial-transpose eigenvalue.
    #[arg(long, default_value_t = DEFAULT_PPT_TOL)]
    tol: f64,
}

#[derive(Args, Clone)]
struct PipelineOpts {
    #[command(flatten)]
    criterion: CriterionOpts,
    /// Surgery depth budget (default: edge count).
    #[arg(long)]
    max_depth: Option<usize>,
    /// Run the product-vector range search with this many grid points per angle.
    #[arg(long)]
    resolution: Option<usize>,
}

impl CriterionOpts {
    fn options(&self) -> VerifyOptions {
        VerifyOptions {
            interpretation: match self.interpretation {
                InterpretationArg::L => Some(Interpretation::L),
                InterpretationArg::Q => Some(Interpretation::Q),
                InterpretationArg::Hybrid => Some(Interpretation::Hybrid),
                InterpretationArg::Auto => None,
            },
            tol: self.tol,
            ..VerifyOptions::default()
        }
    }
}

impl PipelineOpts {
    fn options(&self) -> VerifyOptions {
        VerifyOptions {
            max_depth: self.max_depth,
            resolution: self.resolution,
            ..self.criterion.options()
        }
    }
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected A,B, got `{s}`"))?;
    let a = a.trim().parse().map_err(|_| format!("bad number `{a}`"))?;
    let b = b.trim().parse().map_err(|_| format!("bad number `{b}`"))?;
    Ok((a, b))
}

type CliResult<T> = Result<T, String>;

fn read_input(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(|e| format!("stdin: {e}"))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> CliResult<Spec> {
    parse_spec(&read_input(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_graph(path: &Path) -> CliResult<GridGraph> {
    match load(path)? {
        Spec::Graph(g) => Ok(g),
        Spec::Hypergraph(_) => Err(format!("{}: expected a grid spec, found a hypergrid", path.display())),
    }
}

fn build(family: &Family) -> CliResult<GridGraph> {
    let g = match family {
        Family::CrossHatch {
            rows,
            cols,
            kind,
            weight,
        } => {
            let value: Rational = weight.parse().map_err(|_| format!("bad weight `{weight}`"))?;
            let w = Weight::new(value).map_err(|e| e.to_string())?;
            match kind {
                HatchKind::L => cross_hatch(*rows, *cols, EdgeKind::L, &w),
                HatchKind::Q => cross_hatch(*rows, *cols, EdgeKind::Q, &w),
                HatchKind::Hybrid => cross_hatch_hybrid(*rows, *cols, &w),
            }
        }
        Family::Embed { outer, inner, at } => embed_compose(&load_graph(outer)?, &load_graph(inner)?, at.0, at.1),
        Family::Tile { size, tiles } => {
            let mut parts = Vec::new();
            for t in tiles {
                let (file, offset) = t.rsplit_once('@').ok_or_else(|| format!("expected FILE@ROW,COL, got `{t}`"))?;
                let (r, c) = parse_pair(offset)?;
                parts.push((load_graph(Path::new(file))?, r, c));
            }
            tile_compose(&parts, size.0, size.1)
        }
    };
    g.map_err(|e| e.to_string())
}

fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| e.to_string())
        }
    }
}

fn spec_files(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| format!("{}: {e}", dir.display()))? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let hidden = path.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.starts_with('.'));
        if path.is_file() && !hidden {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Runs the batch and prints one line per file; returns whether all succeeded.
fn batch(dir: &Path, opts: &VerifyOptions) -> CliResult<bool> {
    let files = spec_files(dir)?;
    let lines: Vec<(bool, String)> = files
        .par_iter()
        .map(|path| {
            let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            let outcome = read_input(path).and_then(|text| {
                parse_spec(&text)
                    .and_then(|spec| verify(&spec, opts))
                    .map_err(|e| e.to_string())
            });
            match outcome {
                Ok(report) => {
                    let value = serde_json::json!({ "file": name, "ok": true, "report": report });
                    (true, value.to_string())
                }
                Err(error) => {
                    let value = serde_json::json!({ "file": name, "ok": false, "error": error });
                    (false, value.to_string())
                }
            }
        })
        .collect();
    let mut stdout = io::stdout().lock();
    let mut all_ok = true;
    for (ok, line) in lines {
        all_ok &= ok;
        writeln!(stdout, "{line}").map_err(|e| e.to_string())?;
        stdout.flush().map_err(|e| e.to_string())?;
    }
    Ok(all_ok)
}

fn report_out(report: &Report, pretty: bool) -> String {
    let text = if pretty { report.to_json_pretty() } else { report.to_json() };
    text + "\n"
}

fn run(cli: Cli) -> CliResult<bool> {
    match cli.command {
        Command::Build { family, out } => {
            let g = build(&family)?;
            emit(&print_spec(&Spec::Graph(g)), out.as_deref())?;
        }
        Command::Check { file, opts, pretty } => {
            let report = check(&load(&file)?, &opts.options()).map_err(|e| e.to_string())?;
            emit(&report_out(&report, pretty), None)?;
        }
        Command::Surgery { file, max_depth, json } => {
            let g = load_graph(&file)?;
            let depth = max_depth.unwrap_or_else(|| default_max_depth(&g));
            let tree = prove_entangled(&g, depth).map_err(|e| e.to_string())?;
            let text = if json {
                serde_json::to_string_pretty(&tree).expect("proof trees serialize") + "\n"
            } else {
                surgery_trace(&tree)
            };
            emit(&text, None)?;
        }
        Command::Verify { file, opts, pretty } => {
            let report = verify(&load(&file)?, &opts.options()).map_err(|e| e.to_string())?;
            emit(&report_out(&report, pretty), None)?;
        }
        Command::Render { file, format } => {
            let format: RenderFormat = format.parse().map_err(|e: gridstate::Error| e.to_string())?;
            emit(&render(&load(&file)?, format), None)?;
        }
        Command::Matrix { file, which, format } => {
            let which: MatrixKind = which.parse().map_err(|e: gridstate::Error| e.to_string())?;
            let format: MatrixFormat = format.parse().map_err(|e: gridstate::Error| e.to_string())?;
            let text = emit_matrix(&load(&file)?, which, format).map_err(|e| e.to_string())?;
            emit(&text, None)?;
        }
        Command::Batch { dir, opts } => return batch(&dir, &opts.options()),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("gridstate: {e}");
            return ExitCode::FAILURE;
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("gridstate: {e}");
            ExitCode::FAILURE
        }
    }
}
