//! `qpcode`: classify, construct, search for and draw codes on product graphs.
//!
//! Exit status: 0 success (claim holds, witness found), 1 claim refuted or
//! no code exists, 2 input error, 3 search inconclusive.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use qpcode::constructions::{self, Params};
use qpcode::io::{render, CodeFile, Report, SearchReport};
use qpcode::search::{min_code_size_with, search_code, SearchSpec, SearchStatus};
use qpcode::{check_claim, classify, Claim, Code, CodeKind, ProductGraph, TheoremId};

const OK: u8 = 0;
const REFUTED: u8 = 1;
const INPUT_ERROR: u8 = 2;
const INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qpcode",
    version,
    about = "Perfect and quasi-perfect codes on product graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a code and optionally check a claim against it.
    Classify(ClassifyArgs),
    /// Build a code from a named construction and check its claim.
    Construct(ConstructArgs),
    /// Search for a perfect or quasi-perfect code.
    Search(SearchArgs),
    /// Draw a code layer by layer.
    Render(RenderArgs),
    /// Periodic tiling of the C3 x C6 x C2 block (construct N3_4).
    Tile(TileArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the main output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Code file (JSON).
    #[arg(long)]
    code: PathBuf,
    /// Graph spec; must agree with the code file's graph.
    #[arg(long)]
    graph: Option<String>,
    /// Claimed kind; defaults to the file's claim, or `perfect` when only --e is given.
    #[arg(long)]
    kind: Option<CodeKind>,
    #[arg(long)]
    e: Option<u32>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ConstructArgs {
    /// Construction tag, e.g. T3_5, N4_1, TRIV_PN.
    #[arg(long)]
    theorem: TheoremId,
    #[command(flatten)]
    common: ConstructCommon,
}

#[derive(Args)]
struct TileArgs {
    #[command(flatten)]
    common: ConstructCommon,
}

#[derive(Args)]
struct ConstructCommon {
    /// Construction parameter, repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE", value_parser = parse_param)]
    params: Vec<(String, String)>,
    /// Shorthand for --param k=K.
    #[arg(long)]
    k: Option<usize>,
    /// Shorthand for --param e=E.
    #[arg(long)]
    e: Option<u32>,
    /// Input code for constructions that extend a given code.
    #[arg(long)]
    code: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the constructed code file here; the report goes to standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    graph: String,
    #[arg(long, default_value = "perfect")]
    kind: CodeKind,
    #[arg(long)]
    e: u32,
    #[arg(long)]
    size_min: Option<usize>,
    #[arg(long)]
    size_max: Option<usize>,
    /// Lexicographic exhaustive search; failure proves that no code exists.
    #[arg(long)]
    exhaustive: bool,
    /// Report the smallest size admitting a code (implies --exhaustive).
    #[arg(long)]
    min_size: bool,
    /// Node budget; an exhausted budget makes the result inconclusive.
    #[arg(long)]
    budget: Option<u64>,
    /// Do not fix the first codeword on products of cycles.
    #[arg(long)]
    no_symmetry_break: bool,
    /// Largest graph accepted, in vertices.
    #[arg(long, default_value_t = qpcode::DEFAULT_EXPANSION_CAP)]
    cap: usize,
    #[arg(long)]
    threads: Option<usize>,
    /// Write the witness as a code file here; the report goes to standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    code: PathBuf,
    #[arg(long)]
    graph: Option<String>,
    /// Vertices at distance e + 1 are marked with `+`.
    #[arg(long)]
    e: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_param(raw: &str) -> Result<(String, String), String> {
    match raw.split_once('=') {
        Some((name, value)) if !name.is_empty() => Ok((name.to_string(), value.to_string())),
        _ => Err(format!("expected NAME=VALUE, got `{raw}`")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Classify(args) => cmd_classify(args),
        Command::Construct(args) => cmd_construct(args.theorem, args.common),
        Command::Tile(args) => cmd_construct(TheoremId::N34, args.common),
        Command::Search(args) => cmd_search(args),
        Command::Render(args) => cmd_render(args),
    }
}

/// Writes `text` to `path` through a temporary file in the same directory,
/// or to standard output.
fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)
                .with_context(|| format!("cannot write to {}", dir.display()))?;
            tmp.write_all(text.as_bytes())?;
            tmp.persist(path)
                .with_context(|| format!("cannot write {}", path.display()))?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn load_code(path: &Path, graph: Option<&str>) -> Result<(CodeFile, Code)> {
    let file = CodeFile::load(path)?;
    let own =
        ProductGraph::parse(&file.graph).with_context(|| format!("graph of {}", path.display()))?;
    if let Some(spec) = graph {
        let given = ProductGraph::parse(spec)?;
        if given.to_string() != own.to_string() {
            bail!("--graph {given} does not match the code file's graph {own}");
        }
    }
    let code = file.code_on(&own)?;
    Ok((file, code))
}

fn report_text(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    }
}

fn cmd_classify(args: ClassifyArgs) -> Result<u8> {
    let (file, code) = load_code(&args.code, args.graph.as_deref())?;
    let claim = match (args.kind, args.e) {
        (kind, Some(e)) => Some(Claim {
            kind: kind.unwrap_or(CodeKind::Perfect),
            e,
        }),
        (Some(_), None) => bail!("--kind needs --e"),
        (None, None) => file.claim,
    };
    let start = Instant::now();
    let summary = classify(&code)?;
    let report = Report::new(&code, &summary, claim, start.elapsed());
    emit(
        args.output.out.as_deref(),
        &report_text(&report, args.output.format),
    )?;
    Ok(match report.verdict {
        Some(v) if !v.holds => REFUTED,
        _ => OK,
    })
}

fn cmd_construct(theorem: TheoremId, args: ConstructCommon) -> Result<u8> {
    let mut params: Params = args.params.into_iter().collect();
    if let Some(k) = args.k {
        params.insert("k".into(), k.to_string());
    }
    if let Some(e) = args.e {
        params.insert("e".into(), e.to_string());
    }
    let input = match &args.code {
        Some(path) => Some(load_code(path, None)?.1),
        None => None,
    };
    let start = Instant::now();
    let built = constructions::build(theorem, &params, input.as_ref())?;
    let verdict = check_claim(&built.code, built.claim)?;
    let report = Report::new(
        &built.code,
        &verdict.report,
        Some(built.claim),
        start.elapsed(),
    );
    let file = CodeFile::from_construction(&built);
    match &args.out {
        Some(path) => {
            emit(Some(path), &file.to_json())?;
            emit(None, &report_text(&report, args.format))?;
        }
        None => {
            let text = match args.format {
                Format::Text => format!("{}\n{}", file.to_json(), report.to_text()),
                Format::Json => {
                    let code: serde_json::Value = serde_json::from_str(&file.to_json())?;
                    let both = serde_json::json!({ "code": code, "report": report });
                    serde_json::to_string_pretty(&both)? + "\n"
                }
            };
            emit(None, &text)?;
        }
    }
    Ok(if verdict.holds { OK } else { REFUTED })
}

fn cmd_search(args: SearchArgs) -> Result<u8> {
    let graph = ProductGraph::parse(&args.graph)?;
    let n = graph.vertex_count();
    let mut spec = SearchSpec::new(graph, args.kind, args.e);
    spec.size_min = args.size_min.unwrap_or(1);
    spec.size_max = args.size_max.unwrap_or(n);
    spec.exhaustive = args.exhaustive || args.min_size;
    spec.symmetry_break = !args.no_symmetry_break && spec.graph.is_all_cycles();
    spec.node_budget = args.budget;
    spec.cap = args.cap;
    spec.threads = args.threads;

    let start = Instant::now();
    let (outcome, min_size) = if args.min_size {
        let (size, outcome) = min_code_size_with(&spec)?;
        (outcome, Some(size))
    } else {
        (search_code(&spec)?, None)
    };
    let witness_report = match &outcome.witness {
        Some(w) => {
            let t = Instant::now();
            let summary = classify(w)?;
            Some(Report::new(w, &summary, Some(spec.claim()), t.elapsed()))
        }
        None => None,
    };
    let report = SearchReport::new(&outcome, min_size, witness_report, start.elapsed());
    if let (Some(path), Some(w)) = (&args.out, &outcome.witness) {
        let mut file = CodeFile::from_code(w);
        file.claim = Some(spec.claim());
        emit(Some(path), &file.to_json())?;
    }
    let text = match args.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    emit(None, &text)?;
    Ok(match outcome.status {
        SearchStatus::Found => OK,
        SearchStatus::None => REFUTED,
        SearchStatus::Inconclusive => INCONCLUSIVE,
    })
}

fn cmd_render(args: RenderArgs) -> Result<u8> {
    let (_, code) = load_code(&args.code, args.graph.as_deref())?;
    emit(args.out.as_deref(), &render(&code, args.e)?)?;
    Ok(OK)
}
