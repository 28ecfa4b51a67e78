use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use wordrep::board::{enumerate_triangulations, parse_dims, triangulate, Axis, Board, Symmetry};
use wordrep::catalog::{forbidden_set, ClosurePolicy, ForbiddenSet};
use wordrep::graph::{are_isomorphic, chromatic_number, is_k_colourable, Graph, GraphJson};
use wordrep::semitrans::{decide_with_certificate, OrientationError, OrientationJson, SearchBudget};
use wordrep::verify::{
    explore_board, sweep, verify_catalog, verify_rotation_guard, verify_theorem, with_jobs, Classification, Classifier,
    DominoMode, SweepReport, Verdict,
};
use wordrep::word::{graph_of_word, represents, search_uniform_word, Word, WordBudget, WordError};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "wordrep",
    version,
    about = "Word-representability of graphs and of triangulated domino boards"
)]
struct Cli {
    #[command(flatten)]
    shared: Shared,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Shared {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Symmetry closure of the forbidden patterns: literal | extended
    #[arg(long, default_value = "extended", global = true)]
    policy: ClosurePolicy,
    /// Worker threads for board runs (0 = one per core)
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    /// Largest edge count the orientation search accepts
    #[arg(long, env = "WORDREP_BUDGET_EDGES", global = true)]
    budget_edges: Option<usize>,
    /// Search-node cap for the orientation search
    #[arg(long, global = true)]
    budget_nodes: Option<u64>,
}

impl Shared {
    fn budget(&self) -> SearchBudget {
        let mut b = SearchBudget::default();
        if let Some(e) = self.budget_edges {
            b.max_edges = e;
        }
        if let Some(n) = self.budget_nodes {
            b.max_nodes = n;
        }
        b
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Graph represented by a word, or whether a word represents a graph
    CheckWord(CheckWordArgs),
    /// Decide word-representability of a graph
    Decide(DecideArgs),
    /// Proper colouring with the fewest colours, or with at most k
    Colour(ColourArgs),
    /// List every triangulation of a board
    Enumerate(EnumerateArgs),
    /// Dump the forbidden patterns and their symmetric images
    Catalog(CatalogArgs),
    /// Classify triangulations and check the equivalence claims
    Verify(VerifyArgs),
    /// Board-level summary of a full sweep
    Sweep(SweepArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["graph", "emit_graph"])))]
struct CheckWordArgs {
    /// 1-based letters, e.g. 14213243 or 1,4,2,1,3,2,4,3
    #[arg(long)]
    word: String,
    /// Graph JSON file to test the word against
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    emit_graph: bool,
}

#[derive(Args)]
struct DecideArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Include the semi-transitive orientation
    #[arg(long)]
    emit_certificate: bool,
    /// Also search for a k-uniform representing word
    #[arg(long, value_name = "K")]
    find_word: Option<usize>,
}

#[derive(Args)]
struct ColourArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Board spec, e.g. "cells 2x2; domino H 0 0"
    #[arg(long)]
    board: String,
    /// Allow more than one domino
    #[arg(long)]
    exploratory: bool,
    /// Print only the summary
    #[arg(long)]
    count: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Dot,
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(long, value_enum, default_value_t = Emit::Json)]
    emit: Emit,
}

#[derive(Args)]
#[command(group(ArgGroup::new("target").required(true).args(["board", "sweep", "catalog"])))]
struct VerifyArgs {
    #[arg(long)]
    board: Option<String>,
    /// Every board up to RxC cells
    #[arg(long, value_name = "RxC")]
    sweep: Option<String>,
    /// Domino counts to cover in a sweep
    #[arg(long, value_delimiter = ',', default_values_t = [0, 1])]
    domino_modes: Vec<usize>,
    /// Check the catalogued claims about the forbidden patterns
    #[arg(long)]
    catalog: bool,
    /// Accept multi-domino boards; the report carries no theorem claim
    #[arg(long)]
    exploratory: bool,
    /// Compare a vertical-domino board with its quarter-turn image
    #[arg(long, requires = "board")]
    rotation_guard: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(value_name = "RxC")]
    size: String,
    #[arg(long, value_delimiter = ',', default_values_t = [0, 1])]
    domino_modes: Vec<usize>,
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

type Run = Result<u8, Usage>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match run(&cli, &mut out) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    };
    if let Err(e) = out.flush() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    ExitCode::from(code)
}

fn run(cli: &Cli, out: &mut impl Write) -> Run {
    let s = &cli.shared;
    match &cli.command {
        Command::CheckWord(a) => check_word(s, a, out),
        Command::Decide(a) => decide(s, a, out),
        Command::Colour(a) => colour(s, a, out),
        Command::Enumerate(a) => enumerate(s, a, out),
        Command::Catalog(a) => catalog(s, a, out),
        Command::Verify(a) => verify(s, a, out),
        Command::Sweep(a) => sweep_summary(s, a, out),
    }
}

fn read_graph(path: &Path) -> Result<Graph, Usage> {
    let text = fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn line(out: &mut impl Write, v: &impl Serialize) -> Result<(), Usage> {
    serde_json::to_writer(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn check_word(s: &Shared, a: &CheckWordArgs, out: &mut impl Write) -> Run {
    let w = Word::parse_one_based(&a.word)?;
    if a.emit_graph {
        let g = graph_of_word(&w)?;
        match s.format {
            Format::Json => line(out, &g)?,
            Format::Text => {
                for (u, v) in g.edges() {
                    writeln!(out, "{} {}", u + 1, v + 1)?;
                }
            }
            Format::Dot => {
                writeln!(out, "graph word {{")?;
                for (u, v) in g.edges() {
                    writeln!(out, "  {} -- {};", u + 1, v + 1)?;
                }
                writeln!(out, "}}")?;
            }
        }
        return Ok(0);
    }
    let path = a.graph.as_ref().expect("clap group requires --graph or --emit-graph");
    let g = read_graph(path)?;
    let ok = match represents(&w, &g) {
        Ok(ok) => ok,
        Err(WordError::AlphabetMismatch { .. }) => false,
        Err(e) => return Err(e.into()),
    };
    match s.format {
        Format::Text => writeln!(out, "represents: {ok}")?,
        _ => line(out, &json!({ "word": w.to_one_based(), "represents": ok }))?,
    }
    Ok(if ok { 0 } else { EXIT_VIOLATION })
}

fn decide(s: &Shared, a: &DecideArgs, out: &mut impl Write) -> Run {
    let g = read_graph(&a.graph)?;
    let budget = s.budget();
    let mut code = 0;
    let (verdict, cert) = match decide_with_certificate(&g, &budget) {
        Ok(Some(c)) => ("yes", Some(c)),
        Ok(None) => ("no", None),
        Err(OrientationError::BudgetExceeded(_) | OrientationError::OverBudget { .. }) => {
            code = EXIT_INCONCLUSIVE;
            ("inconclusive", None)
        }
        Err(e) => return Err(e.into()),
    };
    let mut v = json!({
        "verdict": verdict,
        "three_colourable": is_k_colourable(&g, 3).is_some(),
    });
    if a.emit_certificate {
        if let Some(c) = &cert {
            v["certificate"] = serde_json::to_value(OrientationJson::from(c.orientation()))?;
        }
    }
    let mut found = None;
    if let Some(k) = a.find_word {
        let (result, word) = match search_uniform_word(&g, k, &WordBudget::default()) {
            Ok(Some(w)) => ("found", Some(w.to_one_based())),
            Ok(None) => ("absent", None),
            Err(WordError::BudgetExceeded(_) | WordError::OutsideBudget { .. }) => ("budget", None),
            Err(e) => return Err(e.into()),
        };
        v["word_search"] = json!({ "k": k, "result": result, "word": word });
        found = Some((result, word));
    }
    match s.format {
        Format::Text => {
            writeln!(out, "{verdict}")?;
            if let (true, Some(c)) = (a.emit_certificate, &cert) {
                for (t, h) in c.orientation().arcs() {
                    writeln!(out, "{} -> {}", t + 1, h + 1)?;
                }
            }
            if let Some((result, word)) = found {
                writeln!(out, "word: {}", word.unwrap_or_else(|| result.to_string()))?;
            }
        }
        _ => line(out, &v)?,
    }
    Ok(code)
}

fn colour(s: &Shared, a: &ColourArgs, out: &mut impl Write) -> Run {
    let g = read_graph(&a.graph)?;
    let (k, colouring) = match a.k {
        Some(k) => (k, is_k_colourable(&g, k)),
        None => {
            let k = chromatic_number(&g);
            (k, is_k_colourable(&g, k))
        }
    };
    match s.format {
        Format::Text => match &colouring {
            Some(c) => {
                for (v, col) in c.colours.iter().enumerate() {
                    writeln!(out, "{} {}", v + 1, col)?;
                }
            }
            None => writeln!(out, "not {k}-colourable")?,
        },
        _ => line(
            out,
            &json!({ "k": k, "colours": colouring.as_ref().map(|c| &c.colours) }),
        )?,
    }
    Ok(if colouring.is_some() { 0 } else { EXIT_VIOLATION })
}

fn parse_board(spec: &str, exploratory: bool) -> Result<Board, Usage> {
    Board::parse(spec, exploratory).map_err(|e| Usage(format!("board {spec:?}: {e}")))
}

fn enumerate(s: &Shared, a: &EnumerateArgs, out: &mut impl Write) -> Run {
    let b = parse_board(&a.board, a.exploratory)?;
    let mut count = 0usize;
    for t in enumerate_triangulations(&b)? {
        count += 1;
        if a.count {
            continue;
        }
        let e = triangulate(&b, &t)?;
        match s.format {
            Format::Json => line(
                out,
                &json!({ "triangulation": t.literal(), "graph": &e.graph, "coords": &e.coords }),
            )?,
            Format::Dot => write!(out, "{}", e.to_dot(&format!("t{}", count - 1)))?,
            Format::Text => writeln!(out, "{}", t.literal())?,
        }
    }
    match s.format {
        Format::Text if a.count => writeln!(out, "{count}")?,
        Format::Dot | Format::Text => {}
        Format::Json => line(
            out,
            &json!({ "summary": { "board": b.to_string(), "triangulations": count } }),
        )?,
    }
    Ok(0)
}

/// Isomorphism classes under each policy, for the literal-vs-extended comparison.
fn class_counts() -> Result<Value, Usage> {
    let literal = forbidden_set(ClosurePolicy::Literal)?.members.len();
    let extended = forbidden_set(ClosurePolicy::Extended)?.members.len();
    Ok(json!({
        "literal": literal,
        "extended": extended,
        "delta": extended as i64 - literal as i64,
    }))
}

fn class_of(set: &ForbiddenSet, g: &Graph) -> Option<String> {
    set.members
        .iter()
        .find(|m| are_isomorphic(&m.embedded.graph, g))
        .map(|m| m.source.clone())
}

fn catalog(s: &Shared, a: &CatalogArgs, out: &mut impl Write) -> Run {
    let set = forbidden_set(s.policy)?;
    for img in &set.images {
        match a.emit {
            Emit::Dot => write!(out, "{}", img.embedded.to_dot(&img.name.replace('/', "_")))?,
            Emit::Json => line(
                out,
                &json!({
                    "name": img.name,
                    "source": img.source,
                    "symmetry": img.symmetry,
                    "class": class_of(&set, &img.embedded.graph),
                    "coords": img.embedded.coords,
                    "graph": GraphJson::from(&img.embedded.graph),
                }),
            )?,
        }
    }
    if a.emit == Emit::Json {
        line(
            out,
            &json!({ "summary": {
                "policy": s.policy.name(),
                "images": set.images.len(),
                "isomorphism_classes": class_counts()?,
            }}),
        )?;
    }
    Ok(0)
}

fn summary(report: &SweepReport, policy: ClosurePolicy) -> Result<Value, Usage> {
    let mut v = serde_json::to_value(report)?;
    v["outcome"] = serde_json::to_value(report.outcome())?;
    v["policy"] = json!(policy.name());
    v["violation_counts"] = serde_json::to_value(report.violation_counts())?;
    v["isomorphism_classes"] = class_counts()?;
    Ok(json!({ "summary": v }))
}

fn write_classification(s: &Shared, c: &Classification, out: &mut impl Write) -> Result<(), Usage> {
    match s.format {
        Format::Text => {
            let wr = match c.word_representable {
                Verdict::Yes => "yes",
                Verdict::No => "no",
                Verdict::Budget => "budget",
            };
            writeln!(
                out,
                "{} | {} | 3col={} wr={wr} hit={}",
                c.board,
                c.triangulation,
                if c.three_colourable { "yes" } else { "no" },
                c.forbidden_hit.as_deref().unwrap_or("-"),
            )?;
            Ok(())
        }
        _ => line(out, c),
    }
}

fn write_summary(s: &Shared, report: &SweepReport, out: &mut impl Write) -> Run {
    eprintln!("elapsed: {:.3}s", report.elapsed.as_secs_f64());
    match s.format {
        Format::Text => writeln!(
            out,
            "{}: {} boards, {} triangulations, {} violations, {} over budget",
            serde_json::to_value(report.outcome())?.as_str().unwrap_or_default(),
            report.boards,
            report.triangulations,
            report.violations.len(),
            report.budget_exceeded,
        )?,
        _ => line(out, &summary(report, s.policy)?)?,
    }
    Ok(report.outcome().exit_code() as u8)
}

fn domino_modes(counts: &[usize]) -> Result<Vec<DominoMode>, Usage> {
    counts
        .iter()
        .map(|&k| DominoMode::from_count(k).ok_or_else(|| Usage(format!("unsupported domino mode {k} (0 or 1)"))))
        .collect()
}

fn sweep_dims(spec: &str) -> Result<(usize, usize), Usage> {
    parse_dims(spec).ok_or_else(|| Usage(format!("bad size {spec:?}, expected RxC")))
}

fn verify(s: &Shared, a: &VerifyArgs, out: &mut impl Write) -> Run {
    if s.format == Format::Dot {
        return Err(Usage("verify has no dot output".into()));
    }
    if a.catalog {
        let report = verify_catalog(&s.budget())?;
        return write_summary(s, &report, out);
    }
    let classifier = Classifier::new(s.policy, s.budget())?;
    if let Some(spec) = &a.board {
        let b = parse_board(spec, a.exploratory)?;
        if a.rotation_guard {
            if b.dominoes().len() != 1 || b.dominoes()[0].axis != Axis::V {
                return Err(Usage("--rotation-guard needs a board with one vertical domino".into()));
            }
            let report = with_jobs(s.jobs, || verify_rotation_guard(&b, Symmetry::Rot90, &classifier))??;
            return write_summary(s, &report, out);
        }
        let run = with_jobs(s.jobs, || {
            if a.exploratory {
                explore_board(&b, &classifier)
            } else {
                verify_theorem(&b, &classifier)
            }
        })??;
        for c in &run.classifications {
            write_classification(s, c, out)?;
        }
        return write_summary(s, &run.report, out);
    }
    let (r, c) = sweep_dims(a.sweep.as_deref().expect("clap group requires a target"))?;
    let modes = domino_modes(&a.domino_modes)?;
    let started = Instant::now();
    let mut run = with_jobs(s.jobs, || sweep(r, c, &modes, &classifier))??;
    run.report.elapsed = started.elapsed();
    for board in &run.runs {
        for c in &board.classifications {
            write_classification(s, c, out)?;
        }
    }
    write_summary(s, &run.report, out)
}

fn sweep_summary(s: &Shared, a: &SweepArgs, out: &mut impl Write) -> Run {
    if s.format == Format::Dot {
        return Err(Usage("sweep has no dot output".into()));
    }
    let (r, c) = sweep_dims(&a.size)?;
    let modes = domino_modes(&a.domino_modes)?;
    let classifier = Classifier::new(s.policy, s.budget())?;
    let started = Instant::now();
    let mut run = with_jobs(s.jobs, || sweep(r, c, &modes, &classifier))??;
    run.report.elapsed = started.elapsed();
    for board in &run.runs {
        let rep = &board.report;
        match s.format {
            Format::Text => writeln!(
                out,
                "{}: {} triangulations, {} 3-colourable, {} violations",
                board.board,
                rep.triangulations,
                rep.three_colourable,
                rep.violations.len()
            )?,
            _ => line(
                out,
                &json!({
                    "board": board.board.to_string(),
                    "triangulations": rep.triangulations,
                    "three_colourable": rep.three_colourable,
                    "violations": rep.violations.len(),
                    "budget_exceeded": rep.budget_exceeded,
                    "outcome": rep.outcome(),
                }),
            )?,
        }
    }
    write_summary(s, &run.report, out)
}
