//! `domclique` command-line front end.
//!
//! Every subcommand prints one JSON object (with a versioned `schema` field)
//! unless `--plain` is given. Exit codes: 0 success, 1 usage/input/capacity
//! errors, 2 a negative verdict (invalid model, counterexample).

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use domclique::exact::{
    clique_number, dominating_hadwiger_number, independence_number, optimal_coloring, verify_dominating_model,
    verify_ordinary_model, ExactError, MinorModel, SearchLimits, DEFAULT_MINOR_CAP,
};
use domclique::extraction::{extract_dominating_with, extract_micu_minor, ExtractOptions, ExtractionError};
use domclique::generators::{self, random_2k2_free, random_gnp, random_planted_2k2_free};
use domclique::graph::Graph;
use domclique::graph6::{emit_graph6, parse_graph6};
use domclique::hunt::{run_hunt, run_hunt_to_file, Check, Filter, HuntConfig, InputSource};
use domclique::patterns::{find_2k2, find_banner, find_induced, find_induced_cycle, is_split_graph, Pattern};

#[derive(Parser)]
#[command(name = "domclique", version, about = "Dominating clique minors: exact search, extraction, hunting")]
struct Cli {
    /// Human-readable text instead of JSON.
    #[arg(long, global = true)]
    plain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Basic invariants and small induced patterns.
    Analyze {
        #[command(flatten)]
        input: GraphInput,
        /// Refuse exact colouring/clique work above this many vertices.
        #[arg(long, default_value_t = 64)]
        max_vertices: usize,
    },
    /// Build a K_χ model of a 2K2-free graph.
    Extract {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum, default_value_t = Mode::Dominating)]
        mode: Mode,
        /// Write the reduction trace (dominating mode) as JSON to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Route graphs with ω = χ through the structural reductions too.
        #[arg(long)]
        no_clique_shortcut: bool,
    },
    /// Check a model given as a JSON array of vertex arrays.
    Verify {
        #[command(flatten)]
        input: GraphInput,
        /// Model JSON, or @path to read it from a file.
        #[arg(long)]
        model: String,
        /// Check an ordinary clique minor instead of a dominating one.
        #[arg(long)]
        ordinary: bool,
    },
    /// Dominating Hadwiger number by exhaustive search.
    Hd {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = DEFAULT_MINOR_CAP)]
        max_vertices: usize,
    },
    /// Generate a graph from a named family.
    Gen {
        /// cycle, path, complete, complete-multipartite, petersen, banner,
        /// t-graph, one-subdivision-complete, 2k2, random-gnp,
        /// random-2k2-free, random-planted-2k2-free.
        family: String,
        params: Vec<usize>,
        /// Required by the random families.
        #[arg(long)]
        seed: Option<u64>,
        /// Edge probability for the random families.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
    },
    /// Re-encode a graph.
    Convert {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum)]
        to: OutFormat,
    },
    /// Check every graph of a graph6 corpus; records are JSON lines.
    Hunt {
        /// Corpus path, or - for standard input.
        #[arg(long, default_value = "-")]
        input: String,
        /// Comma-separated: dominating-hadwiger, extract, micu, t3-equivalence.
        #[arg(long, value_delimiter = ',', default_value = "dominating-hadwiger")]
        checks: Vec<Check>,
        /// none or 2k2-free.
        #[arg(long, default_value = "none")]
        filter: Filter,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Per-graph time budget in milliseconds.
        #[arg(long, default_value_t = 10_000)]
        budget_ms: u64,
        #[arg(long, default_value_t = 64)]
        chunk_size: usize,
        /// Write records here instead of standard output (truncated back to
        /// the checkpoint on resume).
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MINOR_CAP)]
        max_vertices: usize,
    },
}

#[derive(Args)]
struct GraphInput {
    /// Inline graph (graph6 unless --format edges).
    #[arg(conflicts_with = "file", required_unless_present = "file")]
    graph: Option<String>,
    /// Read the graph from a file (- for standard input).
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = InFormat::Auto)]
    format: InFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InFormat {
    Auto,
    G6,
    Edges,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    G6,
    Edges,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Dominating,
    Micu,
}

struct Failure {
    kind: &'static str,
    message: String,
    extra: Value,
}

impl Failure {
    fn new(kind: &'static str, message: impl ToString) -> Failure {
        Failure { kind, message: message.to_string(), extra: Value::Null }
    }
}

impl From<ExactError> for Failure {
    fn from(e: ExactError) -> Failure {
        let kind = match e {
            ExactError::Capacity { .. } => "capacity",
            ExactError::Timeout => "timeout",
            ExactError::InvalidArgument(_) => "invalid-argument",
        };
        Failure::new(kind, e)
    }
}

impl From<ExtractionError> for Failure {
    fn from(e: ExtractionError) -> Failure {
        match &e {
            ExtractionError::NotTwoK2Free { witness } => {
                Failure { kind: "not-2k2-free", message: e.to_string(), extra: json!({ "witness": witness }) }
            }
            _ => Failure::new("extraction", e),
        }
    }
}

/// A successful run: JSON body, its plain rendering, and the exit code.
struct Output {
    json: Value,
    plain: String,
    code: u8,
}

impl Output {
    fn ok(schema: &str, mut json: Value, plain: String) -> Output {
        json.as_object_mut().expect("object").insert("schema".into(), json!(schema));
        Output { json, plain, code: 0 }
    }
}

fn read_source(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::new("io", format!("standard input: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::new("io", format!("{}: {e}", path.display())))
}

impl GraphInput {
    fn load(&self) -> Result<Graph, Failure> {
        let text = match (&self.graph, &self.file) {
            (Some(g), _) => g.clone(),
            (None, Some(path)) => read_source(path)?,
            (None, None) => return Err(Failure::new("usage", "no graph given")),
        };
        let format = match self.format {
            // graph6 bytes are all ≥ 63, so a leading digit means an edge list.
            InFormat::Auto if text.trim_start().starts_with(|c: char| c.is_ascii_digit()) => InFormat::Edges,
            InFormat::Auto => InFormat::G6,
            f => f,
        };
        match format {
            InFormat::Edges => Graph::parse_edge_list(&text).map_err(|e| Failure::new("parse", e)),
            _ => {
                let lines: Vec<&str> =
                    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
                match lines.as_slice() {
                    [one] => parse_graph6(one).map_err(|e| Failure::new("parse", e)),
                    [] => Err(Failure::new("parse", "no graph6 line in input")),
                    more => Err(Failure::new("parse", format!("expected one graph, found {} lines", more.len()))),
                }
            }
        }
    }
}

fn sets_plain(model: &MinorModel) -> String {
    model.sets.iter().map(|s| s.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("\n")
}

fn analyze(g: &Graph, max_vertices: usize) -> Result<Output, Failure> {
    if g.n() > max_vertices {
        return Err(ExactError::Capacity { n: g.n(), cap: max_vertices }.into());
    }
    let chi = optimal_coloring(g).chi;
    let omega = clique_number(g);
    let alpha = independence_number(g);
    let two_k2 = find_2k2(g);
    let patterns = json!({
        "2k2": two_k2,
        "banner": find_banner(g),
        "c4": find_induced_cycle(g, 4).expect("valid length"),
        "c5": find_induced_cycle(g, 5).expect("valid length"),
        "p4": find_induced(g, &Pattern::path(4)),
    });
    let body = json!({
        "n": g.n(),
        "m": g.edge_count(),
        "chi": chi,
        "omega": omega,
        "alpha": alpha,
        "is_2k2_free": two_k2.is_none(),
        "is_split": is_split_graph(g),
        "found_patterns": patterns,
    });
    let mut plain = String::new();
    for key in ["n", "m", "chi", "omega", "alpha", "is_2k2_free", "is_split"] {
        plain.push_str(&format!("{key} {}\n", body[key]));
    }
    for (name, emb) in patterns.as_object().expect("object") {
        if !emb.is_null() {
            plain.push_str(&format!("pattern {name} {}\n", emb));
        }
    }
    Ok(Output::ok("domclique.analyze/1", body, plain.trim_end().to_string()))
}

fn extract(g: &Graph, mode: Mode, trace: Option<&PathBuf>, shortcut: bool) -> Result<Output, Failure> {
    let (chi, model, events) = match mode {
        Mode::Dominating => {
            let opts = ExtractOptions { clique_shortcut: shortcut, ..ExtractOptions::default() };
            let e = extract_dominating_with(g, &opts)?;
            (e.chi, e.model, Some(e.trace))
        }
        Mode::Micu => {
            let model = extract_micu_minor(g)?;
            (model.len(), model, None)
        }
    };
    if let (Some(path), Some(events)) = (trace, &events) {
        let doc = json!({ "schema": "domclique.trace/1", "events": events });
        let text = serde_json::to_string_pretty(&doc).expect("trace serialises");
        fs::write(path, text + "\n").map_err(|e| Failure::new("io", format!("{}: {e}", path.display())))?;
    }
    let verdict = match mode {
        Mode::Dominating => verify_dominating_model(g, &model),
        Mode::Micu => verify_ordinary_model(g, &model),
    };
    let mode_name = if mode == Mode::Dominating { "dominating" } else { "micu" };
    let plain = format!("chi {chi}\nvalid {}\n{}", verdict.is_ok(), sets_plain(&model));
    let mut out = Output::ok(
        "domclique.extract/1",
        json!({ "mode": mode_name, "chi": chi, "model": model, "valid": verdict.is_ok(), "violation": verdict.err() }),
        plain,
    );
    if out.json["valid"] != json!(true) {
        out.code = 2;
    }
    Ok(out)
}

fn verify(g: &Graph, model_arg: &str, ordinary: bool) -> Result<Output, Failure> {
    let text = match model_arg.strip_prefix('@') {
        Some(path) => read_source(&PathBuf::from(path))?,
        None => model_arg.to_string(),
    };
    let model: MinorModel = serde_json::from_str(&text).map_err(|e| Failure::new("model-json", e))?;
    let verdict = if ordinary { verify_ordinary_model(g, &model) } else { verify_dominating_model(g, &model) };
    let plain = match &verdict {
        Ok(()) => "valid".to_string(),
        Err(v) => format!("invalid: {v}"),
    };
    let kind = if ordinary { "ordinary" } else { "dominating" };
    let mut out = Output::ok(
        "domclique.verify/1",
        json!({ "kind": kind, "valid": verdict.is_ok(), "violation": verdict.as_ref().err() }),
        plain,
    );
    if verdict.is_err() {
        out.code = 2;
    }
    Ok(out)
}

fn hd(g: &Graph, max_vertices: usize) -> Result<Output, Failure> {
    let limits = SearchLimits { max_vertices, deadline: None };
    let (hd, witness) = dominating_hadwiger_number(g, &limits)?;
    let plain = format!("{hd}\n{}", sets_plain(&witness));
    Ok(Output::ok("domclique.hd/1", json!({ "hd": hd, "witness": witness }), plain.trim_end().to_string()))
}

fn gen(family: &str, params: &[usize], seed: Option<u64>, p: f64) -> Result<Output, Failure> {
    let random = matches!(family, "random-gnp" | "random-2k2-free" | "random-planted-2k2-free");
    let g = if random {
        let seed = seed.ok_or_else(|| Failure::new("usage", format!("{family} needs an explicit --seed")))?;
        let [n] = params else {
            return Err(Failure::new("usage", format!("{family} takes exactly one parameter n")));
        };
        match family {
            "random-gnp" => random_gnp(*n, p, seed),
            "random-2k2-free" => random_2k2_free(*n, p, seed),
            _ => random_planted_2k2_free(*n, p, seed),
        }
    } else {
        generators::family(family, params)
    }
    .map_err(|e| Failure::new("generator", e))?;
    let g6 = emit_graph6(&g).map_err(|e| Failure::new("encode", e))?;
    let body = json!({
        "family": family,
        "params": params,
        "seed": if random { json!(seed) } else { Value::Null },
        "n": g.n(),
        "m": g.edge_count(),
        "graph6": g6,
    });
    Ok(Output::ok("domclique.gen/1", body, g6))
}

fn convert(g: &Graph, to: OutFormat) -> Result<Output, Failure> {
    let (name, text) = match to {
        OutFormat::G6 => ("g6", emit_graph6(g).map_err(|e| Failure::new("encode", e))?),
        OutFormat::Edges => ("edges", g.to_edge_list()),
        OutFormat::Dot => ("dot", g.to_dot()),
    };
    let plain = text.trim_end().to_string();
    Ok(Output::ok("domclique.convert/1", json!({ "format": name, "text": text }), plain))
}

#[allow(clippy::too_many_arguments)]
fn hunt(
    input: &str,
    checks: Vec<Check>,
    filter: Filter,
    workers: usize,
    checkpoint: Option<PathBuf>,
    budget_ms: u64,
    chunk_size: usize,
    output: Option<PathBuf>,
    max_vertices: usize,
) -> Result<Output, Failure> {
    let source = if input == "-" { InputSource::Stdin } else { InputSource::File(PathBuf::from(input)) };
    let mut cfg = HuntConfig::new(source);
    cfg.checks = checks;
    cfg.filter = filter;
    cfg.workers = workers;
    cfg.checkpoint = checkpoint;
    cfg.budget = Duration::from_millis(budget_ms);
    cfg.chunk_size = chunk_size;
    cfg.max_vertices = max_vertices;
    let summary = match &output {
        Some(path) => run_hunt_to_file(&cfg, path),
        None => run_hunt(&cfg, &mut io::stdout().lock()),
    }
    .map_err(|e| Failure::new("hunt", e))?;
    let code = summary.exit_code() as u8;
    let mut plain = format!("records {}\n", summary.records);
    for (verdict, count) in &summary.counts {
        plain.push_str(&format!("{} {count}\n", verdict.name()));
    }
    for g6 in &summary.counterexamples {
        plain.push_str(&format!("counterexample {g6}\n"));
    }
    let json = serde_json::to_value(&summary).expect("summary serialises");
    Ok(Output { json, plain: plain.trim_end().to_string(), code })
}

fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Analyze { input, max_vertices } => analyze(&input.load()?, max_vertices),
        Command::Extract { input, mode, trace, no_clique_shortcut } => {
            extract(&input.load()?, mode, trace.as_ref(), !no_clique_shortcut)
        }
        Command::Verify { input, model, ordinary } => verify(&input.load()?, &model, ordinary),
        Command::Hd { input, max_vertices } => hd(&input.load()?, max_vertices),
        Command::Gen { family, params, seed, p } => gen(&family, &params, seed, p),
        Command::Convert { input, to } => convert(&input.load()?, to),
        Command::Hunt { input, checks, filter, workers, checkpoint, budget_ms, chunk_size, output, max_vertices } => {
            hunt(&input, checks, filter, workers, checkpoint, budget_ms, chunk_size, output, max_vertices)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let plain = cli.plain;
    let mut stdout = io::stdout().lock();
    match run(cli) {
        Ok(out) => {
            let text = if plain { out.plain } else { out.json.to_string() };
            let _ = writeln!(stdout, "{text}");
            ExitCode::from(out.code)
        }
        Err(f) => {
            if plain {
                eprintln!("error: {}", f.message);
            } else {
                let mut body = json!({ "schema": "domclique.error/1", "error": f.kind, "message": f.message });
                if let Value::Object(extra) = f.extra {
                    body.as_object_mut().expect("object").extend(extra);
                }
                let _ = writeln!(stdout, "{body}");
            }
            ExitCode::from(1)
        }
    }
}
