//! Corpus-scale check that χ(G) never exceeds the dominating Hadwiger number.
//!
//! Input is one graph6 string per line; every graph line yields exactly one
//! JSONL [`HuntRecord`], written in input order. Work is processed in batches
//! of `workers × chunk_size` lines; after each batch the records are flushed
//! and the byte offset of the next unread line is saved to the checkpoint, so
//! an interrupted run restarts where the last flushed batch ended.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufRead, BufReader, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::{
    has_dominating_kt, has_kt_minor, k_colorable, optimal_coloring_until, verify_dominating_model,
    verify_ordinary_model, ExactError, SearchLimits, DEFAULT_MINOR_CAP,
};
use crate::extraction::{extract_dominating, extract_micu_minor};
use crate::graph::Graph;
use crate::graph6::{emit_graph6, parse_graph6};
use crate::patterns::find_2k2;

pub const SUMMARY_SCHEMA: &str = "domclique.hunt-summary/1";

#[derive(Debug, Error)]
pub enum HuntError {
    #[error("invalid hunt configuration: {0}")]
    Config(String),
    #[error("i/o error on {what}: {source}")]
    Io {
        what: String,
        #[source]
        source: io::Error,
    },
    #[error("unreadable checkpoint {path}: {msg}")]
    Checkpoint { path: PathBuf, msg: String },
}

fn io_err(what: impl Into<String>) -> impl FnOnce(io::Error) -> HuntError {
    let what = what.into();
    move |source| HuntError::Io { what, source }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// `has_dominating_kt(g, χ)` must find a model.
    DominatingHadwiger,
    /// The constructive extractor, on 2K2-free graphs only.
    Extract,
    /// Ordinary `K_χ` via induced-P4 peeling, on 2K2-free graphs only.
    Micu,
    /// Dominating and ordinary `K_t` minors coincide for `t ≤ 3`.
    T3Equivalence,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::DominatingHadwiger, Check::Extract, Check::Micu, Check::T3Equivalence];

    pub fn name(self) -> &'static str {
        match self {
            Check::DominatingHadwiger => "dominating-hadwiger",
            Check::Extract => "extract",
            Check::Micu => "micu",
            Check::T3Equivalence => "t3-equivalence",
        }
    }

    fn needs_minor_search(self) -> bool {
        matches!(self, Check::DominatingHadwiger | Check::T3Equivalence)
    }
}

impl FromStr for Check {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check {s:?} (expected one of dominating-hadwiger, extract, micu, t3-equivalence)"))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    #[default]
    None,
    TwoK2Free,
}

impl FromStr for Filter {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "none" => Ok(Filter::None),
            "2k2-free" => Ok(Filter::TwoK2Free),
            _ => Err(format!("unknown filter {s:?} (expected none or 2k2-free)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputSource {
    File(PathBuf),
    Stdin,
}

#[derive(Debug, Clone)]
pub struct HuntConfig {
    pub input: InputSource,
    pub checks: Vec<Check>,
    pub filter: Filter,
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
    /// Wall-clock budget per graph, shared by all its checks.
    pub budget: Duration,
    /// Lines handed to one worker per batch.
    pub chunk_size: usize,
    /// Graphs above this order get a `capacity` verdict for the minor checks.
    pub max_vertices: usize,
}

impl HuntConfig {
    pub fn new(input: InputSource) -> HuntConfig {
        HuntConfig {
            input,
            checks: vec![Check::DominatingHadwiger],
            filter: Filter::None,
            workers: 1,
            checkpoint: None,
            budget: Duration::from_secs(10),
            chunk_size: 64,
            max_vertices: DEFAULT_MINOR_CAP,
        }
    }

    fn validate(&self) -> Result<(), HuntError> {
        if self.workers == 0 {
            return Err(HuntError::Config("worker count must be at least 1".into()));
        }
        if self.budget.is_zero() {
            return Err(HuntError::Config("time budget must be positive".into()));
        }
        if self.chunk_size == 0 {
            return Err(HuntError::Config("chunk size must be at least 1".into()));
        }
        if self.checks.is_empty() {
            return Err(HuntError::Config("no checks requested".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Counterexample,
    SkippedFilter,
    Timeout,
    Capacity,
    /// A secondary check (extractor, Micu, t ≤ 3 equivalence) produced a wrong
    /// answer.
    CheckFailed,
    ParseError,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Counterexample => "counterexample",
            Verdict::SkippedFilter => "skipped-filter",
            Verdict::Timeout => "timeout",
            Verdict::Capacity => "capacity",
            Verdict::CheckFailed => "check-failed",
            Verdict::ParseError => "parse-error",
        }
    }

    // Which verdict wins when several checks disagree.
    fn severity(self) -> u8 {
        match self {
            Verdict::Holds | Verdict::SkippedFilter | Verdict::ParseError => 0,
            Verdict::Capacity => 1,
            Verdict::Timeout => 2,
            Verdict::CheckFailed => 3,
            Verdict::Counterexample => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HuntRecord {
    /// 1-based input line number; the sort key.
    pub line: u64,
    pub graph6: String,
    pub n: Option<usize>,
    pub chi: Option<usize>,
    pub verdict: Verdict,
    pub detail: Option<Value>,
    pub elapsed: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub filter: Filter,
    pub budget: Option<Duration>,
    pub max_vertices: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { filter: Filter::None, budget: None, max_vertices: DEFAULT_MINOR_CAP }
    }
}

/// Runs `checks` on one graph. Never panics on timeouts or oversize input;
/// those become verdicts. `line` is 0 for graphs that did not come from a
/// corpus.
pub fn check_graph(g: &Graph, checks: &[Check], opts: &CheckOptions) -> HuntRecord {
    let start = Instant::now();
    let graph6 = emit_graph6(g).unwrap_or_default();
    let (chi, verdict, detail) = evaluate(g, checks, opts, start);
    HuntRecord {
        line: 0,
        graph6,
        n: Some(g.n()),
        chi,
        verdict,
        detail,
        elapsed: start.elapsed().as_millis() as u64,
    }
}

fn evaluate(g: &Graph, checks: &[Check], opts: &CheckOptions, start: Instant) -> (Option<usize>, Verdict, Option<Value>) {
    let witness = find_2k2(g);
    if opts.filter == Filter::TwoK2Free {
        if let Some(w) = witness {
            return (None, Verdict::SkippedFilter, Some(json!({ "two_k2": w })));
        }
    }
    let deadline = opts.budget.map(|b| start + b);
    if g.n() > opts.max_vertices && checks.iter().any(|c| c.needs_minor_search()) {
        let detail = json!({ "error": ExactError::Capacity { n: g.n(), cap: opts.max_vertices }.to_string() });
        return (None, Verdict::Capacity, Some(detail));
    }
    let coloring = match optimal_coloring_until(g, deadline) {
        Ok(c) => c,
        Err(e) => return (None, verdict_of(&e), Some(json!({ "error": e.to_string(), "stage": "coloring" }))),
    };
    let chi = coloring.chi;
    let limits = SearchLimits { max_vertices: opts.max_vertices, deadline };

    let mut verdict = Verdict::Holds;
    let mut detail = serde_json::Map::new();
    let mut worst = |v: Verdict| {
        if v.severity() > verdict.severity() {
            verdict = v;
        }
    };
    let mut seen = Vec::new();
    for &check in checks {
        if seen.contains(&check) {
            continue;
        }
        seen.push(check);
        let (v, d) = match check {
            Check::DominatingHadwiger => dominating_check(g, chi, &limits),
            Check::Extract | Check::Micu if witness.is_some() => {
                (Verdict::Holds, json!({ "status": "not-applicable", "two_k2": witness }))
            }
            Check::Extract => extract_check(g, chi),
            Check::Micu => micu_check(g, chi),
            Check::T3Equivalence => t3_check(g, &limits),
        };
        worst(v);
        detail.insert(check.name().to_string(), d);
    }
    (Some(chi), verdict, Some(Value::Object(detail)))
}

fn verdict_of(e: &ExactError) -> Verdict {
    match e {
        ExactError::Capacity { .. } => Verdict::Capacity,
        ExactError::Timeout => Verdict::Timeout,
        ExactError::InvalidArgument(_) => Verdict::CheckFailed,
    }
}

fn dominating_check(g: &Graph, chi: usize, limits: &SearchLimits) -> (Verdict, Value) {
    if chi == 0 {
        return (Verdict::Holds, json!({ "model": [] }));
    }
    match has_dominating_kt(g, chi, limits) {
        Ok(Some(model)) => (Verdict::Holds, json!({ "t": chi, "model": model })),
        Ok(None) => certify(g, limits.max_vertices),
        Err(e) => (verdict_of(&e), json!({ "t": chi, "error": e.to_string() })),
    }
}

// Recomputes everything with the time budget removed; a counterexample is
// only reported with a χ-colouring, an exhausted (χ−1)-colouring search and
// an exhausted dominating K_χ search.
fn certify(g: &Graph, max_vertices: usize) -> (Verdict, Value) {
    let limits = SearchLimits { max_vertices, deadline: None };
    let coloring = optimal_coloring_until(g, None).expect("no deadline");
    let chi = coloring.chi;
    let lower = k_colorable(g, chi - 1, None).expect("no deadline");
    let again = has_dominating_kt(g, chi, &limits).expect("within cap, no deadline");
    match (lower.coloring, again) {
        (None, None) => (
            Verdict::Counterexample,
            json!({
                "t": chi,
                "coloring": coloring.colors,
                "exhausted_coloring_search": { "k": chi - 1, "nodes": lower.nodes },
                "dominating_search": { "t": chi, "model": null },
            }),
        ),
        (_, Some(model)) => (Verdict::Holds, json!({ "t": chi, "model": model, "recheck": true })),
        (Some(_), None) => (
            Verdict::CheckFailed,
            json!({ "t": chi, "error": "colouring solver returned a non-optimal χ" }),
        ),
    }
}

fn extract_check(g: &Graph, chi: usize) -> (Verdict, Value) {
    match extract_dominating(g) {
        Ok(model) => {
            let verdict = verify_dominating_model(g, &model);
            let ok = verdict.is_ok() && model.len() == chi;
            let v = if ok { Verdict::Holds } else { Verdict::CheckFailed };
            (v, json!({ "model": model, "valid": verdict.is_ok(), "sets": model.len() }))
        }
        Err(e) => (Verdict::CheckFailed, json!({ "error": e.to_string() })),
    }
}

fn micu_check(g: &Graph, chi: usize) -> (Verdict, Value) {
    match extract_micu_minor(g) {
        Ok(model) => {
            let verdict = verify_ordinary_model(g, &model);
            let ok = verdict.is_ok() && model.len() == chi;
            let v = if ok { Verdict::Holds } else { Verdict::CheckFailed };
            (v, json!({ "model": model, "valid": verdict.is_ok(), "sets": model.len() }))
        }
        Err(e) => (Verdict::CheckFailed, json!({ "error": e.to_string() })),
    }
}

fn t3_check(g: &Graph, limits: &SearchLimits) -> (Verdict, Value) {
    let mut rows = Vec::new();
    let mut verdict = Verdict::Holds;
    for t in 1..=3 {
        let dominating = has_dominating_kt(g, t, limits).map(|m| m.is_some());
        let ordinary = has_kt_minor(g, t, limits).map(|m| m.is_some());
        match (dominating, ordinary) {
            (Ok(d), Ok(o)) => {
                if d != o {
                    verdict = Verdict::CheckFailed;
                }
                rows.push(json!({ "t": t, "dominating": d, "ordinary": o }));
            }
            (Err(e), _) | (_, Err(e)) => {
                return (verdict_of(&e), json!({ "t": t, "error": e.to_string() }));
            }
        }
    }
    (verdict, Value::Array(rows))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HuntSummary {
    pub schema: String,
    /// Lines skipped because an earlier run had checkpointed past them.
    pub resumed_from_line: u64,
    pub records: u64,
    pub counts: BTreeMap<Verdict, u64>,
    /// Graph6 strings, in input order.
    pub counterexamples: Vec<String>,
    pub check_failures: Vec<u64>,
    pub elapsed_ms: u64,
    pub graphs_per_sec: f64,
}

impl HuntSummary {
    /// 2 for a counterexample, 1 for a failed secondary check, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        if !self.counterexamples.is_empty() {
            2
        } else if !self.check_failures.is_empty() {
            1
        } else {
            0
        }
    }

    pub fn count(&self, v: Verdict) -> u64 {
        self.counts.get(&v).copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
struct Checkpoint {
    /// Byte offset of the first unprocessed input line.
    offset: u64,
    line: u64,
    /// Bytes of record output belonging to the processed lines.
    #[serde(default)]
    output_len: u64,
}

fn load_checkpoint(path: &Path) -> Result<Checkpoint, HuntError> {
    match fs::read_to_string(path) {
        Ok(text) => serde_json::from_str(&text)
            .map_err(|e| HuntError::Checkpoint { path: path.to_path_buf(), msg: e.to_string() }),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(Checkpoint::default()),
        Err(e) => Err(HuntError::Io { what: path.display().to_string(), source: e }),
    }
}

fn save_checkpoint(path: &Path, cp: Checkpoint) -> Result<(), HuntError> {
    let tmp = path.with_extension("tmp");
    let text = serde_json::to_string(&cp).expect("plain struct");
    fs::write(&tmp, text).map_err(io_err(tmp.display().to_string()))?;
    fs::rename(&tmp, path).map_err(io_err(path.display().to_string()))
}

struct Item {
    line: u64,
    text: String,
}

fn initial_checkpoint(cfg: &HuntConfig) -> Result<Checkpoint, HuntError> {
    match &cfg.checkpoint {
        Some(path) => load_checkpoint(path),
        None => Ok(Checkpoint::default()),
    }
}

/// Streams the configured corpus, writing one JSON line per graph to `sink`.
///
/// On resume, records of a batch that was interrupted mid-write may appear
/// twice in `sink`; [`run_hunt_to_file`] avoids that.
pub fn run_hunt(cfg: &HuntConfig, sink: &mut dyn Write) -> Result<HuntSummary, HuntError> {
    cfg.validate()?;
    let cp = initial_checkpoint(cfg)?;
    run_from(cfg, cp, sink)
}

/// Like [`run_hunt`], writing records to `path`. A resumed run first cuts the
/// file back to the length recorded with the checkpoint, so the file always
/// holds exactly one record per processed line.
pub fn run_hunt_to_file(cfg: &HuntConfig, path: &Path) -> Result<HuntSummary, HuntError> {
    cfg.validate()?;
    let cp = initial_checkpoint(cfg)?;
    let what = path.display().to_string();
    let mut f = fs::OpenOptions::new().create(true).write(true).truncate(false).open(path).map_err(io_err(&*what))?;
    f.set_len(cp.output_len).map_err(io_err(&*what))?;
    f.seek(SeekFrom::End(0)).map_err(io_err(&*what))?;
    run_from(cfg, cp, &mut f)
}

fn run_from(cfg: &HuntConfig, cp: Checkpoint, sink: &mut dyn Write) -> Result<HuntSummary, HuntError> {
    let started = Instant::now();
    let mut reader: Box<dyn BufRead> = match &cfg.input {
        InputSource::File(path) => {
            let mut f = fs::File::open(path).map_err(io_err(path.display().to_string()))?;
            f.seek(SeekFrom::Start(cp.offset)).map_err(io_err(path.display().to_string()))?;
            Box::new(BufReader::new(f))
        }
        InputSource::Stdin => {
            let mut r = BufReader::new(io::stdin());
            io::copy(&mut (&mut r).take(cp.offset), &mut io::sink()).map_err(io_err("standard input"))?;
            Box::new(r)
        }
    };

    let opts = CheckOptions { filter: cfg.filter, budget: Some(cfg.budget), max_vertices: cfg.max_vertices };
    let batch_len = cfg.workers * cfg.chunk_size;
    let mut summary = HuntSummary {
        schema: SUMMARY_SCHEMA.to_string(),
        resumed_from_line: cp.line,
        records: 0,
        counts: BTreeMap::new(),
        counterexamples: Vec::new(),
        check_failures: Vec::new(),
        elapsed_ms: 0,
        graphs_per_sec: 0.0,
    };
    let mut offset = cp.offset;
    let mut line_no = cp.line;
    let mut output_len = cp.output_len;
    let mut buf = String::new();
    loop {
        let mut batch = Vec::with_capacity(batch_len);
        let mut eof = false;
        while batch.len() < batch_len {
            buf.clear();
            let read = reader.read_line(&mut buf).map_err(io_err("corpus"))?;
            if read == 0 {
                eof = true;
                break;
            }
            offset += read as u64;
            line_no += 1;
            let text = buf.trim_end_matches(['\n', '\r']).trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            batch.push(Item { line: line_no, text: text.to_string() });
        }

        let records = process_batch(&batch, &cfg.checks, &opts, cfg.chunk_size);
        let mut out = String::new();
        for r in &records {
            out.push_str(&serde_json::to_string(r).expect("record serialises"));
            out.push('\n');
            summary.records += 1;
            *summary.counts.entry(r.verdict).or_default() += 1;
            match r.verdict {
                Verdict::Counterexample => summary.counterexamples.push(r.graph6.clone()),
                Verdict::CheckFailed => summary.check_failures.push(r.line),
                _ => {}
            }
        }
        sink.write_all(out.as_bytes()).map_err(io_err("record output"))?;
        sink.flush().map_err(io_err("record output"))?;
        output_len += out.len() as u64;
        if let Some(path) = &cfg.checkpoint {
            save_checkpoint(path, Checkpoint { offset, line: line_no, output_len })?;
        }
        if eof {
            break;
        }
    }
    let elapsed = started.elapsed();
    summary.elapsed_ms = elapsed.as_millis() as u64;
    summary.graphs_per_sec = summary.records as f64 / elapsed.as_secs_f64().max(1e-9);
    Ok(summary)
}

fn process_batch(batch: &[Item], checks: &[Check], opts: &CheckOptions, chunk: usize) -> Vec<HuntRecord> {
    if batch.len() <= chunk {
        return batch.iter().map(|it| process_line(it, checks, opts)).collect();
    }
    thread::scope(|s| {
        let handles: Vec<_> = batch
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|it| process_line(it, checks, opts)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("hunt worker panicked")).collect()
    })
}

fn process_line(item: &Item, checks: &[Check], opts: &CheckOptions) -> HuntRecord {
    match parse_graph6(&item.text) {
        Ok(g) => HuntRecord { line: item.line, graph6: item.text.clone(), ..check_graph(&g, checks, opts) },
        Err(e) => HuntRecord {
            line: item.line,
            graph6: item.text.clone(),
            n: None,
            chi: None,
            verdict: Verdict::ParseError,
            detail: Some(json!({ "error": e.to_string() })),
            elapsed: 0,
        },
    }
}
