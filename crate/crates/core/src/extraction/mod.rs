//! Constructive dominating clique minors for 2K2-free graphs.
//!
//! The extractor is a recursion over reduction steps. Each step removes a
//! vertex set `U` together with an explicit proper `c`-colouring of `G[U]` and
//! `c` disjoint connected sets `D_1..D_c ⊆ U` that form a dominating `K_c`
//! model and are each dominated by every vertex left in `G - U`. Because
//! `χ(G - U) >= χ(G) - c`, recursing on `G - U` and appending its last
//! `χ(G) - c` branch sets gives `χ(G)` sets; any suffix of a dominating model is
//! again dominating, so trimming never breaks validity.
//!
//! Which step applies follows a fixed dispatch: small-χ bases, split graphs,
//! the clique shortcut, then the C5-free branches (banner, induced C4) and the
//! C5 branches (low-degree vertex, degenerate neighbourhood classes, and the
//! final pairing construction). Branches that "cannot happen" on 2K2-free
//! input are checked and reported as [`ExtractionError::Internal`].

use serde::Serialize;
use thiserror::Error;

use crate::exact::{chromatic_number, max_clique, verify_dominating_model, MinorModel, Violation};
use crate::graph::{Graph, VertexSet};
use crate::patterns::{find_2k2, is_split_graph};

mod micu;
mod steps;

pub use micu::extract_micu_minor;
pub use steps::{
    build_c5_partition, c4_reduction, claim1_banner, final_reduction, low_degree_c5_reduction, low_degree_pair,
    Claim1, PartitionPhase,
};

/// Default cap on induced 5-cycles enumerated by the low-degree scan.
pub const DEFAULT_C5_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy)]
pub struct ExtractOptions {
    /// Return a maximum clique as singletons whenever `ω >= χ`.
    pub clique_shortcut: bool,
    pub c5_cap: usize,
    /// Re-verify the model built at every recursion level, not just the last.
    pub verify_intermediate: bool,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions {
            clique_shortcut: true,
            c5_cap: DEFAULT_C5_CAP,
            verify_intermediate: cfg!(debug_assertions),
        }
    }
}

/// One branch taken during extraction. Vertex ids are those of the input graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceEvent {
    pub depth: usize,
    pub claim: &'static str,
    pub n: usize,
    pub chi: usize,
    pub removed: Vec<usize>,
    pub prefix: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extraction {
    pub chi: usize,
    pub model: MinorModel,
    pub trace: Vec<TraceEvent>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtractionError {
    #[error("input is not 2K2-free: edges {}-{} and {}-{} induce 2K2", .witness[0], .witness[1], .witness[2], .witness[3])]
    NotTwoK2Free { witness: [usize; 4] },
    #[error("internal error in {claim}: {detail}")]
    Internal { claim: &'static str, detail: String, trace: Vec<TraceEvent> },
    #[error("more than {limit} induced 5-cycles enumerated")]
    CostCap { limit: usize },
    #[error("residual model has {got} sets but {quota} are needed")]
    Quota { quota: usize, got: usize },
    #[error("constructed model fails verification: {0}")]
    Unverified(Violation),
}

pub(crate) fn internal(claim: &'static str, detail: impl Into<String>) -> ExtractionError {
    ExtractionError::Internal { claim, detail: detail.into(), trace: Vec::new() }
}

/// A single reduction: remove `removed`, prepend `prefix`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub claim: &'static str,
    pub removed: VertexSet,
    pub prefix: Vec<VertexSet>,
    /// Proper colouring of `G[removed]` with `prefix.len()` classes.
    pub coloring: Vec<VertexSet>,
    pub witness: Option<serde_json::Value>,
    /// Banner steps passed through on the way here that ended in `T`.
    pub structures: Vec<BannerStructure>,
}

/// A banner `(b1, b2, b3, b; b')` extended by adjacent `b4, b5` to the graph `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BannerStructure {
    pub banner: [usize; 5],
    pub b4: usize,
    pub b5: usize,
}

impl Reduction {
    /// Checks every local fact the recursion relies on.
    pub fn validate(&self, g: &Graph) -> Result<(), ExtractionError> {
        let fail = |d: String| Err(internal(self.claim, d));
        if self.removed.is_empty() {
            return fail("reduction removes no vertices".into());
        }
        if self.coloring.len() != self.prefix.len() {
            return fail(format!("{} colour classes for {} prefix sets", self.coloring.len(), self.prefix.len()));
        }
        let mut covered = VertexSet::new();
        for class in &self.coloring {
            if covered.intersects(class) || !g.is_independent(class) {
                return fail(format!("colour class {:?} overlaps or is not independent", class));
            }
            covered = covered.union(class);
        }
        if covered != self.removed {
            return fail(format!("colouring covers {:?}, removed set is {:?}", covered, self.removed));
        }
        let prefix_model = MinorModel::from_sets(&self.prefix);
        if let Err(v) = verify_dominating_model(g, &prefix_model) {
            return fail(format!("prefix is not a dominating model: {v}"));
        }
        let residual = g.vertices().difference(&self.removed);
        for (i, d) in self.prefix.iter().enumerate() {
            if !d.is_subset(&self.removed) {
                return fail(format!("prefix set {} leaves the removed set", i + 1));
            }
            if let Some(v) = residual.difference(&g.neighborhood_of(d)).first() {
                return fail(format!("residual vertex {v} has no neighbour in prefix set {}", i + 1));
            }
        }
        Ok(())
    }
}

/// Concatenates `prefix` with the last `quota` sets of `residual`.
pub fn lift_model(prefix: &MinorModel, residual: &MinorModel, quota: usize) -> Result<MinorModel, ExtractionError> {
    if residual.len() < quota {
        return Err(ExtractionError::Quota { quota, got: residual.len() });
    }
    let mut sets = prefix.sets.clone();
    sets.extend(residual.suffix(quota).sets);
    Ok(MinorModel { sets })
}

pub fn extract_dominating(g: &Graph) -> Result<MinorModel, ExtractionError> {
    extract_dominating_with(g, &ExtractOptions::default()).map(|e| e.model)
}

/// Extracts a verified dominating model with exactly `χ(g)` branch sets.
pub fn extract_dominating_with(g: &Graph, opts: &ExtractOptions) -> Result<Extraction, ExtractionError> {
    if let Some(witness) = find_2k2(g) {
        return Err(ExtractionError::NotTwoK2Free { witness });
    }
    let mut ex = Extractor::new(*opts);
    let labels: Vec<usize> = (0..g.n()).collect();
    let sets = match ex.solve(g, &labels, 0) {
        Ok(sets) => sets,
        Err(e) => return Err(ex.attach_trace(e)),
    };
    let chi = ex.trace.first().map_or(0, |t| t.chi);
    let model = MinorModel::from_sets(&sets);
    verify_dominating_model(g, &model).map_err(ExtractionError::Unverified)?;
    if model.len() != chi {
        return Err(ex.attach_trace(internal("result", format!("{} sets for χ = {chi}", model.len()))));
    }
    Ok(Extraction { chi, model, trace: ex.trace })
}

/// Returns a maximum clique as singletons for a split graph.
pub fn split_graph_model(g: &Graph) -> Result<MinorModel, ExtractionError> {
    if !is_split_graph(g) {
        return Err(internal("split_fallback", "input is not a split graph"));
    }
    let clique = max_clique(g);
    let chi = chromatic_number(g);
    if clique.len() != chi {
        return Err(internal("split_fallback", format!("ω = {} but χ = {chi}", clique.len())));
    }
    Ok(MinorModel::singletons(clique.iter()))
}

pub(crate) struct Extractor {
    opts: ExtractOptions,
    pub(crate) trace: Vec<TraceEvent>,
}

impl Extractor {
    pub(crate) fn new(opts: ExtractOptions) -> Extractor {
        Extractor { opts, trace: Vec::new() }
    }

    fn attach_trace(&mut self, e: ExtractionError) -> ExtractionError {
        match e {
            ExtractionError::Internal { claim, detail, .. } => {
                ExtractionError::Internal { claim, detail, trace: std::mem::take(&mut self.trace) }
            }
            other => other,
        }
    }

    fn event(&mut self, depth: usize, claim: &'static str, g: &Graph, chi: usize, labels: &[usize], r: Option<&Reduction>) {
        let map = |s: &VertexSet| s.iter().map(|v| labels[v]).collect::<Vec<_>>();
        self.trace.push(TraceEvent {
            depth,
            claim,
            n: g.n(),
            chi,
            removed: r.map_or_else(Vec::new, |r| map(&r.removed)),
            prefix: r.map_or_else(Vec::new, |r| r.prefix.iter().map(map).collect()),
            witness: r.and_then(|r| r.witness.clone()),
        });
    }

    /// Dominating model of `g` with exactly `χ(g)` sets, in `g`'s own ids.
    pub(crate) fn solve(&mut self, g: &Graph, labels: &[usize], depth: usize) -> Result<Vec<VertexSet>, ExtractionError> {
        let n = g.n();
        if n == 0 {
            self.event(depth, "base", g, 0, labels, None);
            return Ok(Vec::new());
        }
        let chi = chromatic_number(g);
        if chi == 1 {
            self.event(depth, "base", g, 1, labels, None);
            return Ok(vec![VertexSet::singleton(0)]);
        }
        if chi == 2 {
            self.event(depth, "base", g, 2, labels, None);
            let (u, v) = g.edges().next().expect("χ = 2 needs an edge");
            return Ok(vec![VertexSet::singleton(u), VertexSet::singleton(v)]);
        }
        if is_split_graph(g) {
            self.event(depth, "split_fallback", g, chi, labels, None);
            let model = split_graph_model(g)?;
            return Ok(model.sets.iter().map(|s| s.iter().collect()).collect());
        }
        if self.opts.clique_shortcut {
            let clique = max_clique(g);
            if clique.len() >= chi {
                self.event(depth, "clique_shortcut", g, chi, labels, None);
                return Ok(clique.iter().take(chi).map(VertexSet::singleton).collect());
            }
        }
        let step = steps::choose(g, &self.opts)?;
        self.apply(g, labels, depth, chi, step)
    }

    pub(crate) fn apply(
        &mut self,
        g: &Graph,
        labels: &[usize],
        depth: usize,
        chi: usize,
        step: Reduction,
    ) -> Result<Vec<VertexSet>, ExtractionError> {
        step.validate(g)?;
        for st in &step.structures {
            let witness = serde_json::json!({
                "banner": st.banner.map(|v| labels[v]),
                "b4": labels[st.b4],
                "b5": labels[st.b5],
            });
            self.trace.push(TraceEvent {
                depth,
                claim: "claim1_structure",
                n: g.n(),
                chi,
                removed: Vec::new(),
                prefix: Vec::new(),
                witness: Some(witness),
            });
        }
        self.event(depth, step.claim, g, chi, labels, Some(&step));
        let residual = g.vertices().difference(&step.removed);
        let (sub, map) = g.induced_subgraph(&residual);
        let sub_labels: Vec<usize> = map.iter().map(|&v| labels[v]).collect();
        let inner = self.solve(&sub, &sub_labels, depth + 1)?;

        let quota = chi.saturating_sub(step.prefix.len());
        if inner.len() < quota {
            return Err(ExtractionError::Quota { quota, got: inner.len() });
        }
        let mut out = step.prefix;
        out.extend(inner[inner.len() - quota..].iter().map(|s| s.iter().map(|v| map[v]).collect::<VertexSet>()));
        if out.len() > chi {
            out.drain(..out.len() - chi);
        }
        if self.opts.verify_intermediate {
            if let Err(v) = verify_dominating_model(g, &MinorModel::from_sets(&out)) {
                return Err(internal(step.claim, format!("lifted model fails verification: {v}")));
            }
        }
        Ok(out)
    }
}

/// Outcome of the banner step when run as a complete extraction.
#[derive(Debug, Clone, PartialEq)]
pub enum ClaimOutcome {
    Completed(MinorModel),
    /// Two adjacent vertices extending the banner to the 7-vertex graph `T`.
    Structure { b4: usize, b5: usize },
}

fn require_2k2_free(g: &Graph) -> Result<(), ExtractionError> {
    match find_2k2(g) {
        Some(witness) => Err(ExtractionError::NotTwoK2Free { witness }),
        None => Ok(()),
    }
}

fn complete_reduction(g: &Graph, step: Reduction, opts: &ExtractOptions) -> Result<MinorModel, ExtractionError> {
    require_2k2_free(g)?;
    let mut ex = Extractor::new(*opts);
    let labels: Vec<usize> = (0..g.n()).collect();
    let chi = chromatic_number(g);
    let sets = ex.apply(g, &labels, 0, chi, step).map_err(|e| ex.attach_trace(e))?;
    let model = MinorModel::from_sets(&sets);
    verify_dominating_model(g, &model).map_err(ExtractionError::Unverified)?;
    Ok(model)
}

/// Runs the banner step on `banner = (b1, b2, b3, b, b')`; a reduction is
/// completed into a model for all of `g`.
pub fn claim1_banner_step(g: &Graph, banner: [usize; 5], opts: &ExtractOptions) -> Result<ClaimOutcome, ExtractionError> {
    require_2k2_free(g)?;
    match claim1_banner(g, banner, "claim1_completed")? {
        Claim1::Reduction(step) => complete_reduction(g, step, opts).map(ClaimOutcome::Completed),
        Claim1::Structure { b4, b5 } => Ok(ClaimOutcome::Structure { b4, b5 }),
    }
}

/// Induced-C4 step for C5-free, banner-free graphs.
pub fn c4_reduction_step(g: &Graph, c4: [usize; 4], opts: &ExtractOptions) -> Result<MinorModel, ExtractionError> {
    require_2k2_free(g)?;
    complete_reduction(g, c4_reduction(g, c4)?, opts)
}

/// Low-degree C5 step; `(c5, x)` must minimise `|N(x) ∩ C|` globally.
pub fn low_degree_c5_step(g: &Graph, c5: [usize; 5], x: usize, opts: &ExtractOptions) -> Result<MinorModel, ExtractionError> {
    require_2k2_free(g)?;
    complete_reduction(g, low_degree_c5_reduction(g, c5, x)?, opts)
}

/// Final pairing construction over a fully structured C5 partition.
pub fn final_construction(g: &Graph, part: &C5Partition, opts: &ExtractOptions) -> Result<MinorModel, ExtractionError> {
    complete_reduction(g, final_reduction(g, part)?, opts)
}

/// The vertex classes around an induced 5-cycle once every degenerate case has
/// been ruled out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C5Partition {
    pub c5: [usize; 5],
    /// Anticomplete to the cycle.
    pub i: VertexSet,
    /// Complete to the cycle.
    pub j: VertexSet,
    /// `y[k]`: vertices missing exactly `c5[k]`.
    pub y: [VertexSet; 5],
    pub m: usize,
}
