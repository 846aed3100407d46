//! Exhaustive clique-minor search for small graphs.

use std::collections::HashSet;
use std::ops::ControlFlow;
use std::time::Instant;

use crate::exact::clique::{max_clique, max_clique_within};
use crate::exact::verify::{verify_dominating_model, verify_ordinary_model, MinorModel};
use crate::exact::{ExactError, SearchLimits};
use crate::graph::{Graph, VertexSet};

/// Visits every connected vertex set `S ⊆ within` with `|S| <= max_size`,
/// each exactly once, grouped by smallest vertex.
pub fn for_each_connected_set<F>(g: &Graph, within: &VertexSet, max_size: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(VertexSet) -> ControlFlow<()>,
{
    for v in within.iter() {
        connected_sets_rooted(g, v, &within.above(v), max_size, &mut visit)?;
    }
    ControlFlow::Continue(())
}

/// Connected sets containing `root` and otherwise drawn from `allowed`.
fn connected_sets_rooted<F>(
    g: &Graph,
    root: usize,
    allowed: &VertexSet,
    max_size: usize,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(VertexSet) -> ControlFlow<()>,
{
    if max_size == 0 {
        return ControlFlow::Continue(());
    }
    let start = VertexSet::singleton(root);
    let ext = g.neighbors(root).intersection(allowed);
    grow(g, allowed, start, ext, VertexSet::new(), max_size, visit)
}

// Classic extension scheme: `ext` holds candidates adjacent to `s`, `banned`
// holds vertices already branched on at this level or above.
fn grow<F>(
    g: &Graph,
    allowed: &VertexSet,
    s: VertexSet,
    mut ext: VertexSet,
    mut banned: VertexSet,
    max_size: usize,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(VertexSet) -> ControlFlow<()>,
{
    visit(s)?;
    if s.len() == max_size {
        return ControlFlow::Continue(());
    }
    while let Some(w) = ext.first() {
        ext.remove(w);
        let mut s2 = s;
        s2.insert(w);
        let fresh = g
            .neighbors(w)
            .intersection(allowed)
            .difference(&s2)
            .difference(&banned)
            .difference(&ext);
        grow(g, allowed, s2, ext.union(&fresh), banned, max_size, visit)?;
        banned.insert(w);
    }
    ControlFlow::Continue(())
}

fn check_limits(g: &Graph, t: usize, limits: &SearchLimits) -> Result<(), ExactError> {
    if t == 0 {
        return Err(ExactError::InvalidArgument("t must be at least 1".into()));
    }
    if g.n() > limits.max_vertices {
        return Err(ExactError::Capacity { n: g.n(), cap: limits.max_vertices });
    }
    Ok(())
}

fn expired(deadline: Option<Instant>) -> bool {
    deadline.is_some_and(|d| Instant::now() >= d)
}

/// A dominating `K_t` model in `g`, if one exists.
pub fn has_dominating_kt(g: &Graph, t: usize, limits: &SearchLimits) -> Result<Option<MinorModel>, ExactError> {
    check_limits(g, t, limits)?;
    let clique = max_clique(g);
    if clique.len() >= t {
        return Ok(Some(MinorModel::singletons(clique.iter().take(t))));
    }
    if t > g.n() {
        return Ok(None);
    }
    let mut s = DomSearch { g, deadline: limits.deadline, failed: HashSet::new(), steps: 0 };
    let found = s.find(g.vertices(), t)?;
    Ok(found.map(|sets| {
        let model = MinorModel::from_sets(&sets);
        debug_assert_eq!(verify_dominating_model(g, &model), Ok(()));
        model
    }))
}

struct DomSearch<'a> {
    g: &'a Graph,
    deadline: Option<Instant>,
    failed: HashSet<(VertexSet, usize)>,
    steps: u64,
}

impl DomSearch<'_> {
    // Dominating K_r model inside `m`: pick a connected T_1, then every later
    // vertex must be a neighbour of T_1.
    fn find(&mut self, m: VertexSet, r: usize) -> Result<Option<Vec<VertexSet>>, ExactError> {
        if m.len() < r {
            return Ok(None);
        }
        if r == 1 {
            return Ok(Some(vec![VertexSet::singleton(m.first().expect("non-empty"))]));
        }
        if self.failed.contains(&(m, r)) {
            return Ok(None);
        }
        self.steps += 1;
        if self.steps & 255 == 0 && expired(self.deadline) {
            return Err(ExactError::Timeout);
        }
        let clique = max_clique_within(self.g, &m);
        if clique.len() >= r {
            return Ok(Some(clique.iter().take(r).map(VertexSet::singleton).collect()));
        }

        let mut firsts: Vec<(VertexSet, VertexSet)> = Vec::new();
        let mut seen = HashSet::new();
        let g = self.g;
        let _ = for_each_connected_set(g, &m, m.len() - (r - 1), |t| {
            let rest = m.difference(&t).intersection(&g.neighborhood_of(&t));
            if rest.len() >= r - 1 && seen.insert(rest) {
                firsts.push((t, rest));
            }
            ControlFlow::Continue(())
        });
        for (t, rest) in firsts {
            if let Some(mut tail) = self.find(rest, r - 1)? {
                tail.insert(0, t);
                return Ok(Some(tail));
            }
        }
        self.failed.insert((m, r));
        Ok(None)
    }
}

/// Largest `t` with a dominating `K_t` model, and a witness.
pub fn dominating_hadwiger_number(g: &Graph, limits: &SearchLimits) -> Result<(usize, MinorModel), ExactError> {
    if g.n() > limits.max_vertices {
        return Err(ExactError::Capacity { n: g.n(), cap: limits.max_vertices });
    }
    let clique = max_clique(g);
    let mut best = (clique.len(), MinorModel::singletons(clique.iter()));
    while best.0 < g.n() {
        match has_dominating_kt(g, best.0 + 1, limits)? {
            Some(model) => best = (best.0 + 1, model),
            None => break,
        }
    }
    Ok(best)
}

/// An ordinary `K_t` model in `g`, if one exists.
///
/// Inside a connected graph any model extends to one whose branch sets cover
/// every vertex, so it suffices to search partitions of each component into
/// connected parts ordered by smallest vertex.
pub fn has_kt_minor(g: &Graph, t: usize, limits: &SearchLimits) -> Result<Option<MinorModel>, ExactError> {
    check_limits(g, t, limits)?;
    let clique = max_clique(g);
    if clique.len() >= t {
        return Ok(Some(MinorModel::singletons(clique.iter().take(t))));
    }
    let mut s = PartSearch { g, t, deadline: limits.deadline, steps: 0, sets: Vec::new() };
    for comp in g.components() {
        let inner = comp.iter().map(|v| g.neighbors(v).intersection(&comp).len()).sum::<usize>() / 2;
        if comp.len() < t || inner < t * (t - 1) / 2 {
            continue;
        }
        if s.part(comp)? {
            let model = MinorModel::from_sets(&s.sets);
            debug_assert_eq!(verify_ordinary_model(g, &model), Ok(()));
            return Ok(Some(model));
        }
    }
    Ok(None)
}

struct PartSearch<'a> {
    g: &'a Graph,
    t: usize,
    deadline: Option<Instant>,
    steps: u64,
    sets: Vec<VertexSet>,
}

impl PartSearch<'_> {
    fn part(&mut self, rest: VertexSet) -> Result<bool, ExactError> {
        if self.sets.len() == self.t {
            return Ok(true);
        }
        let need = self.t - self.sets.len();
        let Some(root) = rest.first() else { return Ok(false) };
        if rest.len() < need {
            return Ok(false);
        }
        self.steps += 1;
        if self.steps & 255 == 0 && expired(self.deadline) {
            return Err(ExactError::Timeout);
        }
        let g = self.g;
        let mut candidates = Vec::new();
        let _ = connected_sets_rooted(g, root, &rest.above(root), rest.len() - (need - 1), &mut |t| {
            candidates.push(t);
            ControlFlow::Continue(())
        });
        for t in candidates {
            let nt = g.neighborhood_of(&t);
            if !self.sets.iter().all(|s| s.intersects(&nt)) {
                continue;
            }
            let left = rest.difference(&t);
            if need > 1 {
                // Every chosen set still needs an edge into the remainder.
                let open = self.sets.iter().chain(std::iter::once(&t)).all(|s| g.neighborhood_of(s).intersects(&left));
                if !open {
                    continue;
                }
            }
            self.sets.push(t);
            if self.part(left)? {
                return Ok(true);
            }
            self.sets.pop();
        }
        Ok(false)
    }
}

/// Largest `t` with a `K_t` minor.
pub fn hadwiger_number(g: &Graph, limits: &SearchLimits) -> Result<(usize, MinorModel), ExactError> {
    if g.n() > limits.max_vertices {
        return Err(ExactError::Capacity { n: g.n(), cap: limits.max_vertices });
    }
    let clique = max_clique(g);
    let mut best = (clique.len(), MinorModel::singletons(clique.iter()));
    while best.0 < g.n() {
        match has_kt_minor(g, best.0 + 1, limits)? {
            Some(model) => best = (best.0 + 1, model),
            None => break,
        }
    }
    Ok(best)
}
