//! Induced-subgraph detection for the small fixed patterns the extraction
//! consumes (2K2, banner, induced cycles, P4).
//!
//! Every search is deterministic: the generic engine assigns roles in order and
//! tries host vertices in increasing order, so the first embedding found is the
//! lexicographically least one.

use std::ops::ControlFlow;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern has {template} vertices but {roles} role names")]
    RoleCount { template: usize, roles: usize },
    #[error("duplicate role name {0:?}")]
    DuplicateRole(String),
    #[error("induced cycles must have length at least 4, got {0}")]
    CycleTooShort(usize),
}

/// A template graph whose vertices carry role names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    template: Graph,
    role_names: Vec<String>,
}

impl Pattern {
    pub fn new(template: Graph, role_names: Vec<String>) -> Result<Pattern, PatternError> {
        if role_names.len() != template.n() {
            return Err(PatternError::RoleCount { template: template.n(), roles: role_names.len() });
        }
        for (i, r) in role_names.iter().enumerate() {
            if role_names[..i].contains(r) {
                return Err(PatternError::DuplicateRole(r.clone()));
            }
        }
        Ok(Pattern { template, role_names })
    }

    fn from_edges(roles: &[&str], edges: &[(usize, usize)]) -> Pattern {
        let template = Graph::from_edge_list(roles.len(), edges).expect("static pattern");
        Pattern::new(template, roles.iter().map(|r| r.to_string()).collect()).expect("static pattern")
    }

    /// Roles `(a1, a2, b1, b2)`, edges `a1a2` and `b1b2`.
    pub fn two_k2() -> Pattern {
        Pattern::from_edges(&["a1", "a2", "b1", "b2"], &[(0, 1), (2, 3)])
    }

    /// Roles `(b1, b2, b3, b, b')`: the 4-cycle `b1 b2 b3 b` plus the pendant `b'` on `b`.
    pub fn banner() -> Pattern {
        Pattern::from_edges(&["b1", "b2", "b3", "b", "b'"], &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4)])
    }

    /// Roles `v1..v{len}` in cyclic order.
    pub fn cycle(len: usize) -> Result<Pattern, PatternError> {
        if len < 3 {
            return Err(PatternError::CycleTooShort(len));
        }
        let roles: Vec<String> = (1..=len).map(|i| format!("v{i}")).collect();
        let edges: Vec<_> = (0..len).map(|i| (i, (i + 1) % len)).collect();
        let refs: Vec<&str> = roles.iter().map(String::as_str).collect();
        Ok(Pattern::from_edges(&refs, &edges))
    }

    /// Roles `v1..v{len}` along the path.
    pub fn path(len: usize) -> Pattern {
        let roles: Vec<String> = (1..=len).map(|i| format!("v{i}")).collect();
        let edges: Vec<_> = (1..len).map(|i| (i - 1, i)).collect();
        let refs: Vec<&str> = roles.iter().map(String::as_str).collect();
        Pattern::from_edges(&refs, &edges)
    }

    pub fn template(&self) -> &Graph {
        &self.template
    }

    pub fn role_names(&self) -> &[String] {
        &self.role_names
    }
}

/// Injective role-to-host assignment, in the pattern's role order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub roles: Vec<String>,
    pub vertices: Vec<usize>,
}

impl Embedding {
    pub fn vertex(&self, role: &str) -> Option<usize> {
        self.roles.iter().position(|r| r == role).map(|i| self.vertices[i])
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().collect()
    }
}

/// Re-checks an embedding pair by pair, independently of the search.
pub fn is_induced_embedding(host: &Graph, p: &Pattern, emb: &Embedding) -> bool {
    let t = p.template();
    let v = &emb.vertices;
    if v.len() != t.n() || v.iter().any(|&x| x >= host.n()) {
        return false;
    }
    for i in 0..v.len() {
        for j in 0..i {
            if v[i] == v[j] || t.has_edge(i, j) != host.has_edge(v[i], v[j]) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least induced copy of `p` in `host`, if any.
pub fn find_induced(host: &Graph, p: &Pattern) -> Option<Embedding> {
    let mut found = None;
    let _ = for_each_induced(host, p, |vs| {
        found = Some(vs.to_vec());
        ControlFlow::Break(())
    });
    found.map(|vertices| Embedding { roles: p.role_names.clone(), vertices })
}

/// Visits every induced copy of `p` (as role-ordered host vertices) in
/// lexicographic order until the visitor breaks.
pub fn for_each_induced<F>(host: &Graph, p: &Pattern, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let k = p.template.n();
    if k > host.n() {
        return ControlFlow::Continue(());
    }
    let min_deg: Vec<usize> = (0..k).map(|r| p.template.degree(r)).collect();
    let mut assign = Vec::with_capacity(k);
    extend(host, p, &min_deg, &mut assign, VertexSet::new(), &mut visit)
}

fn extend<F>(
    host: &Graph,
    p: &Pattern,
    min_deg: &[usize],
    assign: &mut Vec<usize>,
    used: VertexSet,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let r = assign.len();
    if r == min_deg.len() {
        return visit(assign);
    }
    let mut cand = host.vertices().difference(&used);
    for (s, &img) in assign.iter().enumerate() {
        if p.template.has_edge(r, s) {
            cand = cand.intersection(host.neighbors(img));
        } else {
            cand = cand.difference(host.neighbors(img));
        }
    }
    for v in cand.iter() {
        if host.degree(v) < min_deg[r] {
            continue;
        }
        assign.push(v);
        let mut used2 = used;
        used2.insert(v);
        let flow = extend(host, p, min_deg, assign, used2, visit);
        assign.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

/// Two disjoint edges with no edge between them, as `[a1, a2, b1, b2]`.
///
/// Scans first edges in lexicographic order; the second edge is the least one
/// avoiding the closed neighbourhood of the first.
pub fn find_2k2(host: &Graph) -> Option<[usize; 4]> {
    for (a, b) in host.edges() {
        let mut blocked = host.neighbors(a).union(host.neighbors(b));
        blocked.insert(a);
        blocked.insert(b);
        let rest = host.vertices().difference(&blocked);
        for c in rest.iter() {
            if let Some(d) = host.neighbors(c).intersection(&rest).first() {
                return Some([a, b, c, d]);
            }
        }
    }
    None
}

pub fn is_2k2_free(host: &Graph) -> bool {
    find_2k2(host).is_none()
}

pub fn find_banner(host: &Graph) -> Option<Embedding> {
    find_induced(host, &Pattern::banner())
}

/// Induced cycle of length `len`, vertices in cyclic order.
pub fn find_induced_cycle(host: &Graph, len: usize) -> Result<Option<Embedding>, PatternError> {
    if len < 4 {
        return Err(PatternError::CycleTooShort(len));
    }
    Ok(find_induced(host, &Pattern::cycle(len)?))
}

/// Visits each induced 5-cycle once, as `[v1..v5]` in cyclic order with `v1`
/// the smallest vertex and `v2 < v5`, in lexicographic order.
pub fn for_each_induced_c5<F>(host: &Graph, mut visit: F) -> ControlFlow<()>
where
    F: FnMut([usize; 5]) -> ControlFlow<()>,
{
    let n = host.n();
    for v1 in 0..n {
        let n1 = *host.neighbors(v1);
        let mut closed1 = n1;
        closed1.insert(v1);
        for v2 in n1.above(v1).iter() {
            let mut closed2 = *host.neighbors(v2);
            closed2.insert(v2);
            let c3 = host.neighbors(v2).difference(&closed1).above(v1);
            for v3 in c3.iter() {
                let mut closed3 = *host.neighbors(v3);
                closed3.insert(v3);
                let c4 = host
                    .neighbors(v3)
                    .difference(&closed1)
                    .difference(&closed2)
                    .above(v1);
                for v4 in c4.iter() {
                    let c5 = host
                        .neighbors(v4)
                        .intersection(&n1)
                        .difference(&closed2)
                        .difference(&closed3)
                        .above(v2);
                    for v5 in c5.iter() {
                        visit([v1, v2, v3, v4, v5])?;
                    }
                }
            }
        }
    }
    ControlFlow::Continue(())
}

/// Split graph test via the forbidden induced subgraphs 2K2, C4 and C5.
pub fn is_split_graph(host: &Graph) -> bool {
    find_2k2(host).is_none()
        && find_induced(host, &Pattern::cycle(4).expect("len 4")).is_none()
        && find_induced(host, &Pattern::cycle(5).expect("len 5")).is_none()
}
