//! Simple undirected graphs stored as bitset adjacency rows.
//!
//! Vertices are `0..n`. Every row is a [`VertexSet`] of fixed capacity
//! [`MAX_VERTICES`], so set algebra over neighbourhoods is a handful of word
//! operations.

use std::fmt;

use thiserror::Error;

/// Number of 64-bit words in a [`VertexSet`].
pub const WORDS: usize = 8;

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = WORDS * 64;

/// Fixed-capacity set of vertex indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet {
    words: [u64; WORDS],
}

impl VertexSet {
    pub const fn new() -> Self {
        VertexSet { words: [0; WORDS] }
    }

    /// The set `{0, 1, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "vertex count {n} exceeds capacity {MAX_VERTICES}");
        let mut s = VertexSet::new();
        let whole = n / 64;
        for w in s.words.iter_mut().take(whole) {
            *w = u64::MAX;
        }
        if !n.is_multiple_of(64) {
            s.words[whole] = (1u64 << (n % 64)) - 1;
        }
        s
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = VertexSet::new();
        s.insert(v);
        s
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && self.words[v >> 6] >> (v & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v >> 6] |= 1u64 << (v & 63);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v >> 6] &= !(1u64 << (v & 63));
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
        out
    }

    #[inline]
    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
        out
    }

    #[inline]
    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
        out
    }

    /// `{0..n} \ self`.
    pub fn complement_within(&self, n: usize) -> VertexSet {
        VertexSet::full(n).difference(self)
    }

    #[inline]
    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(other.words.iter()).any(|(a, b)| a & b != 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Elements in increasing order.
    pub fn iter(&self) -> Iter {
        Iter { words: self.words, idx: 0 }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Elements strictly greater than `v`.
    pub fn above(&self, v: usize) -> VertexSet {
        let mut out = *self;
        let word = v >> 6;
        for w in out.words.iter_mut().take(word) {
            *w = 0;
        }
        if word < WORDS {
            let bit = v & 63;
            out.words[word] &= if bit == 63 { 0 } else { u64::MAX << (bit + 1) };
        }
        out
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter {
    words: [u64; WORDS],
    idx: usize,
}

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.idx < WORDS {
            let w = self.words[self.idx];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.words[self.idx] &= w - 1;
                return Some(self.idx * 64 + bit);
            }
            self.idx += 1;
        }
        None
    }
}

impl IntoIterator for &VertexSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("endpoint out of range: edge ({u}, {v}) in a graph on {n} vertices")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("vertex count {n} exceeds capacity {cap}")]
    TooManyVertices { n: usize, cap: usize },
    #[error("sets overlap at vertex {v}")]
    Overlap { v: usize },
    #[error("edge list line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
}

/// Simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n, cap: MAX_VERTICES });
        }
        Ok(Graph { n, adj: vec![VertexSet::new(); n] })
    }

    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `uv`; duplicates are no-ops.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::EndpointOutOfRange { u, v, n: self.n });
        }
        if u == v {
            return Err(GraphError::SelfLoop { v });
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub(crate) fn from_rows(n: usize, adj: Vec<VertexSet>) -> Graph {
        debug_assert_eq!(adj.len(), n);
        Graph { n, adj }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].above(u).iter().map(move |v| (u, v)))
    }

    /// Union of the open neighbourhoods of `s`. May intersect `s`.
    pub fn neighborhood_of(&self, s: &VertexSet) -> VertexSet {
        s.iter().fold(VertexSet::new(), |acc, v| acc.union(&self.adj[v]))
    }

    /// Vertices adjacent to every vertex of `s` (all of `V` when `s` is empty).
    pub fn common_neighbors(&self, s: &VertexSet) -> VertexSet {
        s.iter().fold(self.vertices(), |acc, v| acc.intersection(&self.adj[v]))
    }

    /// `g[s]` relabelled in increasing order; the map sends new index to old.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = s.iter().filter(|&v| v < self.n).collect();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let adj = old
            .iter()
            .map(|&v| self.adj[v].intersection(s).iter().map(|u| new_of[u]).collect())
            .collect();
        (Graph::from_rows(old.len(), adj), old)
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertices();
        let adj = (0..self.n)
            .map(|v| {
                let mut row = all.difference(&self.adj[v]);
                row.remove(v);
                row
            })
            .collect();
        Graph::from_rows(self.n, adj)
    }

    /// Non-empty and inducing a connected subgraph.
    pub fn is_connected_set(&self, s: &VertexSet) -> bool {
        match s.first() {
            None => false,
            Some(start) => self.reach_within(start, s) == *s,
        }
    }

    /// Vertices of `within` reachable from `start` inside `g[within]`.
    pub fn reach_within(&self, start: usize, within: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = self.neighborhood_of(&frontier).intersection(within).difference(&seen);
            seen = seen.union(&next);
            frontier = next;
        }
        seen
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = left.first() {
            let comp = self.reach_within(v, &left);
            left = left.difference(&comp);
            out.push(comp);
        }
        out
    }

    pub fn is_complete_to(&self, x: &VertexSet, y: &VertexSet) -> Result<bool, GraphError> {
        disjoint(x, y)?;
        Ok(x.iter().all(|v| y.is_subset(&self.adj[v])))
    }

    pub fn is_anticomplete_to(&self, x: &VertexSet, y: &VertexSet) -> Result<bool, GraphError> {
        disjoint(x, y)?;
        Ok(!self.neighborhood_of(x).intersects(y))
    }

    /// Whether `s` is a clique.
    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| s.difference(&VertexSet::singleton(v)).is_subset(&self.adj[v]))
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| !self.adj[v].intersects(s))
    }

    /// Copy of `self` with `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.add_edge(u, v)?;
        Ok(g)
    }

    /// Edge-list text: `n m`, then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the edge-list text format; `#` lines and blank lines are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines
            .next()
            .ok_or(GraphError::EdgeList { line: 0, msg: "missing \"n m\" header".into() })?;
        let (n, m) = parse_pair(hl, header)?;
        let mut g = Graph::empty(n)?;
        let mut seen = 0;
        for (ln, line) in lines {
            let (u, v) = parse_pair(ln, line)?;
            g.add_edge(u, v).map_err(|e| GraphError::EdgeList { line: ln, msg: e.to_string() })?;
            seen += 1;
        }
        if seen != m {
            return Err(GraphError::EdgeList {
                line: hl,
                msg: format!("header announces {m} edges, found {seen}"),
            });
        }
        Ok(g)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            out.push_str(&format!("  {v};\n"));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize), GraphError> {
    let bad = |msg: &str| GraphError::EdgeList { line, msg: format!("{msg}: {text:?}") };
    let mut it = text.split_whitespace();
    let a = it.next().ok_or_else(|| bad("expected two integers"))?;
    let b = it.next().ok_or_else(|| bad("expected two integers"))?;
    if it.next().is_some() {
        return Err(bad("trailing tokens"));
    }
    let a = a.parse().map_err(|_| bad("not an integer"))?;
    let b = b.parse().map_err(|_| bad("not an integer"))?;
    Ok((a, b))
}

fn disjoint(x: &VertexSet, y: &VertexSet) -> Result<(), GraphError> {
    match x.intersection(y).first() {
        Some(v) => Err(GraphError::Overlap { v }),
        None => Ok(()),
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}
