//! Exact vertex colouring: DSATUR greedy for an upper bound, DSATUR
//! backtracking for each candidate k.

use std::time::Instant;

use crate::exact::clique::max_clique;
use crate::exact::ExactError;
use crate::graph::Graph;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub chi: usize,
    /// `colors[v]` in `0..chi`.
    pub colors: Vec<usize>,
}

/// Outcome of a single k-colourability search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSearch {
    pub coloring: Option<Vec<usize>>,
    /// Backtracking nodes visited; for a negative answer this is the size of
    /// the exhausted search tree.
    pub nodes: u64,
}

pub fn is_proper_coloring(g: &Graph, colors: &[usize]) -> bool {
    colors.len() == g.n() && g.edges().all(|(u, v)| colors[u] != colors[v])
}

pub fn chromatic_number(g: &Graph) -> usize {
    optimal_coloring(g).chi
}

pub fn optimal_coloring(g: &Graph) -> Coloring {
    optimal_coloring_until(g, None).expect("no deadline")
}

/// Exact colouring, giving up with [`ExactError::Timeout`] past `deadline`.
pub fn optimal_coloring_until(g: &Graph, deadline: Option<Instant>) -> Result<Coloring, ExactError> {
    let mut colors = vec![0; g.n()];
    let mut chi = 0;
    for comp in g.components() {
        let (h, map) = g.induced_subgraph(&comp);
        let c = component_coloring(&h, deadline)?;
        chi = chi.max(c.chi);
        for (i, &v) in map.iter().enumerate() {
            colors[v] = c.colors[i];
        }
    }
    Ok(Coloring { chi, colors })
}

fn component_coloring(g: &Graph, deadline: Option<Instant>) -> Result<Coloring, ExactError> {
    let lower = max_clique(g).len();
    let greedy = dsatur_greedy(g);
    let upper = greedy.iter().max().map_or(0, |&c| c + 1);
    for k in lower..upper {
        if let Some(colors) = k_colorable(g, k, deadline)?.coloring {
            return Ok(Coloring { chi: k, colors });
        }
    }
    Ok(Coloring { chi: upper, colors: greedy })
}

/// DSATUR greedy colouring (ties: larger degree, then smaller index).
pub fn dsatur_greedy(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colors = vec![NONE; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut sat = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == NONE)
            .max_by_key(|&v| (sat[v], g.degree(v), std::cmp::Reverse(v)))
            .expect("uncoloured vertex remains");
        let c = (0..).find(|&c| !seen[v].get(c).copied().unwrap_or(false)).unwrap();
        colors[v] = c;
        for u in g.neighbors(v).iter() {
            if seen[u].len() <= c {
                seen[u].resize(c + 1, false);
            }
            if !seen[u][c] {
                seen[u][c] = true;
                sat[u] += 1;
            }
        }
    }
    colors
}

/// Decides k-colourability by DSATUR backtracking with new-colour symmetry
/// breaking.
pub fn k_colorable(g: &Graph, k: usize, deadline: Option<Instant>) -> Result<KSearch, ExactError> {
    let n = g.n();
    if n == 0 {
        return Ok(KSearch { coloring: Some(Vec::new()), nodes: 0 });
    }
    if k == 0 {
        return Ok(KSearch { coloring: None, nodes: 0 });
    }
    let mut s = Search {
        g,
        k,
        colors: vec![NONE; n],
        count: vec![0; n * k],
        sat: vec![0; n],
        nodes: 0,
        deadline,
        timed_out: false,
    };
    let found = s.solve(0, 0);
    if s.timed_out {
        return Err(ExactError::Timeout);
    }
    Ok(KSearch { coloring: found.then_some(s.colors), nodes: s.nodes })
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    colors: Vec<usize>,
    count: Vec<u32>,
    sat: Vec<usize>,
    nodes: u64,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl Search<'_> {
    fn solve(&mut self, colored: usize, used: usize) -> bool {
        let n = self.g.n();
        if colored == n {
            return true;
        }
        self.nodes += 1;
        if self.nodes & 1023 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                    return false;
                }
            }
        }
        let v = (0..n)
            .filter(|&v| self.colors[v] == NONE)
            .max_by_key(|&v| (self.sat[v], self.g.degree(v), std::cmp::Reverse(v)))
            .expect("uncoloured vertex remains");
        if self.sat[v] >= self.k {
            return false;
        }
        for c in 0..self.k.min(used + 1) {
            if self.count[v * self.k + c] != 0 {
                continue;
            }
            self.assign(v, c, true);
            if self.solve(colored + 1, used.max(c + 1)) {
                return true;
            }
            self.assign(v, c, false);
            if self.timed_out {
                return false;
            }
        }
        false
    }

    fn assign(&mut self, v: usize, c: usize, on: bool) {
        self.colors[v] = if on { c } else { NONE };
        for u in self.g.neighbors(v).iter() {
            let slot = &mut self.count[u * self.k + c];
            if on {
                if *slot == 0 {
                    self.sat[u] += 1;
                }
                *slot += 1;
            } else {
                *slot -= 1;
                if *slot == 0 {
                    self.sat[u] -= 1;
                }
            }
        }
    }
}
