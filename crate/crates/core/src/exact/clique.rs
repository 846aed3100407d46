//! Maximum clique by branch and bound with greedy-colouring bounds.

use crate::graph::{Graph, VertexSet};

pub fn clique_number(g: &Graph) -> usize {
    max_clique(g).len()
}

pub fn independence_number(g: &Graph) -> usize {
    clique_number(&g.complement())
}

pub fn max_clique(g: &Graph) -> VertexSet {
    max_clique_within(g, &g.vertices())
}

/// Largest clique of `g` contained in `within`.
pub fn max_clique_within(g: &Graph, within: &VertexSet) -> VertexSet {
    let mut best = VertexSet::new();
    let mut current = VertexSet::new();
    expand(g, &mut current, *within, &mut best);
    best
}

fn expand(g: &Graph, current: &mut VertexSet, mut p: VertexSet, best: &mut VertexSet) {
    let order = color_sort(g, p);
    for &(v, bound) in order.iter().rev() {
        if current.len() + bound <= best.len() {
            return;
        }
        current.insert(v);
        let next = p.intersection(g.neighbors(v));
        if next.is_empty() {
            if current.len() > best.len() {
                *best = *current;
            }
        } else {
            expand(g, current, next, best);
        }
        current.remove(v);
        p.remove(v);
    }
}

// Vertices of `p` with their greedy colour class (1-based), ascending by class.
fn color_sort(g: &Graph, p: VertexSet) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(p.len());
    let mut left = p;
    let mut class = 0;
    while !left.is_empty() {
        class += 1;
        let mut q = left;
        while let Some(v) = q.first() {
            out.push((v, class));
            left.remove(v);
            q.remove(v);
            q = q.difference(g.neighbors(v));
        }
    }
    out
}
