//! Independent brute-force oracles on `u64` adjacency masks, sharing no code
//! with the library's solvers, plus corpus helpers.

#![allow(dead_code)]

use std::collections::HashMap;

use domclique::generators::{random_2k2_free, random_planted_2k2_free};
use domclique::{parse_graph6, Graph};

pub fn masks(g: &Graph) -> Vec<u64> {
    let mut adj = vec![0u64; g.n()];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(v)
    })
}

fn nbhd(adj: &[u64], set: u64) -> u64 {
    bits(set).fold(0, |acc, v| acc | adj[v])
}

pub fn connected(adj: &[u64], set: u64) -> bool {
    if set == 0 {
        return false;
    }
    let mut seen = set & set.wrapping_neg();
    loop {
        let next = seen | (nbhd(adj, seen) & set);
        if next == seen {
            return seen == set;
        }
        seen = next;
    }
}

pub fn set_mask(s: &[usize]) -> u64 {
    s.iter().fold(0, |m, &v| m | 1 << v)
}

/// Dominating-model condition checked straight from the definition.
pub fn is_dominating_model(adj: &[u64], sets: &[Vec<usize>]) -> bool {
    let ms: Vec<u64> = sets.iter().map(|s| set_mask(s)).collect();
    let all = ms.iter().fold(0u64, |a, &m| a | m);
    let total: usize = sets.iter().map(Vec::len).sum();
    if all.count_ones() as usize != total || sets.iter().flatten().any(|&v| v >= adj.len()) {
        return false;
    }
    ms.iter().all(|&m| connected(adj, m))
        && (0..ms.len()).all(|i| (i + 1..ms.len()).all(|j| bits(ms[j]).all(|v| adj[v] & ms[i] != 0)))
}

pub fn is_ordinary_model(adj: &[u64], sets: &[Vec<usize>]) -> bool {
    let ms: Vec<u64> = sets.iter().map(|s| set_mask(s)).collect();
    let all = ms.iter().fold(0u64, |a, &m| a | m);
    let total: usize = sets.iter().map(Vec::len).sum();
    if all.count_ones() as usize != total || sets.iter().flatten().any(|&v| v >= adj.len()) {
        return false;
    }
    ms.iter().all(|&m| connected(adj, m))
        && (0..ms.len()).all(|i| (i + 1..ms.len()).all(|j| nbhd(adj, ms[i]) & ms[j] != 0))
}

/// Dominating `K_t` inside `avail`: some connected `T ⊆ avail` with a
/// dominating `K_{t-1}` among its neighbours. Exponential; n ≤ 16.
pub fn dominating_minor(adj: &[u64], t: usize) -> bool {
    fn go(adj: &[u64], avail: u64, t: usize, memo: &mut HashMap<(u64, usize), bool>) -> bool {
        if t == 0 {
            return true;
        }
        if (avail.count_ones() as usize) < t {
            return false;
        }
        if let Some(&r) = memo.get(&(avail, t)) {
            return r;
        }
        let mut found = false;
        let mut sub = avail;
        while sub != 0 && !found {
            if connected(adj, sub) {
                let rest = avail & !sub & nbhd(adj, sub);
                found = go(adj, rest, t - 1, memo);
            }
            sub = (sub - 1) & avail;
        }
        memo.insert((avail, t), found);
        found
    }
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    go(adj, all, t, &mut HashMap::new())
}

pub fn dominating_hadwiger(adj: &[u64]) -> usize {
    (1..=adj.len()).take_while(|&t| dominating_minor(adj, t)).last().unwrap_or(0)
}

/// Ordinary `K_t`: branch sets chosen in order of their smallest vertex,
/// pairwise touching. n ≤ 12.
pub fn ordinary_minor(adj: &[u64], t: usize) -> bool {
    fn go(adj: &[u64], avail: u64, chosen: &mut Vec<u64>, t: usize) -> bool {
        if chosen.len() == t {
            return true;
        }
        let floor = chosen.last().map_or(0, |m| m.trailing_zeros() + 1);
        let mut sub = avail;
        while sub != 0 {
            if sub.trailing_zeros() >= floor
                && connected(adj, sub)
                && chosen.iter().all(|&c| nbhd(adj, c) & sub != 0)
            {
                chosen.push(sub);
                if go(adj, avail & !sub, chosen, t) {
                    return true;
                }
                chosen.pop();
            }
            sub = (sub - 1) & avail;
        }
        false
    }
    let all = (1u64 << adj.len()) - 1;
    go(adj, all, &mut Vec::new(), t)
}

/// χ by dynamic programming over vertex subsets. n ≤ 12.
pub fn chromatic_dp(adj: &[u64]) -> usize {
    let n = adj.len();
    let full = (1usize << n) - 1;
    let independent: Vec<bool> = (0..=full).map(|s| bits(s as u64).all(|v| adj[v] & s as u64 == 0)).collect();
    let mut chi = vec![usize::MAX; full + 1];
    chi[0] = 0;
    for s in 1..=full {
        let low = s & s.wrapping_neg();
        let rest = s & !low;
        // Colour class containing the lowest vertex of s.
        let mut sub = rest;
        loop {
            let class = sub | low;
            if independent[class] && chi[s & !class] != usize::MAX {
                chi[s] = chi[s].min(chi[s & !class] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    chi[full]
}

/// Plain backtracking k-colourability (first-fit symmetry breaking).
pub fn colorable(adj: &[u64], k: usize) -> bool {
    let n = adj.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].count_ones()));
    let mut colors = vec![usize::MAX; n];
    fn go(adj: &[u64], order: &[usize], i: usize, used: usize, k: usize, colors: &mut [usize]) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        for c in 0..(used + 1).min(k) {
            if bits(adj[v]).all(|u| colors[u] != c) {
                colors[v] = c;
                if go(adj, order, i + 1, used.max(c + 1), k, colors) {
                    return true;
                }
                colors[v] = usize::MAX;
            }
        }
        false
    }
    go(adj, &order, 0, 0, k, &mut colors)
}

pub fn proper(adj: &[u64], colors: &[usize]) -> bool {
    colors.len() == adj.len() && (0..adj.len()).all(|v| bits(adj[v]).all(|u| colors[u] != colors[v]))
}

pub fn clique_number(adj: &[u64]) -> usize {
    fn go(adj: &[u64], cand: u64, size: usize, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        go(adj, cand & adj[v], size + 1, best);
        go(adj, cand & !(1 << v), size, best);
    }
    let mut best = 0;
    go(adj, if adj.is_empty() { 0 } else { (1u64 << adj.len()) - 1 }, 0, &mut best);
    best
}

pub fn has_2k2(adj: &[u64]) -> bool {
    let n = adj.len();
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| adj[u] >> v & 1 == 1).collect();
    edges.iter().enumerate().any(|(i, &(a, b))| {
        edges[i + 1..].iter().any(|&(c, d)| {
            let q = set_mask(&[a, b, c, d]);
            q.count_ones() == 4 && (adj[a] | adj[b]) & set_mask(&[c, d]) == 0
        })
    })
}

fn data(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

/// Graph6 lines of a bundled corpus (comments dropped).
pub fn corpus_lines(name: &str) -> Vec<String> {
    data(name).lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(String::from).collect()
}

pub fn corpus(name: &str) -> Vec<Graph> {
    corpus_lines(name).iter().map(|l| parse_graph6(l).unwrap()).collect()
}

pub fn corpus_path(name: &str) -> std::path::PathBuf {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR")).into()
}

/// The seeded 2K2-free corpus: n cycles through 5..=30 and p through nine
/// levels in [0.1, 0.9]; even seeds use G(n, p) with 2K2 repair, odd seeds a
/// random graph grown around a planted C5 structure.
pub fn random_corpus(count: u64) -> impl Iterator<Item = (u64, Graph)> {
    (0..count).map(|seed| {
        let n = 5 + (seed % 26) as usize;
        let p = 0.1 + 0.8 * ((seed / 26) % 9) as f64 / 8.0;
        let g = if seed % 2 == 0 { random_2k2_free(n, p, seed) } else { random_planted_2k2_free(n, p, seed) };
        (seed, g.unwrap())
    })
}

/// Small 2K2-free graphs, 2 ≤ n ≤ 10.
pub fn small_corpus(count: u64) -> impl Iterator<Item = (u64, Graph)> {
    (0..count).map(|i| {
        let seed = 1_000_000 + i;
        let n = 2 + (i % 9) as usize;
        let p = 0.15 + 0.7 * ((i / 9) % 8) as f64 / 7.0;
        let g = if i % 2 == 0 { random_2k2_free(n, p, seed) } else { random_planted_2k2_free(n, p, seed) };
        (seed, g.unwrap())
    })
}
