//! Named graph families and seeded random generators.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64`, so a
//! `(family, params, seed)` triple reproduces the same graph everywhere.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};
use crate::patterns::find_2k2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("invalid parameters for {family}: {msg}")]
    InvalidParams { family: String, msg: String },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
}

fn invalid(family: &str, msg: impl Into<String>) -> GenError {
    GenError::InvalidParams { family: family.into(), msg: msg.into() }
}

fn sized(family: &str, n: usize) -> Result<Graph, GenError> {
    Graph::empty(n).map_err(|e| invalid(family, e.to_string()))
}

fn build(family: &str, n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph, GenError> {
    let mut g = sized(family, n)?;
    for (u, v) in edges {
        g.add_edge(u, v).expect("family edges are valid");
    }
    Ok(g)
}

/// `C_n` on `0..n` in cyclic order; needs `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(invalid("cycle", "n must be at least 3"));
    }
    build("cycle", n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// `P_n` on `0..n` in path order.
pub fn path(n: usize) -> Result<Graph, GenError> {
    build("path", n, (1..n).map(|i| (i - 1, i)))
}

pub fn complete(n: usize) -> Result<Graph, GenError> {
    build("complete", n, (0..n).flat_map(|u| (0..u).map(move |v| (v, u))))
}

/// Parts occupy consecutive vertex ranges in the given order.
pub fn complete_multipartite(parts: &[usize]) -> Result<Graph, GenError> {
    if parts.contains(&0) {
        return Err(invalid("complete_multipartite", "parts must be non-empty"));
    }
    let n: usize = parts.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (i, &p) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, p));
    }
    let pairs = (0..n).flat_map(|u| (0..u).map(move |v| (v, u)));
    let edges: Vec<_> = pairs.filter(|&(v, u)| part_of[u] != part_of[v]).collect();
    build("complete_multipartite", n, edges)
}

/// Outer 5-cycle `0..5`, spokes `i -- i+5`, inner pentagram on `5..10`.
pub fn petersen() -> Graph {
    let edges = (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)]);
    build("petersen", 10, edges).expect("fixed size")
}

/// Vertices `0..5` are `b1, b2, b3, b, b'`.
pub fn banner() -> Graph {
    build("banner", 5, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4)]).expect("fixed size")
}

/// The 7-vertex graph extending a banner by `b4, b5`: vertices `0..5` are the
/// 5-cycle `b1..b5`, `5` is `b` (adjacent to `b1, b3, b4, b5`), `6` is `b'`.
pub fn t_graph() -> Graph {
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (5, 2), (5, 3), (5, 4), (5, 6)];
    build("t_graph", 7, edges).expect("fixed size")
}

/// 1-subdivision of `K_n`: branch vertices `0..n`, then one vertex per pair
/// `{i, j}` (`i < j`) in lexicographic pair order.
pub fn one_subdivision_complete(n: usize) -> Result<Graph, GenError> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let total = n + pairs.len();
    let edges = pairs.iter().enumerate().flat_map(|(k, &(i, j))| [(i, n + k), (j, n + k)]);
    build("one_subdivision_complete", total, edges.collect::<Vec<_>>())
}

pub fn two_k2() -> Graph {
    build("two_k2", 4, [(0, 1), (2, 3)]).expect("fixed size")
}

/// Dispatch by name, for the command line. `params` are the family's integer
/// arguments in order.
pub fn family(name: &str, params: &[usize]) -> Result<Graph, GenError> {
    let one = |family: &str| match params {
        [n] => Ok(*n),
        _ => Err(invalid(family, "expected exactly one parameter n")),
    };
    let none = |family: &str| {
        if params.is_empty() {
            Ok(())
        } else {
            Err(invalid(family, "takes no parameters"))
        }
    };
    match name {
        "cycle" => cycle(one(name)?),
        "path" => path(one(name)?),
        "complete" => complete(one(name)?),
        "complete_multipartite" | "complete-multipartite" => complete_multipartite(params),
        "petersen" => none(name).map(|_| petersen()),
        "banner" => none(name).map(|_| banner()),
        "t_graph" | "t-graph" => none(name).map(|_| t_graph()),
        "one_subdivision_complete" | "one-subdivision-complete" | "subdivided-complete" => one_subdivision_complete(one(name)?),
        "two_k2" | "2k2" => none(name).map(|_| two_k2()),
        _ => Err(GenError::UnknownFamily(name.into())),
    }
}

fn check_gnp(family: &str, n: usize, p: f64) -> Result<(), GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(family, format!("p = {p} is outside [0, 1]")));
    }
    if n > MAX_VERTICES {
        return Err(invalid(family, format!("n = {n} exceeds {MAX_VERTICES}")));
    }
    Ok(())
}

fn gnp_with(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n).expect("checked size");
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("valid pair");
            }
        }
    }
    g
}

/// Erdős–Rényi `G(n, p)`; pairs `(u, v)`, `u < v`, are sampled in
/// lexicographic order.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    check_gnp("random_gnp", n, p)?;
    Ok(gnp_with(&mut ChaCha8Rng::seed_from_u64(seed), n, p))
}

/// Samples `G(n, p)`, then repeatedly finds a 2K2 and adds one of the four
/// edges between its two edges, chosen uniformly. Adding edges only, so the
/// loop terminates; the output is biased towards dense graphs.
pub fn random_2k2_free(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    check_gnp("random_2k2_free", n, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = gnp_with(&mut rng, n, p);
    while let Some([a, b, c, d]) = find_2k2(&g) {
        let (u, v) = [(a, c), (a, d), (b, c), (b, d)][rng.gen_range(0..4)];
        g.add_edge(u, v).expect("valid pair");
    }
    Ok(g)
}

/// Random 2K2-free graph grown around a planted structure, for exercising
/// the rarer extraction branches.
///
/// With equal probability the planted core is either a blow-up of `C5`
/// (cliques `Y_1..Y_5` of random sizes 1..=4, `v_j` adjacent to `Y_i` for
/// `j != i`, `Y_i` complete to `Y_{i±2}`, `Y_i`–`Y_{i+1}` complete minus a
/// random matching, perfect when all sizes agree) or the 10-vertex
/// configuration of a `C5` plus a vertex seeing two of its vertices and the
/// four vertices that extend it. Around a blow-up, each further vertex is
/// complete to the core, anticomplete to it (and then complete to the first
/// kind), or random with edge probability `p`; around the other core every
/// addition is random. The planted 5-cycle keeps labels `0..5` in cyclic
/// order, all other labels are shuffled, and the repair loop of
/// [`random_2k2_free`] runs last. Falls back to `random_2k2_free` when `n` is below the core size.
pub fn random_planted_2k2_free(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    check_gnp("random_planted_2k2_free", n, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let blowup = rng.gen_bool(0.5);
    let core = if blowup {
        let uniform = rng.gen_bool(0.5);
        let m = rng.gen_range(1..=4);
        let sizes: Vec<usize> = (0..5).map(|_| if uniform { m } else { rng.gen_range(1..=4) }).collect();
        let mut start = [5; 5];
        for i in 1..5 {
            start[i] = start[i - 1] + sizes[i - 1];
        }
        let core = 5 + sizes.iter().sum::<usize>();
        if core > n {
            return random_2k2_free(n, p, seed);
        }
        let y = |i: usize, l: usize| start[i % 5] + l;
        for j in 0..5 {
            edges.push((j, (j + 1) % 5));
        }
        for i in 0..5 {
            let next = (i + 1) % 5;
            let mut partner: Vec<Option<usize>> = vec![None; sizes[i]];
            let mut free: Vec<usize> = (0..sizes[next]).collect();
            for slot in partner.iter_mut() {
                if !free.is_empty() && (uniform || rng.gen_bool(0.8)) {
                    *slot = Some(free.swap_remove(rng.gen_range(0..free.len())));
                }
            }
            for l in 0..sizes[i] {
                for j in (0..5).filter(|&j| j != i) {
                    edges.push((j, y(i, l)));
                }
                for l2 in 0..l {
                    edges.push((y(i, l2), y(i, l)));
                }
                for l2 in 0..sizes[(i + 2) % 5] {
                    edges.push((y(i, l), y(i + 2, l2)));
                }
                for l2 in 0..sizes[next] {
                    if partner[l] != Some(l2) {
                        edges.push((y(i, l), y(next, l2)));
                    }
                }
            }
        }
        core
    } else {
        if n < 10 {
            return random_2k2_free(n, p, seed);
        }
        // C5 = 0..5, x = 5 (sees v1, v3), y = 6, z = 7, u = 8, w = 9.
        edges.extend([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (5, 2)]);
        edges.extend([(6, 5), (6, 2), (6, 4), (7, 1), (7, 2), (7, 4), (8, 0), (8, 1), (8, 3), (9, 0), (9, 5), (9, 3)]);
        edges.extend([(6, 7), (6, 8), (6, 9), (7, 8), (7, 9), (8, 9)]);
        10
    };

    #[derive(Clone, Copy, PartialEq)]
    enum Role {
        Complete,
        Anticomplete,
        Random,
    }
    let mut roles = Vec::with_capacity(n - core);
    for u in core..n {
        let role = match (blowup, rng.gen_range(0..8)) {
            (true, 0..=3) => Role::Complete,
            (true, 4..=6) => Role::Anticomplete,
            _ => Role::Random,
        };
        if role == Role::Complete {
            edges.extend((0..core).map(|v| (v, u)));
        }
        for v in 0..u {
            let other = if v < core { None } else { Some(roles[v - core]) };
            // Additions complete to the core are joined to every addition
            // anticomplete to it, so those two kinds never form a 2K2.
            let edge = match (role, other) {
                (Role::Random, _) | (_, Some(Role::Random)) => rng.gen_bool(p),
                (Role::Complete, Some(Role::Anticomplete)) | (Role::Anticomplete, Some(Role::Complete)) => true,
                (Role::Complete, Some(Role::Complete)) => rng.gen_bool(p),
                _ => false,
            };
            if edge {
                edges.push((v, u));
            }
        }
        roles.push(role);
    }

    let mut g = Graph::empty(n).expect("checked size");
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (6..n).rev() {
        perm.swap(i, rng.gen_range(5..=i));
    }
    for (u, v) in edges {
        g.add_edge(perm[u], perm[v]).expect("valid pair");
    }
    while let Some([a, b, c, d]) = find_2k2(&g) {
        let (u, v) = [(a, c), (a, d), (b, c), (b, d)][rng.gen_range(0..4)];
        g.add_edge(u, v).expect("valid pair");
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{find_banner, find_induced_cycle, is_2k2_free};

    #[test]
    fn family_sizes() {
        let s = one_subdivision_complete(4).unwrap();
        assert_eq!((s.n(), s.edge_count()), (4 + 6, 12));
        assert!(s.edges().all(|(u, v)| s.neighbors(u).intersection(s.neighbors(v)).is_empty()));
        assert_eq!(one_subdivision_complete(5).unwrap().edge_count(), 20);
        assert_eq!(petersen().edge_count(), 15);
        assert!(petersen().vertices().iter().all(|v| petersen().degree(v) == 3));
        let km = complete_multipartite(&[2, 2, 3]).unwrap();
        assert_eq!((km.n(), km.edge_count()), (7, 4 + 6 + 6));
        assert_eq!(complete(6).unwrap().edge_count(), 15);
        assert_eq!(path(1).unwrap().edge_count(), 0);
        assert!(cycle(2).is_err());
        assert!(complete_multipartite(&[1, 0]).is_err());
    }

    #[test]
    fn t_graph_structure() {
        let t = t_graph();
        assert_eq!((t.n(), t.edge_count()), (7, 10));
        let b = find_banner(&t).unwrap();
        assert!(crate::patterns::is_induced_embedding(&t, &crate::patterns::Pattern::banner(), &b));
        assert!(find_induced_cycle(&t, 5).unwrap().is_some());
        // Named roles b1, b2, b3, b, b' induce the banner.
        let sub: crate::graph::VertexSet = [0, 1, 2, 5, 6].iter().collect();
        let (h, _) = t.induced_subgraph(&sub);
        assert_eq!(h, banner());
    }

    #[test]
    fn c4_complement_is_two_k2() {
        assert_eq!(cycle(4).unwrap().complement(), {
            // complement of 0-1-2-3-0 is {02, 13}
            build("x", 4, [(0, 2), (1, 3)]).unwrap()
        });
        let c = cycle(4).unwrap().complement();
        assert!(!is_2k2_free(&c));
        assert_eq!(two_k2().edge_count(), 2);
    }

    #[test]
    fn gnp_extremes_and_determinism() {
        assert_eq!(random_gnp(9, 0.0, 3).unwrap().edge_count(), 0);
        assert_eq!(random_gnp(9, 1.0, 3).unwrap().edge_count(), 36);
        assert_eq!(random_gnp(20, 0.4, 99).unwrap(), random_gnp(20, 0.4, 99).unwrap());
        assert_ne!(random_gnp(20, 0.4, 99).unwrap(), random_gnp(20, 0.4, 100).unwrap());
        assert!(random_gnp(3, 1.5, 0).is_err());
    }

    #[test]
    fn repaired_graphs_are_2k2_free() {
        for seed in 0..300 {
            for n in [4, 8, 16, 32] {
                let g = random_2k2_free(n, 0.3, seed).unwrap();
                assert_eq!(g.n(), n);
                assert!(is_2k2_free(&g));
            }
        }
    }

    #[test]
    fn complement_of_c4_free_bipartite_is_2k2_free() {
        // Incidence graph of the Fano plane: bipartite, girth 6.
        let lines = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
        let edges: Vec<_> = lines.iter().enumerate().flat_map(|(l, pts)| pts.iter().map(move |&p| (p, 7 + l))).collect();
        let g = build("fano", 14, edges).unwrap();
        assert!(find_induced_cycle(&g, 4).unwrap().is_none());
        assert!(is_2k2_free(&g.complement()));
    }

    #[test]
    fn planted_graphs_are_2k2_free_and_reproducible() {
        for seed in 0..200 {
            let g = random_planted_2k2_free(30, 0.3, seed).unwrap();
            assert!(is_2k2_free(&g));
            assert_eq!(g, random_planted_2k2_free(30, 0.3, seed).unwrap());
        }
        assert_eq!(random_planted_2k2_free(6, 0.5, 1).unwrap().n(), 6);
    }

    #[test]
    fn dispatch() {
        assert_eq!(family("cycle", &[5]).unwrap(), cycle(5).unwrap());
        assert_eq!(family("t-graph", &[]).unwrap(), t_graph());
        assert!(matches!(family("banner", &[1]), Err(GenError::InvalidParams { .. })));
        assert_eq!(family("nope", &[]), Err(GenError::UnknownFamily("nope".into())));
    }
}
