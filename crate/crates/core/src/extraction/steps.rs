//! The individual reduction steps and the dispatch between them.

use std::ops::ControlFlow;

use serde_json::json;

use super::{internal, BannerStructure, C5Partition, ExtractOptions, ExtractionError, Reduction};
use crate::graph::{Graph, VertexSet};
use crate::patterns::{find_banner, find_induced_cycle, for_each_induced_c5};

fn set(vs: &[usize]) -> VertexSet {
    vs.iter().collect()
}

/// Vertices outside `c` with no neighbour on it.
fn anticomplete_to(g: &Graph, c: &VertexSet) -> VertexSet {
    g.vertices()
        .difference(c)
        .iter()
        .filter(|&v| !g.neighbors(v).intersects(c))
        .collect()
}

/// Picks the reduction for a graph that survived the base cases.
pub(crate) fn choose(g: &Graph, opts: &ExtractOptions) -> Result<Reduction, ExtractionError> {
    let mut first_c5 = None;
    let _ = for_each_induced_c5(g, |c| {
        first_c5 = Some(c);
        ControlFlow::Break(())
    });
    let Some(c5) = first_c5 else {
        if let Some(b) = find_banner(g) {
            let banner = [b.vertices[0], b.vertices[1], b.vertices[2], b.vertices[3], b.vertices[4]];
            return match claim1_banner(g, banner, "claim1_completed")? {
                Claim1::Reduction(step) => Ok(step),
                Claim1::Structure { b4, b5 } => Err(internal(
                    "claim1_completed",
                    format!("banner {banner:?} extends to T via ({b4}, {b5}) in a C5-free graph"),
                )),
            };
        }
        if let Some(c4) = find_induced_cycle(g, 4).expect("length 4 is valid") {
            let v = &c4.vertices;
            return c4_reduction(g, [v[0], v[1], v[2], v[3]]);
        }
        return Err(internal("split_fallback", "no induced C4 or C5 but the graph is not split"));
    };
    if let Some((c, x)) = low_degree_pair(g, opts.c5_cap)? {
        return low_degree_c5_reduction(g, c, x);
    }
    match build_c5_partition(g, c5)? {
        PartitionPhase::Reduction(step) => Ok(step),
        PartitionPhase::Partition(part) => final_reduction(g, &part),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Claim1 {
    Reduction(Reduction),
    Structure { b4: usize, b5: usize },
}

/// `(A1, A2, first vertex of A2 complete to {b, b1})` for the banner read
/// from the `b1` side.
fn banner_side(g: &Graph, [b1, b2, b3, b, bp]: [usize; 5]) -> (VertexSet, VertexSet, Option<usize>) {
    let outside = g.vertices().difference(&set(&[b1, b2, b3, b, bp]));
    let d1 = set(&[b1, b, bp]);
    let d2 = set(&[b2, b3]);
    let a1: VertexSet = outside.iter().filter(|&v| !g.neighbors(v).intersects(&d1)).collect();
    let a2: VertexSet = outside.difference(&a1).iter().filter(|&v| !g.neighbors(v).intersects(&d2)).collect();
    let pick = a2.iter().find(|&v| g.has_edge(v, b) && g.has_edge(v, b1));
    (a1, a2, pick)
}

fn banner_reduction(
    g: &Graph,
    [b1, b2, b3, b, bp]: [usize; 5],
    a1: VertexSet,
    a2: VertexSet,
    claim: &'static str,
) -> Reduction {
    let a2_far = a2.difference(g.neighbors(b));
    let a2_near = a2.intersection(g.neighbors(b));
    Reduction {
        claim,
        removed: set(&[b1, b2, b3, b, bp]).union(&a1).union(&a2),
        prefix: vec![set(&[b1, b, bp]), set(&[b2, b3])],
        coloring: vec![a1.union(&a2_far).union(&set(&[b, b2])), a2_near.union(&set(&[bp, b1, b3]))],
        witness: Some(json!({ "banner": [b1, b2, b3, b, bp] })),
        structures: Vec::new(),
    }
}

/// Banner `(b1, b2, b3, b; b')`: either a two-colourable reduction with
/// prefix `({b1, b, b'}, {b2, b3})` (or its mirror image), or the pair
/// `b4, b5` completing the 7-vertex graph `T`.
pub fn claim1_banner(g: &Graph, banner: [usize; 5], claim: &'static str) -> Result<Claim1, ExtractionError> {
    let [b1, b2, b3, b, bp] = banner;
    let (a1, a2, b5) = banner_side(g, banner);
    let Some(b5) = b5 else {
        return Ok(Claim1::Reduction(banner_reduction(g, banner, a1, a2, claim)));
    };
    let mirror = [b3, b2, b1, b, bp];
    let (a1, a2, b4) = banner_side(g, mirror);
    let Some(b4) = b4 else {
        return Ok(Claim1::Reduction(banner_reduction(g, mirror, a1, a2, claim)));
    };
    if !g.has_edge(b4, b5) {
        return Err(internal(claim, format!("b4 = {b4} and b5 = {b5} are not adjacent for banner {banner:?}")));
    }
    Ok(Claim1::Structure { b4, b5 })
}

/// Induced C4 `v1 v2 v3 v4` in a C5-free, banner-free graph.
pub fn c4_reduction(g: &Graph, c4: [usize; 4]) -> Result<Reduction, ExtractionError> {
    let [v1, v2, v3, v4] = c4;
    let c = set(&c4);
    let i = anticomplete_to(g, &c);
    let h = g.vertices().difference(&c).difference(&i);
    for (d1, d2) in [(set(&[v1, v2]), set(&[v3, v4])), (set(&[v1, v4]), set(&[v2, v3]))] {
        let dominated = g.neighborhood_of(&d1).intersection(&g.neighborhood_of(&d2));
        if h.is_subset(&dominated) {
            return Ok(Reduction {
                claim: "c4_reduction",
                removed: c.union(&i),
                prefix: vec![d1, d2],
                coloring: vec![i.union(&set(&[v1, v3])), set(&[v2, v4])],
                witness: Some(json!({ "c4": c4 })),
                structures: Vec::new(),
            });
        }
    }
    Err(internal("c4_reduction", format!("neither split of C4 {c4:?} dominates the rest")))
}

/// Globally least `|N(x) ∩ C|` over induced 5-cycles `C` and `x ∉ C` with
/// `1 <= |N(x) ∩ C| <= 3`; ties go to the first pair in enumeration order.
pub fn low_degree_pair(g: &Graph, cap: usize) -> Result<Option<([usize; 5], usize)>, ExtractionError> {
    let mut best: Option<(usize, [usize; 5], usize)> = None;
    let mut seen = 0usize;
    let mut capped = false;
    let _ = for_each_induced_c5(g, |c| {
        seen += 1;
        if seen > cap {
            capped = true;
            return ControlFlow::Break(());
        }
        let cs = set(&c);
        for x in g.vertices().difference(&cs).iter() {
            let k = g.neighbors(x).intersection(&cs).len();
            if (1..=3).contains(&k) && best.is_none_or(|(b, _, _)| k < b) {
                best = Some((k, c, x));
                // A vertex seeing one cycle vertex would form 2K2 with the
                // opposite edge, so 2 is the floor.
                if k <= 2 {
                    return ControlFlow::Break(());
                }
            }
        }
        ControlFlow::Continue(())
    });
    if capped && best.is_none_or(|(k, _, _)| k > 2) {
        return Err(ExtractionError::CostCap { limit: cap });
    }
    Ok(best.map(|(_, c, x)| (c, x)))
}

/// Relabels the cycle so that `x ~ v1, v3` and `x ≁ v2, v4`.
fn normalize(g: &Graph, c: [usize; 5], x: usize) -> Option<[usize; 5]> {
    for refl in [false, true] {
        for rot in 0..5 {
            let o: [usize; 5] = std::array::from_fn(|k| {
                let idx = if refl { (rot + 5 - k) % 5 } else { (rot + k) % 5 };
                c[idx]
            });
            if g.has_edge(x, o[0]) && g.has_edge(x, o[2]) && !g.has_edge(x, o[1]) && !g.has_edge(x, o[3]) {
                return Some(o);
            }
        }
    }
    None
}

/// Reduction for a globally minimising low-degree pair `(c5, x)`.
pub fn low_degree_c5_reduction(g: &Graph, c5: [usize; 5], x: usize) -> Result<Reduction, ExtractionError> {
    const CLAIM: &str = "claim3_construction";
    let Some([v1, v2, v3, v4, v5]) = normalize(g, c5, x) else {
        return Err(internal(CLAIM, format!("vertex {x} has no normal position on C5 {c5:?}")));
    };
    let first = [x, v1, v2, v3, v4];
    let (z, y) = match claim1_banner(g, first, "claim3_banner")? {
        Claim1::Reduction(step) => return Ok(step),
        Claim1::Structure { b4, b5 } => (b4, b5),
    };
    let mut structures = vec![BannerStructure { banner: first, b4: z, b5: y }];
    if g.has_edge(x, v5) {
        return Err(internal(CLAIM, format!("x = {x} sees v5 = {v5}, contradicting minimality (witness y = {y})")));
    }
    let second = [x, v3, v2, v1, v5];
    let (u, w) = match claim1_banner(g, second, "claim3_banner")? {
        Claim1::Reduction(mut step) => {
            step.structures = structures;
            return Ok(step);
        }
        Claim1::Structure { b4, b5 } => (b4, b5),
    };
    structures.push(BannerStructure { banner: second, b4: u, b5: w });
    let k4 = set(&[y, z, u, w]);
    if k4.len() != 4 || !g.is_clique(&k4) {
        return Err(internal(CLAIM, format!("{{y, z, u, w}} = {{{y}, {z}, {u}, {w}}} is not a K4")));
    }
    if !(g.has_edge(v4, u) && g.has_edge(v4, w) && g.has_edge(v5, y) && g.has_edge(v5, z)) {
        return Err(internal(CLAIM, "v4 not complete to {u, w} or v5 not complete to {y, z}"));
    }

    let cyc = set(&[v1, v2, v3, v4, v5]);
    let s = set(&[x, y, z, u, w]);
    let i = anticomplete_to(g, &cyc);
    let d = [set(&[x, v1, v5]), set(&[v2, v3, v4]), set(&[z, u]), set(&[y, w])];
    let mut pool = g.vertices().difference(&cyc).difference(&i).difference(&s);
    let mut a: [VertexSet; 4] = Default::default();
    for (k, dk) in d.iter().enumerate() {
        a[k] = pool.iter().filter(|&v| !g.neighbors(v).intersects(dk)).collect();
        pool = pool.difference(&a[k]);
    }
    let removed = a.iter().fold(cyc.union(&s).union(&i), |acc, ak| acc.union(ak));
    Ok(Reduction {
        claim: CLAIM,
        removed,
        prefix: d.to_vec(),
        coloring: vec![
            a[0].union(&i).union(&set(&[v1, v4, z])),
            a[1].union(&set(&[v3, v5, w])),
            a[2].union(&set(&[x, u])),
            a[3].union(&set(&[v2, y])),
        ],
        witness: Some(json!({ "c5": [v1, v2, v3, v4, v5], "x": x, "y": y, "z": z, "u": u, "w": w })),
        structures,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum PartitionPhase {
    Reduction(Reduction),
    Partition(C5Partition),
}

/// Classifies the vertices around `c5` and either takes one of the degenerate
/// branches or returns the fully structured partition.
///
/// Requires that no induced 5-cycle has a vertex seeing 1 to 3 of its vertices.
pub fn build_c5_partition(g: &Graph, c5: [usize; 5]) -> Result<PartitionPhase, ExtractionError> {
    let v = |k: usize| c5[k % 5];
    let cyc = set(&c5);
    let i_set = anticomplete_to(g, &cyc);
    let h = g.vertices().difference(&cyc).difference(&i_set);
    let mut j_set = VertexSet::new();
    let mut y: [VertexSet; 5] = Default::default();
    for x in h.iter() {
        let missing = cyc.difference(g.neighbors(x));
        match missing.len() {
            0 => j_set.insert(x),
            1 => {
                let k = c5.iter().position(|&c| missing.contains(c)).expect("missing vertex is on the cycle");
                y[k].insert(x);
            }
            _ => return Err(internal("claim3_construction", format!("vertex {x} misses {} vertices of {c5:?}", missing.len()))),
        }
    }

    // Each Y_k is a clique: a non-edge inside Y_k yields a banner that must
    // reduce.
    for k in 0..5 {
        for a in y[k].iter() {
            if let Some(b) = y[k].above(a).difference(g.neighbors(a)).first() {
                let banner = [a, v(k + 3), b, v(k + 1), v(k)];
                return match claim1_banner(g, banner, "claim5_clique")? {
                    Claim1::Reduction(step) => Ok(PartitionPhase::Reduction(step)),
                    Claim1::Structure { b4, b5 } => Err(internal(
                        "claim5_clique",
                        format!("banner {banner:?} extends via ({b4}, {b5}) inside a Y class"),
                    )),
                };
            }
        }
    }

    if y.iter().all(VertexSet::is_empty) {
        return Ok(PartitionPhase::Reduction(Reduction {
            claim: "claim5_y_empty",
            removed: cyc.union(&i_set),
            prefix: vec![set(&[v(0), v(1), v(2)]), set(&[v(3)]), set(&[v(4)])],
            coloring: vec![i_set.union(&set(&[v(0), v(2)])), set(&[v(1), v(3)]), set(&[v(4)])],
            witness: Some(json!({ "c5": c5 })),
            structures: Vec::new(),
        }));
    }

    for k in 0..5 {
        let Some(yk) = y[k].first() else { continue };
        let (claim, prefix) = if y[k].len() == 1 {
            ("claim5_y_singleton", vec![set(&[yk, v(k + 1), v(k + 2)]), set(&[v(k + 3), v(k + 4)]), set(&[v(k)])])
        } else if y[(k + 1) % 5].is_empty() {
            ("claim5_y_next_empty", vec![set(&[yk, v(k), v(k + 4)]), set(&[v(k + 2), v(k + 3)]), set(&[v(k + 1)])])
        } else {
            continue;
        };
        return Ok(PartitionPhase::Reduction(Reduction {
            claim,
            removed: cyc.union(&i_set).union(&set(&[yk])),
            prefix,
            coloring: vec![
                set(&[v(k), yk]),
                i_set.union(&set(&[v(k + 1), v(k + 3)])),
                set(&[v(k + 2), v(k + 4)]),
            ],
            witness: Some(json!({ "c5": c5, "y": yk })),
            structures: Vec::new(),
        }));
    }

    // From here every Y_k is a clique with at least two vertices.
    for k in 0..5 {
        for x in j_set.iter() {
            if y[k].difference(g.neighbors(x)).len() > 1 {
                return Err(internal("claim6", format!("J-vertex {x} misses two vertices of Y{}", k + 1)));
            }
        }
        for a in y[k].iter() {
            if !y[(k + 2) % 5].is_subset(g.neighbors(a)) {
                return Err(internal("claim7", format!("{a} in Y{} not complete to Y{}", k + 1, (k + 2) % 5 + 1)));
            }
            for nb in [(k + 1) % 5, (k + 4) % 5] {
                if y[nb].difference(g.neighbors(a)).len() > 1 {
                    return Err(internal("claim7", format!("{a} in Y{} misses two vertices of Y{}", k + 1, nb + 1)));
                }
            }
        }
    }

    // A vertex complete to a neighbouring class gives a three-set reduction.
    for k in 0..5 {
        for d in [1usize, 4] {
            let kd = (k + d) % 5;
            let k2 = (k + 5 - 2 * d % 5) % 5; // k - 2d
            for yi in y[k].iter() {
                if !y[kd].is_subset(g.neighbors(yi)) {
                    continue;
                }
                let ykd = y[kd].first().expect("non-empty");
                let yk2 = y[k2].first().expect("non-empty");
                let ys = [(yi, v(k)), (ykd, v(kd)), (yk2, v(k2))];
                let s = set(&[v(k), v(kd), v(k2), yi, ykd, yk2]);
                let mut coloring: Vec<VertexSet> = ys.iter().map(|&(a, b)| set(&[a, b])).collect();
                let mut removed = s;
                for u in i_set.iter() {
                    if let Some(slot) = ys.iter().position(|&(a, _)| !g.has_edge(u, a)) {
                        coloring[slot].insert(u);
                        removed.insert(u);
                    }
                }
                return Ok(PartitionPhase::Reduction(Reduction {
                    claim: "claim8",
                    removed,
                    prefix: vec![set(&[yi, v(kd)]), set(&[ykd, v(k2)]), set(&[yk2, v(k)])],
                    coloring,
                    witness: Some(json!({ "c5": c5, "y_i": yi, "i": k + 1, "d": if d == 1 { 1 } else { -1 } })),
                    structures: Vec::new(),
                }));
            }
        }
    }

    let m = y[0].len();
    for k in 0..5 {
        if y[k].len() != m {
            return Err(internal("claim8", format!("|Y{}| = {} differs from |Y1| = {m}", k + 1, y[k].len())));
        }
        for a in y[k].iter() {
            for nb in [(k + 1) % 5, (k + 4) % 5] {
                if y[nb].difference(g.neighbors(a)).len() != 1 {
                    return Err(internal("claim8", format!("Y{}-Y{} is not (m-1)-regular at {a}", k + 1, nb + 1)));
                }
            }
        }
    }
    let all_y = y.iter().fold(VertexSet::new(), |acc, s| acc.union(s));
    for u in i_set.iter() {
        if let Some(w) = g.neighbors(u).intersection(&all_y).first() {
            return Err(internal("claim4", format!("I-vertex {u} is adjacent to {w} in Y")));
        }
    }
    for k in 0..5 {
        for a in y[k].iter() {
            let prev = y[(k + 4) % 5].difference(g.neighbors(a)).first().expect("regular");
            let next = y[(k + 1) % 5].difference(g.neighbors(a)).first().expect("regular");
            let pair = set(&[prev, next]);
            if let Some(x) = j_set.iter().find(|&x| !g.neighbors(x).intersects(&pair)) {
                return Err(internal("claim9", format!("J-vertex {x} is anticomplete to {{{prev}, {next}}}")));
            }
        }
    }
    Ok(PartitionPhase::Partition(C5Partition { c5, i: i_set, j: j_set, y, m }))
}

/// The `2m + 2`-set pairing construction over the partition.
pub fn final_reduction(g: &Graph, part: &C5Partition) -> Result<Reduction, ExtractionError> {
    let m = part.m;
    let claim = if m.is_multiple_of(2) { "final_even" } else { "final_odd" };
    let v = |k: usize| part.c5[k - 1];
    let yset = |k: usize| &part.y[k - 1];
    let non_nbr = |a: usize, k: usize| -> Result<usize, ExtractionError> {
        let miss = yset(k).difference(g.neighbors(a));
        match (miss.len(), miss.first()) {
            (1, Some(b)) => Ok(b),
            _ => Err(internal(claim, format!("{a} has {} non-neighbours in Y{k}", miss.len()))),
        }
    };
    if m < 2 || (1..=5).any(|k| yset(k).len() != m) {
        return Err(internal(claim, format!("partition classes are not all of size m = {m} >= 2")));
    }

    // 1-based vectors: y2[l], with y1[l], y3[l] its non-neighbours.
    let mut y2 = vec![usize::MAX];
    y2.extend(yset(2).iter());
    let mut y1 = vec![usize::MAX];
    let mut y3 = vec![usize::MAX];
    for &a in &y2[1..] {
        y1.push(non_nbr(a, 1)?);
        y3.push(non_nbr(a, 3)?);
    }
    let mut y4 = vec![usize::MAX];
    y4.extend(yset(4).iter());

    let (p, r) = (m / 2, m % 2);
    let mut d: Vec<VertexSet> = Vec::with_capacity(2 * m + 2);
    if r == 0 {
        d.push(set(&[v(2), v(3), v(4)]));
    } else {
        d.push(set(&[v(2), v(3), y4[m]]));
        d.push(set(&[v(4), y2[m]]));
    }
    for j in 1..=p {
        d.push(set(&[y2[2 * j - 1], y2[2 * j]]));
    }
    for j in 1..=p {
        d.push(set(&[y4[2 * j - 1], y4[2 * j]]));
    }
    for l in 1..=m {
        d.push(set(&[y1[l], y3[l]]));
    }
    d.push(set(&[v(1)]));
    debug_assert_eq!(d.len(), 2 * m + 2);

    let r_set = (1..=4).fold(set(&[v(1), v(2), v(3), v(4)]), |acc, k| acc.union(yset(k)));
    let mut coloring = Vec::with_capacity(2 * m + 2);
    for l in 1..=m {
        coloring.push(set(&[y1[l], y2[l]]));
    }
    for b in yset(3).iter() {
        coloring.push(set(&[b, non_nbr(b, 4)?]));
    }
    coloring.push(part.i.union(&set(&[v(1), v(3)])));
    coloring.push(set(&[v(2), v(4)]));

    Ok(Reduction {
        claim,
        removed: r_set.union(&part.i),
        prefix: d,
        coloring,
        witness: Some(json!({ "c5": part.c5, "m": m })),
        structures: Vec::new(),
    })
}
