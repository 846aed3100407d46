//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the test
//! harness so the lines always reach the output; exits non-zero if any
//! criterion fails.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use common::*;
use domclique::exact::{
    chromatic_number, clique_number, dominating_hadwiger_number, hadwiger_number, has_dominating_kt, has_kt_minor,
    optimal_coloring, verify_dominating_model, verify_ordinary_model, SearchLimits,
};
use domclique::extraction::{extract_dominating_with, extract_micu_minor, ExtractOptions, Extraction};
use domclique::generators::{banner, complete, complete_multipartite, cycle, one_subdivision_complete, t_graph};
use domclique::hunt::{run_hunt, Check, HuntConfig, InputSource, Verdict};
use domclique::{emit_graph6, parse_graph6, Graph};

const CORPUS_SIZE: u64 = 10_000;
const SMALL_SIZE: u64 = 1_000;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn limits() -> SearchLimits {
    SearchLimits::default()
}

fn no_shortcut() -> ExtractOptions {
    ExtractOptions { clique_shortcut: false, ..ExtractOptions::default() }
}

/// Branches the extraction trace must show across the corpora and the named
/// families.
const BRANCHES: [(&str, &str); 11] = [
    ("claim1_completed", "banner step completed"),
    ("claim1_structure", "banner step structure"),
    ("c4_reduction", "C4 reduction"),
    ("split_fallback", "split fallback"),
    ("claim3_construction", "low-degree C5 construction"),
    ("claim5_y_empty", "empty Y class"),
    ("claim5_y_singleton", "singleton Y class"),
    ("claim5_y_next_empty", "Y class followed by an empty one"),
    ("claim8", "singleton/empty neighbour class"),
    ("final_even", "final K_{2m+2}, m even"),
    ("final_odd", "final K_{2m+2}, m odd"),
];

#[derive(Default)]
struct Coverage(BTreeMap<&'static str, u64>);

impl Coverage {
    fn add(&mut self, e: &Extraction) {
        for ev in &e.trace {
            *self.0.entry(ev.claim).or_default() += 1;
        }
    }
}

// χ checked independently: the library colouring must be proper, and either
// a clique of that size exists or plain backtracking finds no (χ−1)-colouring.
fn check_chi(g: &Graph, adj: &[u64]) -> Result<usize, String> {
    let c = optimal_coloring(g);
    ensure(proper(adj, &c.colors) && c.colors.iter().all(|&x| x < c.chi.max(1)), || "improper colouring".into())?;
    if c.chi > 0 && common::clique_number(adj) < c.chi {
        ensure(!colorable(adj, c.chi - 1), || format!("graph is {}-colourable", c.chi - 1))?;
    }
    Ok(c.chi)
}

fn criterion_1(cov: &mut Coverage) -> Outcome {
    let mut sizes = BTreeMap::<usize, u64>::new();
    for (seed, g) in random_corpus(CORPUS_SIZE) {
        let adj = masks(&g);
        let fail = |m: String| format!("seed {seed} ({}): {m}", emit_graph6(&g).unwrap());
        ensure(!has_2k2(&adj), || fail("corpus graph has a 2K2".into()))?;
        let chi = check_chi(&g, &adj).map_err(fail)?;
        let e = extract_dominating_with(&g, &ExtractOptions::default()).map_err(|e| fail(e.to_string()))?;
        ensure(e.model.len() == chi, || fail(format!("{} sets, χ = {chi}", e.model.len())))?;
        ensure(verify_dominating_model(&g, &e.model).is_ok(), || fail("library verifier rejects".into()))?;
        ensure(is_dominating_model(&adj, &e.model.sets), || fail("oracle verifier rejects".into()))?;
        cov.add(&e);
        *sizes.entry(chi).or_default() += 1;
    }
    Ok(format!("{CORPUS_SIZE} graphs, all with exactly χ verified sets, no internal errors; χ histogram {sizes:?}"))
}

fn criterion_2(cov: &mut Coverage) -> Outcome {
    let mut gap = 0;
    for (seed, g) in small_corpus(SMALL_SIZE) {
        let adj = masks(&g);
        let fail = |m: String| format!("seed {seed} ({}): {m}", emit_graph6(&g).unwrap());
        ensure(!has_2k2(&adj), || fail("corpus graph has a 2K2".into()))?;
        let chi = chromatic_number(&g);
        ensure(chi == chromatic_dp(&adj), || fail(format!("χ = {chi}, oracle {}", chromatic_dp(&adj))))?;
        let (hd, witness) = dominating_hadwiger_number(&g, &limits()).map_err(|e| fail(e.to_string()))?;
        ensure(hd == dominating_hadwiger(&adj), || fail(format!("h_d = {hd}, oracle {}", dominating_hadwiger(&adj))))?;
        ensure(is_dominating_model(&adj, &witness.sets) && witness.len() == hd, || fail("bad h_d witness".into()))?;
        ensure(hd >= chi, || fail(format!("h_d = {hd} < χ = {chi}")))?;
        let present = has_dominating_kt(&g, chi, &limits()).map_err(|e| fail(e.to_string()))?;
        ensure(present.is_some() && dominating_minor(&adj, chi), || fail("no dominating K_χ".into()))?;
        let e = extract_dominating_with(&g, &ExtractOptions::default()).map_err(|e| fail(e.to_string()))?;
        ensure(e.model.len() <= hd && is_dominating_model(&adj, &e.model.sets), || fail("extractor model".into()))?;
        cov.add(&e);
        gap += (hd - chi) as u64;
    }
    Ok(format!("{SMALL_SIZE} graphs (n ≤ 10): h_d ≥ χ, extractor ≤ h_d, K_χ present; total h_d − χ surplus {gap}"))
}

fn criterion_3() -> Outcome {
    let mut parts = Vec::new();
    for n in [4, 5] {
        let g = one_subdivision_complete(n).unwrap();
        let adj = masks(&g);
        let started = Instant::now();
        let four = has_dominating_kt(&g, 4, &limits()).map_err(|e| e.to_string())?;
        let three = has_dominating_kt(&g, 3, &limits()).map_err(|e| e.to_string())?;
        ensure(four.is_none(), || format!("K{n}: dominating K4 found: {four:?}"))?;
        let three = three.ok_or(format!("K{n}: no dominating K3"))?;
        ensure(is_dominating_model(&adj, &three.sets), || format!("K{n}: bad K3 model"))?;
        let (hd, _) = dominating_hadwiger_number(&g, &limits()).map_err(|e| e.to_string())?;
        ensure(hd == 3, || format!("K{n}: h_d = {hd}"))?;
        ensure(dominating_hadwiger(&adj) == 3, || format!("K{n}: oracle h_d ≠ 3"))?;
        let ordinary = has_kt_minor(&g, n, &limits()).map_err(|e| e.to_string())?;
        let ordinary = ordinary.ok_or(format!("K{n}: no K{n} minor"))?;
        ensure(is_ordinary_model(&adj, &ordinary.sets), || format!("K{n}: bad K{n} minor model"))?;
        if n == 4 {
            ensure(ordinary_minor(&adj, 4), || "oracle finds no K4 minor".into())?;
        }
        let secs = started.elapsed().as_secs_f64();
        ensure(secs <= 60.0, || format!("K{n} took {secs:.1}s"))?;
        parts.push(format!("K{n}: h_d = 3, K{n} minor present ({secs:.2}s)"));
    }
    Ok(parts.join("; "))
}

fn criterion_4() -> Outcome {
    let graphs = corpus("graphs_le7.g6");
    ensure(graphs.len() == 1253, || format!("corpus has {} graphs", graphs.len()))?;
    let mut checked = 0;
    for g in &graphs {
        let adj = masks(g);
        for t in 1..=3 {
            let d = has_dominating_kt(g, t, &limits()).map_err(|e| e.to_string())?.is_some();
            let o = has_kt_minor(g, t, &limits()).map_err(|e| e.to_string())?.is_some();
            let fail = || format!("{} t = {t}: dominating {d}, ordinary {o}", emit_graph6(g).unwrap());
            ensure(d == o, fail)?;
            ensure(d == dominating_minor(&adj, t) && o == ordinary_minor(&adj, t), || format!("{} oracle", fail()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (graph, t) pairs agree, {} graphs", graphs.len()))
}

fn criterion_5() -> Outcome {
    let path = corpus_path("graphs_le8.g6");
    let expected = corpus_lines("graphs_le8.g6").len() as u64;
    let mut cfg = HuntConfig::new(InputSource::File(path));
    cfg.checks = vec![Check::DominatingHadwiger];
    cfg.workers = 8;
    cfg.budget = Duration::from_secs(60);
    let mut sink = Vec::new();
    let summary = run_hunt(&cfg, &mut sink).map_err(|e| e.to_string())?;
    ensure(summary.records == expected && expected == 13_599, || format!("{} records, {expected} lines", summary.records))?;
    ensure(summary.counterexamples.is_empty(), || format!("counterexamples: {:?}", summary.counterexamples))?;
    ensure(summary.count(Verdict::Holds) == expected, || format!("verdicts {:?}", summary.counts))?;
    Ok(format!("{} graphs on ≤ 8 vertices, 8 workers: 0 counterexamples, all hold ({:.0} graphs/s)", summary.records, summary.graphs_per_sec))
}

fn criterion_6() -> Outcome {
    for (seed, g) in random_corpus(CORPUS_SIZE) {
        let adj = masks(&g);
        let fail = |m: String| format!("seed {seed} ({}): {m}", emit_graph6(&g).unwrap());
        let chi = chromatic_number(&g);
        let model = extract_micu_minor(&g).map_err(|e| fail(e.to_string()))?;
        ensure(model.len() == chi, || fail(format!("{} sets, χ = {chi}", model.len())))?;
        ensure(verify_ordinary_model(&g, &model).is_ok(), || fail("library verifier rejects".into()))?;
        ensure(is_ordinary_model(&adj, &model.sets), || fail("oracle verifier rejects".into()))?;
    }
    Ok(format!("{CORPUS_SIZE} graphs, ordinary K_χ models verified"))
}

fn criterion_7(cov: &mut Coverage) -> Outcome {
    // K4 with a pendant vertex.
    let mut split = Graph::empty(5).unwrap();
    for (u, v) in complete(4).unwrap().edges() {
        split.add_edge(u, v).unwrap();
    }
    split.add_edge(0, 4).unwrap();
    let families = [
        ("C5", cycle(5).unwrap()),
        ("T", t_graph()),
        ("banner", banner()),
        ("split", split),
        ("star", complete_multipartite(&[1, 4]).unwrap()),
        ("octahedron", complete_multipartite(&[2, 2, 2]).unwrap()),
    ];
    for (name, g) in &families {
        for opts in [ExtractOptions::default(), no_shortcut()] {
            let e = extract_dominating_with(g, &opts).map_err(|e| format!("{name}: {e}"))?;
            ensure(is_dominating_model(&masks(g), &e.model.sets), || format!("{name}: bad model"))?;
            cov.add(&e);
        }
    }
    let missing: Vec<&str> = BRANCHES.iter().filter(|(c, _)| !cov.0.contains_key(c)).map(|(_, d)| *d).collect();
    ensure(missing.is_empty(), || format!("branches never executed: {missing:?}"))?;
    let hits: Vec<String> = BRANCHES.iter().map(|(c, _)| format!("{c} {}", cov.0[c])).collect();
    Ok(format!("all {} branches hit: {}", BRANCHES.len(), hits.join(", ")))
}

fn criterion_8() -> Outcome {
    let mut count = 0;
    for name in ["graphs_le7.g6", "graphs_le8.g6"] {
        for line in corpus_lines(name) {
            let g = parse_graph6(&line).map_err(|e| format!("{line}: {e}"))?;
            let back = emit_graph6(&g).map_err(|e| format!("{line}: {e}"))?;
            ensure(back == line, || format!("{line} re-encodes as {back}"))?;
            count += 1;
        }
    }
    ensure(parse_graph6("Dhc").unwrap() == cycle(5).unwrap(), || "Dhc is not C5".into())?;
    ensure(parse_graph6("A_").unwrap() == complete(2).unwrap(), || "A_ is not K2".into())?;
    Ok(format!("{count} strings round-trip; Dhc = C5, A_ = K2"))
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)).prop_map(|bits| {
        let n = (1..).find(|k: &usize| k * (k - 1) / 2 == bits.len()).unwrap();
        let mut g = Graph::empty(n).unwrap();
        let mut it = bits.into_iter();
        for v in 1..n {
            for u in 0..v {
                if it.next().unwrap() {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    })
}

fn run_property<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    let mut runner = TestRunner::new_with_rng(Config { cases, failure_persistence: None, ..Config::default() }, rng);
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn criterion_9() -> Outcome {
    // Suffixes of dominating models stay dominating: exact witnesses on
    // random graphs and extractor output on 2K2-free ones.
    run_property(300, graph_strategy(9), |g| {
        let (hd, model) = dominating_hadwiger_number(&g, &limits()).unwrap();
        prop_assert_eq!(model.len(), hd);
        for k in 0..=hd {
            let s = model.suffix(k);
            prop_assert!(verify_dominating_model(&g, &s).is_ok());
            prop_assert!(is_dominating_model(&masks(&g), &s.sets));
        }
        Ok(())
    })
    .map_err(|e| format!("suffix validity (exact): {e}"))?;
    run_property(300, (5usize..=30, 0.1f64..0.9, any::<u64>()), |(n, p, seed)| {
        let g = domclique::generators::random_2k2_free(n, p, seed).unwrap();
        let model = extract_dominating_with(&g, &ExtractOptions::default()).unwrap().model;
        for k in 0..=model.len() {
            prop_assert!(verify_dominating_model(&g, &model.suffix(k)).is_ok());
        }
        Ok(())
    })
    .map_err(|e| format!("suffix validity (extractor): {e}"))?;

    // Colourings are proper and optimal.
    run_property(500, graph_strategy(10), |g| {
        let adj = masks(&g);
        let c = optimal_coloring(&g);
        prop_assert!(proper(&adj, &c.colors));
        prop_assert!(c.colors.iter().all(|&x| x < c.chi));
        prop_assert_eq!(c.chi, chromatic_dp(&adj));
        Ok(())
    })
    .map_err(|e| format!("colouring: {e}"))?;

    // ω ≤ h_d ≤ Hadwiger number.
    let sandwich = |g: &Graph| -> Result<(), String> {
        let w = clique_number(g);
        let (hd, _) = dominating_hadwiger_number(g, &limits()).map_err(|e| e.to_string())?;
        let (h, _) = hadwiger_number(g, &limits()).map_err(|e| e.to_string())?;
        ensure(w <= hd && hd <= h, || format!("{}: ω {w}, h_d {hd}, h {h}", emit_graph6(g).unwrap()))
    };
    let small = corpus("graphs_le7.g6");
    for g in &small {
        sandwich(g)?;
    }
    run_property(200, graph_strategy(9), |g| sandwich(&g).map_err(TestCaseError::fail))
        .map_err(|e| format!("ω ≤ h_d ≤ h: {e}"))?;

    // Adding an edge never lowers h_d, over every graph on ≤ 6 vertices.
    let mut pairs = 0;
    let le6: Vec<&Graph> = small.iter().filter(|g| g.n() <= 6).collect();
    for g in &le6 {
        let (hd, _) = dominating_hadwiger_number(g, &limits()).unwrap();
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                if !g.has_edge(u, v) {
                    let (hd2, _) = dominating_hadwiger_number(&g.with_edge(u, v).unwrap(), &limits()).unwrap();
                    ensure(hd2 >= hd, || format!("{} + {u}{v}: h_d {hd} → {hd2}", emit_graph6(g).unwrap()))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!(
        "suffix validity, proper optimal colourings, ω ≤ h_d ≤ h ({} atlas graphs + random), monotonicity over {} graphs / {pairs} edge additions",
        small.len(),
        le6.len()
    ))
}

fn main() {
    let mut cov = Coverage::default();
    let mut failed = 0;
    let mut report = |id: u32, name: &str, budget: Option<Duration>, run: &mut dyn FnMut() -> Outcome| {
        let started = Instant::now();
        let result = run();
        let elapsed = started.elapsed();
        let result = match (result, budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("over budget: {elapsed:.1?} > {b:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("PASS  criterion {id} [{name}] ({elapsed:.2?}): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {id} [{name}] ({elapsed:.2?}): {detail}");
            }
        }
    };
    let min = |m: u64| Some(Duration::from_secs(60 * m));
    report(1, "extraction end-to-end", min(10), &mut || criterion_1(&mut cov));
    report(2, "oracle agreement n ≤ 10", min(5), &mut || criterion_2(&mut cov));
    report(3, "subdivided K4, K5", min(2), &mut criterion_3);
    report(4, "t ≤ 3 equivalence", min(5), &mut criterion_4);
    report(5, "hunt over n ≤ 8", min(30), &mut criterion_5);
    report(6, "ordinary K_χ construction", None, &mut criterion_6);
    report(7, "branch coverage", None, &mut || criterion_7(&mut cov));
    report(8, "graph6 fidelity", None, &mut criterion_8);
    report(9, "invariant suites", None, &mut criterion_9);
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
