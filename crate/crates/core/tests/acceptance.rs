//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_RED` state values the solver refutes; they run
//! in full and print FAIL with the measured values, but do not fail the
//! target. Any other failure exits non-zero.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use wsat_core::constructions::{
    caterpillar_saturator, endd_mind_saturator, high_degree_good_tree, local_structure_saturator_with,
    ConstructionOutput, Structure,
};
use wsat_core::enumerate::enumerate_trees;
use wsat_core::formulas::{choose2, pair_set, wsat_formulas};
use wsat_core::notation::parse_graph_spec;
use wsat_core::percolation::search_count;
use wsat_core::reproduce::{exponent_rows, exponents_csv, reproduce, Params};
use wsat_core::solver::{all_fail, wsat_exact, wsat_limit_estimate};
use wsat_core::tree::{find_even_path, find_six_vertex};
use wsat_core::{tree_features, CaterpillarSpec, ConstructionError, Execution, Graph, Pattern};

const KNOWN_RED: &[usize] = &[1, 7, 10];

type Outcome = Result<String, String>;
type Criterion = (usize, &'static str, Box<dyn Fn() -> Outcome>);

fn pat(spec: &str) -> Pattern {
    Pattern::new(parse_graph_spec(spec).unwrap()).unwrap()
}

fn exact(n: usize, f: &Pattern) -> (usize, Duration) {
    let start = Instant::now();
    let r = wsat_exact(n, f, None, Execution::Parallel).expect("solver run");
    (r.value, start.elapsed())
}

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn clique_values() -> Outcome {
    let k3 = pat("clique:3");
    let mut notes = Vec::new();
    let mut ok = true;
    let mut slowest = Duration::ZERO;
    for n in 4..=7 {
        let (v, t) = exact(n, &k3);
        slowest = slowest.max(t);
        ok &= v == n - 1;
        notes.push(format!("K3@{n}={v}"));
    }
    let k4 = pat("clique:4");
    let formula = |n: usize| choose2(4) - 1 + (n - 4) * 2;
    for n in [5, 6] {
        let (v, t) = exact(n, &k4);
        slowest = slowest.max(t);
        ok &= v == formula(n);
        notes.push(format!("K4@{n}={v} (formula {})", formula(n)));
    }
    let (at5, _) = exact(5, &k4);
    ok &= at5 == 9;
    ok &= slowest < Duration::from_secs(60);
    notes.push(format!("stated K4@5 = 9; slowest {:.2?}", slowest));
    ensure(ok, notes.join(", "))
}

fn paths_and_stars() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for l in 3..=6 {
        let (v, _) = exact(l, &pat(&format!("path:{l}")));
        ok &= v == l - 2;
        notes.push(format!("P{l}={v}"));
    }
    for k in [3, 4] {
        let (v, _) = exact(k + 3, &pat(&format!("star:{}", k + 1)));
        ok &= v == choose2(k);
        notes.push(format!("S{}@{}={v}", k + 1, k + 3));
    }
    ensure(ok, notes.join(", "))
}

fn caterpillar_limits() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    // good ones sit at k - 1; cat:3,3 at 7
    for (spec, extra) in [("cat:1,1", 0), ("cat:2,1", 0), ("cat:2,2", 0), ("cat:3,3", 1)] {
        let f = pat(spec);
        let expected = f.size() - 1 + extra;
        let est = wsat_limit_estimate(&f, 3, f.order() + 6, Execution::Parallel).unwrap();
        let formula = wsat_formulas(&f).limit();
        ok &= est.value == Some(expected) && formula == Some(expected) && est.stabilized && est.certified;
        notes.push(format!("{spec}={:?} up to n={}", est.value, est.n_used));
    }
    ok &= start.elapsed() < Duration::from_secs(1800);
    ensure(ok, notes.join(", "))
}

fn three_spine() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (spec, expected) in [("cat:1,0,1", 3), ("cat:1,0,2", 4), ("cat:2,0,2", 6)] {
        let f = pat(spec);
        let est = wsat_limit_estimate(&f, 3, f.order() + 6, Execution::Parallel).unwrap();
        let below = all_fail(est.n_used, &f, expected - 1, Execution::Parallel).unwrap();
        ok &= est.value == Some(expected) && est.stabilized && below.is_some();
        notes.push(format!("{spec}={:?} ({} cores fail below)", est.value, below.unwrap_or(0)));
    }
    ensure(ok, notes.join(", "))
}

fn report(claim: &str, params: &[(&str, &str)]) -> Outcome {
    let params: Params = params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    let r = reproduce(claim, &params, Execution::Parallel).map_err(|e| e.to_string())?;
    let bad: Vec<String> = r
        .rows
        .iter()
        .filter(|row| !row.agree)
        .map(|row| format!("{} predicted {} got {}", row.instance, row.predicted, row.computed))
        .collect();
    let detail = format!("{} rows, {} disagreements", r.stats.rows, r.stats.disagreements);
    if bad.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}: {}", bad.join("; ")))
    }
}

fn monotone() -> Outcome {
    let mut notes = Vec::new();
    let mut violations = 0;
    for spec in ["path:3", "path:4", "star:4", "clique:3", "cat:2,1"] {
        let f = pat(spec);
        let n0 = f.order().max(3);
        let values: Vec<usize> = (n0..n0 + 5).map(|n| exact(n, &f).0).collect();
        violations += values.windows(2).filter(|w| w[1] > w[0]).count();
        notes.push(format!("{spec}: {values:?}"));
    }
    ensure(violations == 0, format!("{violations} violations; {}", notes.join(", ")))
}

fn threshold_of(result: Result<ConstructionOutput, ConstructionError>) -> usize {
    match result {
        Err(ConstructionError::BelowThreshold { threshold, .. }) => threshold,
        other => panic!("expected a threshold error, got {other:?}"),
    }
}

fn replays(out: &ConstructionOutput, expected: usize) -> bool {
    out.claimed_edges == expected
        && out.certificate.initial.len() == expected
        && out.certificate.verify(true).is_ok_and(|r| r.complete)
}

fn certificate_integrity() -> Outcome {
    let mut built = 0;
    let mut failures = Vec::new();
    for v in 3..=8 {
        for t in enumerate_trees(v).unwrap() {
            let Some((spec, _)) = CaterpillarSpec::recognise(&t) else { continue };
            if !spec.is_nondegenerate() || (spec.spine_len() == 1 && spec.pendants[0] < 2) {
                continue;
            }
            let f = Pattern::new(spec.graph()).unwrap();
            let out = caterpillar_saturator(&spec, threshold_of(caterpillar_saturator(&spec, 0))).unwrap();
            built += 1;
            if !replays(&out, wsat_formulas(&f).limit().unwrap()) {
                failures.push(format!("cat{:?}", spec.pendants));
            }
        }
    }
    let mut big = String::new();
    for n_children in [1, 2] {
        let h = high_degree_good_tree(n_children);
        let f = Pattern::new(h.tree).unwrap();
        let n = threshold_of(endd_mind_saturator(&f, h.v1, h.v2, 0));
        let out = endd_mind_saturator(&f, h.v1, h.v2, n).unwrap();
        let expected = f.size() - 1 + pair_set(&f, h.v1, h.v2).len() * f.min_end_pendants().unwrap();
        let searches = search_count();
        let start = Instant::now();
        let ok = replays(&out, expected);
        let elapsed = start.elapsed();
        built += 1;
        if !ok || search_count() != searches || elapsed > Duration::from_secs(60) {
            failures.push(format!("high-degree tree N={n_children}"));
        }
        big = format!("N={n_children}: v={} at n={n} replayed in {elapsed:.2?}", f.order());
    }
    let mut local = [0; 3];
    for v in 6..=9 {
        for t in enumerate_trees(v).unwrap() {
            let f = Pattern::new(t.clone()).unwrap();
            let present = [
                tree_features(&t).unwrap().has_p2_leaf,
                find_six_vertex(&t).is_some(),
                find_even_path(&t).is_some(),
            ];
            let kinds = [Structure::P2Leaf, Structure::SixVertex, Structure::EvenPath];
            for i in (0..3).filter(|&i| present[i]) {
                let out = local_structure_saturator_with(&f, 2 * v + 1, kinds[i]).unwrap();
                built += 1;
                local[i] += 1;
                if !replays(&out, f.size() - 1) {
                    failures.push(format!("{:?} on {t:?}", kinds[i]));
                }
            }
        }
    }
    let ok = failures.is_empty() && local.iter().all(|&c| c > 0);
    ensure(
        ok,
        format!("{built} certificates, local structures {local:?}, {big}; failures: {failures:?}"),
    )
}

fn exponent_table() -> Outcome {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let golden = std::fs::read_to_string(dir.join("exponents.csv")).map_err(|e| e.to_string())?;
    let bounds = std::fs::read_to_string(dir.join("exponent_bounds.csv")).map_err(|e| e.to_string())?;
    let csv = exponents_csv(&[1.0, 1.5, 2.0], 40);
    let mut ok = csv == golden;
    let mut notes = vec![format!("csv byte-identical: {}", csv == golden)];
    for line in bounds.lines().skip(1) {
        let c: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        let inside = exponent_rows(c[0], 40).into_iter().all(|(k, _, value)| {
            let scale = (k as f64).powf(c[0]);
            c[1] * scale <= value as f64 && value as f64 <= c[2] * scale
        });
        ok &= inside;
        notes.push(format!("alpha {}: {} <= ratio <= {}", c[0], c[1], c[2]));
    }
    ensure(ok, notes.join(", "))
}

fn colour_classes() -> Outcome {
    let small_stars = [Graph::star(3), Graph::star(4)].map(|s| wsat_core::canon::canonical_form(&s).unwrap());
    let mut checked = (0, 0);
    let mut violations = 0;
    for v in 3..=10 {
        for t in enumerate_trees(v).unwrap() {
            let feats = tree_features(&t).unwrap();
            if !feats.parity {
                continue;
            }
            let (red, blue) = feats.colour_classes;
            checked.0 += 1;
            violations += usize::from(red <= blue);
            let form = wsat_core::canon::canonical_form(&t).unwrap();
            if !feats.has_p2_leaf && !small_stars.contains(&form) {
                checked.1 += 1;
                violations += usize::from(red < blue + 3);
            }
        }
    }
    ensure(
        violations == 0,
        format!("{} parity trees, {} under the margin hypotheses, {violations} violations", checked.0, checked.1),
    )
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (1, "clique formula", Box::new(clique_values)),
        (2, "paths and stars", Box::new(paths_and_stars)),
        (3, "caterpillar limits", Box::new(caterpillar_limits)),
        (4, "three-spine caterpillars", Box::new(three_spine)),
        (5, "parity tree scan", Box::new(|| report("goodtree-scan", &[("max_v", "9")]))),
        (6, "counterexample", Box::new(|| report("counterexample", &[]))),
        (7, "monotonicity", Box::new(monotone)),
        (8, "closure order", Box::new(|| report("closure-order", &[("instances", "200"), ("orders", "10")]))),
        (9, "certificate integrity", Box::new(certificate_integrity)),
        (10, "second largest at l=3", Box::new(|| report("secondlargest", &[("l", "3")]))),
        (11, "exponent table", Box::new(exponent_table)),
        (12, "colour classes", Box::new(colour_classes)),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let known = KNOWN_RED.contains(id);
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(d) => println!("PASS {id:>2} {name} [{secs:.1}s]: {d}"),
            Err(d) => println!("FAIL {id:>2} {name} [{secs:.1}s]{}: {d}", if known { " (known red)" } else { "" }),
        }
        if known && outcome.is_ok() {
            println!("     note: criterion {id} is listed as known red but passed");
        }
        if !known && outcome.is_err() {
            unexpected.push(*id);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
