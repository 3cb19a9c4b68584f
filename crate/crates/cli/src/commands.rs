use std::fmt::Write as _;
use std::path::Path;

use anyhow::Context;
use clap::ValueEnum;
use serde::Serialize;

use wsat_core::classify::{classify_good, Verdict};
use wsat_core::constructions::{
    caterpillar_saturator, end_star_saturator, endd_mind_saturator, local_structure_saturator, ConstructionOutput,
};
use wsat_core::enumerate::{enumerate_cores_bounded, enumerate_trees};
use wsat_core::formulas::{best_pair, wsat_formulas, Bound, Kind, WsatRecord};
use wsat_core::graph6;
use wsat_core::notation::{parse_graph_spec, to_dot};
use wsat_core::percolation::{closure, closure_random_order};
use wsat_core::reproduce::{reproduce, tree_name, Params};
use wsat_core::solver::{limit_csv, wsat_exact, wsat_limit_estimate, ExactResult, LimitEstimate};
use wsat_core::{CaterpillarSpec, Certificate, ConstructionError, Execution, Graph, Pattern};

use crate::errors::usage;
use crate::{Command, Emitted};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructKind {
    /// Fewest edges among all constructions that apply.
    Auto,
    Caterpillar,
    EndStar,
    Pair,
    Local,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerateKind {
    Trees,
    Cores,
}

fn graph(spec: &str) -> anyhow::Result<Graph> {
    Ok(parse_graph_spec(spec)?)
}

fn pattern(spec: &str) -> anyhow::Result<Pattern> {
    let g = graph(spec)?;
    Pattern::new(g).with_context(|| format!("pattern `{spec}`"))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output types serialize")
}

fn emitted(json: String, text: String) -> Emitted {
    Emitted {
        json,
        csv: None,
        g6: None,
        dot: None,
        text,
        ok: true,
    }
}

fn with_graph(mut e: Emitted, g: &Graph, name: &str) -> Emitted {
    e.g6 = Some(graph6::encode(g));
    e.dot = Some(to_dot(g, name));
    e
}

pub fn dispatch(command: Command, exec: Execution) -> anyhow::Result<Emitted> {
    match command {
        Command::Closure { host, pattern: p, seed } => closure_cmd(&host.graph, &p.pattern, seed),
        Command::Saturated { host, pattern: p } => saturated_cmd(&host.graph, &p.pattern),
        Command::Exact { pattern: p, n, max_edges } => {
            exact_cmd(&p.pattern, n.into(), max_edges.map(usize::from), exec)
        }
        Command::Limit { pattern: p, max_n, window } => {
            limit_cmd(&p.pattern, max_n.map(usize::from), window.into(), exec)
        }
        Command::Formulas { pattern: p, n } => formulas_cmd(&p.pattern, n),
        Command::Construct { pattern: p, n, rule, pair } => {
            construct_cmd(&p.pattern, n.map(usize::from), rule, pair.as_deref())
        }
        Command::Classify { pattern: p } => classify_cmd(&p.pattern),
        Command::Enumerate { kind, n, max_edges, max_n } => {
            enumerate_cmd(kind, n.map(usize::from), max_edges.map(usize::from), max_n.map(usize::from))
        }
        Command::Reproduce { claim, params, seed } => reproduce_cmd(&claim, &params, seed, exec),
        Command::Verify { certificate, partial } => verify_cmd(&certificate, partial),
    }
}

#[derive(Serialize)]
struct ClosureOut {
    pattern: Graph,
    host: Graph,
    closure: Graph,
    complete: bool,
    added: usize,
    /// Present when `--seed` was given.
    #[serde(skip_serializing_if = "Option::is_none")]
    seeded_order_agrees: Option<bool>,
    certificate: Certificate,
}

fn closure_cmd(host: &str, f: &str, seed: Option<u64>) -> anyhow::Result<Emitted> {
    let g = graph(host)?;
    let f = pattern(f)?;
    let (closed, certificate) = closure(&g, &f)?;
    let agrees = seed.map(|s| closure_random_order(&g, &f, s)).transpose()?.map(|c| c == closed);
    let out = ClosureOut {
        pattern: f.graph().clone(),
        host: g.clone(),
        closure: closed.clone(),
        complete: closed.is_complete(),
        added: certificate.steps.len(),
        seeded_order_agrees: agrees,
        certificate,
    };
    let mut text = format!(
        "closure of {} edges adds {} and is {}complete\n",
        g.edge_count(),
        out.added,
        if out.complete { "" } else { "not " }
    );
    if let Some(a) = agrees {
        writeln!(text, "seeded order {}", if a { "agrees" } else { "DIFFERS" }).unwrap();
    }
    let mut e = with_graph(emitted(json(&out), text), &closed, "closure");
    e.ok = agrees != Some(false);
    Ok(e)
}

#[derive(Serialize)]
struct SaturatedOut {
    pattern: Graph,
    host: Graph,
    saturated: bool,
    /// Non-edges left by the closure.
    missing: usize,
}

fn saturated_cmd(host: &str, f: &str) -> anyhow::Result<Emitted> {
    let g = graph(host)?;
    let f = pattern(f)?;
    if g.n() < f.order() {
        return Err(usage(format!("host has {} vertices, the pattern {}", g.n(), f.order())));
    }
    let (closed, _) = closure(&g, &f)?;
    let out = SaturatedOut {
        pattern: f.graph().clone(),
        host: g,
        saturated: closed.is_complete(),
        missing: closed.non_edges().len(),
    };
    let text = if out.saturated {
        "weakly saturated\n".to_string()
    } else {
        format!("not weakly saturated: {} non-edges remain\n", out.missing)
    };
    Ok(emitted(json(&out), text))
}

#[derive(Serialize)]
struct BoundAt {
    rule: String,
    kind: Kind,
    value: usize,
}

fn bounds_at(record: &WsatRecord, n: usize) -> Vec<BoundAt> {
    record
        .entries
        .iter()
        .map(|b: &Bound| BoundAt {
            rule: b.rule.id(),
            kind: b.kind,
            value: b.formula.eval(n),
        })
        .collect()
}

#[derive(Serialize)]
struct ExactOut {
    #[serde(flatten)]
    result: ExactResult,
    bounds: Vec<BoundAt>,
}

fn exact_cmd(f: &str, n: usize, max_edges: Option<usize>, exec: Execution) -> anyhow::Result<Emitted> {
    let f = pattern(f)?;
    let result = wsat_exact(n, &f, max_edges, exec)?;
    let bounds = bounds_at(&wsat_formulas(&f), n);
    let text = format!(
        "w-sat({n}, F) = {}\nwitness {}\nall {} cores with {} edges fail\n",
        result.value,
        graph6::encode(&result.witness),
        result.minimality,
        result.value.saturating_sub(1)
    );
    let witness = result.witness.clone();
    let csv = format!("n,value\n{n},{}\n", result.value);
    let mut e = with_graph(emitted(json(&ExactOut { result, bounds }), text), &witness, "witness");
    e.csv = Some(csv);
    Ok(e)
}

#[derive(Serialize)]
struct LimitOut {
    pattern: Graph,
    window: usize,
    #[serde(flatten)]
    estimate: LimitEstimate,
}

fn limit_cmd(f: &str, max_n: Option<usize>, window: usize, exec: Execution) -> anyhow::Result<Emitted> {
    let f = pattern(f)?;
    let max_n = max_n.unwrap_or(f.order() + 6);
    if max_n < f.order() {
        return Err(usage(format!("--max-n {max_n} is below v(T) = {}", f.order())));
    }
    let estimate = wsat_limit_estimate(&f, window, max_n, exec)?;
    let mut text = String::new();
    for r in &estimate.rows {
        let v = r.value.map_or_else(|| format!("> {}", r.cap), |v| v.to_string());
        writeln!(text, "n = {:>2}: {v}", r.n).unwrap();
    }
    writeln!(
        text,
        "estimate {:?}, stabilized {}, certified {}",
        estimate.value, estimate.stabilized, estimate.certified
    )
    .unwrap();
    let csv = limit_csv(&estimate.rows);
    let out = LimitOut {
        pattern: f.graph().clone(),
        window,
        estimate,
    };
    let mut e = emitted(json(&out), text);
    e.csv = Some(csv);
    Ok(e)
}

#[derive(Serialize)]
struct FormulasOut {
    pattern: Graph,
    #[serde(flatten)]
    record: WsatRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    at_n: Option<AtN>,
}

#[derive(Serialize)]
struct AtN {
    n: usize,
    lower: Option<usize>,
    upper: Option<usize>,
    exact: Option<usize>,
    bounds: Vec<BoundAt>,
}

fn formulas_cmd(f: &str, n: Option<usize>) -> anyhow::Result<Emitted> {
    let f = pattern(f)?;
    let record = wsat_formulas(&f);
    let mut text = String::new();
    for b in &record.entries {
        let formula = match b.formula {
            wsat_core::formulas::Formula::Constant { value } => value.to_string(),
            wsat_core::formulas::Formula::Affine { from, value, slope } => format!("{value} + {slope}(n - {from})"),
        };
        writeln!(text, "{:<6} {:<28} {formula}", format!("{:?}", b.kind).to_lowercase(), b.rule.id()).unwrap();
    }
    if record.entries.is_empty() {
        text.push_str("no rule applies\n");
    }
    let mut csv = String::from("rule,kind,value\n");
    let at_n = n.map(|n| {
        let bounds = bounds_at(&record, n);
        for b in &bounds {
            writeln!(csv, "{},{},{}", b.rule, format!("{:?}", b.kind).to_lowercase(), b.value).unwrap();
        }
        AtN {
            n,
            lower: record.lower_at(n),
            upper: record.upper_at(n),
            exact: record.exact_at(n),
            bounds,
        }
    });
    let mut e = emitted(
        json(&FormulasOut {
            pattern: f.graph().clone(),
            record,
            at_n,
        }),
        text,
    );
    e.csv = n.map(|_| csv);
    Ok(e)
}

fn parse_pair(text: &str) -> anyhow::Result<(usize, usize)> {
    let parts: Vec<&str> = text.split(',').collect();
    match parts.as_slice() {
        [u, w] => Ok((
            u.trim().parse().map_err(|_| usage(format!("bad vertex `{u}` in --pair")))?,
            w.trim().parse().map_err(|_| usage(format!("bad vertex `{w}` in --pair")))?,
        )),
        _ => Err(usage(format!("--pair expects `u,w`, got `{text}`"))),
    }
}

/// Runs `build` at `n`, or at the construction's own threshold.
fn at(n: Option<usize>, build: impl Fn(usize) -> Result<ConstructionOutput, ConstructionError>) -> Result<ConstructionOutput, ConstructionError> {
    match n {
        Some(n) => build(n),
        None => match build(0) {
            Err(ConstructionError::BelowThreshold { threshold, .. }) => build(threshold),
            other => other,
        },
    }
}

fn construct_cmd(f: &str, n: Option<usize>, kind: ConstructKind, pair: Option<&str>) -> anyhow::Result<Emitted> {
    let f = pattern(f)?;
    let caterpillar = || -> anyhow::Result<ConstructionOutput> {
        let (spec, _) = CaterpillarSpec::recognise(f.graph()).ok_or_else(|| usage("pattern is not a caterpillar"))?;
        // built on the caterpillar's own labelling, which matches `cat:` input
        Ok(at(n, |n| caterpillar_saturator(&spec, n))?)
    };
    let pair_build = || -> anyhow::Result<ConstructionOutput> {
        let (u, w) = match pair {
            Some(p) => parse_pair(p)?,
            None => best_pair(&f).map(|(u, w, _)| (u, w)).ok_or(ConstructionError::Star)?,
        };
        Ok(at(n, |n| endd_mind_saturator(&f, u, w, n))?)
    };
    let out = match kind {
        ConstructKind::Caterpillar => caterpillar()?,
        ConstructKind::EndStar => at(n, |n| end_star_saturator(&f, n))?,
        ConstructKind::Pair => pair_build()?,
        ConstructKind::Local => at(n, |n| local_structure_saturator(&f, n))?,
        ConstructKind::Auto => {
            let tries: Vec<(&str, anyhow::Result<ConstructionOutput>)> = vec![
                ("caterpillar", caterpillar()),
                ("local", at(n, |n| local_structure_saturator(&f, n)).map_err(Into::into)),
                ("pair", pair_build()),
                ("end-star", at(n, |n| end_star_saturator(&f, n)).map_err(Into::into)),
            ];
            let mut reasons = Vec::new();
            let mut best: Option<ConstructionOutput> = None;
            for (name, t) in tries {
                match t {
                    Ok(out) if best.as_ref().is_none_or(|b| out.claimed_edges < b.claimed_edges) => best = Some(out),
                    Ok(_) => {}
                    Err(e) => reasons.push(format!("{name}: {e}")),
                }
            }
            best.ok_or_else(|| usage(format!("no construction applies ({})", reasons.join("; "))))?
        }
    };
    let start = out.start();
    let text = format!(
        "{}: {} edges on {} vertices (threshold {}), {} steps to K_{}\n",
        out.rule.id(),
        out.claimed_edges,
        out.certificate.n,
        out.n_threshold,
        out.certificate.steps.len(),
        out.certificate.n
    );
    Ok(with_graph(emitted(json(&out), text), &start, "start"))
}

#[derive(Serialize)]
struct ClassifyOut {
    tree: Graph,
    name: String,
    #[serde(flatten)]
    verdict: Verdict,
}

fn classify_cmd(t: &str) -> anyhow::Result<Emitted> {
    let t = graph(t)?;
    let verdict = classify_good(&t)?;
    let text = format!(
        "{}: {}{}\n",
        verdict.status.as_str(),
        verdict.rule.map(|r| format!("{} ", r.id())).unwrap_or_default(),
        verdict.detail
    );
    let out = ClassifyOut {
        name: tree_name(&t),
        tree: t,
        verdict,
    };
    Ok(emitted(json(&out), text))
}

#[derive(Serialize)]
struct Listed {
    graph6: String,
    vertices: usize,
    edges: usize,
    name: String,
}

#[derive(Serialize)]
struct EnumerateOut {
    kind: &'static str,
    count: usize,
    graphs: Vec<Listed>,
}

fn enumerate_cmd(
    kind: EnumerateKind,
    n: Option<usize>,
    max_edges: Option<usize>,
    max_n: Option<usize>,
) -> anyhow::Result<Emitted> {
    let (label, graphs) = match kind {
        EnumerateKind::Trees => {
            let n = n.ok_or_else(|| usage("`enumerate trees` needs --n"))?;
            ("trees", enumerate_trees(n)?)
        }
        EnumerateKind::Cores => {
            let m = max_edges.ok_or_else(|| usage("`enumerate cores` needs --max-edges"))?;
            ("cores", enumerate_cores_bounded(m, max_n.unwrap_or(2 * m))?.to_vec())
        }
    };
    let listed: Vec<Listed> = graphs
        .iter()
        .map(|g| Listed {
            graph6: graph6::encode(g),
            vertices: g.n(),
            edges: g.edge_count(),
            name: if g.is_tree() && g.n() >= 2 { tree_name(g) } else { String::new() },
        })
        .collect();
    let mut g6 = String::new();
    let mut csv = String::from("index,graph6,vertices,edges,name\n");
    let mut dot = String::new();
    for (i, (l, g)) in listed.iter().zip(&graphs).enumerate() {
        writeln!(g6, "{}", l.graph6).unwrap();
        writeln!(csv, "{i},{},{},{},{}", l.graph6, l.vertices, l.edges, l.name).unwrap();
        dot.push_str(&to_dot(g, &format!("g{i}")));
    }
    let mut text = format!("{} {label}\n", listed.len());
    for l in &listed {
        writeln!(text, "{:<12} {}", l.graph6, l.name).unwrap();
    }
    let out = EnumerateOut {
        kind: label,
        count: listed.len(),
        graphs: listed,
    };
    let mut e = emitted(json(&out), text);
    e.g6 = Some(g6);
    e.csv = Some(csv);
    e.dot = Some(dot);
    Ok(e)
}

fn reproduce_cmd(claim: &str, pairs: &[String], seed: Option<u64>, exec: Execution) -> anyhow::Result<Emitted> {
    let mut params = Params::new();
    for p in pairs.iter().filter(|p| !p.is_empty()) {
        let (k, v) = p.split_once('=').ok_or_else(|| usage(format!("--params expects key=value, got `{p}`")))?;
        params.insert(k.trim().to_string(), v.trim().to_string());
    }
    if let Some(s) = seed {
        if claim == "closure-order" {
            params.entry("seed".to_string()).or_insert_with(|| s.to_string());
        }
    }
    let report = reproduce(claim, &params, exec)?;
    let mut text = format!("{} ({} rows, {} disagreements)\n", report.claim, report.stats.rows, report.stats.disagreements);
    for r in &report.rows {
        writeln!(
            text,
            "{} {:<20} predicted {:<8} computed {:<8} {}",
            if r.agree { "ok  " } else { "FAIL" },
            r.instance,
            r.predicted,
            r.computed,
            r.evidence
        )
        .unwrap();
    }
    let mut e = emitted(json(&report), text);
    e.csv = Some(report.to_csv());
    e.ok = report.agrees();
    Ok(e)
}

#[derive(Serialize)]
struct VerifyOut {
    valid: bool,
    complete: bool,
    n: usize,
    initial_edges: usize,
    steps: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

/// Reads a bare certificate, a construction output, or any record with a
/// nested `certificate` field.
fn read_certificate(path: &Path) -> anyhow::Result<Certificate> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let inner = value.get("certificate").cloned().unwrap_or(value);
    serde_json::from_value(inner).with_context(|| format!("{} is not a certificate", path.display()))
}

fn verify_cmd(path: &Path, partial: bool) -> anyhow::Result<Emitted> {
    let cert = read_certificate(path)?;
    let result = cert.verify(!partial);
    let out = VerifyOut {
        valid: result.is_ok(),
        complete: result.as_ref().is_ok_and(|r| r.complete),
        n: cert.n,
        initial_edges: cert.initial.len(),
        steps: cert.steps.len(),
        error: result.as_ref().err().map(|e| e.to_string()),
    };
    let text = match &out.error {
        None => format!("valid: {} steps replayed, complete = {}\n", out.steps, out.complete),
        Some(e) => format!("invalid: {e}\n"),
    };
    let mut e = emitted(json(&out), text);
    e.ok = out.valid;
    Ok(e)
}
