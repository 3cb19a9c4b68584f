//! Exact w-sat over small hosts by sweeping isomorphism classes of cores.
//!
//! Every `m`-edge graph on `n` vertices is a core with at most `n` vertices
//! padded by isolated vertices, and isolated vertices are interchangeable, so
//! testing one padded representative per core class is exhaustive.

use serde::Serialize;

use crate::enumerate::{enumerate_cores_bounded, MAX_CORE_EDGES};
use crate::error::{PercolationError, SolveError};
use crate::formulas::{choose2, wsat_formulas};
use crate::graph::Graph;
use crate::par::{self, Execution};
use crate::pattern::Pattern;
use crate::percolation::{closure, Certificate, HOST_LIMIT};

#[derive(Debug, Clone, Serialize)]
pub struct ExactResult {
    pub n: usize,
    pub pattern: Graph,
    pub value: usize,
    pub witness: Graph,
    /// Closure run of the witness to `K_n`.
    pub certificate: Certificate,
    /// Number of `(value - 1)`-edge core classes tested, all failing.
    pub minimality: usize,
}

/// Default edge cap: the best construction bound or the generous
/// `e(F) - 1 + C(Δ,2)` ceiling, whichever is larger, clipped to what the
/// sweep supports.
pub fn default_cap(n: usize, f: &Pattern) -> usize {
    let ceiling = f.size() - 1 + choose2(f.max_degree());
    let record = wsat_formulas(f);
    let known = record.upper_at(n).into_iter().chain(record.exact_at(n)).max().unwrap_or(0);
    ceiling.max(known).min(choose2(n)).min(MAX_CORE_EDGES)
}

fn saturates(core: &Graph, n: usize, f: &Pattern) -> Result<bool, SolveError> {
    let (closed, _) = closure(&core.padded(n), f)?;
    Ok(closed.is_complete())
}

/// Index of the first `m`-edge core (canonical order) whose padding to `n`
/// is weakly saturated, and the number of cores tested to decide it.
pub fn first_saturating(
    n: usize,
    f: &Pattern,
    m: usize,
    exec: Execution,
) -> Result<(Option<Graph>, usize), SolveError> {
    let cores = enumerate_cores_bounded(m, n)?;
    // errors cannot occur once the host fits, so a plain predicate suffices
    let hit = par::find_first(exec, &cores, |c| saturates(c, n, f).unwrap_or(false));
    Ok((hit.map(|i| cores[i].padded(n)), cores.len()))
}

fn check_host(n: usize, f: &Pattern) -> Result<(), SolveError> {
    if n < f.order() {
        return Err(SolveError::HostTooSmall { n, pattern: f.order() });
    }
    if n > HOST_LIMIT {
        return Err(PercolationError::HostTooLarge(n, HOST_LIMIT).into());
    }
    Ok(())
}

/// Smallest `m` such that some `m`-edge graph on `n` vertices is weakly
/// `f`-saturated, searching `m` upward from `e(F) - 1` to `m_cap`.
pub fn wsat_exact(
    n: usize,
    f: &Pattern,
    m_cap: Option<usize>,
    exec: Execution,
) -> Result<ExactResult, SolveError> {
    check_host(n, f)?;
    let cap = m_cap.unwrap_or_else(|| default_cap(n, f)).min(choose2(n));
    if cap > MAX_CORE_EDGES {
        return Err(SolveError::EdgeCapTooLarge(cap, MAX_CORE_EDGES));
    }
    let start = f.size() - 1;
    let mut previous_tested = None;
    for m in start..=cap {
        let (hit, tested) = first_saturating(n, f, m, exec)?;
        if let Some(witness) = hit {
            let minimality = match previous_tested {
                Some(t) => t,
                None if m == 0 => 0,
                None => {
                    let (below, t) = first_saturating(n, f, m - 1, exec)?;
                    assert!(below.is_none(), "saturated graph below e(F) - 1 edges");
                    t
                }
            };
            let (_, certificate) = closure(&witness, f)?;
            return Ok(ExactResult {
                n,
                pattern: f.graph().clone(),
                value: m,
                witness,
                certificate,
                minimality,
            });
        }
        previous_tested = Some(tested);
    }
    Err(SolveError::CapReached {
        n,
        cap,
        certified_lower: (cap + 1).max(start),
    })
}

/// Whether every `m`-edge core padded to `n` fails; returns the number of
/// classes tested when they all fail.
pub fn all_fail(n: usize, f: &Pattern, m: usize, exec: Execution) -> Result<Option<usize>, SolveError> {
    check_host(n, f)?;
    let (hit, tested) = first_saturating(n, f, m, exec)?;
    Ok(hit.is_none().then_some(tested))
}

/// One host size in a limit estimate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LimitRow {
    pub n: usize,
    /// `None` when the edge cap was reached.
    pub value: Option<usize>,
    pub cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LimitEstimate {
    pub value: Option<usize>,
    /// The last `window` host sizes gave the same value.
    pub stabilized: bool,
    /// The value meets a formula lower bound, so with non-increase in `n`
    /// it is the limit.
    pub certified: bool,
    pub formula_lower: Option<usize>,
    pub formula_exact: Option<usize>,
    pub n_used: usize,
    pub rows: Vec<LimitRow>,
}

/// Runs [`wsat_exact`] for `n = v(T), v(T)+1, ..` until `window` consecutive
/// sizes agree or `max_n` is passed. The cap at `n + 1` is the value at `n`.
pub fn wsat_limit_estimate(
    t: &Pattern,
    window: usize,
    max_n: usize,
    exec: Execution,
) -> Result<LimitEstimate, SolveError> {
    assert!(window >= 2, "window must be at least 2");
    if !t.is_tree() {
        return Err(SolveError::Graph(crate::error::GraphError::NotATree(
            "limit estimates need a tree pattern",
        )));
    }
    let record = wsat_formulas(t);
    let formula_lower = record.limit_lower();
    let mut rows: Vec<LimitRow> = Vec::new();
    let mut cap = None;
    for n in t.order()..=max_n {
        let use_cap = cap.unwrap_or_else(|| default_cap(n, t));
        let value = match wsat_exact(n, t, Some(use_cap), exec) {
            Ok(r) => Some(r.value),
            Err(SolveError::CapReached { .. }) => None,
            Err(e) => return Err(e),
        };
        cap = value;
        rows.push(LimitRow { n, value, cap: use_cap });
        let tail = &rows[rows.len().saturating_sub(window)..];
        if value.is_some() && tail.len() == window && tail.iter().all(|r| r.value == value) {
            break;
        }
    }
    let last = rows.last().and_then(|r| r.value);
    let tail = &rows[rows.len().saturating_sub(window)..];
    Ok(LimitEstimate {
        value: last,
        stabilized: last.is_some() && tail.len() == window && tail.iter().all(|r| r.value == last),
        certified: last.is_some() && last == formula_lower,
        formula_lower,
        formula_exact: record.limit(),
        n_used: rows.last().map_or(0, |r| r.n),
        rows,
    })
}

/// `n,value` table; capped rows print an empty value.
pub fn limit_csv(rows: &[LimitRow]) -> String {
    let mut out = String::from("n,value\n");
    for r in rows {
        match r.value {
            Some(v) => out.push_str(&format!("{},{}\n", r.n, v)),
            None => out.push_str(&format!("{},\n", r.n)),
        }
    }
    out
}
