//! Isomorphism-class enumeration of trees and of cores (graphs without
//! isolated vertices). Both grow objects one element at a time from the
//! previous level and deduplicate by canonical form; outputs are canonical
//! graphs sorted by canonical form.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::canon::canonize;
use crate::error::GraphError;
use crate::graph::Graph;
use crate::par::{self, Execution};

pub const MAX_TREE_VERTICES: usize = 12;
pub const MAX_CORE_EDGES: usize = 10;

fn dedup(exec: Execution, candidates: Vec<Graph>, cap: usize) -> Vec<Graph> {
    let canon = par::map(exec, &candidates, |g| {
        let c = canonize(g, &vec![0; g.n()], cap).expect("within cap");
        (c.form, c.graph)
    });
    let unique: BTreeMap<Vec<u8>, Graph> = canon.into_iter().collect();
    unique.into_values().collect()
}

/// One representative per isomorphism class of trees on `n` vertices.
pub fn enumerate_trees(n: usize) -> Result<Vec<Graph>, GraphError> {
    if !(1..=MAX_TREE_VERTICES).contains(&n) {
        return Err(GraphError::OutOfRange {
            what: "tree size",
            value: n,
            lo: 1,
            hi: MAX_TREE_VERTICES,
        });
    }
    let exec = Execution::default();
    let mut level = vec![Graph::empty(1)];
    for size in 2..=n {
        let mut candidates = Vec::new();
        for t in &level {
            for v in 0..t.n() {
                let mut g = t.padded(size);
                g.add_edge(v, size - 1);
                candidates.push(g);
            }
        }
        level = dedup(exec, candidates, MAX_TREE_VERTICES);
    }
    Ok(level)
}

/// One representative per isomorphism class of graphs with exactly `m`
/// edges and no isolated vertices.
pub fn enumerate_cores(m: usize) -> Result<Vec<Graph>, GraphError> {
    check_core_edges(m)?;
    Ok(cores_bounded(m, 2 * m).as_ref().clone())
}

fn check_core_edges(m: usize) -> Result<(), GraphError> {
    if !(1..=MAX_CORE_EDGES).contains(&m) {
        return Err(GraphError::OutOfRange {
            what: "core edge count",
            value: m,
            lo: 1,
            hi: MAX_CORE_EDGES,
        });
    }
    Ok(())
}

/// Cores with `m` edges and at most `max_vertices` vertices.
pub fn enumerate_cores_bounded(m: usize, max_vertices: usize) -> Result<Arc<Vec<Graph>>, GraphError> {
    if m > 0 {
        check_core_edges(m)?;
    }
    Ok(cores_bounded(m, max_vertices.min(2 * m)))
}

type CoreCache = Mutex<HashMap<(usize, usize), Arc<Vec<Graph>>>>;

fn cache() -> &'static CoreCache {
    static CACHE: OnceLock<CoreCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cores_bounded(m: usize, max_v: usize) -> Arc<Vec<Graph>> {
    if let Some(hit) = cache().lock().unwrap().get(&(m, max_v)) {
        return Arc::clone(hit);
    }
    let level = if m == 0 {
        vec![Graph::empty(0)]
    } else {
        // Removing an edge from a core and dropping isolated vertices gives a
        // smaller core with no more vertices, so extending every (m-1)-core
        // in every way reaches every m-core.
        let prev = cores_bounded(m - 1, max_v);
        let exec = Execution::default();
        let children: Vec<Vec<Graph>> = par::map(exec, &prev, |g| extensions(g, max_v));
        dedup(exec, children.into_iter().flatten().collect(), max_v.max(1))
    };
    let level = Arc::new(level);
    cache()
        .lock()
        .unwrap()
        .insert((m, max_v), Arc::clone(&level));
    level
}

fn extensions(g: &Graph, max_v: usize) -> Vec<Graph> {
    let c = g.n();
    let mut out = Vec::new();
    for u in 0..c {
        for v in u + 1..c {
            if !g.has_edge(u, v) {
                out.push(g.with_edge(u, v));
            }
        }
    }
    if c < max_v {
        for u in 0..c {
            let mut h = g.padded(c + 1);
            h.add_edge(u, c);
            out.push(h);
        }
    }
    if c + 2 <= max_v {
        let mut h = g.padded(c + 2);
        h.add_edge(c, c + 1);
        out.push(h);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tree_counts() {
        assert_eq!(enumerate_trees(1).unwrap(), vec![Graph::empty(1)]);
        assert_eq!(enumerate_trees(4).unwrap().len(), 2);
        assert!(enumerate_trees(0).is_err());
        assert!(enumerate_trees(13).is_err());
    }

    #[test]
    fn small_core_counts() {
        assert_eq!(enumerate_cores(1).unwrap().len(), 1);
        let two = enumerate_cores(2).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.iter().any(|g| g.n() == 3) && two.iter().any(|g| g.n() == 4));
        assert!(enumerate_cores(0).is_err());
        assert!(enumerate_cores(11).is_err());
    }

    #[test]
    fn bounded_is_a_filter() {
        for m in 1..=5 {
            let all = enumerate_cores(m).unwrap();
            for maxv in 2..=2 * m {
                let b = enumerate_cores_bounded(m, maxv).unwrap();
                let filtered: Vec<&Graph> = all.iter().filter(|g| g.n() <= maxv).collect();
                assert_eq!(b.iter().collect::<Vec<_>>(), filtered, "m={m} maxv={maxv}");
            }
        }
    }

    #[test]
    fn outputs_are_cores() {
        for g in enumerate_cores(4).unwrap() {
            assert_eq!(g.edge_count(), 4);
            assert_eq!(g.isolated_count(), 0);
            assert!(g.n() <= 8);
        }
    }
}
