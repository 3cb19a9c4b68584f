use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::certificate::Certificate;
use super::embed::{search, Host};
use crate::error::PercolationError;
use crate::graph::{Edge, Graph};
use crate::par::{self, Execution};
use crate::pattern::Pattern;

fn test_edge(f: &Pattern, host: &mut Host, (u, v): Edge) -> Option<Vec<usize>> {
    host.add(u, v);
    let found = search(f, host, u, v);
    host.remove(u, v);
    found
}

/// Non-edges `e` of `g` such that `g + e` has a copy of `f` through `e`.
pub fn addable_edges(g: &Graph, f: &Pattern) -> Result<Vec<Edge>, PercolationError> {
    let host = Host::new(g)?;
    let candidates = g.non_edges();
    let hits = par::map(Execution::default(), &candidates, |&e| {
        test_edge(f, &mut host.clone(), e).is_some()
    });
    Ok(candidates
        .into_iter()
        .zip(hits)
        .filter_map(|(e, hit)| hit.then_some(e))
        .collect())
}

/// Runs the process to its fixed point, always adding the lexicographically
/// smallest addable edge, and records every step with its witness.
///
/// After each addition only blocked non-edges near the new edge are retested:
/// a copy through a blocked edge that uses the new edge lies within the
/// pattern diameter of it. A full sweep at the end confirms the fixed point.
pub fn closure(g: &Graph, f: &Pattern) -> Result<(Graph, Certificate), PercolationError> {
    let mut host = Host::new(g)?;
    let mut cert = Certificate::new(f.graph(), g);
    if g.n() < f.order() {
        return Ok((g.clone(), cert));
    }
    let mut addable: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    let mut blocked: BTreeSet<Edge> = BTreeSet::new();
    for e in g.non_edges() {
        match test_edge(f, &mut host, e) {
            Some(map) => {
                addable.insert(e, map);
            }
            None => {
                blocked.insert(e);
            }
        }
    }
    loop {
        while let Some(((u, v), map)) = addable.pop_first() {
            host.add(u, v);
            cert.push(u, v, map);
            let ball = host.ball(u, v, f.diameter());
            let near: Vec<Edge> = blocked
                .iter()
                .copied()
                .filter(|&(a, b)| (ball >> a | ball >> b) & 1 == 1)
                .collect();
            for e in near {
                if let Some(map) = test_edge(f, &mut host, e) {
                    blocked.remove(&e);
                    addable.insert(e, map);
                }
            }
        }
        if cert.steps.is_empty() {
            break;
        }
        let late: Vec<Edge> = blocked.iter().copied().collect();
        for e in late {
            if let Some(map) = test_edge(f, &mut host, e) {
                blocked.remove(&e);
                addable.insert(e, map);
            }
        }
        if addable.is_empty() {
            break;
        }
    }
    Ok((host.to_graph(), cert))
}

/// Whether the closure of `g` under `f` is complete.
pub fn is_weakly_saturated(g: &Graph, f: &Pattern) -> Result<bool, PercolationError> {
    if g.n() < f.order() {
        return Err(PercolationError::HostTooSmall {
            host: g.n(),
            pattern: f.order(),
        });
    }
    Ok(closure(g, f)?.0.is_complete())
}

/// The process with a uniformly random addable edge chosen at every step,
/// seeded. Used to check that the fixed point does not depend on the order.
pub fn closure_random_order(g: &Graph, f: &Pattern, seed: u64) -> Result<Graph, PercolationError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = g.clone();
    if g.n() < f.order() {
        return Ok(cur);
    }
    loop {
        let options = addable_edges(&cur, f)?;
        if options.is_empty() {
            return Ok(cur);
        }
        let (u, v) = options[rng.gen_range(0..options.len())];
        cur.add_edge(u, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_graph_spec;

    fn pat(s: &str) -> Pattern {
        Pattern::new(parse_graph_spec(s).unwrap()).unwrap()
    }

    #[test]
    fn addable_examples() {
        let k4e = Graph::clique(4).with_edge(0, 1);
        let mut k4_minus = Graph::clique(4);
        k4_minus.remove_edge(0, 1);
        assert_eq!(addable_edges(&k4_minus, &pat("clique:4")).unwrap(), vec![(0, 1)]);
        assert!(addable_edges(&k4e, &pat("clique:4")).unwrap().is_empty());
        assert!(addable_edges(&Graph::empty(5), &pat("path:3")).unwrap().is_empty());
        let g = Graph::from_edges(5, &[(0, 1)]).unwrap();
        let expect: Vec<Edge> = g
            .non_edges()
            .into_iter()
            .filter(|&(a, b)| a <= 1 || b <= 1)
            .collect();
        assert_eq!(addable_edges(&g, &pat("path:3")).unwrap(), expect);
    }

    #[test]
    fn single_edge_percolates_under_p3() {
        let g = Graph::from_edges(5, &[(0, 1)]).unwrap();
        let (h, cert) = closure(&g, &pat("path:3")).unwrap();
        assert_eq!(h, Graph::clique(5));
        assert_eq!(cert.steps.len(), 9);
        assert_eq!(cert.steps[0].edge, (0, 2));
        assert!(cert.verify(true).is_ok());
    }

    #[test]
    fn nothing_to_add() {
        let (h, cert) = closure(&Graph::empty(5), &pat("path:3")).unwrap();
        assert_eq!(h, Graph::empty(5));
        assert!(cert.steps.is_empty());
    }

    #[test]
    fn saturation_examples() {
        let mut k4_minus = Graph::clique(4);
        k4_minus.remove_edge(2, 3);
        assert!(is_weakly_saturated(&k4_minus, &pat("clique:4")).unwrap());
        assert!(!is_weakly_saturated(&Graph::empty(6), &pat("path:3")).unwrap());
        assert!(is_weakly_saturated(&Graph::clique(3).padded(5), &pat("path:4")).unwrap());
        assert!(matches!(
            is_weakly_saturated(&Graph::clique(3), &pat("path:4")),
            Err(PercolationError::HostTooSmall { host: 3, pattern: 4 })
        ));
    }

    #[test]
    fn random_orders_agree_with_closure() {
        let g = parse_graph_spec("edges:8;0-1,1-2,2-3,4-5").unwrap();
        let f = pat("cat:2,1");
        let (h, _) = closure(&g, &f).unwrap();
        for seed in 0..5 {
            assert_eq!(closure_random_order(&g, &f, seed).unwrap(), h);
        }
    }
}
