use serde::{Deserialize, Serialize};

use crate::error::CertificateError;
use crate::graph::{edge, Edge, Graph};

/// One edge addition with the copy of the pattern it completes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub edge: Edge,
    /// `map[p]` is the host vertex playing pattern vertex `p`.
    pub map: Vec<usize>,
}

/// A concrete percolation run: start graph plus ordered witnessed steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub pattern: Graph,
    pub n: usize,
    pub initial: Vec<Edge>,
    pub steps: Vec<Step>,
}

/// Outcome of a successful replay.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replay {
    pub graph: Graph,
    pub complete: bool,
}

impl Certificate {
    pub fn new(pattern: &Graph, start: &Graph) -> Self {
        Certificate {
            pattern: pattern.clone(),
            n: start.n(),
            initial: start.edges(),
            steps: Vec::new(),
        }
    }

    pub fn push(&mut self, u: usize, v: usize, map: Vec<usize>) {
        self.steps.push(Step { edge: edge(u, v), map });
    }

    pub fn start_graph(&self) -> Result<Graph, CertificateError> {
        let mut g = Graph::empty(self.n);
        for (index, &(u, v)) in self.initial.iter().enumerate() {
            let reason = if u >= self.n || v >= self.n {
                "vertex out of range"
            } else if u == v {
                "loop"
            } else if !g.add_edge(u, v) {
                "duplicate edge"
            } else {
                continue;
            };
            return Err(CertificateError::Initial { index, u, v, reason });
        }
        Ok(g)
    }

    /// Replays every step without any search: each step edge must be new and
    /// its map an injective homomorphism of the pattern into the current graph
    /// that sends some pattern edge onto the step edge. With
    /// `require_complete` the final graph must be `K_n`.
    pub fn verify(&self, require_complete: bool) -> Result<Replay, CertificateError> {
        let f = &self.pattern;
        if f.edge_count() == 0 || !f.is_connected() {
            return Err(CertificateError::Pattern);
        }
        let pattern_edges = f.edges();
        let mut g = self.start_graph()?;
        let mut stamp = vec![usize::MAX; self.n];
        for (index, step) in self.steps.iter().enumerate() {
            let fail = |reason: String| CertificateError::Step { index, reason };
            let (u, v) = step.edge;
            if u >= self.n || v >= self.n || u == v {
                return Err(fail(format!("edge ({u}, {v}) is not a pair of distinct host vertices")));
            }
            if !g.add_edge(u, v) {
                return Err(fail(format!("edge ({u}, {v}) is already present")));
            }
            if step.map.len() != f.n() {
                return Err(fail(format!(
                    "map has {} entries for a pattern on {} vertices",
                    step.map.len(),
                    f.n()
                )));
            }
            for &h in &step.map {
                if h >= self.n {
                    return Err(fail(format!("map sends a vertex to {h}, outside the host")));
                }
                if stamp[h] == index {
                    return Err(fail(format!("map is not injective at host vertex {h}")));
                }
                stamp[h] = index;
            }
            let mut covers = false;
            for &(p, q) in &pattern_edges {
                let (a, b) = (step.map[p], step.map[q]);
                if !g.has_edge(a, b) {
                    return Err(fail(format!("pattern edge ({p}, {q}) maps to non-edge ({a}, {b})")));
                }
                covers |= edge(a, b) == edge(u, v);
            }
            if !covers {
                return Err(fail(format!("copy does not use the new edge ({u}, {v})")));
            }
        }
        let complete = g.is_complete();
        if require_complete && !complete {
            let n = self.n;
            let missing = n * n.saturating_sub(1) / 2 - g.edge_count();
            return Err(CertificateError::Incomplete { missing });
        }
        Ok(Replay { graph: g, complete })
    }
}
