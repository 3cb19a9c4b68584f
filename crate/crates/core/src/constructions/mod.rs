//! Explicit weakly saturated graphs with complete percolation certificates.
//! Every step carries a hand-built embedding, so replay needs no search.

mod caterpillar;
mod endstar;
mod local;
mod trees;

use serde::{Deserialize, Serialize};

pub use caterpillar::caterpillar_saturator;
pub use endstar::{end_star_saturator, endd_mind_saturator};
pub use local::{local_structure_saturator, local_structure_saturator_with, Structure};
pub use trees::{counterexample_tree, high_degree_good_tree, HighDegreeTree};

use crate::error::ConstructionError;
use crate::formulas::Rule;
use crate::graph::{edge, Graph};
use crate::pattern::Pattern;
use crate::percolation::{Certificate, HOST_LIMIT};

/// A start graph, its certificate and the bound it establishes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionOutput {
    pub rule: Rule,
    pub n_threshold: usize,
    pub claimed_edges: usize,
    /// Named vertices of the pattern the construction was built around.
    pub roles: Vec<(String, usize)>,
    #[serde(flatten)]
    pub certificate: Certificate,
}

impl ConstructionOutput {
    pub fn start(&self) -> Graph {
        self.certificate.start_graph().expect("constructed certificates are well formed")
    }
}

/// Records steps while checking each witness against the current graph.
pub(crate) struct Builder<'a> {
    f: &'a Pattern,
    g: Graph,
    cert: Certificate,
}

impl<'a> Builder<'a> {
    pub(crate) fn new(f: &'a Pattern, start: Graph) -> Self {
        Builder {
            cert: Certificate::new(f.graph(), &start),
            f,
            g: start,
        }
    }

    pub(crate) fn graph(&self) -> &Graph {
        &self.g
    }

    /// Identity embedding, for a pattern copy on vertices `0..v(F)`.
    pub(crate) fn identity(&self) -> Vec<usize> {
        (0..self.f.order()).collect()
    }

    pub(crate) fn add(&mut self, u: usize, v: usize, map: Vec<usize>) -> Result<(), ConstructionError> {
        if self.g.has_edge(u, v) || !self.g.add_edge(u, v) {
            return Err(ConstructionError::NoWitness(u, v));
        }
        let mut seen = map.clone();
        seen.sort_unstable();
        seen.dedup();
        let fits = seen.len() == map.len()
            && map.len() == self.f.order()
            && self.f.graph().edges().iter().all(|&(p, q)| self.g.has_edge(map[p], map[q]))
            && self
                .f
                .graph()
                .edges()
                .iter()
                .any(|&(p, q)| edge(map[p], map[q]) == edge(u, v));
        if !fits {
            self.g.remove_edge(u, v);
            return Err(ConstructionError::NoWitness(u, v));
        }
        self.cert.push(u, v, map);
        Ok(())
    }

    /// Finishes from a clique on at least `v(F) - 1` vertices: every other
    /// vertex first joins the clique, then all remaining pairs are added, each
    /// new edge playing a pendant edge of `F`.
    pub(crate) fn complete_from_clique(&mut self, clique: &[usize]) -> Result<(), ConstructionError> {
        let k = self.f.order() - 1;
        let mut clique = clique.to_vec();
        clique.sort_unstable();
        if clique.len() < k {
            return Err(ConstructionError::WrongHostSubsetSize {
                expected: k,
                got: clique.len(),
            });
        }
        let h = &clique[..k];
        let (x, y) = pendant_edge(self.f)?;
        let rest: Vec<usize> = (0..=k).filter(|&p| p != x && p != y).collect();
        let n = self.g.n();
        let inside = |v: usize| h.binary_search(&v).is_ok();
        for &v in h {
            for o in (0..n).filter(|&o| !inside(o)) {
                if self.g.has_edge(v, o) {
                    continue;
                }
                let mut map = vec![0; k + 1];
                map[y] = o;
                map[x] = v;
                for (&p, &img) in rest.iter().zip(h.iter().filter(|&&z| z != v)) {
                    map[p] = img;
                }
                self.add(v, o, map)?;
            }
        }
        for (p, q) in self.g.non_edges() {
            let mut map = vec![0; k + 1];
            map[x] = p;
            map[y] = q;
            for (&r, &img) in rest.iter().zip(h.iter()) {
                map[r] = img;
            }
            self.add(p, q, map)?;
        }
        Ok(())
    }

    pub(crate) fn finish(
        self,
        rule: Rule,
        n_threshold: usize,
        claimed_edges: usize,
        roles: Vec<(String, usize)>,
    ) -> ConstructionOutput {
        assert_eq!(self.cert.initial.len(), claimed_edges, "start graph size differs from the claim");
        assert!(self.g.is_complete(), "construction stopped short of K_n");
        ConstructionOutput {
            rule,
            n_threshold,
            claimed_edges,
            roles,
            certificate: self.cert,
        }
    }

    pub(crate) fn into_certificate(self) -> Certificate {
        self.cert
    }
}

/// The pendant edge `(x, y)` with `y` the smallest leaf.
pub(crate) fn pendant_edge(f: &Pattern) -> Result<(usize, usize), ConstructionError> {
    let y = *f
        .leaves()
        .first()
        .ok_or(ConstructionError::NoPendantEdge(f.min_degree()))?;
    let x = f.graph().neighbors(y).next().unwrap();
    Ok((x, y))
}

/// The default deleted edge: a pendant edge at the center of the smallest
/// end-star.
pub(crate) fn deleted_edge(f: &Pattern) -> Result<(usize, usize), ConstructionError> {
    let star = f.smallest_end_star().ok_or(ConstructionError::NoEndStar)?;
    let g = f.graph();
    let leaf = g.neighbors(star.center).find(|&x| g.degree(x) == 1).unwrap();
    Ok((star.center, leaf))
}

/// Pattern copy on `0..v(F)` minus `removed`, padded to `n` vertices.
pub(crate) fn pattern_minus_edge(f: &Pattern, removed: (usize, usize), n: usize) -> Graph {
    let mut g = f.graph().padded(n);
    g.remove_edge(removed.0, removed.1);
    g
}

fn check_threshold(n: usize, threshold: usize) -> Result<(), ConstructionError> {
    if n < threshold {
        return Err(ConstructionError::BelowThreshold { n, threshold });
    }
    Ok(())
}

/// Completes `g` to `K_n` given `h`, a set of `v(F) - 1` vertices inducing a
/// clique or a graph of minimum degree at least `Δ(F)`. Clique cases use
/// explicit embeddings; otherwise each step is found by search, which needs
/// a host of at most 64 vertices and fails with `NoWitness` when no copy
/// exists.
pub fn min_degree_completion(g: &Graph, h: &[usize], f: &Pattern) -> Result<Certificate, ConstructionError> {
    if f.min_degree() != 1 {
        return Err(ConstructionError::NoPendantEdge(f.min_degree()));
    }
    let k = f.order() - 1;
    if h.len() != k {
        return Err(ConstructionError::WrongHostSubsetSize {
            expected: k,
            got: h.len(),
        });
    }
    check_threshold(g.n(), f.order())?;
    let sub = g.induced(h);
    let mut b = Builder::new(f, g.clone());
    if sub.is_complete() {
        b.complete_from_clique(h)?;
        return Ok(b.into_certificate());
    }
    if let Some(i) = (0..k).find(|&i| sub.degree(i) < f.max_degree()) {
        return Err(ConstructionError::DegreeTooSmall {
            vertex: h[i],
            degree: sub.degree(i),
            required: f.max_degree(),
        });
    }
    if g.n() > HOST_LIMIT {
        return Err(crate::error::PercolationError::HostTooLarge(g.n(), HOST_LIMIT).into());
    }
    let mut order: Vec<(usize, usize)> = Vec::new();
    for &v in h {
        for o in (0..g.n()).filter(|o| !h.contains(o)) {
            order.push(edge(v, o));
        }
    }
    for (u, v) in order.into_iter().chain(g.non_edges()) {
        if b.graph().has_edge(u, v) {
            continue;
        }
        let probe = b.graph().with_edge(u, v);
        let map = crate::percolation::anchored_embedding(f, &probe, (u, v))?
            .ok_or(ConstructionError::NoWitness(u, v))?;
        b.add(u, v, map)?;
    }
    Ok(b.into_certificate())
}
