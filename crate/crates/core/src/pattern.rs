use std::sync::OnceLock;

use serde::Serialize;

use crate::canon::{oriented_edge_orbits, CANON_CAP};
use crate::error::GraphError;
use crate::graph::Graph;
use crate::percolation::embed::Plan;

/// An end-star: a center of degree `pendants + 1` at least `pendants` of whose
/// neighbours are leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EndStar {
    pub center: usize,
    pub pendants: usize,
}

/// A connected graph `F` with at least one edge, plus cached degree data and
/// the anchors used by the embedding search.
#[derive(Debug, Clone)]
pub struct Pattern {
    graph: Graph,
    max_degree: usize,
    min_degree: usize,
    leaves: Vec<usize>,
    end_stars: Vec<EndStar>,
    diameter: usize,
    anchors: Vec<(usize, usize)>,
    plans: OnceLock<Vec<Plan>>,
}

impl Pattern {
    pub fn new(graph: Graph) -> Result<Self, GraphError> {
        if graph.edge_count() == 0 || !graph.is_connected() {
            return Err(GraphError::BadPattern);
        }
        let degrees = graph.degrees();
        let leaves: Vec<usize> = (0..graph.n()).filter(|&v| degrees[v] == 1).collect();
        let end_stars = (0..graph.n())
            .filter(|&c| degrees[c] >= 2)
            .filter_map(|c| {
                let leafy = graph.neighbors(c).filter(|&w| degrees[w] == 1).count();
                (leafy + 1 >= degrees[c]).then_some(EndStar {
                    center: c,
                    pendants: degrees[c] - 1,
                })
            })
            .collect();
        // exact orbits are cheap for small patterns; large ones (only ever
        // replayed, never searched at scale) anchor on every oriented edge
        let anchors = if graph.n() <= CANON_CAP {
            oriented_edge_orbits(&graph)?
        } else {
            graph
                .edges()
                .into_iter()
                .flat_map(|(u, v)| [(u, v), (v, u)])
                .collect()
        };
        Ok(Pattern {
            max_degree: *degrees.iter().max().unwrap(),
            min_degree: *degrees.iter().min().unwrap(),
            diameter: graph.diameter().expect("connected"),
            graph,
            leaves,
            end_stars,
            anchors,
            plans: OnceLock::new(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Vertex count `v(F)`.
    pub fn order(&self) -> usize {
        self.graph.n()
    }

    /// Edge count `e(F)`.
    pub fn size(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn min_degree(&self) -> usize {
        self.min_degree
    }

    pub fn leaves(&self) -> &[usize] {
        &self.leaves
    }

    pub fn end_stars(&self) -> &[EndStar] {
        &self.end_stars
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    /// Oriented edge orbit representatives used to anchor embeddings.
    pub fn anchors(&self) -> &[(usize, usize)] {
        &self.anchors
    }

    pub(crate) fn plans(&self) -> &[Plan] {
        self.plans.get_or_init(|| {
            self.anchors
                .iter()
                .map(|&(a, b)| Plan::new(&self.graph, a, b))
                .collect()
        })
    }

    /// Minimum end-star center degree; `None` without end-stars.
    pub fn min_end_degree(&self) -> Option<usize> {
        self.end_stars.iter().map(|s| s.pendants + 1).min()
    }

    /// Pendant count of the smallest end-star (one less than
    /// [`min_end_degree`](Self::min_end_degree)). This is the quantity the
    /// end-star bounds are evaluated at.
    pub fn min_end_pendants(&self) -> Option<usize> {
        self.min_end_degree().map(|d| d - 1)
    }

    /// The smallest end-star, ties broken by center index.
    pub fn smallest_end_star(&self) -> Option<EndStar> {
        self.end_stars.iter().copied().min_by_key(|s| (s.pendants, s.center))
    }

    pub fn is_tree(&self) -> bool {
        self.graph.is_tree()
    }

    pub fn is_star(&self) -> bool {
        self.is_tree() && self.graph.n() >= 2 && self.max_degree + 1 == self.graph.n()
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
    fn rejects_bad_patterns() {
        assert!(Pattern::new(Graph::empty(3)).is_err());
        assert!(Pattern::new(Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap()).is_err());
    }

    #[test]
    fn degree_data() {
        let p = pat("cat:2,2");
        assert_eq!((p.max_degree(), p.min_degree()), (3, 1));
        assert_eq!(p.leaves(), &[2, 3, 4, 5]);
        assert_eq!(p.min_end_degree(), Some(3));
        assert_eq!(p.min_end_pendants(), Some(2));
        assert_eq!(p.end_stars().len(), 2);
    }

    #[test]
    fn end_star_invariant() {
        for s in ["path:5", "star:5", "cat:3,0,2", "edges:7;0-1,0-2,1-3,1-4,2-5,2-6", "clique:4"] {
            let p = pat(s);
            let g = p.graph();
            for es in p.end_stars() {
                assert_eq!(g.degree(es.center), es.pendants + 1);
                let leafy = g.neighbors(es.center).filter(|&w| g.degree(w) == 1).count();
                assert!(leafy >= es.pendants);
            }
        }
        assert_eq!(pat("clique:4").min_end_degree(), None);
        assert_eq!(pat("path:5").min_end_degree(), Some(2));
        // star center: degree 4, taken with 3 of its leaves
        assert_eq!(pat("star:5").min_end_degree(), Some(4));
    }

    #[test]
    fn anchors_cover_orbits() {
        assert_eq!(pat("path:4").anchors().len(), 3);
        assert_eq!(pat("clique:3").anchors().len(), 1);
        assert!(pat("star:5").is_star());
        assert!(!pat("path:4").is_star());
        assert!(pat("path:3").is_star());
    }
}
