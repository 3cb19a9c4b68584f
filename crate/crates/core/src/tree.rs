//! Structural features of trees used by the bounds and the classifier.

use serde::Serialize;

use crate::error::GraphError;
use crate::graph::Graph;

/// Leaf-level structure of a tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeFeatures {
    pub order: usize,
    pub degrees: Vec<usize>,
    pub leaves: Vec<usize>,
    pub internal: Vec<usize>,
    /// Internal vertices adjacent to at least one leaf.
    pub leaf_adjacent: Vec<usize>,
    /// Smallest number of leaves attached to a leaf-adjacent vertex.
    pub min_leaf_count: Option<usize>,
    pub diameter: usize,
    /// All pairwise leaf distances are even.
    pub parity: bool,
    /// Sizes of the two colour classes of the bipartition, the class
    /// containing the leaves first. Only meaningful when `parity` holds.
    pub colour_classes: (usize, usize),
    /// Some leaf hangs off a vertex of degree two.
    pub has_p2_leaf: bool,
    /// Every internal vertex is leaf-adjacent.
    pub internal_all_leaf_adjacent: bool,
    /// Every internal vertex is leaf-adjacent or has a leaf-adjacent
    /// neighbour.
    pub leaf_adjacent_dominates: bool,
}

pub fn tree_features(t: &Graph) -> Result<TreeFeatures, GraphError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree("input has a cycle or is disconnected"));
    }
    if t.n() < 2 {
        return Err(GraphError::NotATree("tree needs at least one edge"));
    }
    let degrees = t.degrees();
    let leaves: Vec<usize> = (0..t.n()).filter(|&v| degrees[v] == 1).collect();
    let internal: Vec<usize> = (0..t.n()).filter(|&v| degrees[v] >= 2).collect();
    let leaf_count = |v: usize| t.neighbors(v).filter(|&w| degrees[w] == 1).count();
    let leaf_adjacent: Vec<usize> = internal.iter().copied().filter(|&v| leaf_count(v) > 0).collect();
    let min_leaf_count = leaf_adjacent.iter().map(|&v| leaf_count(v)).min();

    let depth = t.distances_from(leaves[0]);
    let parity = leaves.iter().all(|&l| depth[l].unwrap().is_multiple_of(2));
    let even = depth.iter().filter(|d| d.unwrap() % 2 == 0).count();
    let has_p2_leaf = leaves
        .iter()
        .any(|&l| t.neighbors(l).any(|w| degrees[w] == 2));
    let is_la = |v: usize| leaf_adjacent.contains(&v);
    let leaf_adjacent_dominates = internal
        .iter()
        .all(|&v| is_la(v) || t.neighbors(v).any(is_la));
    Ok(TreeFeatures {
        order: t.n(),
        internal_all_leaf_adjacent: leaf_adjacent.len() == internal.len(),
        leaf_adjacent_dominates,
        diameter: t.diameter().unwrap(),
        colour_classes: (even, t.n() - even),
        degrees,
        leaves,
        internal,
        leaf_adjacent,
        min_leaf_count,
        parity,
        has_p2_leaf,
    })
}

/// Two adjacent degree-3 vertices `v3, v4`, each with a leaf neighbour
/// (`v1`, `v2`) and one further neighbour (`v5`, `v6`). Returned as
/// `[v1, .., v6]`, the lexicographically first such assignment.
pub fn find_six_vertex(t: &Graph) -> Option<[usize; 6]> {
    let deg = t.degrees();
    let mut best: Option<[usize; 6]> = None;
    for v3 in 0..t.n() {
        for v4 in t.neighbors(v3) {
            if deg[v3] != 3 || deg[v4] != 3 {
                continue;
            }
            let Some(v1) = t.neighbors(v3).find(|&x| deg[x] == 1) else { continue };
            let Some(v2) = t.neighbors(v4).find(|&x| deg[x] == 1) else { continue };
            let v5 = t.neighbors(v3).find(|&x| x != v1 && x != v4).unwrap();
            let v6 = t.neighbors(v4).find(|&x| x != v2 && x != v3).unwrap();
            let roles = [v1, v2, v3, v4, v5, v6];
            if best.is_none_or(|b| roles < b) {
                best = Some(roles);
            }
        }
    }
    best
}

/// A path `v_1 .. v_2m` (`m >= 2`) whose interior vertices have degree two
/// and whose ends both have a leaf neighbour off the path. Shortest first,
/// then by start vertex.
pub fn find_even_path(t: &Graph) -> Option<Vec<usize>> {
    let deg = t.degrees();
    let has_leaf = |v: usize, skip: usize| t.neighbors(v).any(|x| x != skip && deg[x] == 1);
    let mut best: Option<Vec<usize>> = None;
    for start in 0..t.n() {
        for first in t.neighbors(start) {
            if deg[start] < 2 || !has_leaf(start, first) {
                continue;
            }
            let mut path = vec![start, first];
            loop {
                let len = path.len();
                let (prev, end) = (path[len - 2], path[len - 1]);
                if len >= 4 && len % 2 == 0 && has_leaf(end, prev) {
                    if best.as_ref().is_none_or(|b| len < b.len()) {
                        best = Some(path);
                    }
                    break;
                }
                if deg[end] != 2 {
                    break;
                }
                path.push(t.neighbors(end).find(|&x| x != prev).unwrap());
            }
        }
    }
    best
}

/// Caterpillar `C_{a_1,...,a_l}`: a spine path `v_1..v_l` where `v_j` carries
/// `a_j` pendant leaves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CaterpillarSpec {
    pub pendants: Vec<usize>,
}

impl CaterpillarSpec {
    pub fn new(pendants: Vec<usize>) -> Self {
        assert!(!pendants.is_empty(), "caterpillar needs a spine");
        CaterpillarSpec { pendants }
    }

    pub fn spine_len(&self) -> usize {
        self.pendants.len()
    }

    pub fn order(&self) -> usize {
        self.spine_len() + self.pendants.iter().sum::<usize>()
    }

    /// Edge count, `v - 1`.
    pub fn size(&self) -> usize {
        self.order() - 1
    }

    pub fn graph(&self) -> Graph {
        Graph::caterpillar(&self.pendants)
    }

    /// Every spine vertex carries a leaf.
    pub fn is_nondegenerate(&self) -> bool {
        self.pendants.iter().all(|&x| x > 0)
    }

    /// The end spine vertices carry leaves and no two consecutive spine
    /// vertices are both bare.
    pub fn no_bare_pair(&self) -> bool {
        let a = &self.pendants;
        a[0] > 0 && a[a.len() - 1] > 0 && a.windows(2).all(|w| w[0] + w[1] > 0)
    }

    pub fn min_positive(&self) -> Option<usize> {
        self.pendants.iter().copied().filter(|&x| x > 0).min()
    }

    /// Recognises a caterpillar with spine the internal vertices. Returns the
    /// spec in its lexicographically smaller orientation and the matching
    /// spine vertices of `t`.
    pub fn recognise(t: &Graph) -> Option<(CaterpillarSpec, Vec<usize>)> {
        if !t.is_tree() || t.n() < 3 {
            return None;
        }
        let degrees = t.degrees();
        let internal: Vec<usize> = (0..t.n()).filter(|&v| degrees[v] >= 2).collect();
        let inner_deg = |v: usize| t.neighbors(v).filter(|&w| degrees[w] >= 2).count();
        if internal.iter().any(|&v| inner_deg(v) > 2) {
            return None;
        }
        let start = *internal.iter().find(|&&v| inner_deg(v) <= 1)?;
        let mut spine = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(next) = t.neighbors(cur).find(|&w| degrees[w] >= 2 && w != prev) {
            spine.push(next);
            prev = cur;
            cur = next;
        }
        if spine.len() != internal.len() {
            return None;
        }
        let pendants = |sp: &[usize]| -> Vec<usize> {
            sp.iter()
                .map(|&v| t.neighbors(v).filter(|&w| degrees[w] == 1).count())
                .collect()
        };
        let forward = pendants(&spine);
        let mut rev_spine = spine.clone();
        rev_spine.reverse();
        let backward = pendants(&rev_spine);
        if backward < forward {
            Some((CaterpillarSpec::new(backward), rev_spine))
        } else {
            Some((CaterpillarSpec::new(forward), spine))
        }
    }
}
