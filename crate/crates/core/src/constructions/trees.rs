use crate::graph::Graph;

/// A good tree of large maximum degree with the pair `(v1, v2)` its
/// construction is built around.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HighDegreeTree {
    pub tree: Graph,
    pub v1: usize,
    pub v2: usize,
}

/// Root `0` with `N + 1` children, four further levels where every vertex has
/// `N` children, then one extra leaf on every non-leaf except `v1` (the first
/// child of the root) and `v2` (the first child of `v1`). Vertices are
/// numbered breadth first, extra leaves last.
pub fn high_degree_good_tree(n_children: usize) -> HighDegreeTree {
    assert!(n_children >= 1, "need at least one child per vertex");
    let mut edges = Vec::new();
    let mut level = vec![0usize];
    let mut next = 1;
    let mut internal = vec![0usize];
    for depth in 0..5 {
        let kids = if depth == 0 { n_children + 1 } else { n_children };
        let mut below = Vec::new();
        for &p in &level {
            for _ in 0..kids {
                edges.push((p, next));
                below.push(next);
                next += 1;
            }
        }
        if depth < 4 {
            internal.extend(&below);
        }
        level = below;
    }
    let v1 = 1;
    let v2 = edges.iter().find(|&&(p, _)| p == v1).unwrap().1;
    for &x in internal.iter().filter(|&&x| x != v1 && x != v2) {
        edges.push((x, next));
        next += 1;
    }
    let tree = Graph::from_edges(next, &edges).expect("tree edges are distinct");
    HighDegreeTree { tree, v1, v2 }
}

/// The seven-vertex tree whose w-sat limit sits strictly between the general
/// lower bound and the end-star upper bound.
pub fn counterexample_tree() -> Graph {
    Graph::from_edges(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap()
}
