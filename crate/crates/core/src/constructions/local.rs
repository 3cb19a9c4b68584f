//! Good trees recognised by a local configuration. Each construction starts
//! from `T` minus a pendant edge padded with isolated vertices, so it has
//! `k - 1` edges, and needs `n >= 2v(T) + 1`.

use serde::{Deserialize, Serialize};

use super::endstar::end_star_with;
use super::{check_threshold, deleted_edge, pattern_minus_edge, Builder, ConstructionOutput};
use crate::error::{ConstructionError, GraphError};
use crate::formulas::Rule;
use crate::pattern::Pattern;
use crate::tree::{find_even_path, find_six_vertex, tree_features};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Structure {
    /// A leaf on a degree-two vertex.
    P2Leaf,
    /// Adjacent degree-three vertices, each with a leaf.
    SixVertex,
    /// An even path of degree-two vertices between leaf-carrying ends.
    EvenPath,
}

fn threshold(t: &Pattern) -> usize {
    2 * t.order() + 1
}

/// Builds from the first structure `t` has, in the order P2 leaf, six
/// vertex, even path.
pub fn local_structure_saturator(t: &Pattern, n: usize) -> Result<ConstructionOutput, ConstructionError> {
    let feats = tree_features(t.graph())?;
    let structure = if feats.has_p2_leaf {
        Structure::P2Leaf
    } else if find_six_vertex(t.graph()).is_some() {
        Structure::SixVertex
    } else if find_even_path(t.graph()).is_some() {
        Structure::EvenPath
    } else {
        return Err(ConstructionError::NoStructure);
    };
    local_structure_saturator_with(t, n, structure)
}

pub fn local_structure_saturator_with(
    t: &Pattern,
    n: usize,
    structure: Structure,
) -> Result<ConstructionOutput, ConstructionError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree("local structures live in trees").into());
    }
    match structure {
        Structure::P2Leaf => {
            if t.min_end_pendants() != Some(1) {
                return Err(ConstructionError::NoStructure);
            }
            end_star_with(t, n, threshold(t), Rule::P2Leaf)
        }
        Structure::SixVertex => {
            let roles = find_six_vertex(t.graph()).ok_or(ConstructionError::NoStructure)?;
            six_vertex(t, n, roles)
        }
        Structure::EvenPath => {
            let path = find_even_path(t.graph()).ok_or(ConstructionError::NoStructure)?;
            even_path(t, n, &path)
        }
    }
}

fn start(t: &Pattern, n: usize) -> Result<Builder<'_>, ConstructionError> {
    check_threshold(n, threshold(t))?;
    let e = deleted_edge(t)?;
    let mut b = Builder::new(t, pattern_minus_edge(t, e, n));
    b.add(e.0, e.1, b.identity())?;
    Ok(b)
}

fn six_vertex(t: &Pattern, n: usize, roles: [usize; 6]) -> Result<ConstructionOutput, ConstructionError> {
    let [v1, v2, v3, v4, v5, v6] = roles;
    let v = t.order();
    let mut b = start(t, n)?;
    let moved = |pairs: &[(usize, usize)]| {
        let mut map: Vec<usize> = (0..v).collect();
        for &(p, img) in pairs {
            map[p] = img;
        }
        map
    };
    for u in v..n {
        b.add(u, v3, moved(&[(v1, u)]))?;
        b.add(u, v4, moved(&[(v2, u)]))?;
    }
    for u in v..n {
        b.add(u, v5, moved(&[(v3, u), (v1, v3)]))?;
        b.add(u, v6, moved(&[(v4, u), (v2, v4)]))?;
    }
    for x in v..n {
        for y in x + 1..n {
            b.add(x, y, moved(&[(v1, v3), (v2, v4), (v3, x), (v4, y)]))?;
        }
    }
    let clique: Vec<usize> = (v..n).collect();
    b.complete_from_clique(&clique)?;
    let names = ["v1", "v2", "v3", "v4", "v5", "v6"];
    let roles = names.iter().zip(roles).map(|(s, x)| (s.to_string(), x)).collect();
    Ok(b.finish(Rule::SixVertex, threshold(t), t.size() - 1, roles))
}

fn even_path(t: &Pattern, n: usize, path: &[usize]) -> Result<ConstructionOutput, ConstructionError> {
    let g = t.graph();
    let v = t.order();
    let len = path.len();
    let (first, last) = (path[0], path[len - 1]);
    let leaf_at = |end: usize, skip: usize| g.neighbors(end).find(|&x| x != skip && g.degree(x) == 1).unwrap();
    let l1 = leaf_at(first, path[1]);
    let l2 = leaf_at(last, path[len - 2]);
    let mut b = start(t, n)?;
    let moved = |pairs: &[(usize, usize)]| {
        let mut map: Vec<usize> = (0..v).collect();
        for &(p, img) in pairs {
            map[p] = img;
        }
        map
    };
    for w in v..n {
        b.add(w, first, moved(&[(l1, w)]))?;
        b.add(w, last, moved(&[(l2, w)]))?;
    }
    // w walks along the path two steps at a time, standing in for the
    // vertex before each odd position
    for w in v..n {
        for i in (2..len - 2).step_by(2) {
            b.add(w, path[i], moved(&[(path[i - 1], w)]))?;
        }
    }
    for x in v..n {
        for y in x + 1..n {
            b.add(x, y, moved(&[(path[len - 3], x), (path[len - 2], y)]))?;
        }
    }
    let clique: Vec<usize> = (v..n).collect();
    b.complete_from_clique(&clique)?;
    let roles = path
        .iter()
        .enumerate()
        .map(|(i, &x)| (format!("v{}", i + 1), x))
        .collect();
    Ok(b.finish(Rule::EvenPath, threshold(t), t.size() - 1, roles))
}
