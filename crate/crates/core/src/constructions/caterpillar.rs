use super::{check_threshold, deleted_edge, pattern_minus_edge, Builder, ConstructionOutput};
use crate::error::ConstructionError;
use crate::formulas::{choose2, Rule};
use crate::graph::Graph;
use crate::pattern::Pattern;
use crate::percolation::closure;
use crate::tree::CaterpillarSpec;

/// Leaves of each spine vertex in the standard caterpillar labelling.
fn leaf_lists(spec: &CaterpillarSpec) -> Vec<Vec<usize>> {
    let mut next = spec.spine_len();
    spec.pendants
        .iter()
        .map(|&a| {
            let xs = (next..next + a).collect();
            next += a;
            xs
        })
        .collect()
}

/// A weakly saturated graph for a nondegenerate caterpillar `C_{a_1..a_l}`
/// (every spine vertex carries a leaf), built on the labelling of
/// [`CaterpillarSpec::graph`]. With least leaf count `a <= 2` it has `k - 1`
/// edges for `n > (l+1)k`; otherwise `k - 1 + C(a-1,2)` edges for
/// `n > 3k + 3`.
pub fn caterpillar_saturator(spec: &CaterpillarSpec, n: usize) -> Result<ConstructionOutput, ConstructionError> {
    if let Some(t) = spec.pendants.iter().position(|&a| a == 0) {
        return Err(ConstructionError::DegenerateCaterpillar(t));
    }
    let f = Pattern::new(spec.graph())?;
    let a = spec.min_positive().unwrap();
    if a <= 2 {
        light(spec, &f, n)
    } else {
        heavy(spec, &f, a, n)
    }
}

fn light(spec: &CaterpillarSpec, f: &Pattern, n: usize) -> Result<ConstructionOutput, ConstructionError> {
    let l = spec.spine_len();
    let v = f.order();
    let k = v - 1;
    let threshold = (l + 1) * k + 1;
    check_threshold(n, threshold)?;
    let leaves = leaf_lists(spec);
    let e = deleted_edge(f)?;
    let mut b = Builder::new(f, pattern_minus_edge(f, e, n));
    b.add(e.0, e.1, b.identity())?;

    // every other vertex joins the spine, outside vertices first
    let spare = v;
    for x in (v..n).chain(l..v) {
        for i in 0..l {
            if b.graph().has_edge(x, i) {
                continue;
            }
            let mut map = b.identity();
            if x < v {
                // the leaf's own role moves to an outside vertex
                map[x] = spare;
            }
            map[leaves[i][0]] = x;
            b.add(x, i, map)?;
        }
    }

    // the spine closes up as a path would, each path copy padded with leaves
    if l >= 3 {
        let path = Pattern::new(Graph::path(l))?;
        let (_, run) = closure(&Graph::path(l), &path)?;
        for step in &run.steps {
            let mut map = vec![0; v];
            let mut free = l..n;
            for t in 0..l {
                map[t] = step.map[t];
                for &y in &leaves[t] {
                    map[y] = free.next().unwrap();
                }
            }
            b.add(step.edge.0, step.edge.1, map)?;
        }
    }

    // pairs off the spine: a light spine vertex moves onto one end
    let j = spec.pendants.iter().position(|&x| x <= 2).unwrap();
    for x in l..n {
        for y in x + 1..n {
            if b.graph().has_edge(x, y) {
                continue;
            }
            let mut map = vec![0; v];
            for t in 0..l {
                map[t] = t;
            }
            map[j] = x;
            map[leaves[j][0]] = y;
            if leaves[j].len() == 2 {
                map[leaves[j][1]] = j;
            }
            let mut free = (l..n).filter(|&z| z != x && z != y);
            for (t, ls) in leaves.iter().enumerate() {
                if t != j {
                    for &z in ls {
                        map[z] = free.next().unwrap();
                    }
                }
            }
            b.add(x, y, map)?;
        }
    }
    let roles = vec![("deleted-center".to_string(), e.0), ("deleted-leaf".to_string(), e.1)];
    Ok(b.finish(Rule::CaterpillarGood, threshold, k - 1, roles))
}

fn heavy(spec: &CaterpillarSpec, f: &Pattern, a: usize, n: usize) -> Result<ConstructionOutput, ConstructionError> {
    let l = spec.spine_len();
    let v = f.order();
    let k = v - 1;
    let threshold = 3 * k + 4;
    check_threshold(n, threshold)?;
    let leaves = leaf_lists(spec);
    let e = deleted_edge(f)?;
    let u: Vec<usize> = (v..v + a - 1).collect();
    let w: Vec<usize> = (v + a - 1..n).collect();
    let mut start = pattern_minus_edge(f, e, n);
    for (i, &x) in u.iter().enumerate() {
        for &y in &u[i + 1..] {
            start.add_edge(x, y);
        }
    }
    let mut b = Builder::new(f, start);
    b.add(e.0, e.1, b.identity())?;

    for i in 0..l {
        for x in v..n {
            let mut map = b.identity();
            map[leaves[i][0]] = x;
            b.add(x, i, map)?;
        }
    }
    let j = spec.pendants.iter().position(|&x| x == a).unwrap();
    let moved = |at: usize, images: Vec<usize>| {
        let mut map: Vec<usize> = (0..v).collect();
        map[j] = at;
        for (&y, img) in leaves[j].iter().zip(images) {
            map[y] = img;
        }
        map
    };
    for (i, &ui) in u.iter().enumerate() {
        for &x in &w {
            let mut images = vec![x, j];
            images.extend(u.iter().enumerate().filter(|&(t, _)| t != i).map(|(_, &z)| z));
            b.add(x, ui, moved(ui, images))?;
        }
    }
    for (i, &x) in w.iter().enumerate() {
        for &y in &w[i + 1..] {
            let mut images = vec![y];
            images.extend(&u);
            b.add(x, y, moved(x, images))?;
        }
    }
    let clique: Vec<usize> = (v..n).collect();
    b.complete_from_clique(&clique)?;
    let roles = vec![
        ("deleted-center".to_string(), e.0),
        ("deleted-leaf".to_string(), e.1),
        ("heaviest-spine".to_string(), j),
    ];
    Ok(b.finish(Rule::CaterpillarMinPendants, threshold, k - 1 + choose2(a - 1), roles))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::percolation::search_count;

    fn check(pendants: &[usize], claimed: usize) {
        let spec = CaterpillarSpec::new(pendants.to_vec());
        let out = caterpillar_saturator(&spec, 0).unwrap_err();
        let ConstructionError::BelowThreshold { threshold, .. } = out else { panic!("{out:?}") };
        let out = caterpillar_saturator(&spec, threshold).unwrap();
        assert_eq!(out.claimed_edges, claimed, "{pendants:?}");
        let before = search_count();
        assert!(out.certificate.verify(true).unwrap().complete);
        assert_eq!(search_count(), before);
    }

    #[test]
    fn light_caterpillars() {
        check(&[2], 1);
        check(&[1, 1], 2);
        check(&[2, 2], 4);
        check(&[1, 3, 2], 7);
        check(&[3, 1, 1, 3], 10);
    }

    #[test]
    fn heavy_caterpillars() {
        check(&[3, 3], 7);
        check(&[4, 3], 8);
        check(&[4, 4], 11);
        check(&[3, 5, 3], 13);
    }

    #[test]
    fn fixed_hosts() {
        for (a, n, claimed) in [(vec![2, 2], 16, 4), (vec![3, 3], 25, 7), (vec![1, 1], 16, 2)] {
            let out = caterpillar_saturator(&CaterpillarSpec::new(a), n).unwrap();
            assert_eq!(out.claimed_edges, claimed);
            assert_eq!(out.certificate.verify(true).unwrap().graph, Graph::clique(n));
        }
    }

    #[test]
    fn degenerate_rejected() {
        let spec = CaterpillarSpec::new(vec![2, 0, 2]);
        assert_eq!(
            caterpillar_saturator(&spec, 100).unwrap_err(),
            ConstructionError::DegenerateCaterpillar(1)
        );
    }
}
