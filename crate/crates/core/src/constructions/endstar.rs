//! Constructions around the smallest end-star of `F`.
//!
//! Layout: the copy of `F` minus the deleted pendant edge sits on
//! `0..v(F)`, then the `s` vertices of `U`, then the free vertices `P`.

use super::{check_threshold, deleted_edge, pattern_minus_edge, Builder, ConstructionOutput};
use crate::error::ConstructionError;
use crate::formulas::{choose2, pair_set, Rule};
use crate::graph::Graph;
use crate::pattern::Pattern;

struct Star {
    center: usize,
    leaves: Vec<usize>,
    /// The neighbour of the center outside the chosen leaves.
    other: usize,
}

fn star_roles(f: &Pattern) -> Result<Star, ConstructionError> {
    let (center, first) = deleted_edge(f)?;
    let s = f.smallest_end_star().unwrap().pendants;
    let g = f.graph();
    let mut leaves = vec![first];
    leaves.extend(g.neighbors(center).filter(|&x| x != first && g.degree(x) == 1).take(s - 1));
    let other = g.neighbors(center).find(|x| !leaves.contains(x)).unwrap();
    Ok(Star { center, leaves, other })
}

/// `F` embedded with `center -> c`, its leaves sent to `leaf_images` in
/// order, everything else fixed.
fn star_moved(f: &Pattern, star: &Star, c: usize, leaf_images: &[usize]) -> Vec<usize> {
    let mut map: Vec<usize> = (0..f.order()).collect();
    map[star.center] = c;
    for (&l, &img) in star.leaves.iter().zip(leaf_images) {
        map[l] = img;
    }
    map
}

/// Steps shared by both end-star constructions once `U` is complete to the
/// center side: the center's other neighbour joins `U`, then `P` joins `U`
/// and that neighbour, `P` becomes a clique and the minimum-degree lemma
/// finishes.
fn finish_from_u(b: &mut Builder, f: &Pattern, star: &Star, u: &[usize], n: usize) -> Result<(), ConstructionError> {
    let s = u.len();
    let others = |i: usize| -> Vec<usize> { u.iter().copied().filter(|&x| x != u[i]).collect() };
    for i in 0..s {
        if !b.graph().has_edge(star.center, u[i]) {
            let mut imgs = vec![u[i]];
            imgs.extend(star.leaves[1..].iter().copied());
            b.add(star.center, u[i], star_moved(f, star, star.center, &imgs))?;
        }
    }
    for i in 0..s {
        if !b.graph().has_edge(star.other, u[i]) {
            let mut imgs = vec![star.center];
            imgs.extend(others(i));
            b.add(star.other, u[i], star_moved(f, star, u[i], &imgs))?;
        }
    }
    let p_start = f.order() + s;
    for p in p_start..n {
        for i in 0..s {
            let mut imgs = vec![p];
            imgs.extend(others(i));
            b.add(p, u[i], star_moved(f, star, u[i], &imgs))?;
        }
    }
    for p in p_start..n {
        b.add(p, star.other, star_moved(f, star, p, u))?;
    }
    for p in p_start..n {
        for q in p + 1..n {
            let mut imgs = vec![q];
            imgs.extend(&u[..s - 1]);
            b.add(p, q, star_moved(f, star, p, &imgs))?;
        }
    }
    let clique: Vec<usize> = (f.order()..n).collect();
    b.complete_from_clique(&clique)
}

fn star_roles_list(star: &Star) -> Vec<(String, usize)> {
    let mut roles = vec![("center".to_string(), star.center)];
    roles.extend(star.leaves.iter().map(|&l| ("leaf".to_string(), l)));
    roles.push(("neighbour".to_string(), star.other));
    roles
}

pub(crate) fn end_star_with(
    f: &Pattern,
    n: usize,
    threshold: usize,
    rule: Rule,
) -> Result<ConstructionOutput, ConstructionError> {
    let star = star_roles(f)?;
    check_threshold(n, threshold)?;
    let s = star.leaves.len();
    let v = f.order();
    let e = (star.center, star.leaves[0]);
    let mut start = pattern_minus_edge(f, e, n);
    let u: Vec<usize> = (v..v + s).collect();
    for (i, &a) in u.iter().enumerate() {
        for &b in &u[i + 1..] {
            start.add_edge(a, b);
        }
    }
    let mut b = Builder::new(f, start);
    b.add(e.0, e.1, b.identity())?;
    finish_from_u(&mut b, f, &star, &u, n)?;
    Ok(b.finish(rule, threshold, f.size() - 1 + choose2(s), star_roles_list(&star)))
}

fn endd_threshold(f: &Pattern) -> usize {
    3 * (f.order() - 1) + f.min_end_degree().unwrap_or(0) + 1
}

/// A weakly `F`-saturated graph with `e(F) - 1 + C(s,2)` edges, `s` the
/// pendant count of the smallest end-star: `F` minus a pendant edge at that
/// star, plus a disjoint `K_s`, padded to `n`.
pub fn end_star_saturator(f: &Pattern, n: usize) -> Result<ConstructionOutput, ConstructionError> {
    f.smallest_end_star().ok_or(ConstructionError::NoEndStar)?;
    end_star_with(f, n, endd_threshold(f), Rule::EndStar)
}

/// A weakly `F`-saturated graph with `e(F) - 1 + |S| s` edges for an adjacent
/// non-pendant pair `u, w`, where `S` holds their neighbours without a leaf
/// neighbour: `F` minus a pendant edge, plus `s` new vertices joined to `S`.
pub fn endd_mind_saturator(f: &Pattern, u: usize, w: usize, n: usize) -> Result<ConstructionOutput, ConstructionError> {
    let g = f.graph();
    let v = f.order();
    if f.is_star() {
        return Err(ConstructionError::Star);
    }
    if u >= v || w >= v {
        return Err(crate::error::GraphError::VertexOutOfRange { vertex: u.max(w), n: v }.into());
    }
    for x in [u, w] {
        if g.degree(x) < 2 {
            return Err(ConstructionError::PendantVertex(x));
        }
    }
    if !g.has_edge(u, w) {
        return Err(ConstructionError::NotAdjacent(u, w));
    }
    let star = star_roles(f)?;
    let threshold = endd_threshold(f);
    check_threshold(n, threshold)?;
    let s = star.leaves.len();
    let big_s = pair_set(f, u, w);
    let e = (star.center, star.leaves[0]);
    let mut start: Graph = pattern_minus_edge(f, e, n);
    let us: Vec<usize> = (v..v + s).collect();
    for &x in &big_s {
        for &y in &us {
            start.add_edge(x, y);
        }
    }
    let mut b = Builder::new(f, start);
    b.add(e.0, e.1, b.identity())?;

    let leafy: Vec<usize> = {
        let mut xs: Vec<usize> = g
            .neighbors(u)
            .chain(g.neighbors(w))
            .filter(|&x| x != u && x != w && !big_s.contains(&x))
            .collect();
        xs.sort_unstable();
        xs.dedup();
        xs
    };
    for &x in &leafy {
        let leaf = g.neighbors(x).find(|&y| g.degree(y) == 1).unwrap();
        for &uk in &us {
            let mut map = b.identity();
            map[leaf] = uk;
            b.add(x, uk, map)?;
        }
    }
    for i in 0..s {
        for j in i + 1..s {
            let mut map = b.identity();
            map[u] = us[i];
            map[w] = us[j];
            b.add(us[i], us[j], map)?;
        }
    }
    finish_from_u(&mut b, f, &star, &us, n)?;
    let mut roles = vec![("u".to_string(), u), ("w".to_string(), w)];
    roles.extend(star_roles_list(&star));
    Ok(b.finish(Rule::EndStarPair, threshold, f.size() - 1 + big_s.len() * s, roles))
}
