//! Library results checked against slow, independent implementations.

use std::collections::BTreeSet;

use wsat_core::canon::canonical_form;
use wsat_core::enumerate::{enumerate_cores, enumerate_trees};
use wsat_core::notation::parse_graph_spec;
use wsat_core::percolation::is_weakly_saturated;
use wsat_core::solver::wsat_exact;
use wsat_core::{Execution, Graph, Pattern};

fn prufer_decode(seq: &[usize]) -> Graph {
    let n = seq.len() + 2;
    let mut degree = vec![1; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut g = Graph::empty(n);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        g.add_edge(leaf, x);
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    g.add_edge(rest[0], rest[1]);
    g
}

fn all_sequences(len: usize, base: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = base.pow(len as u32);
    (0..total).map(move |mut code| {
        let mut seq = vec![0; len];
        for x in seq.iter_mut() {
            *x = code % base;
            code /= base;
        }
        seq
    })
}

#[test]
fn tree_classes_match_prufer_sequences() {
    for n in 3..=8 {
        let mut labelled = 0;
        let mut classes = BTreeSet::new();
        for seq in all_sequences(n - 2, n) {
            let t = prufer_decode(&seq);
            assert!(t.is_tree());
            labelled += 1;
            classes.insert(canonical_form(&t).unwrap());
        }
        assert_eq!(labelled, n.pow(n as u32 - 2));
        let listed: BTreeSet<Vec<u8>> = enumerate_trees(n)
            .unwrap()
            .iter()
            .map(|t| canonical_form(t).unwrap())
            .collect();
        assert_eq!(classes, listed, "n = {n}");
    }
}

#[test]
fn four_vertex_trees_fall_into_two_classes() {
    let forms: BTreeSet<Vec<u8>> = all_sequences(2, 4)
        .map(|s| canonical_form(&prufer_decode(&s)).unwrap())
        .collect();
    assert_eq!(all_sequences(2, 4).count(), 16);
    assert_eq!(forms.len(), 2);
}

/// Lexicographically smallest adjacency string over all relabelings.
fn brute_canonical(g: &Graph) -> Vec<bool> {
    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    let n = g.n();
    permutations(n)
        .into_iter()
        .map(|perm| {
            let mut bits = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in i + 1..n {
                    bits.push(g.has_edge(perm[i], perm[j]));
                }
            }
            bits
        })
        .min()
        .unwrap()
}

#[test]
fn canonical_form_agrees_with_permutation_search() {
    // every graph on five vertices, grouped both ways
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
    let mut by_fast = BTreeSet::new();
    let mut by_brute = BTreeSet::new();
    let mut joint = BTreeSet::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::from_edges(5, &edges).unwrap();
        let fast = canonical_form(&g).unwrap();
        let brute = brute_canonical(&g);
        by_fast.insert(fast.clone());
        by_brute.insert(brute.clone());
        joint.insert((fast, brute));
    }
    // 34 graphs on five vertices, and the two labelings induce the same
    // partition
    assert_eq!(by_fast.len(), 34);
    assert_eq!(by_brute.len(), 34);
    assert_eq!(joint.len(), 34);
}

/// Every labelled `m`-edge core, built edge by edge where each new edge may
/// introduce only the next unused vertex labels.
fn labelled_cores(m: usize) -> BTreeSet<Vec<u8>> {
    fn grow(edges: &mut Vec<(usize, usize)>, used: usize, m: usize, out: &mut BTreeSet<Vec<u8>>) {
        if edges.len() == m {
            let g = Graph::from_edges(used, edges).unwrap();
            out.insert(canonical_form(&g).unwrap());
            return;
        }
        for v in 0..used + 2 {
            for u in 0..v {
                // endpoints are old vertices or the next fresh labels
                let fresh = v < used || (v == used && u < used) || (u == used && v == used + 1);
                if !fresh {
                    continue;
                }
                let e = (u, v);
                if edges.contains(&e) {
                    continue;
                }
                edges.push(e);
                grow(edges, used.max(v + 1), m, out);
                edges.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    grow(&mut Vec::new(), 0, m, &mut out);
    out
}

#[test]
fn core_classes_match_labelled_generation() {
    // graphs without isolated vertices by edge count
    let expected = [1, 2, 5, 11, 26];
    for m in 1..=5 {
        let listed: BTreeSet<Vec<u8>> = enumerate_cores(m)
            .unwrap()
            .iter()
            .map(|g| canonical_form(g).unwrap())
            .collect();
        let oracle = labelled_cores(m);
        assert_eq!(listed.len(), expected[m - 1], "m = {m}");
        assert_eq!(listed, oracle, "m = {m}");
    }
}

/// Closure by trying every injective map of the pattern for every missing
/// edge, repeated until nothing changes.
fn naive_saturated(g: &Graph, f: &Graph) -> bool {
    fn maps(k: usize, n: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for x in 0..n {
            if !prefix.contains(&x) {
                prefix.push(x);
                maps(k, n, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut all = Vec::new();
    maps(f.n(), g.n(), &mut Vec::new(), &mut all);
    let f_edges = f.edges();
    let mut cur = g.clone();
    loop {
        let mut grew = false;
        for (u, v) in cur.non_edges() {
            let with = cur.with_edge(u, v);
            let hit = all.iter().any(|m| {
                let mut covers = false;
                for &(a, b) in &f_edges {
                    let (x, y) = (m[a], m[b]);
                    if !with.has_edge(x, y) {
                        return false;
                    }
                    covers |= (x.min(y), x.max(y)) == (u, v);
                }
                covers
            });
            if hit {
                cur = with;
                grew = true;
            }
        }
        if !grew {
            return cur.is_complete();
        }
    }
}

fn naive_wsat(n: usize, f: &Graph) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); pairs.len() + 1];
    for mask in 0u32..1 << pairs.len() {
        by_size[mask.count_ones() as usize].push(mask);
    }
    for (m, masks) in by_size.iter().enumerate() {
        for &mask in masks {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            if naive_saturated(&Graph::from_edges(n, &edges).unwrap(), f) {
                return m;
            }
        }
    }
    unreachable!("the complete graph is saturated")
}

#[test]
fn solver_matches_exhaustive_labelled_search() {
    for spec in ["path:3", "path:4", "star:4", "clique:3", "cat:1,1"] {
        let f = parse_graph_spec(spec).unwrap();
        let pattern = Pattern::new(f.clone()).unwrap();
        for n in f.n().max(3)..=6 {
            let fast = wsat_exact(n, &pattern, None, Execution::Sequential).unwrap();
            assert_eq!(fast.value, naive_wsat(n, &f), "{spec} at n = {n}");
            assert!(naive_saturated(&fast.witness, &f));
        }
    }
}

#[test]
fn closure_matches_naive_closure_on_small_hosts() {
    let f = parse_graph_spec("path:4").unwrap();
    let pattern = Pattern::new(f.clone()).unwrap();
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::from_edges(5, &edges).unwrap();
        assert_eq!(is_weakly_saturated(&g, &pattern).unwrap(), naive_saturated(&g, &f), "{edges:?}");
    }
}
