//! Canonical labeling for small graphs.
//!
//! Each connected component is labeled independently: colour refinement to an
//! equitable ordered partition, then individualization of the first
//! non-singleton cell, branching over every vertex of that cell up to twin
//! equivalence. The largest adjacency certificate over all leaves wins. The
//! whole-graph form is the sorted list of component certificates.

use crate::error::GraphError;
use crate::graph::Graph;

/// Default vertex cap for [`canonical_form`].
pub const CANON_CAP: usize = 16;

/// Hard limit: components are handled with single-word masks.
const COMPONENT_LIMIT: usize = 64;

/// Canonical form with the default cap of [`CANON_CAP`] vertices.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>, GraphError> {
    canonical_form_capped(g, CANON_CAP)
}

pub fn canonical_form_capped(g: &Graph, cap: usize) -> Result<Vec<u8>, GraphError> {
    Ok(canonize(g, &vec![0; g.n()], cap)?.form)
}

/// Isomorphic copy of `g` in canonical labeling.
pub fn canonical_graph(g: &Graph, cap: usize) -> Result<Graph, GraphError> {
    Ok(canonize(g, &vec![0; g.n()], cap)?.graph)
}

/// Result of [`canonize`].
#[derive(Debug, Clone)]
pub struct Canonical {
    pub form: Vec<u8>,
    /// `position[v]` is the canonical index of vertex `v`.
    pub position: Vec<usize>,
    pub graph: Graph,
}

/// Canonical labeling respecting a vertex colouring; vertices of smaller
/// colour come first. Equal forms iff a colour-preserving isomorphism exists.
pub fn canonize(g: &Graph, colors: &[u32], cap: usize) -> Result<Canonical, GraphError> {
    let n = g.n();
    assert_eq!(colors.len(), n);
    if n > cap {
        return Err(GraphError::TooManyVertices(n, cap));
    }
    let mut comps: Vec<(Vec<u8>, Vec<usize>)> = Vec::new();
    for comp in g.components() {
        if comp.len() > COMPONENT_LIMIT {
            return Err(GraphError::TooManyVertices(comp.len(), COMPONENT_LIMIT));
        }
        let sub = g.induced(&comp);
        let sub_colors: Vec<u32> = comp.iter().map(|&v| colors[v]).collect();
        let (cert, order) = label_connected(&sub, &sub_colors);
        comps.push((cert, order.into_iter().map(|i| comp[i]).collect()));
    }
    comps.sort_by(|a, b| a.0.cmp(&b.0));

    let mut form = Vec::with_capacity(2 + n * n / 8);
    form.extend_from_slice(&(n as u16).to_be_bytes());
    let mut position = vec![0; n];
    let mut next = 0;
    for (cert, order) in &comps {
        form.extend_from_slice(&(cert.len() as u16).to_be_bytes());
        form.extend_from_slice(cert);
        for &v in order {
            position[v] = next;
            next += 1;
        }
    }
    let graph = g.relabeled(&position);
    Ok(Canonical { form, position, graph })
}

/// Returns the certificate and the vertex order of a connected graph.
fn label_connected(g: &Graph, colors: &[u32]) -> (Vec<u8>, Vec<usize>) {
    let n = g.n();
    let adj: Vec<u64> = (0..n).map(|v| g.mask(v)).collect();
    let mut palette: Vec<u32> = colors.to_vec();
    palette.sort_unstable();
    palette.dedup();
    let cells: Vec<Vec<usize>> = palette
        .iter()
        .map(|&c| (0..n).filter(|&v| colors[v] == c).collect())
        .collect();
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    search(&adj, colors, cells, &mut best);
    best.expect("search visits at least one leaf")
}

/// Splits cells by neighbour counts into every cell until stable.
fn refine(adj: &[u64], cells: &mut Vec<Vec<usize>>) {
    loop {
        let masks: Vec<u64> = cells
            .iter()
            .map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect();
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| (masks.iter().map(|m| (adj[v] & m).count_ones()).collect(), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
        }
        let stable = next.len() == cells.len();
        *cells = next;
        if stable {
            return;
        }
    }
}

fn certificate(adj: &[u64], colors: &[u32], order: &[usize]) -> Vec<u8> {
    let n = order.len();
    let mut out = Vec::with_capacity(n * 4 + n * n / 16 + 1);
    for &v in order {
        out.extend_from_slice(&colors[v].to_be_bytes());
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for i in 0..n {
        for j in i + 1..n {
            acc = (acc << 1) | ((adj[order[i]] >> order[j]) & 1) as u8;
            filled += 1;
            if filled == 8 {
                out.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(acc << (8 - filled));
    }
    out
}

fn search(
    adj: &[u64],
    colors: &[u32],
    mut cells: Vec<Vec<usize>>,
    best: &mut Option<(Vec<u8>, Vec<usize>)>,
) {
    refine(adj, &mut cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let cert = certificate(adj, colors, &order);
        if best.as_ref().is_none_or(|(b, _)| cert > *b) {
            *best = Some((cert, order));
        }
        return;
    };
    // Swapping two twins inside one cell is an automorphism fixing the
    // partition, so one representative per twin class suffices.
    let cell = &cells[target];
    let mut reps: Vec<usize> = Vec::new();
    for &v in cell {
        let twin = reps.iter().any(|&r| {
            let (mv, mr) = (adj[v] & !(1u64 << r), adj[r] & !(1u64 << v));
            mv == mr
        });
        if !twin {
            reps.push(v);
        }
    }
    for v in reps {
        let mut next = cells.clone();
        let rest: Vec<usize> = next[target].iter().copied().filter(|&w| w != v).collect();
        next[target] = vec![v];
        next.insert(target + 1, rest);
        search(adj, colors, next, best);
    }
}

/// Partition of oriented edges `(a, b)` into orbits under the automorphism
/// group. Returns one representative per orbit, lexicographically first.
pub fn oriented_edge_orbits(g: &Graph) -> Result<Vec<(usize, usize)>, GraphError> {
    let mut seen: Vec<Vec<u8>> = Vec::new();
    let mut reps = Vec::new();
    for (u, v) in g.edges() {
        for (a, b) in [(u, v), (v, u)] {
            let mut colors = vec![0; g.n()];
            colors[a] = 1;
            colors[b] = 2;
            let form = canonize(g, &colors, COMPONENT_LIMIT)?.form;
            if !seen.contains(&form) {
                seen.push(form);
                reps.push((a, b));
            }
        }
    }
    reps.sort_unstable();
    Ok(reps)
}
