//! Anchored subgraph search over single-word adjacency masks.

use std::cell::Cell;

use crate::error::PercolationError;
use crate::graph::Graph;
use crate::pattern::Pattern;

/// Largest host the search handles.
pub const HOST_LIMIT: usize = 64;

thread_local! {
    static SEARCHES: Cell<u64> = const { Cell::new(0) };
}

/// Number of anchored searches started on this thread so far.
pub fn search_count() -> u64 {
    SEARCHES.with(Cell::get)
}

/// Pattern vertex order for one oriented anchor edge `(a, b)`: `a` and `b`
/// first, then greedily the vertex with most already-placed neighbours.
#[derive(Debug, Clone)]
pub(crate) struct Plan {
    order: Vec<usize>,
    back: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

impl Plan {
    pub(crate) fn new(f: &Graph, a: usize, b: usize) -> Plan {
        let k = f.n();
        let mut order = vec![a, b];
        let mut placed = vec![false; k];
        placed[a] = true;
        placed[b] = true;
        while order.len() < k {
            let next = (0..k)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let links = order.iter().filter(|&&p| f.has_edge(p, v)).count();
                    (links, f.degree(v), std::cmp::Reverse(v))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        let back = (0..k)
            .map(|i| (0..i).filter(|&j| f.has_edge(order[i], order[j])).collect())
            .collect();
        let degree = order.iter().map(|&v| f.degree(v)).collect();
        Plan { order, back, degree }
    }
}

/// Mutable host for the search: adjacency masks plus, for every `d`, the set
/// of vertices with degree at least `d`.
#[derive(Debug, Clone)]
pub(crate) struct Host {
    pub(crate) adj: Vec<u64>,
    deg: Vec<usize>,
    at_least: Vec<u64>,
}

impl Host {
    pub(crate) fn new(g: &Graph) -> Result<Host, PercolationError> {
        let n = g.n();
        if n > HOST_LIMIT {
            return Err(PercolationError::HostTooLarge(n, HOST_LIMIT));
        }
        let adj: Vec<u64> = (0..n).map(|v| g.mask(v)).collect();
        let deg: Vec<usize> = adj.iter().map(|m| m.count_ones() as usize).collect();
        let mut at_least = vec![0u64; n + 1];
        for (v, &d) in deg.iter().enumerate() {
            for mask in &mut at_least[..=d] {
                *mask |= 1 << v;
            }
        }
        Ok(Host { adj, deg, at_least })
    }

    pub(crate) fn n(&self) -> usize {
        self.adj.len()
    }

    pub(crate) fn has(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub(crate) fn add(&mut self, u: usize, v: usize) {
        for (x, y) in [(u, v), (v, u)] {
            self.adj[x] |= 1 << y;
            self.deg[x] += 1;
            self.at_least[self.deg[x]] |= 1 << x;
        }
    }

    pub(crate) fn remove(&mut self, u: usize, v: usize) {
        for (x, y) in [(u, v), (v, u)] {
            self.adj[x] &= !(1 << y);
            self.at_least[self.deg[x]] &= !(1 << x);
            self.deg[x] -= 1;
        }
    }

    fn at_least(&self, d: usize) -> u64 {
        self.at_least.get(d).copied().unwrap_or(0)
    }

    /// Vertices within distance `radius` of `u` or `v`.
    pub(crate) fn ball(&self, u: usize, v: usize, radius: usize) -> u64 {
        let mut seen = 1u64 << u | 1 << v;
        let mut frontier = seen;
        for _ in 0..radius {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                next |= self.adj[f.trailing_zeros() as usize];
                f &= f - 1;
            }
            frontier = next & !seen;
            if frontier == 0 {
                break;
            }
            seen |= frontier;
        }
        seen
    }

    pub(crate) fn to_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n());
        for u in 0..self.n() {
            let mut m = self.adj[u] & !((2u64 << u) - 1);
            while m != 0 {
                g.add_edge(u, m.trailing_zeros() as usize);
                m &= m - 1;
            }
        }
        g
    }
}

fn run(plan: &Plan, host: &Host, x: usize, y: usize) -> Option<Vec<usize>> {
    let k = plan.order.len();
    if host.deg[x] < plan.degree[0] || host.deg[y] < plan.degree[1] {
        return None;
    }
    let mut img = vec![0usize; k];
    img[0] = x;
    img[1] = y;
    let finish = |img: &[usize]| {
        let mut map = vec![0; k];
        for (i, &p) in plan.order.iter().enumerate() {
            map[p] = img[i];
        }
        map
    };
    if k == 2 {
        return Some(finish(&img));
    }
    let candidates = |i: usize, img: &[usize], used: u64| {
        plan.back[i]
            .iter()
            .fold(host.at_least(plan.degree[i]) & !used, |m, &j| m & host.adj[img[j]])
    };
    let mut used = 1u64 << x | 1 << y;
    let mut cand = vec![0u64; k];
    let mut i = 2;
    cand[2] = candidates(2, &img, used);
    loop {
        if cand[i] == 0 {
            i -= 1;
            if i < 2 {
                return None;
            }
            used &= !(1 << img[i]);
            continue;
        }
        let c = cand[i].trailing_zeros() as usize;
        cand[i] &= cand[i] - 1;
        img[i] = c;
        if i + 1 == k {
            return Some(finish(&img));
        }
        used |= 1 << c;
        i += 1;
        cand[i] = candidates(i, &img, used);
    }
}

/// Embedding of `f` into `host` mapping some pattern edge onto `(x, y)`,
/// which must be a host edge. `map[p]` is the image of pattern vertex `p`.
pub(crate) fn search(f: &Pattern, host: &Host, x: usize, y: usize) -> Option<Vec<usize>> {
    SEARCHES.with(|c| c.set(c.get() + 1));
    if f.order() > host.n() {
        return None;
    }
    f.plans().iter().find_map(|plan| run(plan, host, x, y))
}

/// Embedding of `f` into `g` whose image uses the edge `e` as the image of a
/// pattern edge; `None` if there is none or the host is smaller than `f`.
pub fn anchored_embedding(
    f: &Pattern,
    g: &Graph,
    e: (usize, usize),
) -> Result<Option<Vec<usize>>, PercolationError> {
    let host = Host::new(g)?;
    assert!(host.has(e.0, e.1), "anchor {e:?} is not a host edge");
    Ok(search(f, &host, e.0, e.1))
}
