//! Closed-form values and bounds for w-sat, each tagged with the rule that
//! produced it.
//!
//! Lower bounds hold at every host size. Upper bounds come from explicit
//! constructions and hold from the construction's threshold on. Exact values
//! of trees are limits as `n` grows; the clique value is exact at every
//! `n >= k`.

use serde::{Deserialize, Serialize};

use crate::pattern::Pattern;
use crate::tree::{find_even_path, find_six_vertex, tree_features, CaterpillarSpec};

/// Where a value or bound comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// The first added edge completes a copy of `F`: `e(F) - 1`.
    Trivial,
    /// `C(k,2) - 1 + (n-k)(k-2)` for `K_k`.
    Clique,
    /// `C(k,2)` for the star on `k + 1` vertices.
    Star,
    /// Nondegenerate caterpillar with a spine vertex carrying at most two
    /// leaves: `k - 1`.
    CaterpillarGood,
    /// Nondegenerate caterpillar whose spine vertices all carry more than
    /// two leaves, `a` the least count: `k - 1 + C(a-1,2)`.
    CaterpillarMinPendants,
    /// `C_{a,0,b}` with `0 < a <= b`: `v - 2 + C(a,2)`.
    ThreeSpineCaterpillar,
    /// Caterpillar without two consecutive bare spine vertices:
    /// at least `k - 1 + C(a-1,2)`, `a` the least positive leaf count.
    CaterpillarLower,
    /// Leaf-adjacent vertices dominate the internal tree:
    /// at least `v - 2 + C(d-1,2)`.
    InternalDominatingLower,
    /// Every internal vertex is leaf-adjacent: `v - 2 + C(d-1,2)`.
    InternalLeafAdjacentExact,
    /// Diameter four with a center free of leaves: `v - 2 + C(s,2)`, `s` the
    /// pendant count of the smallest end-star.
    DiameterFour,
    /// Smallest end-star with `s` pendants: at most `k - 1 + C(s,2)`.
    EndStar,
    /// Adjacent non-pendant pair `u, w`: at most `k - 1 + |S| s`.
    EndStarPair,
    /// A leaf hangs off a degree-two vertex: good.
    P2Leaf,
    /// Two adjacent degree-three vertices each carrying a leaf: good.
    SixVertex,
    /// Even path of degree-two vertices between leaf-carrying ends: good.
    EvenPath,
    /// Even leaf distances and no leaf on a degree-two vertex: not good.
    ParityTree,
}

impl Rule {
    pub fn id(self) -> String {
        serde_json::to_value(self).unwrap().as_str().unwrap().to_string()
    }
}

/// A value as a function of the host size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Formula {
    Constant { value: usize },
    /// `value + slope * (n - from)` for `n >= from`.
    Affine { from: usize, value: usize, slope: usize },
}

impl Formula {
    pub fn eval(&self, n: usize) -> usize {
        match *self {
            Formula::Constant { value } => value,
            Formula::Affine { from, value, slope } => value + slope * n.saturating_sub(from),
        }
    }

    pub fn constant(&self) -> Option<usize> {
        match *self {
            Formula::Constant { value } => Some(value),
            Formula::Affine { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Lower,
    Upper,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub rule: Rule,
    pub kind: Kind,
    pub formula: Formula,
}

/// Every applicable rule for a pattern, plus the strongest of each kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WsatRecord {
    pub lower: Option<Bound>,
    pub upper: Option<Bound>,
    pub exact: Option<Bound>,
    pub entries: Vec<Bound>,
}

impl WsatRecord {
    fn from_entries(entries: Vec<Bound>, reference_n: usize) -> Self {
        let pick = |kind: Kind, better: fn(usize, usize) -> bool| {
            entries
                .iter()
                .filter(|b| b.kind == kind)
                .fold(None, |best: Option<Bound>, &b| match best {
                    Some(c) if !better(b.formula.eval(reference_n), c.formula.eval(reference_n)) => Some(c),
                    _ => Some(b),
                })
        };
        WsatRecord {
            lower: pick(Kind::Lower, |a, b| a > b),
            upper: pick(Kind::Upper, |a, b| a < b),
            exact: pick(Kind::Exact, |_, _| false),
            entries,
        }
    }

    pub fn lower_at(&self, n: usize) -> Option<usize> {
        self.of_kind(Kind::Lower).map(|f| f.eval(n)).max()
    }

    /// Best construction bound; valid at or above its threshold only.
    pub fn upper_at(&self, n: usize) -> Option<usize> {
        self.of_kind(Kind::Upper).map(|f| f.eval(n)).min()
    }

    pub fn exact_at(&self, n: usize) -> Option<usize> {
        self.exact.map(|b| b.formula.eval(n))
    }

    fn of_kind(&self, kind: Kind) -> impl Iterator<Item = Formula> + '_ {
        self.entries.iter().filter(move |b| b.kind == kind).map(|b| b.formula)
    }

    /// The limit value when some rule determines it.
    pub fn limit(&self) -> Option<usize> {
        self.exact.and_then(|b| b.formula.constant())
    }

    /// Largest constant lower bound on the limit, counting exact values.
    pub fn limit_lower(&self) -> Option<usize> {
        self.entries
            .iter()
            .filter(|b| b.kind != Kind::Upper)
            .filter_map(|b| b.formula.constant())
            .max()
    }
}

pub fn choose2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

fn constant(rule: Rule, kind: Kind, value: usize) -> Bound {
    Bound {
        rule,
        kind,
        formula: Formula::Constant { value },
    }
}

/// `S` for an adjacent pair: neighbours of `u` or `w`, other than `u` and
/// `w`, with no leaf neighbour. Leaves themselves belong to `S`.
pub fn pair_set(f: &Pattern, u: usize, w: usize) -> Vec<usize> {
    let g = f.graph();
    let leafy = |x: usize| g.neighbors(x).any(|y| g.degree(y) == 1);
    let mut s: Vec<usize> = g
        .neighbors(u)
        .chain(g.neighbors(w))
        .filter(|&x| x != u && x != w && !leafy(x))
        .collect();
    s.sort_unstable();
    s.dedup();
    s
}

/// Adjacent non-pendant pairs `(u, w)`, `u < w`, with the smallest `|S|`.
pub fn best_pair(f: &Pattern) -> Option<(usize, usize, usize)> {
    let g = f.graph();
    g.edges()
        .into_iter()
        .filter(|&(u, w)| g.degree(u) >= 2 && g.degree(w) >= 2)
        .map(|(u, w)| (pair_set(f, u, w).len(), u, w))
        .min()
        .map(|(s, u, w)| (u, w, s))
}

/// Every rule that applies to `f`.
pub fn wsat_formulas(f: &Pattern) -> WsatRecord {
    let g = f.graph();
    let v = f.order();
    let e = f.size();
    let mut out = vec![constant(Rule::Trivial, Kind::Lower, e - 1)];

    if g.is_complete() {
        out.push(Bound {
            rule: Rule::Clique,
            kind: Kind::Exact,
            formula: Formula::Affine {
                from: v,
                value: choose2(v) - 1,
                slope: v - 2,
            },
        });
    }
    if !f.is_tree() {
        return WsatRecord::from_entries(out, v);
    }
    let k = v - 1;
    if f.is_star() {
        out.push(constant(Rule::Star, Kind::Exact, choose2(k)));
    }
    if v < 3 {
        return WsatRecord::from_entries(out, v);
    }
    let feats = tree_features(g).expect("tree");

    if let Some((cat, _)) = CaterpillarSpec::recognise(g) {
        let a = cat.min_positive().unwrap();
        if cat.is_nondegenerate() {
            if a <= 2 {
                out.push(constant(Rule::CaterpillarGood, Kind::Exact, k - 1));
            } else {
                out.push(constant(Rule::CaterpillarMinPendants, Kind::Exact, k - 1 + choose2(a - 1)));
            }
        }
        if let [x, 0, y] = cat.pendants[..] {
            if x > 0 && y > 0 {
                let a1 = x.min(y);
                out.push(constant(Rule::ThreeSpineCaterpillar, Kind::Exact, v - 2 + choose2(a1)));
            }
        }
        if cat.no_bare_pair() {
            out.push(constant(Rule::CaterpillarLower, Kind::Lower, k - 1 + choose2(a - 1)));
        }
    }

    if let Some(d) = feats.min_leaf_count {
        let value = v - 2 + choose2(d.saturating_sub(1));
        if feats.internal_all_leaf_adjacent {
            out.push(constant(Rule::InternalLeafAdjacentExact, Kind::Exact, value));
        } else if feats.leaf_adjacent_dominates {
            out.push(constant(Rule::InternalDominatingLower, Kind::Lower, value));
        }
    }

    let s = f.min_end_pendants().expect("trees with three vertices have an end-star");
    if feats.diameter == 4 {
        let center = (0..v)
            .find(|&c| g.distances_from(c).iter().all(|d| d.unwrap() <= 2))
            .unwrap();
        if !feats.leaf_adjacent.contains(&center) {
            out.push(constant(Rule::DiameterFour, Kind::Exact, v - 2 + choose2(s)));
        }
    }

    out.push(constant(Rule::EndStar, Kind::Upper, k - 1 + choose2(s)));
    if let Some((_, _, size)) = best_pair(f) {
        out.push(constant(Rule::EndStarPair, Kind::Upper, k - 1 + size * s));
    }

    if feats.has_p2_leaf {
        out.push(constant(Rule::P2Leaf, Kind::Exact, k - 1));
    }
    if find_six_vertex(g).is_some() {
        out.push(constant(Rule::SixVertex, Kind::Exact, k - 1));
    }
    if find_even_path(g).is_some() {
        out.push(constant(Rule::EvenPath, Kind::Exact, k - 1));
    }
    if feats.parity && v >= 4 && !feats.has_p2_leaf {
        out.push(constant(Rule::ParityTree, Kind::Lower, k));
    }
    WsatRecord::from_entries(out, v)
}
