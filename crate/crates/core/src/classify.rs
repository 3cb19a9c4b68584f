//! Good-tree classification. A tree is good when its w-sat limit is
//! `e(T) - 1`. Exact characterisations are tried before sufficient
//! conditions; every rule used here is consistent with the others.

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::formulas::{wsat_formulas, Kind, Rule};
use crate::graph::Graph;
use crate::pattern::Pattern;
use crate::tree::{find_even_path, find_six_vertex, tree_features, CaterpillarSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Good,
    NotGood,
    Unknown,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Good => "good",
            Status::NotGood => "not_good",
            Status::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    /// The rule that decided; `None` for unknown.
    pub rule: Option<Rule>,
    pub detail: String,
}

fn verdict(status: Status, rule: Rule, detail: impl Into<String>) -> Verdict {
    Verdict {
        status,
        rule: Some(rule),
        detail: detail.into(),
    }
}

pub fn classify_good(t: &Graph) -> Result<Verdict, GraphError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree("classification needs a tree"));
    }
    let v = t.n();
    if v < 3 {
        return Err(GraphError::OutOfRange {
            what: "v(T)",
            value: v,
            lo: 3,
            hi: usize::MAX,
        });
    }
    let feats = tree_features(t)?;
    let e = v - 1;

    if let Some((cat, _)) = CaterpillarSpec::recognise(t) {
        if cat.is_nondegenerate() {
            let a = cat.min_positive().unwrap();
            let detail = format!("caterpillar {:?} with least leaf count {a}", cat.pendants);
            return Ok(if a <= 2 {
                verdict(Status::Good, Rule::CaterpillarGood, detail)
            } else {
                verdict(Status::NotGood, Rule::CaterpillarMinPendants, detail)
            });
        }
    }

    if feats.parity && v >= 4 {
        return Ok(if feats.has_p2_leaf {
            verdict(Status::Good, Rule::P2Leaf, "even leaf distances; a leaf hangs off a degree-two vertex")
        } else {
            verdict(Status::NotGood, Rule::ParityTree, "even leaf distances; no leaf on a degree-two vertex")
        });
    }

    let f = Pattern::new(t.clone())?;
    let record = wsat_formulas(&f);
    let above = record.entries.iter().find(|b| {
        matches!(b.kind, Kind::Lower | Kind::Exact) && b.formula.constant().is_some_and(|x| x > e - 1)
    });
    if let Some(b) = above {
        let x = b.formula.constant().unwrap();
        return Ok(verdict(Status::NotGood, b.rule, format!("bound {x} exceeds e(T) - 1 = {}", e - 1)));
    }
    let exact_good = record
        .entries
        .iter()
        .any(|b| b.rule == Rule::InternalLeafAdjacentExact && b.formula.constant() == Some(e - 1));
    if exact_good {
        return Ok(verdict(
            Status::Good,
            Rule::InternalLeafAdjacentExact,
            "every internal vertex is leaf-adjacent and the least leaf count is at most two",
        ));
    }

    if feats.has_p2_leaf {
        return Ok(verdict(Status::Good, Rule::P2Leaf, "a leaf hangs off a degree-two vertex"));
    }
    if let Some(r) = find_six_vertex(t) {
        return Ok(verdict(Status::Good, Rule::SixVertex, format!("v1..v6 = {r:?}")));
    }
    if let Some(p) = find_even_path(t) {
        return Ok(verdict(Status::Good, Rule::EvenPath, format!("path {p:?}")));
    }
    Ok(Verdict {
        status: Status::Unknown,
        rule: None,
        detail: "no rule's hypotheses hold".to_string(),
    })
}
