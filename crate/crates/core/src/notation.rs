//! The graph-spec mini-language used by the CLI and the reproduction suite:
//!
//! ```text
//! g6:<graph6>   path:<l>   star:<vertices>   clique:<k>
//! cat:<a1,...,al>          edges:<n>;<u-v,...>
//! ```

use crate::error::GraphError;
use crate::graph::{Edge, Graph};
use crate::graph6;

fn bad(token: &str, reason: impl Into<String>) -> GraphError {
    GraphError::Spec {
        token: token.to_string(),
        reason: reason.into(),
    }
}

fn number(token: &str) -> Result<usize, GraphError> {
    token
        .trim()
        .parse()
        .map_err(|_| bad(token, "expected a non-negative integer"))
}

/// Parses a graph spec; see the module docs for the grammar.
pub fn parse_graph_spec(text: &str) -> Result<Graph, GraphError> {
    let text = text.trim();
    let (kind, body) = text
        .split_once(':')
        .ok_or_else(|| bad(text, "expected <kind>:<body>"))?;
    match kind {
        "g6" => graph6::decode(body),
        "path" => {
            let l = number(body)?;
            if l == 0 {
                return Err(bad(body, "path needs at least one vertex"));
            }
            Ok(Graph::path(l))
        }
        "star" => {
            let v = number(body)?;
            if v < 2 {
                return Err(bad(body, "star needs at least two vertices"));
            }
            Ok(Graph::star(v))
        }
        "clique" => {
            let k = number(body)?;
            if k == 0 {
                return Err(bad(body, "clique needs at least one vertex"));
            }
            Ok(Graph::clique(k))
        }
        "cat" => {
            let a = body.split(',').map(number).collect::<Result<Vec<_>, _>>()?;
            if a.is_empty() {
                return Err(bad(body, "caterpillar needs a spine"));
            }
            Ok(Graph::caterpillar(&a))
        }
        "edges" => {
            let (n, list) = body
                .split_once(';')
                .ok_or_else(|| bad(body, "expected <n>;<u-v,...>"))?;
            let n = number(n)?;
            let mut edges: Vec<Edge> = Vec::new();
            for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (u, v) = item
                    .split_once('-')
                    .ok_or_else(|| bad(item, "expected u-v"))?;
                let (u, v) = (number(u)?, number(v)?);
                if u >= n || v >= n {
                    return Err(bad(item, format!("vertex out of range for n={n}")));
                }
                if u == v {
                    return Err(bad(item, "loop"));
                }
                edges.push((u, v));
            }
            Graph::from_edges(n, &edges).map_err(|e| bad(list, e.to_string()))
        }
        other => Err(bad(other, "unknown graph kind")),
    }
}

/// DOT rendering for figures.
pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut s = format!("graph {name} {{\n");
    for v in 0..g.n() {
        s.push_str(&format!("  {v};\n"));
    }
    for (u, v) in g.edges() {
        s.push_str(&format!("  {u} -- {v};\n"));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let p = parse_graph_spec("path:4").unwrap();
        assert_eq!(p.edges(), vec![(0, 1), (1, 2), (2, 3)]);

        let c = parse_graph_spec("cat:2,2").unwrap();
        let mut degs = c.degrees();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 1, 1, 3, 3]);

        let t = parse_graph_spec("edges:7;0-1,0-2,1-3,1-4,2-5,2-6").unwrap();
        assert_eq!(t.n(), 7);
        assert!(t.is_tree());
        assert_eq!(t.degrees(), vec![2, 3, 3, 1, 1, 1, 1]);

        assert_eq!(parse_graph_spec("star:5").unwrap().degrees()[0], 4);
        assert_eq!(parse_graph_spec("clique:4").unwrap().edge_count(), 6);
        assert_eq!(parse_graph_spec("g6:Ch").unwrap(), p);
    }

    #[test]
    fn errors_name_the_token() {
        let e = parse_graph_spec("path:x").unwrap_err();
        assert!(e.to_string().contains("`x`"), "{e}");
        let e = parse_graph_spec("edges:3;0-1,1-5").unwrap_err();
        assert!(e.to_string().contains("`1-5`"), "{e}");
        let e = parse_graph_spec("wheel:5").unwrap_err();
        assert!(e.to_string().contains("`wheel`"), "{e}");
        assert!(parse_graph_spec("g6:Chh").is_err());
        assert!(parse_graph_spec("path4").is_err());
    }

    #[test]
    fn dot_output() {
        let d = to_dot(&Graph::path(3), "P3");
        assert!(d.starts_with("graph P3 {"));
        assert!(d.contains("0 -- 1;") && d.contains("1 -- 2;"));
    }
}
