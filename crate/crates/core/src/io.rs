//! graph6, edge-list JSON and DOT encodings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

const GRAPH6_HEADER: &str = ">>graph6<<";

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Encodes `g` as graph6 without header or trailing newline.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(8 + n * n / 12);
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s).as_bytes();
    if s.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse("graph6 byte outside 63..=126".into()));
    }
    let take = |bytes: &[u8]| bytes.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    let (n, body) = match s {
        [] => return Err(Error::Parse("empty graph6 string".into())),
        [126, 126, rest @ ..] if rest.len() >= 6 => (take(&rest[..6]), &rest[6..]),
        [126, rest @ ..] if rest.len() >= 3 => (take(&rest[..3]), &rest[3..]),
        [126, ..] => return Err(Error::Parse("truncated graph6 size".into())),
        [b, rest @ ..] => ((*b - 63) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {}",
            body.len(),
            bits.div_ceil(6)
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.set_edge(i, j, true);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// `{"n": int, "edges": [[u, v], ...]}` with `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    /// Display names, one per vertex, when the graph comes from a labelled source.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl EdgeList {
    pub fn from_graph(g: &Graph) -> Self {
        EdgeList {
            n: g.n(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            labels: None,
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        if let Some(labels) = &self.labels {
            if labels.len() != self.n {
                return Err(Error::Parse("label count differs from n".into()));
            }
        }
        Graph::from_edges(self.n, self.edges.iter().map(|&[u, v]| (u, v)))
    }
}

/// Graphs serialise as their edge list.
impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EdgeList::from_graph(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        EdgeList::deserialize(d)?.to_graph().map_err(serde::de::Error::custom)
    }
}

pub fn to_edge_list_json(g: &Graph) -> String {
    serde_json::to_string(&EdgeList::from_graph(g)).expect("edge list serialises")
}

pub fn from_edge_list_json(text: &str) -> Result<Graph> {
    let el: EdgeList = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    el.to_graph()
}

/// Reads either encoding: JSON when the text starts with `{`, graph6 otherwise.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        from_edge_list_json(text)
    } else {
        from_graph6(text)
    }
}

pub fn to_dot(g: &Graph, labels: Option<&[String]>) -> String {
    let name = |u: usize| match labels {
        Some(l) => format!("\"{}\"", l[u].replace('"', "\\\"")),
        None => u.to_string(),
    };
    let mut out = String::from("graph G {\n");
    for u in 0..g.n() {
        out.push_str(&format!("  {};\n", name(u)));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {} -- {};\n", name(u), name(v)));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_graph6_strings() {
        // Reference strings produced by nauty's geng/showg conventions.
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&Graph::complete(3)), "Bw");
        assert_eq!(to_graph6(&Graph::path(4)), "Ch");
        assert_eq!(to_graph6(&Graph::complete(5)), "D~{");
        // Petersen graph as listed in the graph6 format description.
        let petersen = from_graph6("IheA@GUAo").unwrap();
        assert_eq!(petersen.n(), 10);
        assert_eq!(petersen.edge_count(), 15);
        assert!((0..10).all(|u| petersen.degree(u) == 3));
    }

    #[test]
    fn header_is_optional_on_read() {
        let g = from_graph6(">>graph6<<Bw\n").unwrap();
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn long_size_prefix() {
        let g = Graph::path(100);
        let s = to_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("Bww").is_err());
        assert!(from_graph6("B\x01").is_err());
        assert!(from_edge_list_json(r#"{"n":2,"edges":[[0,2]]}"#).is_err());
        assert!(from_edge_list_json(r#"{"n":2,"edges":[[1,1]]}"#).is_err());
    }

    #[test]
    fn json_is_sorted_and_dot_lists_edges() {
        let g = Graph::from_edges(3, [(2, 1), (1, 0)]).unwrap();
        assert_eq!(to_edge_list_json(&g), r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        let dot = to_dot(&g, None);
        assert!(dot.contains("0 -- 1;") && dot.contains("1 -- 2;"));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..70).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
                let mut g = Graph::empty(n);
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            g.set_edge(i, j, true);
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn encodings_round_trip(g in arb_graph()) {
            prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g.clone());
            prop_assert_eq!(parse_graph(&to_edge_list_json(&g)).unwrap(), g);
        }
    }
}
