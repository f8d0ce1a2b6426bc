//! The worked example graphs, with their original vertex names.
//!
//! Vertex `i` carries `labels[i]`; for the lettered examples `a` is vertex 0.
//! The same graphs ship as graph6 and edge-list JSON under `fixtures/`.

use crate::families::{gen_family, FamilySpec, Variant};
use crate::graph::Graph;
use crate::io::EdgeList;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub graph: Graph,
    pub labels: Vec<String>,
}

impl Fixture {
    pub fn label(&self, u: usize) -> &str {
        &self.labels[u]
    }

    /// Vertex index for a label.
    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn edge_list(&self) -> EdgeList {
        EdgeList {
            labels: Some(self.labels.clone()),
            ..EdgeList::from_graph(&self.graph)
        }
    }
}

pub const NAMES: [&str; 8] = [
    "fig1-left",
    "fig1-right",
    "fig2-lhs",
    "fig2-rhs",
    "fig3-lhs",
    "fig3-rhs",
    "fig4-left",
    "fig4-right",
];

fn lettered(name: &'static str, n: usize, edges: &str) -> Fixture {
    let labels: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let idx = |c: u8| (c - b'a') as usize;
    let graph = Graph::from_edges(
        n,
        edges.split_whitespace().map(|e| {
            let b = e.as_bytes();
            (idx(b[0]), idx(b[1]))
        }),
    )
    .expect("fixture edges are valid");
    Fixture { name, graph, labels }
}

const FIG1_BIPARTITE: &str = "af ag ah be bg bh ce cf ch de df dg";

/// `C_{4,3}` drawn with `a..d` on the subset side and `e..h` the integers.
pub fn fig1_left() -> Fixture {
    lettered("fig1-left", 8, FIG1_BIPARTITE)
}

/// `C'_{4,3}`: the left graph plus the clique on `e..h`.
pub fn fig1_right() -> Fixture {
    lettered("fig1-right", 8, &format!("{FIG1_BIPARTITE} ef eg eh fg fh gh"))
}

/// `a`, `b` are twins; a 2-local complementation over `{a, b}` toggles `cd`, `ce`, `de`.
pub fn fig2_lhs() -> Fixture {
    lettered("fig2-lhs", 5, "ac ad ae bc bd be de")
}

pub fn fig2_rhs() -> Fixture {
    lettered("fig2-rhs", 5, "ac ad ae bc bd be cd ce")
}

/// Used with the multiset `{a:2, b:1, c:1}` at level 2.
pub fn fig3_lhs() -> Fixture {
    lettered("fig3-lhs", 6, "ad ae af be bf ce cf de ef")
}

pub fn fig3_rhs() -> Fixture {
    lettered("fig3-rhs", 6, "ad ae af be bf ce cf df ef")
}

fn fig4(name: &'static str, variant: Variant) -> Fixture {
    let spec = FamilySpec { t: 4, k: 2, variant };
    let graph = gen_family(&spec, usize::MAX).expect("C_{4,2} is small");
    Fixture {
        name,
        graph,
        labels: spec.labels(),
    }
}

/// `C_{4,2}` in the family layout (2-subsets in colex order, then `1..4`).
pub fn fig4_left() -> Fixture {
    fig4("fig4-left", Variant::C)
}

pub fn fig4_right() -> Fixture {
    fig4("fig4-right", Variant::CPrime)
}

pub fn by_name(name: &str) -> Option<Fixture> {
    Some(match name {
        "fig1-left" | "c43" => fig1_left(),
        "fig1-right" | "c43p" => fig1_right(),
        "fig2-lhs" | "fig2" => fig2_lhs(),
        "fig2-rhs" => fig2_rhs(),
        "fig3-lhs" | "fig3" => fig3_lhs(),
        "fig3-rhs" => fig3_rhs(),
        "fig4-left" | "c42" => fig4_left(),
        "fig4-right" | "c42p" => fig4_right(),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig1_is_c43_up_to_subset_order() {
        let fam = gen_family(
            &FamilySpec {
                t: 4,
                k: 3,
                variant: Variant::C,
            },
            usize::MAX,
        )
        .unwrap();
        // colex lists {1,2,3} first; the drawing lists {2,3,4} first
        let perm = [3, 2, 1, 0, 4, 5, 6, 7];
        assert_eq!(fam.permute(&perm).unwrap(), fig1_left().graph);
        let famp = gen_family(
            &FamilySpec {
                t: 4,
                k: 3,
                variant: Variant::CPrime,
            },
            usize::MAX,
        )
        .unwrap();
        assert_eq!(famp.permute(&perm).unwrap(), fig1_right().graph);
    }

    #[test]
    fn shipped_files_match() {
        let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
        for name in NAMES {
            let f = by_name(name).unwrap();
            let g6 = std::fs::read_to_string(format!("{dir}/{name}.g6")).unwrap();
            assert_eq!(crate::io::from_graph6(&g6).unwrap(), f.graph, "{name}");
            let json = std::fs::read_to_string(format!("{dir}/{name}.json")).unwrap();
            let el: EdgeList = serde_json::from_str(&json).unwrap();
            assert_eq!(el, f.edge_list(), "{name}");
        }
    }

    #[test]
    fn labels_resolve() {
        let f = fig3_lhs();
        assert_eq!(f.vertex("e"), Some(4));
        assert_eq!(f.label(5), "f");
        assert_eq!(fig4_left().labels[2], "{2,3}");
    }
}
