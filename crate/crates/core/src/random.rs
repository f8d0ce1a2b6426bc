//! Seeded samplers for graphs and valid r-local complementation instances.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bitset::VertexSet;
use crate::caps::Caps;
use crate::genlc::{is_r_incident, VertexMultiset};
use crate::graph::Graph;
use crate::standard::Move;

/// Erdős–Rényi graph: each pair is an edge with probability `p`.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for j in 1..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                g.set_edge(i, j, true);
            }
        }
    }
    g
}

/// Greedy independent set over a shuffled vertex order, keeping each
/// admissible vertex with probability `keep`.
pub fn random_independent_set<R: Rng + ?Sized>(rng: &mut R, g: &Graph, keep: f64) -> VertexSet {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.shuffle(rng);
    let mut set = g.empty_set();
    for u in order {
        if g.nbrs(u).is_disjoint(&set) && rng.gen_bool(keep) {
            set.insert(u);
        }
    }
    set
}

/// Draws `(G, S)` with `S` independent and r-incident in `G` by rejection:
/// random graph, random independent support, multiplicities in `1..2^r`.
/// Returns `None` after `max_tries` rejections.
pub fn sample_valid_instance<R: Rng + ?Sized>(
    rng: &mut R,
    n_range: std::ops::RangeInclusive<usize>,
    r: u32,
    max_tries: usize,
) -> Option<(Graph, VertexMultiset)> {
    let caps = Caps::default();
    for _ in 0..max_tries {
        let n = rng.gen_range(n_range.clone());
        let p = rng.gen_range(0.2..0.7);
        let g = random_graph(rng, n, p);
        let supp = random_independent_set(rng, &g, 0.7);
        let mut s = VertexMultiset::zeros(n);
        for u in &supp {
            s.set(u, rng.gen_range(1..1u64 << r));
        }
        if is_r_incident(&g, &s, r, &caps).map(|rep| rep.ok).unwrap_or(false) {
            return Some((g, s));
        }
    }
    None
}

/// Random sequence of local complementations on vertices of `0..n`.
pub fn random_lc_moves<R: Rng + ?Sized>(rng: &mut R, n: usize, len: usize) -> Vec<Move> {
    (0..len).map(|_| Move::Lc { u: rng.gen_range(0..n) }).collect()
}
