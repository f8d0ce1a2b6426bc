//! Simple undirected graphs stored as rows of adjacency bits.
//!
//! Vertex `i` is the `i`-th vertex in the ambient order; nothing in this crate
//! reorders vertices implicitly. All transformations return new graphs.

use serde::{Deserialize, Serialize};

use crate::bitset::{words_for, VertexSet, WORD};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
}

/// Rank of the cut matrix between `A` and its complement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutMatrixReport {
    pub cut: Vec<usize>,
    pub rank: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let stride = words_for(n);
        Graph {
            n,
            stride,
            rows: vec![0; n * stride],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::Precondition(format!("self-loop at {u}")));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v, true);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are in range")
    }

    /// Star with centre 0 and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|l| (0, l))).expect("star edges are in range")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub(crate) fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.stride..(u + 1) * self.stride]
    }

    #[inline]
    fn row_mut(&mut self, u: usize) -> &mut [u64] {
        &mut self.rows[u * self.stride..(u + 1) * self.stride]
    }

    /// Neighbourhood of `u` as a single word; only valid for `n <= 64`.
    #[inline]
    pub(crate) fn row_mask(&self, u: usize) -> u64 {
        debug_assert!(self.n <= WORD);
        self.rows[u]
    }

    pub(crate) fn check_vertex(&self, u: usize) -> Result<()> {
        if u < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: u, n: self.n })
        }
    }

    pub(crate) fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.words().len() != self.stride {
            return Err(Error::Precondition(format!(
                "vertex set sized for a different graph order than {}",
                self.n
            )));
        }
        match s.iter().find(|&v| v >= self.n) {
            Some(v) => Err(Error::VertexOutOfRange { vertex: v, n: self.n }),
            None => Ok(()),
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.row(u)[v / WORD] >> (v % WORD)) & 1 == 1
    }

    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        debug_assert!(u != v && u < self.n && v < self.n);
        let (bu, bv) = (1u64 << (v % WORD), 1u64 << (u % WORD));
        if present {
            self.row_mut(u)[v / WORD] |= bu;
            self.row_mut(v)[u / WORD] |= bv;
        } else {
            self.row_mut(u)[v / WORD] &= !bu;
            self.row_mut(v)[u / WORD] &= !bv;
        }
    }

    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.row_mut(u)[v / WORD] ^= 1 << (v % WORD);
        self.row_mut(v)[u / WORD] ^= 1 << (u % WORD);
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.n)
    }

    pub fn set_of<I: IntoIterator<Item = usize>>(&self, vertices: I) -> VertexSet {
        VertexSet::from_vertices(self.n, vertices)
    }

    pub fn neighbors(&self, u: usize) -> Result<VertexSet> {
        self.check_vertex(u)?;
        Ok(self.nbrs(u))
    }

    #[inline]
    pub(crate) fn nbrs(&self, u: usize) -> VertexSet {
        VertexSet::from_words(self.row(u).to_vec())
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.nbrs(u)
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
                .collect::<Vec<_>>()
        })
    }

    pub fn odd_neighborhood(&self, d: &VertexSet) -> Result<VertexSet> {
        self.check_set(d)?;
        let mut odd = self.empty_set();
        for u in d {
            for (w, r) in odd.words_mut().iter_mut().zip(self.row(u)) {
                *w ^= r;
            }
        }
        Ok(odd)
    }

    /// Intersection of the neighbourhoods of the members of `k`.
    pub fn common_neighborhood(&self, k: &VertexSet) -> Result<VertexSet> {
        self.check_set(k)?;
        let mut it = k.iter();
        let first = it.next().ok_or(Error::EmptyVertexSet)?;
        let mut common = self.nbrs(first);
        for u in it {
            for (w, r) in common.words_mut().iter_mut().zip(self.row(u)) {
                *w &= r;
            }
        }
        Ok(common)
    }

    /// Number of edges with both endpoints in `d`.
    pub fn induced_edge_count(&self, d: &VertexSet) -> Result<usize> {
        self.check_set(d)?;
        let twice: usize = d
            .iter()
            .map(|u| {
                self.row(u)
                    .iter()
                    .zip(d.words())
                    .map(|(r, m)| (r & m).count_ones() as usize)
                    .sum::<usize>()
            })
            .sum();
        Ok(twice / 2)
    }

    /// First edge `(u, v)` inside `s`, if any.
    pub fn find_edge_within(&self, s: &VertexSet) -> Option<(usize, usize)> {
        for u in s {
            let hit = self.row(u).iter().zip(s.words()).enumerate().find_map(|(i, (r, m))| {
                let w = r & m;
                (w != 0).then(|| i * WORD + w.trailing_zeros() as usize)
            });
            if let Some(v) = hit {
                return Some((u.min(v), u.max(v)));
            }
        }
        None
    }

    pub fn is_independent(&self, s: &VertexSet) -> Result<()> {
        self.check_set(s)?;
        match self.find_edge_within(s) {
            Some((u, v)) => Err(Error::NotIndependent { u, v }),
            None => Ok(()),
        }
    }

    /// `G * u`: complements the subgraph induced by `N(u)`.
    pub fn local_complement(&self, u: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        let mut g = self.clone();
        g.local_complement_in_place(u);
        Ok(g)
    }

    pub(crate) fn local_complement_in_place(&mut self, u: usize) {
        let nu = self.row(u).to_vec();
        for v in VertexSet::from_words(nu.clone()).iter() {
            let stride = self.stride;
            let row = &mut self.rows[v * stride..(v + 1) * stride];
            for (w, m) in row.iter_mut().zip(&nu) {
                *w ^= m;
            }
            row[v / WORD] &= !(1 << (v % WORD));
        }
    }

    /// `G ∧ uv = G * u * v * u`, defined on edges only.
    pub fn pivot(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v || !self.has_edge(u, v) {
            return Err(Error::NotAnEdge { u, v });
        }
        let mut g = self.clone();
        g.local_complement_in_place(u);
        g.local_complement_in_place(v);
        g.local_complement_in_place(u);
        Ok(g)
    }

    /// Local complementation over an independent set: an edge is toggled iff
    /// its endpoints have an odd number of common neighbours in `s`.
    pub fn lc_over_independent_set(&self, s: &VertexSet) -> Result<Graph> {
        self.is_independent(s)?;
        let mut g = self.clone();
        for u in 0..self.n {
            for v in u + 1..self.n {
                let parity = self
                    .row(u)
                    .iter()
                    .zip(self.row(v))
                    .zip(s.words())
                    .map(|((a, b), m)| (a & b & m).count_ones())
                    .sum::<u32>()
                    & 1;
                if parity == 1 {
                    g.toggle_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    /// GF(2) rank of the `|A| x |V \ A|` cut matrix.
    pub fn cut_rank(&self, a: &VertexSet) -> Result<CutMatrixReport> {
        self.check_set(a)?;
        let outside = self.vertex_set().difference(a);
        let mut rows: Vec<Vec<u64>> = a
            .iter()
            .map(|u| self.row(u).iter().zip(outside.words()).map(|(r, m)| r & m).collect())
            .collect();
        let rank = gf2_rank(&mut rows);
        Ok(CutMatrixReport { cut: a.to_vec(), rank })
    }

    /// Relabels vertex `i` as `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::Precondition("permutation length differs from order".into()));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Precondition("not a permutation".into()));
            }
        }
        Graph::from_edges(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// The graph with vertex `u` deleted; later vertices shift down by one.
    pub fn remove_vertex(&self, u: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        let shift = |v: usize| if v > u { v - 1 } else { v };
        Graph::from_edges(
            self.n - 1,
            self.edges()
                .filter(|&(a, b)| a != u && b != u)
                .map(|(a, b)| (shift(a), shift(b))),
        )
    }

    /// Disjoint union with `other`, whose vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        Graph::from_edges(
            self.n + other.n,
            self.edges().chain(other.edges().map(|(u, v)| (u + off, v + off))),
        )
        .expect("shifted edges are in range")
    }
}

/// Row-reduces `rows` in place and returns the rank.
pub(crate) fn gf2_rank(rows: &mut [Vec<u64>]) -> usize {
    let width = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..width * WORD {
        let (w, b) = (col / WORD, 1u64 << (col % WORD));
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][w] & b != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}
