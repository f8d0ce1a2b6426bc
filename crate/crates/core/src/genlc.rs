//! Vertex multisets, r-incidence and r-local complementation.
//!
//! A multiset `S` acts on a graph through the weighted counts
//! `S • Λ^K = Σ_{w ∈ Λ^K} S(w)`. `S` is r-incident when, for every
//! `k ∈ [0, r)` and every `K` of size `k + 2` avoiding the support,
//! `S • Λ^K` is divisible by `2^(r - k - δ(k))` with `δ(0) = 1`.
//! The r-local complementation then toggles exactly the pairs whose count
//! is `2^(r-1)` modulo `2^r`.
//!
//! Counts are kept in `u128`: multiplicities are `u64`, so a sum over fewer
//! than `2^64` vertices is always exact.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::caps::Caps;
use crate::error::{cap, Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexMultiset {
    mult: Vec<u64>,
}

/// JSON shape `{"mult": {"<vertex>": count}}`; absent vertices count zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultisetJson {
    pub mult: BTreeMap<usize, u64>,
}

impl VertexMultiset {
    pub fn zeros(n: usize) -> Self {
        VertexMultiset { mult: vec![0; n] }
    }

    pub fn from_counts(mult: Vec<u64>) -> Self {
        VertexMultiset { mult }
    }

    /// Indicator multiset of `set`.
    pub fn from_set(n: usize, set: &VertexSet) -> Self {
        let mut m = Self::zeros(n);
        for v in set {
            m.mult[v] = 1;
        }
        m
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, u64)>>(n: usize, pairs: I) -> Result<Self> {
        let mut m = Self::zeros(n);
        for (v, c) in pairs {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            m.mult[v] = c;
        }
        Ok(m)
    }

    pub fn from_sparse(n: usize, sparse: &BTreeMap<usize, u64>) -> Result<Self> {
        Self::from_pairs(n, sparse.iter().map(|(&v, &c)| (v, c)))
    }

    pub fn to_sparse(&self) -> BTreeMap<usize, u64> {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, &c)| (v, c))
            .collect()
    }

    pub fn to_json(&self) -> MultisetJson {
        MultisetJson { mult: self.to_sparse() }
    }

    pub fn n(&self) -> usize {
        self.mult.len()
    }

    pub fn get(&self, v: usize) -> u64 {
        self.mult[v]
    }

    pub fn set(&mut self, v: usize, count: u64) {
        self.mult[v] = count;
    }

    pub fn counts(&self) -> &[u64] {
        &self.mult
    }

    pub fn support(&self) -> VertexSet {
        VertexSet::from_vertices(self.n(), (0..self.n()).filter(|&v| self.mult[v] > 0))
    }

    pub fn is_zero(&self) -> bool {
        self.mult.iter().all(|&c| c == 0)
    }

    /// `S • T` for a vertex set `T`.
    pub fn dot(&self, t: &VertexSet) -> u128 {
        t.iter().map(|v| self.mult[v] as u128).sum()
    }

    /// Multiplicities scaled by `factor`; `None` on overflow.
    pub fn scaled(&self, factor: u64) -> Option<Self> {
        self.mult
            .iter()
            .map(|c| c.checked_mul(factor))
            .collect::<Option<Vec<_>>>()
            .map(Self::from_counts)
    }

    /// Disjoint union: multiplicities add.
    pub fn disjoint_union(&self, other: &Self) -> Option<Self> {
        self.mult
            .iter()
            .zip(&other.mult)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self::from_counts)
    }
}

/// Serde adapter for sparse multiplicity maps with string keys; needed where
/// the map sits inside an internally tagged enum.
pub(crate) mod sparse_keys {
    use std::collections::BTreeMap;

    use serde::ser::SerializeMap;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(map: &BTreeMap<usize, u64>, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(map.len()))?;
        for (k, v) in map {
            m.serialize_entry(&k.to_string(), v)?;
        }
        m.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, u64>, D::Error> {
        let keyed = BTreeMap::<String, u64>::deserialize(d)?;
        keyed
            .into_iter()
            .map(|(k, v)| k.parse::<usize>().map(|k| (k, v)).map_err(D::Error::custom))
            .collect()
    }
}

/// One failed divisibility condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    #[serde(rename = "K")]
    pub set: Vec<usize>,
    pub k: u32,
    pub value: u128,
    pub modulus: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceReport {
    pub r: u32,
    pub ok: bool,
    /// Violations in lexicographic order of `K`, at most `Caps::max_violations`.
    pub violations: Vec<Violation>,
    /// True when more violations existed than were kept.
    pub truncated: bool,
    /// Number of sets `K` whose count was evaluated.
    pub checked: u64,
}

#[inline]
pub(crate) fn incidence_modulus(r: u32, k: u32) -> u128 {
    let delta = u32::from(k == 0);
    1u128 << (r - k - delta)
}

fn check_level(r: u32, caps: &Caps) -> Result<()> {
    if r < 1 {
        return Err(Error::InvalidLevel(r));
    }
    if r > caps.incidence_max_r.min(120) {
        return Err(cap("incidence level r", r, caps.incidence_max_r.min(120)));
    }
    Ok(())
}

fn check_instance(g: &Graph, s: &VertexMultiset) -> Result<VertexSet> {
    if s.n() != g.n() {
        return Err(Error::OrderMismatch(g.n(), s.n()));
    }
    let supp = s.support();
    g.is_independent(&supp)?;
    Ok(supp)
}

/// Vertices outside the support with a neighbour in it; sets `K` that
/// leave this pool have a zero count.
pub(crate) fn incidence_pool(g: &Graph, supp: &VertexSet) -> Vec<usize> {
    (0..g.n())
        .filter(|&v| !supp.contains(v) && !g.nbrs(v).is_disjoint(supp))
        .collect()
}

pub fn is_r_incident(g: &Graph, s: &VertexMultiset, r: u32, caps: &Caps) -> Result<IncidenceReport> {
    check_level(r, caps)?;
    let supp = check_instance(g, s)?;
    if g.n() > caps.incidence_max_n {
        return Err(cap("incidence graph order", g.n(), caps.incidence_max_n));
    }
    let pool = incidence_pool(g, &supp);

    struct Walk<'a> {
        g: &'a Graph,
        s: &'a VertexMultiset,
        pool: &'a [usize],
        r: u32,
        caps: &'a Caps,
        stack: Vec<usize>,
        report: IncidenceReport,
    }

    impl Walk<'_> {
        fn visit(&mut self, start: usize, common: &VertexSet) -> Result<()> {
            for i in start..self.pool.len() {
                let v = self.pool[i];
                let mut next = common.clone();
                next.intersect_with(&self.g.nbrs(v));
                if next.is_empty() {
                    continue;
                }
                self.stack.push(v);
                if self.stack.len() >= 2 {
                    self.report.checked += 1;
                    if self.report.checked > self.caps.incidence_max_subsets {
                        return Err(cap(
                            "incidence subsets",
                            self.report.checked,
                            self.caps.incidence_max_subsets,
                        ));
                    }
                    let k = self.stack.len() as u32 - 2;
                    let modulus = incidence_modulus(self.r, k);
                    let value = self.s.dot(&next);
                    if !value.is_multiple_of(modulus) {
                        self.report.ok = false;
                        if self.report.violations.len() < self.caps.max_violations {
                            self.report.violations.push(Violation {
                                set: self.stack.clone(),
                                k,
                                value,
                                modulus,
                            });
                        } else {
                            self.report.truncated = true;
                        }
                    }
                }
                if self.stack.len() < self.r as usize + 1 {
                    self.visit(i + 1, &next)?;
                }
                self.stack.pop();
            }
            Ok(())
        }
    }

    let mut walk = Walk {
        g,
        s,
        pool: &pool,
        r,
        caps,
        stack: Vec::with_capacity(r as usize + 1),
        report: IncidenceReport {
            r,
            ok: true,
            violations: Vec::new(),
            truncated: false,
            checked: 0,
        },
    };
    walk.visit(0, &supp)?;
    Ok(walk.report)
}

/// Exact `S • Λ^{u,v}` for every pair with a non-zero count.
pub fn pair_weights(g: &Graph, s: &VertexMultiset) -> BTreeMap<(usize, usize), u128> {
    let mut acc: HashMap<(usize, usize), u128> = HashMap::new();
    for w in 0..s.n() {
        let m = s.get(w);
        if m == 0 {
            continue;
        }
        let nb = g.nbrs(w).to_vec();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                *acc.entry((a, b)).or_insert(0) += m as u128;
            }
        }
    }
    acc.into_iter().collect()
}

/// Pairs toggled by the r-local complementation, without validity checks.
pub(crate) fn toggled_pairs(g: &Graph, s: &VertexMultiset, r: u32) -> Vec<(usize, usize)> {
    let modulus = 1u128 << r;
    let half = modulus >> 1;
    pair_weights(g, s)
        .into_iter()
        .filter(|&(_, w)| w % modulus == half)
        .map(|(p, _)| p)
        .collect()
}

/// `G *^r S`. Fails unless `S` is independent and r-incident in `G`.
pub fn apply_rlc(g: &Graph, s: &VertexMultiset, r: u32, caps: &Caps) -> Result<Graph> {
    let report = is_r_incident(g, s, r, caps)?;
    if !report.ok {
        return Err(Error::NotIncident { r });
    }
    let mut out = g.clone();
    for (u, v) in toggled_pairs(g, s, r) {
        out.toggle_edge(u, v);
    }
    Ok(out)
}

pub fn reduce_multiset(s: &VertexMultiset, r: u32) -> Result<VertexMultiset> {
    if r < 1 {
        return Err(Error::InvalidLevel(r));
    }
    Ok(VertexMultiset::from_counts(
        s.counts()
            .iter()
            .map(|&c| if r >= 64 { c } else { c % (1u64 << r) })
            .collect(),
    ))
}

/// Checks `S • Odd(K) = Σ_{∅≠R⊆K} (-2)^(|R|-1) S • Λ^R` with exact integers.
pub fn inclusion_exclusion_check(g: &Graph, s: &VertexMultiset, k: &VertexSet, caps: &Caps) -> Result<bool> {
    g.check_set(k)?;
    if s.n() != g.n() {
        return Err(Error::OrderMismatch(g.n(), s.n()));
    }
    let members = k.to_vec();
    if members.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    if members.len() > caps.inclusion_exclusion_max_k {
        return Err(cap(
            "inclusion-exclusion |K|",
            members.len(),
            caps.inclusion_exclusion_max_k,
        ));
    }
    let lhs = BigInt::from(s.dot(&g.odd_neighborhood(k)?));
    let mut rhs = BigInt::from(0);
    for mask in 1u32..(1 << members.len()) {
        let r_set = g.set_of((0..members.len()).filter(|i| mask >> i & 1 == 1).map(|i| members[i]));
        let term = BigInt::from(s.dot(&g.common_neighborhood(&r_set)?));
        let coeff = BigInt::from(-2).pow(mask.count_ones() - 1);
        rhs += coeff * term;
    }
    Ok(lhs == rhs)
}
