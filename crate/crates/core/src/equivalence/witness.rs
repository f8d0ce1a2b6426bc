//! Exhaustive search for r-local complementation witnesses over a fixed
//! independent support.
//!
//! The unknowns are the multiplicities on the support, each in `[0, 2^r)`.
//! Every set `K` outside the support with `|K| = k+2`, `k < r` and a non-empty
//! common neighbourhood in the support gives a linear congruence on the
//! unknowns adjacent to all of `K`. Congruences are checked as soon as their
//! last unknown is assigned.

use std::collections::BTreeSet;

use crate::bitset::VertexSet;
use crate::caps::Caps;
use crate::error::{cap, Error, Result};
use crate::genlc::{apply_rlc, VertexMultiset};
use crate::graph::Graph;
use crate::localsets::{vertex_types, VertexType};
use crate::standard::is_standard_form;

#[derive(Debug, Clone)]
struct Form {
    /// Positions in the support order.
    vars: Vec<usize>,
    modulus: u128,
    target: u128,
    /// `Some((u, v))` for pair forms, whose residue mod `2^r` decides the toggle.
    pair: Option<(usize, usize)>,
}

struct System {
    support: Vec<usize>,
    r: u32,
    /// Forms indexed by their last variable.
    by_last: Vec<Vec<Form>>,
    /// Unknowns in no congruence: they change no count, so only 0 is tried.
    free: Vec<bool>,
}

fn check_support(g: &Graph, support: &VertexSet, r: u32, caps: &Caps) -> Result<Vec<usize>> {
    if r < 1 {
        return Err(Error::InvalidLevel(r));
    }
    if r > caps.incidence_max_r {
        return Err(cap("incidence level r", r, caps.incidence_max_r));
    }
    g.is_independent(support)?;
    Ok(support.to_vec())
}

/// Budget on the unknowns that appear in some congruence; the others are pinned to 0.
fn check_bits(system: &System, caps: &Caps) -> Result<()> {
    let bits = system.free.iter().filter(|&&f| !f).count() as u64 * u64::from(system.r);
    if bits > u64::from(caps.witness_bits) {
        return Err(cap("witness search bits", bits, caps.witness_bits));
    }
    Ok(())
}

/// Builds the congruences. With `want = Some(g2)` pair forms demand the exact
/// toggle pattern from `g` to `g2`; otherwise they only demand divisibility by `2^{r-1}`.
/// Returns `None` when `g2` differs from `g` on a pair no support vertex can reach.
fn build_system(g: &Graph, vars: Vec<usize>, r: u32, want: Option<&Graph>) -> Option<System> {
    let n = g.n();
    let support = g.set_of(vars.iter().copied());
    let pos = |v: usize| vars.binary_search(&v).expect("support vertex");
    let pool: Vec<usize> = (0..n)
        .filter(|&v| !support.contains(v) && !g.nbrs(v).is_disjoint(&support))
        .collect();
    let mut by_last: Vec<Vec<Form>> = vec![Vec::new(); vars.len()];
    let mut covered: BTreeSet<(usize, usize)> = BTreeSet::new();

    // DFS over K ⊆ pool in lexicographic order, |K| ≤ r+1
    let mut stack: Vec<(Vec<usize>, VertexSet)> = pool
        .iter()
        .rev()
        .map(|&v| (vec![v], g.nbrs(v).intersection(&support)))
        .collect();
    while let Some((k_set, common)) = stack.pop() {
        if common.is_empty() {
            continue;
        }
        let size = k_set.len();
        if size >= 2 {
            let k = (size - 2) as u32;
            let vars_k: Vec<usize> = common.iter().map(pos).collect();
            let last = *vars_k.last().expect("non-empty");
            let form = if size == 2 {
                let (a, b) = (k_set[0], k_set[1]);
                covered.insert((a, b));
                match want {
                    Some(g2) => Form {
                        vars: vars_k,
                        modulus: 1u128 << r,
                        target: if g.has_edge(a, b) != g2.has_edge(a, b) {
                            1u128 << (r - 1)
                        } else {
                            0
                        },
                        pair: Some((a, b)),
                    },
                    None => Form {
                        vars: vars_k,
                        modulus: 1u128 << (r - 1),
                        target: 0,
                        pair: Some((a, b)),
                    },
                }
            } else {
                Form {
                    vars: vars_k,
                    modulus: 1u128 << (r - k),
                    target: 0,
                    pair: None,
                }
            };
            if form.modulus > 1 || form.pair.is_some() {
                by_last[last].push(form);
            }
        }
        if size < r as usize + 1 {
            let tail = *k_set.last().expect("non-empty");
            for &v in pool.iter().rev().filter(|&&v| v > tail) {
                let mut next = k_set.clone();
                next.push(v);
                stack.push((next, common.intersection(&g.nbrs(v))));
            }
        }
    }

    if let Some(g2) = want {
        for a in 0..n {
            for b in a + 1..n {
                if g.has_edge(a, b) != g2.has_edge(a, b) && !covered.contains(&(a, b)) {
                    return None;
                }
            }
        }
    }
    let mut free = vec![true; vars.len()];
    for f in by_last.iter().flatten() {
        for &i in &f.vars {
            free[i] = false;
        }
    }
    Some(System {
        support: vars,
        r,
        by_last,
        free,
    })
}

impl System {
    fn consistent(&self, values: &[u64], last: usize) -> bool {
        self.by_last[last].iter().all(|f| {
            let sum: u128 = f.vars.iter().map(|&i| u128::from(values[i])).sum();
            sum % f.modulus == f.target
        })
    }

    /// Visits every solution in lexicographic order; the visitor returns `false` to stop.
    fn solve(&self, mut visit: impl FnMut(&[u64]) -> bool) {
        let m = self.support.len();
        let top = 1u64 << self.r;
        let mut values = vec![0u64; m];
        if m == 0 {
            visit(&values);
            return;
        }
        let mut i = 0usize;
        // values[i] holds the next candidate for position i
        loop {
            if values[i] >= if self.free[i] { 1 } else { top } {
                values[i] = 0;
                if i == 0 {
                    return;
                }
                i -= 1;
                values[i] += 1;
                continue;
            }
            if !self.consistent(&values, i) {
                values[i] += 1;
                continue;
            }
            if i + 1 == m {
                if !visit(&values) {
                    return;
                }
                values[i] += 1;
            } else {
                i += 1;
                values[i] = 0;
            }
        }
    }

    fn multiset(&self, n: usize, values: &[u64]) -> VertexMultiset {
        let mut s = VertexMultiset::zeros(n);
        for (&v, &m) in self.support.iter().zip(values) {
            s.set(v, m);
        }
        s
    }

    fn toggles(&self, values: &[u64]) -> Vec<(usize, usize)> {
        let half = 1u128 << (self.r - 1);
        let mut out: Vec<(usize, usize)> = self
            .by_last
            .iter()
            .flatten()
            .filter_map(|f| {
                let (a, b) = f.pair?;
                let sum: u128 = f.vars.iter().map(|&i| u128::from(values[i])).sum();
                (sum % (half << 1) == half).then_some((a, b))
            })
            .collect();
        out.sort_unstable();
        out
    }
}

/// Lexicographically least `S` over `support` (entries in `[0, 2^r)`, index order)
/// with `G1 *^r S = G2`, or `None` when none exists.
pub fn search_rlc_witness_on(
    g1: &Graph,
    g2: &Graph,
    r: u32,
    support: &VertexSet,
    caps: &Caps,
) -> Result<Option<VertexMultiset>> {
    if g1.n() != g2.n() {
        return Err(Error::OrderMismatch(g1.n(), g2.n()));
    }
    let vars = check_support(g1, support, r, caps)?;
    let Some(system) = build_system(g1, vars, r, Some(g2)) else {
        return Ok(None);
    };
    check_bits(&system, caps)?;
    let mut found = None;
    system.solve(|values| {
        found = Some(system.multiset(g1.n(), values));
        false
    });
    match found {
        Some(s) => {
            // second route: the incidence checker and the toggle rule
            if apply_rlc(g1, &s, r, caps)? != *g2 {
                return Err(Error::Internal(format!(
                    "witness search produced an invalid multiset {:?}",
                    s.counts()
                )));
            }
            Ok(Some(s))
        }
        None => Ok(None),
    }
}

/// Witness over the type-X vertices of two standard-form graphs with equal types.
pub fn search_rlc_witness(g1: &Graph, g2: &Graph, r: u32, caps: &Caps) -> Result<Option<VertexMultiset>> {
    if g1.n() != g2.n() {
        return Err(Error::OrderMismatch(g1.n(), g2.n()));
    }
    let t1 = vertex_types(g1, caps)?;
    let t2 = vertex_types(g2, caps)?;
    if !is_standard_form(g1, &t1) || !is_standard_form(g2, &t2) {
        return Err(Error::Precondition("both graphs must be in standard form".into()));
    }
    if t1 != t2 {
        return Err(Error::Precondition("type partitions differ".into()));
    }
    search_rlc_witness_on(g1, g2, r, &t1.vertices_of(VertexType::X), caps)
}

/// Every graph reachable from `g` by one r-local complementation over a
/// multiset supported in `support`, with the least multiset reaching it.
pub fn rlc_outcomes(g: &Graph, support: &VertexSet, r: u32, caps: &Caps) -> Result<Vec<(Graph, VertexMultiset)>> {
    let vars = check_support(g, support, r, caps)?;
    let system = build_system(g, vars, r, None).expect("no target graph to miss");
    check_bits(&system, caps)?;
    let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    let mut out = Vec::new();
    system.solve(|values| {
        let toggles = system.toggles(values);
        if seen.insert(toggles.clone()) {
            let mut h = g.clone();
            for (a, b) in toggles {
                h.toggle_edge(a, b);
            }
            out.push((h, system.multiset(g.n(), values)));
        }
        true
    });
    for (h, s) in &out {
        if apply_rlc(g, s, r, caps)? != *h {
            return Err(Error::Internal("outcome disagrees with apply_rlc".into()));
        }
    }
    Ok(out)
}
