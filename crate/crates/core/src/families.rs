//! The `C_{t,k}` / `C'_{t,k}` families, repeater graphs, the leaf criterion
//! and the binomial arithmetic behind the level hierarchy.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{cap, Error, Result};
use crate::genlc::VertexMultiset;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "C")]
    C,
    /// Adds the clique on the integer side.
    #[serde(rename = "C'")]
    CPrime,
}

/// Layout: the `C(t, k)` k-subsets of `1..=t` in colex order, then the integers `1..=t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub t: usize,
    pub k: usize,
    pub variant: Variant,
}

/// k-subsets of `0..t` in colex order.
pub fn colex_subsets(t: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > t {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let mut j = 0;
        while j < k && c[j] + 1 == if j + 1 < k { c[j + 1] } else { t } {
            j += 1;
        }
        if j == k {
            return out;
        }
        c[j] += 1;
        for (i, slot) in c.iter_mut().enumerate().take(j) {
            *slot = i;
        }
    }
}

impl FamilySpec {
    pub fn c(t: usize, k: usize) -> Self {
        FamilySpec {
            t,
            k,
            variant: Variant::C,
        }
    }

    pub fn c_prime(t: usize, k: usize) -> Self {
        FamilySpec {
            t,
            k,
            variant: Variant::CPrime,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.k < 1 || self.t < self.k {
            return Err(Error::Precondition(format!(
                "need t >= k >= 1, got t={} k={}",
                self.t, self.k
            )));
        }
        Ok(())
    }

    /// Number of subset-side vertices, or `None` if it overflows `usize`.
    pub fn subset_count(&self) -> Option<usize> {
        binomial(self.t as i64, self.k as i64).to_usize()
    }

    pub fn order(&self) -> Option<usize> {
        self.subset_count()?.checked_add(self.t)
    }

    pub fn labels(&self) -> Vec<String> {
        colex_subsets(self.t, self.k)
            .into_iter()
            .map(|s| {
                let parts: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
                format!("{{{}}}", parts.join(","))
            })
            .chain((1..=self.t).map(|i| i.to_string()))
            .collect()
    }

    /// The all-ones multiset on the subset side.
    pub fn subset_multiset(&self) -> Result<VertexMultiset> {
        self.validate()?;
        let m = self
            .subset_count()
            .ok_or_else(|| cap("family order", u64::MAX, u64::MAX))?;
        let mut s = VertexMultiset::zeros(m + self.t);
        for v in 0..m {
            s.set(v, 1);
        }
        Ok(s)
    }
}

pub fn gen_family(spec: &FamilySpec, max_vertices: usize) -> Result<Graph> {
    spec.validate()?;
    let order = spec.order().unwrap_or(usize::MAX);
    if order > max_vertices {
        return Err(cap("family order", order, max_vertices));
    }
    let subsets = colex_subsets(spec.t, spec.k);
    let m = subsets.len();
    let mut g = Graph::empty(order);
    for (a, members) in subsets.iter().enumerate() {
        for &i in members {
            g.set_edge(a, m + i, true);
        }
    }
    if spec.variant == Variant::CPrime {
        for i in 0..spec.t {
            for j in i + 1..spec.t {
                g.set_edge(m + i, m + j, true);
            }
        }
    }
    Ok(g)
}

/// Exact `C(m, s)`; zero when `s < 0`, `s > m` or `m < 0`.
pub fn binomial(m: i64, s: i64) -> BigUint {
    if m < 0 || s < 0 || s > m {
        return BigUint::zero();
    }
    let s = s.min(m - s) as u64;
    let m = m as u64;
    let mut acc = BigUint::one();
    for i in 0..s {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

fn popcount(x: u64) -> u32 {
    x.count_ones()
}

/// 2-adic valuation of `C(m, s)` as `w(s) + w(m - s) - w(m)`.
pub fn v2_binomial(m: u64, s: u64) -> Result<u32> {
    if s > m {
        return Err(Error::Precondition(format!("need s <= m, got m={m} s={s}")));
    }
    Ok(popcount(s) + popcount(m - s) - popcount(m))
}

/// One evaluated congruence `value ≡ residue (mod modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub condition: String,
    /// Exact binomial, in decimal.
    pub value: String,
    pub residue: String,
    pub modulus: String,
    pub pass: bool,
}

fn condition(label: String, value: BigUint, residue: BigUint, modulus: BigUint) -> Condition {
    let pass = &value % &modulus == residue;
    Condition {
        condition: label,
        value: value.to_string(),
        residue: residue.to_string(),
        modulus: modulus.to_string(),
        pass,
    }
}

fn pow2(e: u32) -> BigUint {
    BigUint::one() << e
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HierarchyCheck {
    pub t: usize,
    pub k: usize,
    pub r: u32,
    /// The all-ones witness condition at level `r`.
    pub sufficient_ok: bool,
    /// Largest `r'` at which the level obstruction holds; `None` when it holds at no level
    /// (or the shape precondition `k` odd `>= 3`, `t >= k + 2` fails).
    pub obstruction_ok_at: Option<u32>,
    pub details: Vec<Condition>,
}

fn check_shape(t: usize, k: usize) -> Result<()> {
    if k < 1 || t < k {
        return Err(Error::Precondition(format!("need t >= k >= 1, got t={t} k={k}")));
    }
    Ok(())
}

pub fn check_sufficient_lcr(t: usize, k: usize, r: u32) -> Result<HierarchyCheck> {
    check_shape(t, k)?;
    if r < 1 {
        return Err(Error::InvalidLevel(r));
    }
    let (ti, ki) = (t as i64, k as i64);
    let mut details = vec![condition(
        format!("C({}, {}) = 2^{} mod 2^{}", ti - 2, ki - 2, r - 1, r),
        binomial(ti - 2, ki - 2),
        pow2(r - 1),
        pow2(r),
    )];
    for i in 1..r {
        let ii = i as i64;
        details.push(condition(
            format!("C({}, {}) = 0 mod 2^{}", ti - ii - 2, ki - ii - 2, r - i),
            binomial(ti - ii - 2, ki - ii - 2),
            BigUint::zero(),
            pow2(r - i),
        ));
    }
    let sufficient_ok = details.iter().all(|c| c.pass);
    details.extend(obstruction_details(t, k));
    Ok(HierarchyCheck {
        t,
        k,
        r,
        sufficient_ok,
        obstruction_ok_at: obstruction_level(t, k),
        details,
    })
}

fn obstruction_shape(t: usize, k: usize) -> bool {
    k >= 3 && k % 2 == 1 && t >= k + 2
}

fn obstruction_details(t: usize, k: usize) -> Vec<Condition> {
    if !obstruction_shape(t, k) {
        return Vec::new();
    }
    let ck2 = binomial(k as i64, 2);
    let v = ck2.trailing_zeros().unwrap_or(0) as u32;
    vec![
        condition(
            format!("C({t}, 2) = 1 mod 2"),
            binomial(t as i64, 2),
            BigUint::one(),
            pow2(1),
        ),
        condition(format!("C({k}, 2) = 0 mod 2^{v}"), ck2, BigUint::zero(), pow2(v)),
    ]
}

fn obstruction_level(t: usize, k: usize) -> Option<u32> {
    if !obstruction_shape(t, k) || !binomial(t as i64, 2).bit(0) {
        return None;
    }
    let v = binomial(k as i64, 2).trailing_zeros().unwrap_or(0) as u32;
    (v >= 1).then_some(v)
}

/// `C(t, 2)` odd and `C(k, 2) ≡ 0 mod 2^r`, for odd `k >= 3` and `t >= k + 2`.
pub fn check_obstruction(t: usize, k: usize, r: u32) -> Result<bool> {
    if !obstruction_shape(t, k) {
        return Err(Error::Precondition(format!(
            "obstruction needs odd k >= 3 and t >= k + 2, got t={t} k={k}"
        )));
    }
    let t_pairs_odd = binomial(t as i64, 2).bit(0);
    let k_pairs = binomial(k as i64, 2);
    Ok(t_pairs_odd && (&k_pairs % pow2(r)).is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HierarchyParams {
    pub r: u32,
    pub t: usize,
    pub k: usize,
    pub sufficient: HierarchyCheck,
    /// The obstruction one level down.
    pub obstruction_below: bool,
    /// Both checks pass, so the pair separates level `r` from level `r - 1`.
    pub valid: bool,
}

/// `k = 2^r + 1`, `t = 2^r + 2^(floor(log2 r) + 1) - 1`, re-validated.
pub fn hierarchy_params(r: u32) -> Result<HierarchyParams> {
    if r < 2 {
        return Err(Error::Precondition(format!("hierarchy formula needs r >= 2, got {r}")));
    }
    if r > 40 {
        return Err(cap("hierarchy level", r, 40));
    }
    let log = 31 - r.leading_zeros();
    let k = (1usize << r) + 1;
    let t = (1usize << r) + (1usize << (log + 1)) - 1;
    let sufficient = check_sufficient_lcr(t, k, r)?;
    let obstruction_below = check_obstruction(t, k, r - 1)?;
    Ok(HierarchyParams {
        r,
        t,
        k,
        valid: sufficient.sufficient_ok && obstruction_below,
        sufficient,
        obstruction_below,
    })
}

/// Scans odd `k >= 3`, then `t` in `k + 2 ..= t_max`, for the first pair that
/// passes the level-`r` witness condition and (for `r >= 2`) the obstruction at
/// level `r - 1`.
pub fn search_hierarchy_pair(r: u32, t_max: usize) -> Result<Option<(usize, usize)>> {
    if r < 1 {
        return Err(Error::InvalidLevel(r));
    }
    for k in (3..=t_max.saturating_sub(2)).step_by(2) {
        for t in k + 2..=t_max {
            let below = r == 1 || check_obstruction(t, k, r - 1)?;
            if below && check_sufficient_lcr(t, k, r)?.sufficient_ok {
                return Ok(Some((t, k)));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepeaterKind {
    Complete,
    Biclique,
}

/// Core graph on the first vertices, then one pendant leaf per core vertex in the same order.
pub fn gen_repeater(kind: RepeaterKind, n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::Precondition("repeater size must be at least 1".into()));
    }
    let core = match kind {
        RepeaterKind::Complete => n,
        RepeaterKind::Biclique => 2 * n,
    };
    let mut g = Graph::empty(2 * core);
    match kind {
        RepeaterKind::Complete => {
            for i in 0..n {
                for j in i + 1..n {
                    g.set_edge(i, j, true);
                }
            }
        }
        RepeaterKind::Biclique => {
            for i in 0..n {
                for j in n..2 * n {
                    g.set_edge(i, j, true);
                }
            }
        }
    }
    for i in 0..core {
        g.set_edge(i, core + i, true);
    }
    Ok(g)
}

/// Every vertex is a leaf or adjacent to one.
pub fn leaf_criterion(g: &Graph) -> bool {
    let leaves = g.set_of((0..g.n()).filter(|&u| g.degree(u) == 1));
    (0..g.n()).all(|u| leaves.contains(u) || !g.nbrs(u).is_disjoint(&leaves))
}

pub fn leaves(g: &Graph) -> Vec<usize> {
    (0..g.n()).filter(|&u| g.degree(u) == 1).collect()
}
