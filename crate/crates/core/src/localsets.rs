//! Local sets, minimal local sets and the X/Y/Z/⊥ vertex types.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bitset::VertexSet;
use crate::caps::Caps;
use crate::error::{cap, Error, Result};
use crate::graph::Graph;

/// Full enumeration uses 64-bit masks, so this is a hard ceiling on top of the cap.
const MASK_LIMIT: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexType {
    X,
    Y,
    Z,
    #[serde(rename = "bot")]
    Bot,
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexType::X => "X",
            VertexType::Y => "Y",
            VertexType::Z => "Z",
            VertexType::Bot => "bot",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypePartition {
    labels: Vec<VertexType>,
}

#[derive(Serialize, Deserialize)]
struct TypeLists {
    #[serde(rename = "X")]
    x: Vec<usize>,
    #[serde(rename = "Y")]
    y: Vec<usize>,
    #[serde(rename = "Z")]
    z: Vec<usize>,
    bot: Vec<usize>,
}

impl TypePartition {
    pub fn from_labels(labels: Vec<VertexType>) -> Self {
        TypePartition { labels }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, u: usize) -> VertexType {
        self.labels[u]
    }

    pub(crate) fn set(&mut self, u: usize, t: VertexType) {
        self.labels[u] = t;
    }

    pub fn labels(&self) -> &[VertexType] {
        &self.labels
    }

    pub fn vertices_of(&self, t: VertexType) -> VertexSet {
        VertexSet::from_vertices(self.n(), (0..self.n()).filter(|&u| self.labels[u] == t))
    }

    pub fn count(&self, t: VertexType) -> usize {
        self.labels.iter().filter(|&&l| l == t).count()
    }

    /// `2|V_Y| + |V_X|`, the quantity the standard-form loop drives down.
    pub fn measure(&self) -> usize {
        2 * self.count(VertexType::Y) + self.count(VertexType::X)
    }

    fn lists(&self) -> TypeLists {
        let of = |t| self.vertices_of(t).to_vec();
        TypeLists {
            x: of(VertexType::X),
            y: of(VertexType::Y),
            z: of(VertexType::Z),
            bot: of(VertexType::Bot),
        }
    }
}

impl Serialize for TypePartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.lists().serialize(s)
    }
}

impl<'de> Deserialize<'de> for TypePartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let lists = TypeLists::deserialize(d)?;
        let n = lists.x.len() + lists.y.len() + lists.z.len() + lists.bot.len();
        let mut labels = vec![None; n];
        for (list, t) in [
            (&lists.x, VertexType::X),
            (&lists.y, VertexType::Y),
            (&lists.z, VertexType::Z),
            (&lists.bot, VertexType::Bot),
        ] {
            for &u in list {
                match labels.get_mut(u) {
                    Some(slot @ None) => *slot = Some(t),
                    _ => return Err(D::Error::custom(format!("vertex {u} is missing or labelled twice"))),
                }
            }
        }
        Ok(TypePartition {
            labels: labels.into_iter().map(|l| l.expect("every slot filled")).collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSetRecord {
    pub set: VertexSet,
    /// Sorted by bitmask.
    pub generators: Vec<VertexSet>,
    pub dimension: u8,
    /// `(-1)^{|G[D]|}` for each generator, in the same order.
    pub signs: Vec<i8>,
}

#[derive(Serialize)]
struct RecordJson {
    set: Vec<usize>,
    generators: Vec<Vec<usize>>,
    dimension: u8,
    signs: Vec<i8>,
}

impl Serialize for LocalSetRecord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RecordJson {
            set: self.set.to_vec(),
            generators: self.generators.iter().map(VertexSet::to_vec).collect(),
            dimension: self.dimension,
            signs: self.signs.clone(),
        }
        .serialize(s)
    }
}

/// `D ∪ Odd(D)`.
pub fn local_set(g: &Graph, d: &VertexSet) -> Result<VertexSet> {
    if d.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    Ok(d.union(&g.odd_neighborhood(d)?))
}

fn check_size(g: &Graph, caps: &Caps) -> Result<()> {
    let limit = caps.mls_max_n.min(MASK_LIMIT);
    if g.n() > limit {
        return Err(cap("minimal local set order", g.n(), limit));
    }
    Ok(())
}

/// Visits every non-empty `D` in Gray-code order with its odd neighbourhood.
fn gray_sweep(g: &Graph, mut visit: impl FnMut(u64, u64)) {
    let n = g.n();
    let rows: Vec<u64> = (0..n).map(|u| g.row_mask(u)).collect();
    let (mut d, mut odd) = (0u64, 0u64);
    for i in 1u64..(1u64 << n) {
        let bit = i.trailing_zeros() as usize;
        d ^= 1 << bit;
        odd ^= rows[bit];
        visit(d, odd);
    }
}

/// All minimal local sets, sorted by bitmask, each with every generator.
pub fn enumerate_mls(g: &Graph, caps: &Caps) -> Result<Vec<LocalSetRecord>> {
    check_size(g, caps)?;
    let n = g.n();
    let mut all: HashSet<u64> = HashSet::new();
    gray_sweep(g, |d, odd| {
        all.insert(d | odd);
    });
    let mut by_size: Vec<u64> = all.into_iter().collect();
    by_size.sort_by_key(|&l| (l.count_ones(), l));
    let mut minimal: Vec<u64> = Vec::new();
    for l in by_size {
        // a strictly smaller local set inside l would contain a confirmed one
        if minimal.iter().all(|&m| m & l != m) {
            minimal.push(l);
        }
    }
    minimal.sort_unstable();

    let index: HashMap<u64, usize> = minimal.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut gens: Vec<Vec<u64>> = vec![Vec::new(); minimal.len()];
    gray_sweep(g, |d, odd| {
        if let Some(&i) = index.get(&(d | odd)) {
            gens[i].push(d);
        }
    });

    minimal
        .into_iter()
        .zip(gens)
        .map(|(l, mut ds)| {
            ds.sort_unstable();
            let dimension = match ds.len() {
                1 => 1,
                3 if ds[0] ^ ds[1] == ds[2] && l.count_ones() % 2 == 0 => 2,
                _ => {
                    return Err(Error::Internal(format!(
                        "minimal local set {:?} has generators {:?}",
                        VertexSet::from_mask(n, l),
                        ds
                    )))
                }
            };
            let generators: Vec<VertexSet> = ds.iter().map(|&d| VertexSet::from_mask(n, d)).collect();
            let signs = generators
                .iter()
                .map(|d| {
                    let e = g.induced_edge_count(d)?;
                    Ok(if e % 2 == 0 { 1 } else { -1 })
                })
                .collect::<Result<Vec<i8>>>()?;
            Ok(LocalSetRecord {
                set: VertexSet::from_mask(n, l),
                generators,
                dimension,
                signs,
            })
        })
        .collect()
}

fn classify(u: usize, d: &VertexSet, odd: &VertexSet) -> Option<VertexType> {
    match (d.contains(u), odd.contains(u)) {
        (true, false) => Some(VertexType::X),
        (true, true) => Some(VertexType::Y),
        (false, true) => Some(VertexType::Z),
        (false, false) => None,
    }
}

/// Types from an already enumerated MLS family.
pub fn types_from_mls(g: &Graph, records: &[LocalSetRecord]) -> Result<TypePartition> {
    let n = g.n();
    let mut seen: Vec<Option<VertexType>> = vec![None; n];
    for rec in records {
        for d in &rec.generators {
            let odd = g.odd_neighborhood(d)?;
            for u in &rec.set {
                let t = classify(u, d, &odd)
                    .ok_or_else(|| Error::Internal(format!("vertex {u} in local set but not in D ∪ Odd(D)")))?;
                seen[u] = match seen[u] {
                    None => Some(t),
                    Some(prev) if prev == t => Some(t),
                    Some(_) => Some(VertexType::Bot),
                };
            }
        }
    }
    let labels = seen
        .into_iter()
        .enumerate()
        .map(|(u, t)| t.ok_or_else(|| Error::Internal(format!("vertex {u} lies in no minimal local set"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(TypePartition { labels })
}

pub fn vertex_types(g: &Graph, caps: &Caps) -> Result<TypePartition> {
    let records = enumerate_mls(g, caps)?;
    types_from_mls(g, &records)
}

/// True iff every vertex lies in some minimal local set.
pub fn mls_cover_check(g: &Graph, caps: &Caps) -> Result<bool> {
    let records = enumerate_mls(g, caps)?;
    let mut covered = g.empty_set();
    for rec in &records {
        covered.union_with(&rec.set);
    }
    Ok(covered.len() == g.n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use VertexType::*;

    fn caps() -> Caps {
        Caps::default()
    }

    fn types(g: &Graph) -> Vec<VertexType> {
        vertex_types(g, &caps()).unwrap().labels().to_vec()
    }

    /// Reference enumeration: all local sets, minimal by pairwise inclusion.
    fn brute_mls(g: &Graph) -> Vec<(u64, Vec<u64>)> {
        let n = g.n();
        let ls = |d: u64| {
            let s = VertexSet::from_mask(n, d);
            local_set(g, &s).unwrap().to_mask()
        };
        let mut sets: Vec<u64> = (1u64..1 << n).map(ls).collect();
        sets.sort_unstable();
        sets.dedup();
        sets.iter()
            .copied()
            .filter(|&l| !sets.iter().any(|&m| m != l && m & l == m))
            .map(|l| (l, (1u64..1 << n).filter(|&d| ls(d) == l).collect()))
            .collect()
    }

    #[test]
    fn local_set_examples() {
        let e = Graph::path(2);
        assert_eq!(local_set(&e, &e.set_of([0])).unwrap().to_vec(), vec![0, 1]);
        assert_eq!(local_set(&e, &e.set_of([0, 1])).unwrap().to_vec(), vec![0, 1]);
        let star = Graph::star(3);
        assert_eq!(local_set(&star, &star.set_of([0])).unwrap().len(), 4);
        assert_eq!(local_set(&star, &star.empty_set()), Err(Error::EmptyVertexSet));
    }

    #[test]
    fn single_edge_has_one_dimension_two_set() {
        let mls = enumerate_mls(&Graph::path(2), &caps()).unwrap();
        assert_eq!(mls.len(), 1);
        assert_eq!(mls[0].dimension, 2);
        let gens: Vec<Vec<usize>> = mls[0].generators.iter().map(|d| d.to_vec()).collect();
        assert_eq!(gens, vec![vec![0], vec![1], vec![0, 1]]);
        assert_eq!(mls[0].signs, vec![1, 1, -1]);
    }

    #[test]
    fn star_sets() {
        // leaf+centre sets, plus every leaf pair since Odd({l_i, l_j}) is empty
        let mls = enumerate_mls(&Graph::star(3), &caps()).unwrap();
        let sets: Vec<Vec<usize>> = mls.iter().map(|r| r.set.to_vec()).collect();
        assert_eq!(
            sets,
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]
        );
        for r in &mls {
            assert_eq!(r.dimension, 1);
            let expected: Vec<usize> = if r.set.contains(0) {
                r.set.to_vec()[1..].to_vec()
            } else {
                r.set.to_vec()
            };
            assert_eq!(r.generators[0].to_vec(), expected);
        }
        assert_eq!(types(&Graph::star(3)), vec![Z, X, X, X]);
    }

    #[test]
    fn footnote_types() {
        assert_eq!(types(&Graph::complete(3)), vec![Y, Y, Y]);
        assert_eq!(types(&Graph::path(3)), vec![X, Z, X]);
        assert_eq!(types(&Graph::empty(3)), vec![X, X, X]);
    }

    #[test]
    fn fig1_dimension_differs() {
        let abch = VertexSet::from_vertices(8, [0, 1, 2, 7]);
        let left = enumerate_mls(&fixtures::fig1_left().graph, &caps()).unwrap();
        let right = enumerate_mls(&fixtures::fig1_right().graph, &caps()).unwrap();
        let find = |rs: &[LocalSetRecord]| rs.iter().find(|r| r.set == abch).map(|r| r.dimension);
        assert_eq!(find(&left), Some(2));
        assert_eq!(find(&right), Some(1));
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        for mask in 0u32..(1 << 10) {
            let mut g = Graph::empty(5);
            let mut k = 0;
            for j in 1..5 {
                for i in 0..j {
                    if mask >> k & 1 == 1 {
                        g.set_edge(i, j, true);
                    }
                    k += 1;
                }
            }
            let fast: Vec<(u64, Vec<u64>)> = enumerate_mls(&g, &caps())
                .unwrap()
                .into_iter()
                .map(|r| (r.set.to_mask(), r.generators.iter().map(|d| d.to_mask()).collect()))
                .collect();
            assert_eq!(fast, brute_mls(&g), "graph {g:?}");
            assert!(mls_cover_check(&g, &caps()).unwrap());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let small = Caps {
            mls_max_n: 4,
            ..Caps::default()
        };
        assert!(matches!(
            enumerate_mls(&Graph::path(5), &small),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn partition_json() {
        let t = vertex_types(&Graph::path(3), &caps()).unwrap();
        let text = serde_json::to_string(&t).unwrap();
        assert_eq!(text, r#"{"X":[0,2],"Y":[],"Z":[1],"bot":[]}"#);
        let back: TypePartition = serde_json::from_str(&text).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<TypePartition>(r#"{"X":[0,0],"Y":[],"Z":[],"bot":[]}"#).is_err());
    }
}
