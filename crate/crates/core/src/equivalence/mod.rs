//! Bounded equivalence decisions with replayable certificates.
//!
//! Every positive verdict carries a move list that replays `G1` onto `G2`;
//! every negative verdict carries an obstruction that other modules can
//! recompute. Caps turn into `unknown`, never into a negative verdict.

pub mod clifford;
pub mod witness;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bitset::VertexSet;
use crate::caps::Caps;
use crate::error::{cap, Error, Result};
use crate::genlc::VertexMultiset;
use crate::graph::Graph;
use crate::localsets::{enumerate_mls, VertexType};
use crate::standard::{replay, to_standard_form, Move};

pub use clifford::{extract_lc_sequence, LocalCliffordOp, SignedPauli, SingleClifford};
pub use witness::{rlc_outcomes, search_rlc_witness, search_rlc_witness_on};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Equivalent,
    NotEquivalent,
    Unknown,
}

impl Verdict {
    /// CLI exit code: 0 equivalent, 1 not equivalent, 2 unknown.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Equivalent => 0,
            Verdict::NotEquivalent => 1,
            Verdict::Unknown => 2,
        }
    }
}

/// `R(r)` for r-local equivalence (`R(1)` is ordinary LC), or `Lu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    R(u32),
    Lu,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::R(r) => write!(f, "{r}"),
            Level::Lu => f.write_str("LU"),
        }
    }
}

impl std::str::FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("lu") {
            return Ok(Level::Lu);
        }
        match s.parse::<u32>() {
            Ok(r) if r >= 1 => Ok(Level::R(r)),
            _ => Err(Error::Parse(format!(
                "level must be a positive integer or LU, got {s:?}"
            ))),
        }
    }
}

impl Serialize for Level {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Level::R(r) => s.serialize_u32(*r),
            Level::Lu => s.serialize_str("LU"),
        }
    }
}

impl<'de> Deserialize<'de> for Level {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u32),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(r) if r >= 1 => Ok(Level::R(r)),
            Raw::Int(r) => Err(serde::de::Error::custom(format!("level {r} is not positive"))),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Why two graphs are not equivalent. Each variant is recomputable from the inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Obstruction {
    /// The full LC orbit of `G1` was enumerated and does not contain `G2`.
    OrbitExhausted { orbit_size: usize },
    /// A minimal local set of one graph is absent from the other or has another dimension.
    MlsMismatch {
        set: Vec<usize>,
        dimension_1: Option<u8>,
        dimension_2: Option<u8>,
    },
    /// Vertices of type ⊥ differ.
    BotMismatch { bot_1: Vec<usize>, bot_2: Vec<usize> },
    /// Standard forms assign different types to a vertex.
    TypeMismatch {
        vertex: usize,
        type_1: VertexType,
        type_2: VertexType,
    },
    /// A type-X vertex has different neighbourhoods in the two standard forms.
    XNeighbourhoodMismatch {
        vertex: usize,
        neighbours_1: Vec<usize>,
        neighbours_2: Vec<usize>,
    },
    /// No ⊥-restricted LC orbit element of the first standard form reaches the
    /// second by one r-local complementation over the type-X vertices, for any r up to `r_max`.
    WitnessExhausted { r_max: u32, orbit_size: usize },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::OrbitExhausted { orbit_size } => {
                write!(f, "LC orbit of G1 exhausted ({orbit_size} graphs) without reaching G2")
            }
            Obstruction::MlsMismatch {
                set,
                dimension_1,
                dimension_2,
            } => {
                let d = |x: &Option<u8>| x.map_or("absent".to_string(), |d| format!("dimension {d}"));
                write!(f, "minimal local set {set:?}: {} vs {}", d(dimension_1), d(dimension_2))
            }
            Obstruction::BotMismatch { bot_1, bot_2 } => write!(f, "type-⊥ vertices differ: {bot_1:?} vs {bot_2:?}"),
            Obstruction::TypeMismatch { vertex, type_1, type_2 } => {
                write!(f, "vertex {vertex} has type {type_1:?} vs {type_2:?} in the standard forms")
            }
            Obstruction::XNeighbourhoodMismatch {
                vertex,
                neighbours_1,
                neighbours_2,
            } => write!(f, "type-X vertex {vertex} has neighbours {neighbours_1:?} vs {neighbours_2:?}"),
            Obstruction::WitnessExhausted { r_max, orbit_size } => write!(
                f,
                "no single r-local complementation over type-X vertices (r <= {r_max}) from any of {orbit_size} ⊥-orbit graphs"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceCertificate {
    pub verdict: Verdict,
    pub level: Level,
    /// Present iff the verdict is `equivalent`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moves: Option<Vec<Move>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<Obstruction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl EquivalenceCertificate {
    fn equivalent(level: Level, moves: Vec<Move>) -> Self {
        EquivalenceCertificate {
            verdict: Verdict::Equivalent,
            level,
            moves: Some(moves),
            obstruction: None,
            note: None,
        }
    }

    fn not_equivalent(level: Level, obstruction: Obstruction) -> Self {
        EquivalenceCertificate {
            verdict: Verdict::NotEquivalent,
            level,
            moves: None,
            obstruction: Some(obstruction),
            note: None,
        }
    }

    fn unknown(level: Level, note: String) -> Self {
        EquivalenceCertificate {
            verdict: Verdict::Unknown,
            level,
            moves: None,
            obstruction: None,
            note: Some(note),
        }
    }
}

/// BFS result: graphs in discovery order, each with its parent and the vertex complemented.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub graphs: Vec<Graph>,
    parents: Vec<Option<(usize, usize)>>,
    index: HashMap<Graph, usize>,
    /// `false` when the size cap stopped the search.
    pub complete: bool,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn contains(&self, g: &Graph) -> bool {
        self.index.contains_key(g)
    }

    /// Shortest LC path from the root to orbit element `i`.
    pub fn path_to(&self, mut i: usize) -> Vec<Move> {
        let mut moves = Vec::new();
        while let Some((parent, u)) = self.parents[i] {
            moves.push(Move::Lc { u });
            i = parent;
        }
        moves.reverse();
        moves
    }

    pub fn position(&self, g: &Graph) -> Option<usize> {
        self.index.get(g).copied()
    }
}

/// BFS under local complementations on `allowed` vertices, stopping early at `stop`.
fn bfs(g: &Graph, allowed: &VertexSet, stop: Option<&Graph>, caps: &Caps) -> Result<Orbit> {
    if g.n() > caps.orbit_max_n {
        return Err(cap("orbit graph order", g.n(), caps.orbit_max_n));
    }
    let mut orbit = Orbit {
        graphs: vec![g.clone()],
        parents: vec![None],
        index: HashMap::from([(g.clone(), 0)]),
        complete: true,
    };
    if stop == Some(g) {
        return Ok(orbit);
    }
    let mut head = 0;
    while head < orbit.graphs.len() {
        for u in allowed {
            let next = orbit.graphs[head].local_complement(u)?;
            if orbit.index.contains_key(&next) {
                continue;
            }
            if orbit.graphs.len() >= caps.orbit_max_size {
                orbit.complete = false;
                return Ok(orbit);
            }
            let hit = stop == Some(&next);
            orbit.index.insert(next.clone(), orbit.graphs.len());
            orbit.graphs.push(next);
            orbit.parents.push(Some((head, u)));
            if hit {
                return Ok(orbit);
            }
        }
        head += 1;
    }
    Ok(orbit)
}

/// Full orbit of `g` under local complementation, up to `caps.orbit_max_size` graphs.
pub fn lc_orbit(g: &Graph, caps: &Caps) -> Result<Orbit> {
    bfs(g, &g.vertex_set(), None, caps)
}

/// Orbit under local complementations on the vertices of `allowed` only.
pub fn lc_orbit_restricted(g: &Graph, allowed: &VertexSet, caps: &Caps) -> Result<Orbit> {
    g.check_set(allowed)?;
    bfs(g, allowed, None, caps)
}

fn same_order(g1: &Graph, g2: &Graph) -> Result<()> {
    if g1.n() != g2.n() {
        return Err(Error::OrderMismatch(g1.n(), g2.n()));
    }
    Ok(())
}

/// Ordinary LC equivalence by orbit search; moves are a shortest path.
pub fn decide_lc1(g1: &Graph, g2: &Graph, caps: &Caps) -> Result<EquivalenceCertificate> {
    same_order(g1, g2)?;
    let orbit = bfs(g1, &g1.vertex_set(), Some(g2), caps)?;
    if let Some(i) = orbit.position(g2) {
        let moves = orbit.path_to(i);
        if moves.len() > 3 * g1.n() / 2 {
            return Err(Error::Internal(format!(
                "LC path of length {} exceeds 3n/2 for n = {}",
                moves.len(),
                g1.n()
            )));
        }
        return Ok(EquivalenceCertificate::equivalent(Level::R(1), moves));
    }
    if !orbit.complete {
        return Ok(EquivalenceCertificate::unknown(
            Level::R(1),
            format!("orbit search stopped at {} graphs", orbit.len()),
        ));
    }
    Ok(EquivalenceCertificate::not_equivalent(
        Level::R(1),
        Obstruction::OrbitExhausted {
            orbit_size: orbit.len(),
        },
    ))
}

/// Replays `moves` on `g1`; every r-LC is checked for incidence when applied.
pub fn verify_certificate(g1: &Graph, moves: &[Move], g2: &Graph, caps: &Caps) -> Result<bool> {
    same_order(g1, g2)?;
    Ok(replay(g1, moves, caps)? == *g2)
}

fn mls_obstruction(g1: &Graph, g2: &Graph, caps: &Caps) -> Result<Option<Obstruction>> {
    // keyed by sorted vertex list so the reported set is the lexicographically least
    let dims = |g: &Graph| -> Result<BTreeMap<Vec<usize>, u8>> {
        Ok(enumerate_mls(g, caps)?
            .into_iter()
            .map(|r| (r.set.to_vec(), r.dimension))
            .collect())
    };
    let (m1, m2) = (dims(g1)?, dims(g2)?);
    let mut absent = None;
    for (set, &d1) in &m1 {
        match m2.get(set) {
            Some(&d2) if d2 != d1 => {
                return Ok(Some(Obstruction::MlsMismatch {
                    set: set.clone(),
                    dimension_1: Some(d1),
                    dimension_2: Some(d2),
                }))
            }
            None if absent.is_none() => absent = Some((set.clone(), Some(d1), None)),
            _ => {}
        }
    }
    if absent.is_none() {
        absent = m2
            .iter()
            .find(|(set, _)| !m1.contains_key(*set))
            .map(|(set, &d2)| (set.clone(), None, Some(d2)));
    }
    Ok(absent.map(|(set, dimension_1, dimension_2)| Obstruction::MlsMismatch {
        set,
        dimension_1,
        dimension_2,
    }))
}

/// Largest level that can separate LU from r-local equivalence at order `n`.
pub fn lu_level_bound(n: usize) -> u32 {
    ((n / 2).saturating_sub(1)).max(1) as u32
}

/// Decision by standard forms: a ⊥-restricted LC orbit of `G1`'s standard form
/// followed by one r-local complementation over the type-X vertices, for `r = 1..=r_max`.
/// The reported level is the least `r` that works.
pub fn decide_up_to_level(g1: &Graph, g2: &Graph, r_max: u32, caps: &Caps) -> Result<EquivalenceCertificate> {
    decide_with_standard_forms(g1, g2, Level::R(r_max), r_max, caps)
}

/// LU equivalence at desk scale: levels up to `max(1, ⌊n/2⌋ - 1)` suffice.
pub fn decide_lu_small(g1: &Graph, g2: &Graph, caps: &Caps) -> Result<EquivalenceCertificate> {
    same_order(g1, g2)?;
    decide_with_standard_forms(g1, g2, Level::Lu, lu_level_bound(g1.n()), caps)
}

fn decide_with_standard_forms(
    g1: &Graph,
    g2: &Graph,
    level: Level,
    r_max: u32,
    caps: &Caps,
) -> Result<EquivalenceCertificate> {
    same_order(g1, g2)?;
    if r_max < 1 {
        return Err(Error::InvalidLevel(r_max));
    }
    if let Some(ob) = mls_obstruction(g1, g2, caps)? {
        return Ok(EquivalenceCertificate::not_equivalent(level, ob));
    }
    let sf1 = to_standard_form(g1, caps)?;
    let sf2 = to_standard_form(g2, caps)?;
    let (bot1, bot2) = (
        sf1.types.vertices_of(VertexType::Bot),
        sf2.types.vertices_of(VertexType::Bot),
    );
    if bot1 != bot2 {
        return Ok(EquivalenceCertificate::not_equivalent(
            level,
            Obstruction::BotMismatch {
                bot_1: bot1.to_vec(),
                bot_2: bot2.to_vec(),
            },
        ));
    }
    if let Some(v) = (0..g1.n()).find(|&v| sf1.types.get(v) != sf2.types.get(v)) {
        return Ok(EquivalenceCertificate::not_equivalent(
            level,
            Obstruction::TypeMismatch {
                vertex: v,
                type_1: sf1.types.get(v),
                type_2: sf2.types.get(v),
            },
        ));
    }
    let xs = sf1.types.vertices_of(VertexType::X);
    for x in &xs {
        let (n1, n2) = (sf1.graph.nbrs(x), sf2.graph.nbrs(x));
        if n1 != n2 {
            return Ok(EquivalenceCertificate::not_equivalent(
                level,
                Obstruction::XNeighbourhoodMismatch {
                    vertex: x,
                    neighbours_1: n1.to_vec(),
                    neighbours_2: n2.to_vec(),
                },
            ));
        }
    }

    let orbit = lc_orbit_restricted(&sf1.graph, &bot1, caps)?;
    let mut capped = !orbit.complete;
    for r in 1..=r_max {
        for (i, h) in orbit.graphs.iter().enumerate() {
            let s = match search_rlc_witness_on(h, &sf2.graph, r, &xs, caps) {
                Ok(s) => s,
                Err(Error::CapExceeded { .. }) => {
                    capped = true;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let Some(s) = s else { continue };
            let mut moves = sf1.moves.clone();
            moves.extend(orbit.path_to(i));
            moves.extend(witness_moves(&s, r));
            // LC and pivots are involutions, so the second rewriting undoes in reverse
            moves.extend(sf2.moves.iter().rev().cloned());
            if !verify_certificate(g1, &moves, g2, caps)? {
                return Err(Error::Internal("assembled certificate does not replay to G2".into()));
            }
            return Ok(EquivalenceCertificate::equivalent(Level::R(r), moves));
        }
    }
    if capped {
        return Ok(EquivalenceCertificate::unknown(
            level,
            format!(
                "search capped (orbit {} graphs, complete: {})",
                orbit.len(),
                orbit.complete
            ),
        ));
    }
    Ok(EquivalenceCertificate::not_equivalent(
        level,
        Obstruction::WitnessExhausted {
            r_max,
            orbit_size: orbit.len(),
        },
    ))
}

/// A level-1 witness is a product of commuting local complementations;
/// higher levels stay a single r-LC move. The zero multiset needs no move.
fn witness_moves(s: &VertexMultiset, r: u32) -> Vec<Move> {
    if s.is_zero() {
        Vec::new()
    } else if r == 1 {
        (0..s.n())
            .filter(|&v| s.get(v) % 2 == 1)
            .map(|u| Move::Lc { u })
            .collect()
    } else {
        vec![Move::rlc(r, s)]
    }
}

/// Dispatches on the requested level: orbit search for 1, standard forms above.
/// For `r >= 2` a direct witness on `G1`'s type-X vertices is tried first.
pub fn decide_at_level(g1: &Graph, g2: &Graph, level: Level, caps: &Caps) -> Result<EquivalenceCertificate> {
    same_order(g1, g2)?;
    match level {
        Level::R(0) => Err(Error::InvalidLevel(0)),
        Level::R(1) => decide_lc1(g1, g2, caps),
        Level::R(r) => {
            let xs = crate::localsets::vertex_types(g1, caps)?.vertices_of(VertexType::X);
            if g1.is_independent(&xs).is_ok() {
                if let Ok(Some(s)) = search_rlc_witness_on(g1, g2, r, &xs, caps) {
                    return Ok(EquivalenceCertificate::equivalent(Level::R(r), witness_moves(&s, r)));
                }
            }
            let mut cert = decide_up_to_level(g1, g2, r, caps)?;
            if cert.verdict == Verdict::Equivalent {
                cert = lift_to(cert, r)?;
            }
            Ok(cert)
        }
        Level::Lu => decide_lu_small(g1, g2, caps),
    }
}

/// Rewrites a level-r certificate as a level-(r+1) one by doubling every multiplicity.
pub fn lift_certificate(cert: &EquivalenceCertificate) -> Result<EquivalenceCertificate> {
    let Level::R(r) = cert.level else {
        return Err(Error::Precondition("only level-r certificates can be lifted".into()));
    };
    if cert.verdict != Verdict::Equivalent {
        return Err(Error::Precondition("only positive certificates can be lifted".into()));
    }
    let moves = cert
        .moves
        .as_deref()
        .unwrap_or_default()
        .iter()
        .map(|m| match m {
            Move::Rlc { r, mult } => {
                let doubled = mult
                    .iter()
                    .map(|(&v, &c)| c.checked_mul(2).map(|d| (v, d)))
                    .collect::<Option<BTreeMap<usize, u64>>>()
                    .ok_or_else(|| Error::Precondition("multiplicity overflow while lifting".into()))?;
                Ok(Move::Rlc {
                    r: r + 1,
                    mult: doubled,
                })
            }
            other => Ok(other.clone()),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EquivalenceCertificate::equivalent(Level::R(r + 1), moves))
}

fn lift_to(mut cert: EquivalenceCertificate, r: u32) -> Result<EquivalenceCertificate> {
    while matches!(cert.level, Level::R(cur) if cur < r) {
        cert = lift_certificate(&cert)?;
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::random::{random_graph, random_lc_moves};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fx(name: &str) -> Graph {
        fixtures::by_name(name).unwrap().graph
    }

    #[test]
    fn small_orbits() {
        let caps = Caps::default();
        let k3 = Graph::complete(3);
        let orbit = lc_orbit(&k3, &caps).unwrap();
        assert!(orbit.complete);
        assert_eq!(orbit.len(), 4);
        for centre in 0..3 {
            let others: Vec<usize> = (0..3).filter(|&v| v != centre).collect();
            let path = Graph::from_edges(3, others.iter().map(|&v| (centre, v))).unwrap();
            assert!(orbit.contains(&path));
        }
        assert_eq!(lc_orbit(&Graph::empty(4), &caps).unwrap().len(), 1);
        assert_eq!(lc_orbit(&Graph::path(2), &caps).unwrap().len(), 1);
    }

    #[test]
    fn orbit_cap_marks_partial() {
        let caps = Caps {
            orbit_max_size: 2,
            ..Caps::default()
        };
        let orbit = lc_orbit(&Graph::complete(3), &caps).unwrap();
        assert!(!orbit.complete);
        let cert = decide_lc1(&Graph::complete(3), &Graph::empty(3), &caps).unwrap();
        assert_eq!(cert.verdict, Verdict::Unknown);
    }

    #[test]
    fn lc1_examples() {
        let caps = Caps::default();
        let k3 = Graph::complete(3);
        let p3 = Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap();
        let cert = decide_lc1(&k3, &p3, &caps).unwrap();
        assert_eq!(cert.verdict, Verdict::Equivalent);
        assert_eq!(cert.moves.as_ref().unwrap().len(), 1);
        assert!(verify_certificate(&k3, cert.moves.as_ref().unwrap(), &p3, &caps).unwrap());

        assert_eq!(decide_lc1(&k3, &k3, &caps).unwrap().moves, Some(vec![]));
        let cert = decide_lc1(&Graph::path(2), &Graph::empty(2), &caps).unwrap();
        assert_eq!(cert.verdict, Verdict::NotEquivalent);
        assert_eq!(cert.obstruction, Some(Obstruction::OrbitExhausted { orbit_size: 1 }));
        assert!(matches!(
            decide_lc1(&k3, &Graph::empty(4), &caps),
            Err(Error::OrderMismatch(3, 4))
        ));
    }

    #[test]
    fn fig2_pair_is_one_lc_apart() {
        let caps = Caps::default();
        let (l, r) = (fx("fig2-lhs"), fx("fig2-rhs"));
        assert_eq!(l.local_complement(0).unwrap(), r);
        let cert = decide_lc1(&l, &r, &caps).unwrap();
        assert_eq!(cert.verdict, Verdict::Equivalent);

        let mut ab = BTreeMap::new();
        ab.insert(0, 1);
        ab.insert(1, 1);
        assert!(verify_certificate(&l, &[Move::Rlc { r: 2, mult: ab }], &r, &caps).unwrap());
        let cert = decide_at_level(&l, &r, Level::R(2), &caps).unwrap();
        assert_eq!(cert.verdict, Verdict::Equivalent);
        assert!(matches!(cert.moves.as_deref(), Some([Move::Rlc { r: 2, .. }])));
        assert!(verify_certificate(&l, cert.moves.as_ref().unwrap(), &r, &caps).unwrap());
    }

    #[test]
    fn fig3_certificate() {
        let caps = Caps::default();
        let mut mult = BTreeMap::new();
        mult.extend([(0, 2), (1, 1), (2, 1)]);
        assert!(verify_certificate(&fx("fig3-lhs"), &[Move::Rlc { r: 2, mult }], &fx("fig3-rhs"), &caps).unwrap());
        assert!(verify_certificate(&fx("fig3-lhs"), &[], &fx("fig3-lhs"), &caps).unwrap());
    }

    #[test]
    fn fig1_pair_mls_obstruction() {
        let caps = Caps::default();
        let (l, r) = (fixtures::by_name("fig1-left").unwrap(), fx("fig1-right"));
        let cert = decide_lu_small(&l.graph, &r, &caps).unwrap();
        assert_eq!(cert.verdict, Verdict::NotEquivalent);
        let abch: Vec<usize> = ["a", "b", "c", "h"].iter().map(|s| l.vertex(s).unwrap()).collect();
        let mut abch_sorted = abch.clone();
        abch_sorted.sort_unstable();
        assert_eq!(
            cert.obstruction,
            Some(Obstruction::MlsMismatch {
                set: abch_sorted,
                dimension_1: Some(2),
                dimension_2: Some(1),
            })
        );
    }

    #[test]
    fn lu_decision_on_lc_pairs() {
        let caps = Caps::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for i in 0..40 {
            let n = 2 + i % 7;
            let g = random_graph(&mut rng, n, 0.5);
            let h = replay(&g, &random_lc_moves(&mut rng, n, 4), &caps).unwrap();
            let cert = decide_lu_small(&g, &h, &caps).unwrap();
            assert_eq!(cert.verdict, Verdict::Equivalent, "pair {i}");
            assert_eq!(cert.level, Level::R(1));
            assert!(verify_certificate(&g, cert.moves.as_ref().unwrap(), &h, &caps).unwrap());
        }
    }

    #[test]
    fn lu_agrees_with_lc1_below_nine_vertices() {
        // LU and LC coincide up to 8 vertices, so both procedures must agree
        let caps = Caps::default();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for i in 0..60 {
            let n = 2 + i % 6;
            let g = random_graph(&mut rng, n, 0.5);
            let h = random_graph(&mut rng, n, 0.5);
            let lc = decide_lc1(&g, &h, &caps).unwrap().verdict;
            let lu = decide_lu_small(&g, &h, &caps).unwrap().verdict;
            assert_eq!(lc, lu, "pair {i}: {g:?} {h:?}");
        }
    }

    #[test]
    fn lifting_keeps_certificates_valid() {
        let caps = Caps::default();
        let (l, r) = (fx("fig3-lhs"), fx("fig3-rhs"));
        let cert = decide_at_level(&l, &r, Level::R(2), &caps).unwrap();
        assert_eq!(cert.verdict, Verdict::Equivalent);
        let mut cur = cert;
        for _ in 0..3 {
            cur = lift_certificate(&cur).unwrap();
            assert!(verify_certificate(&l, cur.moves.as_ref().unwrap(), &r, &caps).unwrap());
        }
        assert_eq!(cur.level, Level::R(5));
    }

    #[test]
    fn certificate_json() {
        let cert = EquivalenceCertificate::equivalent(Level::R(2), vec![Move::Lc { u: 1 }]);
        let v = serde_json::to_value(&cert).unwrap();
        assert_eq!(v["verdict"], "equivalent");
        assert_eq!(v["level"], 2);
        let back: EquivalenceCertificate = serde_json::from_value(v).unwrap();
        assert_eq!(back, cert);

        let cert = EquivalenceCertificate::not_equivalent(Level::Lu, Obstruction::OrbitExhausted { orbit_size: 3 });
        let v = serde_json::to_value(&cert).unwrap();
        assert_eq!(v["level"], "LU");
        assert_eq!(v["obstruction"]["kind"], "orbit-exhausted");
        assert!(v.get("moves").is_none());
        assert_eq!(serde_json::from_value::<EquivalenceCertificate>(v).unwrap(), cert);
    }
}
