//! Local Clifford operators as Pauli conjugation tables, and extraction of a
//! local complementation sequence from a local Clifford mapping one graph
//! state to another.

use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::qoracle::{GateKind, GateSpec};
use crate::standard::Move;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    /// `self · other = i^k · result`.
    fn mul(self, other: Pauli) -> (u8, Pauli) {
        use Pauli::*;
        let k = match (self, other) {
            (X, Y) | (Y, Z) | (Z, X) => 1,
            (Y, X) | (Z, Y) | (X, Z) => 3,
            _ => 0,
        };
        let (a, b) = (self.bits(), other.bits());
        (k, Pauli::from_bits(a.0 ^ b.0, a.1 ^ b.1))
    }

    fn commutes(self, other: Pauli) -> bool {
        self == Pauli::I || other == Pauli::I || self == other
    }

    fn matrix(self) -> [Complex64; 4] {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        match self {
            Pauli::I => [c(1., 0.), c(0., 0.), c(0., 0.), c(1., 0.)],
            Pauli::X => [c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)],
            Pauli::Y => [c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)],
            Pauli::Z => [c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedPauli {
    pub negative: bool,
    pub pauli: Pauli,
}

impl SignedPauli {
    pub const fn plus(pauli: Pauli) -> Self {
        SignedPauli { negative: false, pauli }
    }

    pub const fn minus(pauli: Pauli) -> Self {
        SignedPauli { negative: true, pauli }
    }
}

impl fmt::Display for SignedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { '-' } else { '+' };
        write!(f, "{sign}{:?}", self.pauli)
    }
}

impl std::str::FromStr for SignedPauli {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (negative, rest) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let pauli = match rest {
            "I" => Pauli::I,
            "X" => Pauli::X,
            "Y" => Pauli::Y,
            "Z" => Pauli::Z,
            _ => return Err(Error::Parse(format!("not a signed Pauli: {s}"))),
        };
        Ok(SignedPauli { negative, pauli })
    }
}

impl Serialize for SignedPauli {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignedPauli {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A single-qubit Clifford up to global phase, given by `C X C†` and `C Z C†`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SingleClifford {
    pub x: SignedPauli,
    pub z: SignedPauli,
}

impl SingleClifford {
    pub const IDENTITY: SingleClifford = SingleClifford {
        x: SignedPauli::plus(Pauli::X),
        z: SignedPauli::plus(Pauli::Z),
    };

    pub fn new(x: SignedPauli, z: SignedPauli) -> Result<Self> {
        if x.pauli == Pauli::I || z.pauli == Pauli::I || x.pauli.commutes(z.pauli) {
            return Err(Error::Precondition(format!(
                "images {x} and {z} must be anticommuting Paulis"
            )));
        }
        Ok(SingleClifford { x, z })
    }

    /// `C P C†` for a signed Pauli `P`.
    pub fn image(&self, p: SignedPauli) -> SignedPauli {
        let base = match p.pauli {
            Pauli::I => SignedPauli::plus(Pauli::I),
            Pauli::X => self.x,
            Pauli::Z => self.z,
            Pauli::Y => {
                // Y = i X Z, so C Y C† = i · C(X) · C(Z)
                let (k, r) = self.x.pauli.mul(self.z.pauli);
                let negative = self.x.negative ^ self.z.negative ^ ((1 + k) % 4 == 2);
                SignedPauli { negative, pauli: r }
            }
        };
        SignedPauli {
            negative: base.negative ^ p.negative,
            pauli: base.pauli,
        }
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn after(&self, inner: &SingleClifford) -> SingleClifford {
        SingleClifford {
            x: self.image(inner.x),
            z: self.image(inner.z),
        }
    }

    /// Reads the conjugation table off a 2x2 unitary; `None` if it is not Clifford.
    pub fn from_matrix(m: &[Complex64; 4]) -> Option<SingleClifford> {
        let mul = |p: &[Complex64; 4], q: &[Complex64; 4]| {
            [
                p[0] * q[0] + p[1] * q[2],
                p[0] * q[1] + p[1] * q[3],
                p[2] * q[0] + p[3] * q[2],
                p[2] * q[1] + p[3] * q[3],
            ]
        };
        let dagger = [m[0].conj(), m[2].conj(), m[1].conj(), m[3].conj()];
        let classify = |img: [Complex64; 4]| {
            for p in [Pauli::X, Pauli::Y, Pauli::Z] {
                for (negative, s) in [(false, 1.0), (true, -1.0)] {
                    let pm = p.matrix();
                    if (0..4).all(|i| (img[i] - pm[i] * s).norm() < 1e-9) {
                        return Some(SignedPauli { negative, pauli: p });
                    }
                }
            }
            None
        };
        let x = classify(mul(&mul(m, &Pauli::X.matrix()), &dagger))?;
        let z = classify(mul(&mul(m, &Pauli::Z.matrix()), &dagger))?;
        SingleClifford::new(x, z).ok()
    }

    pub fn from_gate(g: &GateSpec) -> Option<SingleClifford> {
        SingleClifford::from_matrix(&g.matrix())
    }

    /// `C Z C†` is `±Z`.
    pub fn keeps_z(&self) -> bool {
        self.z.pauli == Pauli::Z
    }

    /// A word over `H` and `S = Z(π/2)` realising this Clifford up to phase,
    /// in application order.
    pub fn gate_word(&self) -> &'static [GateKind] {
        let table = word_table();
        &table
            .iter()
            .find(|(c, _)| c == self)
            .expect("all 24 single-qubit Cliffords are reachable")
            .1
    }
}

/// The 24 single-qubit Cliffords with shortest `{H, S}` words, found by BFS.
fn word_table() -> &'static Vec<(SingleClifford, Vec<GateKind>)> {
    static TABLE: OnceLock<Vec<(SingleClifford, Vec<GateKind>)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let h = SingleClifford::from_gate(&GateSpec::h(0)).expect("H is Clifford");
        let s = SingleClifford::from_gate(&GateSpec::z(0, PI / 2.0)).expect("S is Clifford");
        let mut table = vec![(SingleClifford::IDENTITY, Vec::new())];
        let mut i = 0;
        while i < table.len() {
            let (c, word) = table[i].clone();
            for (gen, kind) in [(h, GateKind::H), (s, GateKind::Zrot)] {
                let next = gen.after(&c);
                if !table.iter().any(|(d, _)| *d == next) {
                    let mut w = word.clone();
                    w.push(kind);
                    table.push((next, w));
                }
            }
            i += 1;
        }
        debug_assert_eq!(table.len(), 24);
        table
    })
}

/// Tensor product of single-qubit Cliffords, up to global phase.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalCliffordOp {
    pub ops: Vec<SingleClifford>,
}

impl LocalCliffordOp {
    pub fn identity(n: usize) -> Self {
        LocalCliffordOp {
            ops: vec![SingleClifford::IDENTITY; n],
        }
    }

    pub fn n(&self) -> usize {
        self.ops.len()
    }

    /// Product of gates applied in list order. Non-Clifford gates are rejected.
    pub fn from_gates(n: usize, gates: &[GateSpec]) -> Result<Self> {
        let mut op = Self::identity(n);
        for g in gates {
            if g.qubit >= n {
                return Err(Error::VertexOutOfRange { vertex: g.qubit, n });
            }
            let c = SingleClifford::from_gate(g)
                .ok_or_else(|| Error::Precondition(format!("gate {g:?} is not a Clifford")))?;
            op.ops[g.qubit] = c.after(&op.ops[g.qubit]);
        }
        Ok(op)
    }

    /// `L_u^G = X_u(π/2) ⊗ Z_{N(u)}(-π/2)`.
    pub fn lc(g: &Graph, u: usize) -> Result<Self> {
        Self::from_gates(g.n(), &crate::qoracle::lc_unitary(g, u)?)
    }

    /// `other ∘ self`: apply `self`, then `other`.
    pub fn then(&self, other: &LocalCliffordOp) -> LocalCliffordOp {
        LocalCliffordOp {
            ops: self.ops.iter().zip(&other.ops).map(|(a, b)| b.after(a)).collect(),
        }
    }

    /// Number of qubits whose `Z` is not mapped to `±Z`.
    pub fn zweight(&self) -> usize {
        self.ops.iter().filter(|c| !c.keeps_z()).count()
    }

    /// Gates realising the operator up to global phase.
    pub fn to_gates(&self) -> Vec<GateSpec> {
        let mut gates = Vec::new();
        for (q, c) in self.ops.iter().enumerate() {
            for kind in c.gate_word() {
                gates.push(match kind {
                    GateKind::H => GateSpec::h(q),
                    _ => GateSpec::z(q, PI / 2.0),
                });
            }
        }
        gates
    }

    /// The operator induced by replaying local complementations and pivots from `g`.
    pub fn from_moves(g: &Graph, moves: &[Move]) -> Result<Self> {
        let mut op = Self::identity(g.n());
        let mut cur = g.clone();
        for (index, m) in crate::standard::expand_pivots(moves).iter().enumerate() {
            match *m {
                Move::Lc { u } => {
                    op = op.then(&Self::lc(&cur, u)?);
                    cur.local_complement_in_place(u);
                }
                _ => {
                    return Err(Error::InvalidMove {
                        index,
                        reason: "only local complementations and pivots induce a Clifford here".into(),
                    })
                }
            }
        }
        Ok(op)
    }
}

fn check_order(g: &Graph, c: &LocalCliffordOp) -> Result<()> {
    if g.n() != c.n() {
        return Err(Error::OrderMismatch(g.n(), c.n()));
    }
    Ok(())
}

/// The graph whose stabilizer group is the image of `G`'s under `c`, ignoring signs.
/// Fails when the image is not the stabilizer group of a graph state.
pub fn target_graph(g: &Graph, c: &LocalCliffordOp) -> Result<Graph> {
    check_order(g, c)?;
    let n = g.n();
    // rows of [X | Z] for the conjugated generators X_u Z_{N(u)}
    let mut xs: Vec<VertexSet> = Vec::with_capacity(n);
    let mut zs: Vec<VertexSet> = Vec::with_capacity(n);
    for u in 0..n {
        let (mut x, mut z) = (g.empty_set(), g.empty_set());
        for w in 0..n {
            let p = if w == u {
                Pauli::X
            } else if g.has_edge(u, w) {
                Pauli::Z
            } else {
                continue;
            };
            let (bx, bz) = c.ops[w].image(SignedPauli::plus(p)).pauli.bits();
            if bx {
                x.insert(w);
            }
            if bz {
                z.insert(w);
            }
        }
        xs.push(x);
        zs.push(z);
    }
    // Gauss-Jordan on the X block, mirrored on the Z block
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| xs[r].contains(col))
            .ok_or_else(|| Error::Precondition("image stabilizer has a singular X block; not a graph state".into()))?;
        xs.swap(col, pivot);
        zs.swap(col, pivot);
        for r in 0..n {
            if r != col && xs[r].contains(col) {
                let (xr, zr) = (xs[col].clone(), zs[col].clone());
                xs[r].symmetric_difference_with(&xr);
                zs[r].symmetric_difference_with(&zr);
            }
        }
    }
    let mut out = Graph::empty(n);
    for u in 0..n {
        if zs[u].contains(u) {
            return Err(Error::Precondition(format!(
                "image stabilizer has Y on qubit {u}; not a graph state"
            )));
        }
        for v in &zs[u] {
            if !zs[v].contains(u) {
                return Err(Error::Precondition(
                    "image stabilizer is not symmetric; not a graph state".into(),
                ));
            }
            if u < v {
                out.set_edge(u, v, true);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extraction {
    /// Local complementations taking `G1` to `target`, in application order.
    pub moves: Vec<Move>,
    pub target: Graph,
    /// Z-weight of the input operator.
    pub zweight: usize,
}

/// Z-weight induction: finds at most `⌊3n/2⌋` local complementations from `g1`
/// whose induced Clifford equals `c` up to a Pauli operator.
pub fn extract_lc_sequence(g1: &Graph, c: &LocalCliffordOp) -> Result<Extraction> {
    let target = target_graph(g1, c)?;
    let n = g1.n();
    let zweight = c.zweight();
    let mut cur_c = c.clone();
    let mut cur_g = target.clone();
    // outermost move first
    let mut pushed: Vec<usize> = Vec::new();
    loop {
        let y_like = (0..n).find(|&u| cur_c.ops[u].z.pauli == Pauli::Y);
        if let Some(u) = y_like {
            cur_c = cur_c.then(&LocalCliffordOp::lc(&cur_g, u)?);
            cur_g.local_complement_in_place(u);
            pushed.push(u);
            continue;
        }
        let x_like = (0..n).find(|&u| cur_c.ops[u].z.pauli == Pauli::X);
        if let Some(u) = x_like {
            let v = cur_g
                .nbrs(u)
                .iter()
                .find(|&v| !cur_c.ops[v].keeps_z())
                .ok_or_else(|| Error::Precondition(format!("no neighbour of {u} with non-zero Z-weight")))?;
            let common = cur_g.common_neighborhood(&cur_g.set_of([u, v]))?;
            let mut gates: Vec<GateSpec> = common.iter().map(|w| GateSpec::pauli(GateKind::PauliZ, w)).collect();
            gates.push(GateSpec::h(u));
            gates.push(GateSpec::h(v));
            cur_c = cur_c.then(&LocalCliffordOp::from_gates(n, &gates)?);
            cur_g = cur_g.pivot(u, v)?;
            pushed.extend([u, v, u]);
            continue;
        }
        break;
    }
    if cur_g != *g1 {
        return Err(Error::Precondition(
            "operator does not map the graph state to a graph state reachable by local complementation".into(),
        ));
    }
    if pushed.len() > 3 * n / 2 {
        return Err(Error::Internal(format!("extracted {} moves for n = {n}", pushed.len())));
    }
    let moves = pushed.into_iter().rev().map(|u| Move::Lc { u }).collect();
    Ok(Extraction { moves, target, zweight })
}

/// Appends pairs `⋆u ⋆u` (each inducing the stabilizer `X_u Z_{N(u)}`) so that the
/// induced Clifford equals `c` up to global phase. The total stays within `⌊7n/2⌋`.
pub fn clear_pauli(g1: &Graph, c: &LocalCliffordOp, extraction: &Extraction) -> Result<Vec<Move>> {
    check_order(g1, c)?;
    let n = g1.n();
    let induced = LocalCliffordOp::from_moves(g1, &extraction.moves)?;
    let (mut px, mut pz) = (g1.empty_set(), g1.empty_set());
    for q in 0..n {
        let (want, have) = (c.ops[q], induced.ops[q]);
        if want.x.pauli != have.x.pauli || want.z.pauli != have.z.pauli {
            return Err(Error::Precondition(format!("qubit {q} differs by more than a Pauli")));
        }
        // P anticommutes with have(X) iff the X image flips sign; same for Z
        let flip_x = want.x.negative != have.x.negative;
        let flip_z = want.z.negative != have.z.negative;
        let p = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z]
            .into_iter()
            .find(|p| p.commutes(have.x.pauli) != flip_x && p.commutes(have.z.pauli) != flip_z)
            .expect("two anticommuting images fix the Pauli");
        let (bx, bz) = p.bits();
        if bx {
            px.insert(q);
        }
        if bz {
            pz.insert(q);
        }
    }
    if extraction.target.odd_neighborhood(&px)? != pz {
        return Err(Error::Precondition(
            "residual Pauli is not a stabilizer of the target".into(),
        ));
    }
    let mut moves = extraction.moves.clone();
    for u in &px {
        moves.push(Move::Lc { u });
        moves.push(Move::Lc { u });
    }
    if moves.len() > 7 * n / 2 {
        return Err(Error::Internal(format!(
            "{} moves after Pauli clearing for n = {n}",
            moves.len()
        )));
    }
    Ok(moves)
}
