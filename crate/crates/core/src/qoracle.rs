//! Dense statevector oracle for small graph states.
//!
//! Basis index bit `i` is the value of qubit (vertex) `i`; vertex 0 is the
//! least significant bit. Rotations follow `Z(α) = diag(1, e^{iα})` and
//! `X(α) = H Z(α) H`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::caps::Caps;
use crate::error::{cap, Error, Result};
use crate::genlc::{is_r_incident, VertexMultiset};
use crate::graph::Graph;

/// Hard ceiling regardless of caps: 2^20 amplitudes is 16 MiB.
pub const ORACLE_HARD_LIMIT: usize = 20;

/// Default tolerance for end-to-end comparisons.
pub const TOL_END_TO_END: f64 = 1e-9;
/// Default tolerance for single-gate and stabilizer checks.
pub const TOL_GATE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GateKind {
    H,
    Zrot,
    Xrot,
    PauliX,
    PauliY,
    PauliZ,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateSpec {
    pub kind: GateKind,
    pub qubit: usize,
    /// Rotation angle in radians; ignored by the fixed gates.
    #[serde(default)]
    pub alpha: f64,
}

impl GateSpec {
    pub fn h(qubit: usize) -> Self {
        GateSpec {
            kind: GateKind::H,
            qubit,
            alpha: 0.0,
        }
    }
    pub fn z(qubit: usize, alpha: f64) -> Self {
        GateSpec {
            kind: GateKind::Zrot,
            qubit,
            alpha,
        }
    }
    pub fn x(qubit: usize, alpha: f64) -> Self {
        GateSpec {
            kind: GateKind::Xrot,
            qubit,
            alpha,
        }
    }
    pub fn pauli(kind: GateKind, qubit: usize) -> Self {
        GateSpec {
            kind,
            qubit,
            alpha: 0.0,
        }
    }

    /// Row-major 2x2 matrix.
    pub fn matrix(&self) -> [Complex64; 4] {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let (zero, one) = (c(0.0, 0.0), c(1.0, 0.0));
        match self.kind {
            GateKind::H => {
                let h = c(FRAC_1_SQRT_2, 0.0);
                [h, h, h, -h]
            }
            GateKind::Zrot => [one, zero, zero, Complex64::from_polar(1.0, self.alpha)],
            GateKind::Xrot => {
                let e = Complex64::from_polar(1.0, self.alpha);
                let p = (one + e) * 0.5;
                let m = (one - e) * 0.5;
                [p, m, m, p]
            }
            GateKind::PauliX => [zero, one, one, zero],
            GateKind::PauliY => [zero, c(0.0, -1.0), c(0.0, 1.0), zero],
            GateKind::PauliZ => [one, zero, zero, -one],
        }
    }
}

fn check_order(n: usize, caps: &Caps) -> Result<()> {
    let limit = caps.oracle_max_n.min(ORACLE_HARD_LIMIT);
    if n > limit {
        return Err(cap("statevector qubits", n, limit));
    }
    Ok(())
}

impl StateVector {
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1usize << n {
            return Err(Error::Precondition(format!("{} amplitudes for {n} qubits", amps.len())));
        }
        Ok(StateVector { n, amps })
    }

    /// `|0...0⟩`.
    pub fn zero(n: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        StateVector { n, amps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        StateVector {
            n: self.n,
            amps: self.amps.iter().map(|a| a * factor).collect(),
        }
    }

    fn apply_matrix(&mut self, q: usize, m: &[Complex64; 4]) {
        let bit = 1usize << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (x0, x1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = m[0] * x0 + m[1] * x1;
                self.amps[i | bit] = m[2] * x0 + m[3] * x1;
            }
        }
    }

    /// `sign · X_xs Z_zs` applied to the state (Z first).
    pub fn apply_pauli(&self, xs: &VertexSet, zs: &VertexSet, sign: f64) -> Self {
        let (xm, zm) = (set_mask(xs), set_mask(zs));
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            let z_sign = if (i & zm).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            out[i ^ xm] = a * (sign * z_sign);
        }
        StateVector { n: self.n, amps: out }
    }

    /// Little-endian `(re, im)` f64 pairs.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.amps.len() * 16);
        for a in &self.amps {
            out.extend_from_slice(&a.re.to_le_bytes());
            out.extend_from_slice(&a.im.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(n: usize, bytes: &[u8]) -> Result<Self> {
        if bytes.len() != (1usize << n) * 16 {
            return Err(Error::Parse(format!(
                "state dump has {} bytes for {n} qubits",
                bytes.len()
            )));
        }
        let f = |c: &[u8]| f64::from_le_bytes(c.try_into().expect("8-byte chunk"));
        let amps = bytes
            .chunks_exact(16)
            .map(|c| Complex64::new(f(&c[..8]), f(&c[8..])))
            .collect();
        Ok(StateVector { n, amps })
    }

    pub fn dump_header(&self) -> StateHeader {
        StateHeader {
            n: self.n,
            convention: "v0-lsb".into(),
        }
    }
}

/// JSON header accompanying a binary state dump.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateHeader {
    pub n: usize,
    pub convention: String,
}

fn set_mask(s: &VertexSet) -> usize {
    s.iter().fold(0usize, |acc, v| acc | 1 << v)
}

/// `|G⟩ = 2^{-n/2} Σ_x (-1)^{|G[x]|} |x⟩`.
pub fn build_graph_state(g: &Graph, caps: &Caps) -> Result<StateVector> {
    let n = g.n();
    check_order(n, caps)?;
    // parity[x] = |G[x]| mod 2, built by adding the top vertex of x
    let mut parity = vec![false; 1 << n];
    let rows: Vec<usize> = (0..n).map(|u| g.row_mask(u) as usize).collect();
    for x in 1usize..(1 << n) {
        let top = usize::BITS as usize - 1 - x.leading_zeros() as usize;
        let rest = x ^ (1 << top);
        parity[x] = parity[rest] ^ ((rows[top] & rest).count_ones() % 2 == 1);
    }
    let a = (0.5f64).powf(n as f64 / 2.0);
    let amps = parity
        .into_iter()
        .map(|odd| Complex64::new(if odd { -a } else { a }, 0.0))
        .collect();
    Ok(StateVector { n, amps })
}

pub fn apply_gates(state: &StateVector, gates: &[GateSpec]) -> Result<StateVector> {
    let mut out = state.clone();
    for g in gates {
        if g.qubit >= state.n {
            return Err(Error::VertexOutOfRange {
                vertex: g.qubit,
                n: state.n,
            });
        }
        out.apply_matrix(g.qubit, &g.matrix());
    }
    Ok(out)
}

/// `max_j |s1_j - e^{iφ} s2_j|` with `φ` fixed at the largest amplitude of `s2`.
/// `None` when the qubit counts differ.
pub fn phase_deviation(s1: &StateVector, s2: &StateVector) -> Option<f64> {
    if s1.n != s2.n {
        return None;
    }
    let (k, _) = s2.amps.iter().enumerate().fold(
        (0, -1.0),
        |best, (i, a)| if a.norm() > best.1 { (i, a.norm()) } else { best },
    );
    let phase = if s2.amps[k].norm() > 0.0 && s1.amps[k].norm() > 0.0 {
        let q = s1.amps[k] / s2.amps[k];
        q / q.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    Some(
        s1.amps
            .iter()
            .zip(&s2.amps)
            .map(|(a, b)| (a - phase * b).norm())
            .fold(0.0, f64::max),
    )
}

/// `s1 = e^{iφ} s2` within `tol` (inclusive).
pub fn equal_up_to_phase(s1: &StateVector, s2: &StateVector, tol: f64) -> bool {
    phase_deviation(s1, s2).is_some_and(|d| d <= tol)
}

/// Deviation between `|G⟩` and `(-1)^{|G[D]|} X_D Z_{Odd(D)} |G⟩`.
pub fn stabilizer_deviation(g: &Graph, d: &VertexSet, caps: &Caps) -> Result<f64> {
    if d.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    let state = build_graph_state(g, caps)?;
    let odd = g.odd_neighborhood(d)?;
    let sign = if g.induced_edge_count(d)? % 2 == 0 { 1.0 } else { -1.0 };
    let image = state.apply_pauli(d, &odd, sign);
    Ok(state
        .amps
        .iter()
        .zip(&image.amps)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max))
}

pub fn stabilizer_check(g: &Graph, d: &VertexSet, caps: &Caps) -> Result<bool> {
    Ok(stabilizer_deviation(g, d, caps)? <= TOL_GATE)
}

/// `X_u(π/2) ⊗ Z_{N(u)}(-π/2)`, mapping `|G⟩` to `|G⋆u⟩` up to phase.
pub fn lc_unitary(g: &Graph, u: usize) -> Result<Vec<GateSpec>> {
    let nbrs = g.neighbors(u)?;
    let mut gates = vec![GateSpec::x(u, PI / 2.0)];
    gates.extend(nbrs.iter().map(|v| GateSpec::z(v, -PI / 2.0)));
    Ok(gates)
}

/// `H_u H_v Z_{Λ^{u,v}}`, the Z layer applied first; maps `|G⟩` to `|G∧uv⟩`.
pub fn pivot_unitary(g: &Graph, u: usize, v: usize) -> Result<Vec<GateSpec>> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if !g.has_edge(u, v) {
        return Err(Error::NotAnEdge { u, v });
    }
    let common = g.common_neighborhood(&g.set_of([u, v]))?;
    let mut gates: Vec<GateSpec> = common.iter().map(|w| GateSpec::pauli(GateKind::PauliZ, w)).collect();
    gates.push(GateSpec::h(u));
    gates.push(GateSpec::h(v));
    Ok(gates)
}

/// Angle `m·π/2^r` reduced into `[0, 2π)` exactly on the integer side.
fn dyadic_angle(m: u128, r: u32) -> f64 {
    let period = 1u128 << (r + 1);
    (m % period) as f64 * PI / (1u128 << r) as f64
}

/// `⊗_u X(S(u)π/2^r) ⊗_v Z(-(π/2^r) Σ_{u∈N(v)} S(u))`.
pub fn rlc_unitary(g: &Graph, s: &VertexMultiset, r: u32, caps: &Caps) -> Result<Vec<GateSpec>> {
    if !is_r_incident(g, s, r, caps)?.ok {
        return Err(Error::NotIncident { r });
    }
    let period = 1u128 << (r + 1);
    let mut gates = Vec::new();
    for u in 0..g.n() {
        if s.get(u) > 0 {
            gates.push(GateSpec::x(u, dyadic_angle(s.get(u) as u128, r)));
        }
    }
    for v in 0..g.n() {
        let total = s.dot(&g.nbrs(v)) % period;
        if total > 0 {
            gates.push(GateSpec::z(v, dyadic_angle(period - total, r)));
        }
    }
    Ok(gates)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProjectionBasis {
    Z0,
    Z1,
    Xplus,
}

/// `⟨b_u|ψ⟩` on the remaining qubits (order kept, `u` removed) and its squared norm.
pub fn project_qubit(state: &StateVector, u: usize, basis: ProjectionBasis) -> Result<(StateVector, f64)> {
    if u >= state.n {
        return Err(Error::VertexOutOfRange { vertex: u, n: state.n });
    }
    let low = (1usize << u) - 1;
    let m = state.n - 1;
    let mut amps = Vec::with_capacity(1 << m);
    for j in 0..(1usize << m) {
        let i0 = (j & low) | ((j & !low) << 1);
        let i1 = i0 | 1 << u;
        amps.push(match basis {
            ProjectionBasis::Z0 => state.amps[i0],
            ProjectionBasis::Z1 => state.amps[i1],
            ProjectionBasis::Xplus => (state.amps[i0] + state.amps[i1]) * FRAC_1_SQRT_2,
        });
    }
    let out = StateVector { n: m, amps };
    let weight = out.norm().powi(2);
    Ok((out, weight))
}

/// Rotation angles on the X side (`alpha`) and Z side (`beta`) of a pair.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct AngleAssignment {
    pub alpha: BTreeMap<usize, f64>,
    pub beta: BTreeMap<usize, f64>,
}

impl AngleAssignment {
    /// `α_u = S(u)π/2^r` on `x_side`, `β_v = -(π/2^r) Σ_{u∈N(v)∩x_side} S(u)` on `z_side`.
    pub fn from_witness(g: &Graph, x_side: &VertexSet, z_side: &VertexSet, s: &VertexMultiset, r: u32) -> Self {
        let period = 1u128 << (r + 1);
        let alpha = x_side.iter().map(|u| (u, dyadic_angle(s.get(u) as u128, r))).collect();
        let beta = z_side
            .iter()
            .map(|v| {
                let total = s.dot(&g.nbrs(v).intersection(x_side)) % period;
                (v, dyadic_angle((period - total) % period, r))
            })
            .collect();
        AngleAssignment { alpha, beta }
    }

    pub fn gates(&self) -> Vec<GateSpec> {
        let xs = self.alpha.iter().map(|(&u, &a)| GateSpec::x(u, a));
        let zs = self.beta.iter().map(|(&v, &b)| GateSpec::z(v, b));
        xs.chain(zs).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleReport {
    /// Statevector match of the rotated `|G1⟩` against `|G2⟩`.
    pub state_ok: bool,
    pub deviation: f64,
    /// `β_v = -Σ_{u∈N(v)} α_u mod 2π` for every `v` on the Z side.
    pub beta_ok: bool,
    /// `Σ_{u∈Λ^K} α_u = 0 mod π/2^{k+δ(k)}` for every `K` on the Z side with `|K| = k + 2`.
    pub common_ok: bool,
    pub pass: bool,
}

fn near_multiple(x: f64, modulus: f64, tol: f64) -> bool {
    let r = x.rem_euclid(modulus);
    r.min(modulus - r) <= tol
}

/// Checks the rotation layer of `assignment` maps `|G1⟩` to `|G2⟩` and that the
/// angles satisfy the two linear constraints. The X and Z sides are the key sets of
/// `alpha` and `beta`.
pub fn angle_constraint_check(
    g1: &Graph,
    g2: &Graph,
    assignment: &AngleAssignment,
    tol: f64,
    caps: &Caps,
) -> Result<AngleReport> {
    if g1.n() != g2.n() {
        return Err(Error::OrderMismatch(g1.n(), g2.n()));
    }
    for &u in assignment.alpha.keys().chain(assignment.beta.keys()) {
        g1.check_vertex(u)?;
    }
    let s1 = apply_gates(&build_graph_state(g1, caps)?, &assignment.gates())?;
    let s2 = build_graph_state(g2, caps)?;
    let deviation = phase_deviation(&s1, &s2).expect("same order");
    let state_ok = deviation <= tol;

    let x_side = g1.set_of(assignment.alpha.keys().copied());
    let alpha_sum = |set: &VertexSet| -> f64 { set.intersection(&x_side).iter().map(|u| assignment.alpha[&u]).sum() };
    let beta_ok = assignment
        .beta
        .iter()
        .all(|(&v, &b)| near_multiple(b + alpha_sum(&g1.nbrs(v)), 2.0 * PI, tol));

    let z_side: Vec<usize> = assignment.beta.keys().copied().collect();
    let mut common_ok = true;
    let mut stack: Vec<(usize, VertexSet, usize)> = vec![(0, x_side.clone(), 0)];
    while let Some((start, common, size)) = stack.pop() {
        for (i, &v) in z_side.iter().enumerate().skip(start) {
            let next = common.intersection(&g1.nbrs(v));
            if next.is_empty() {
                continue;
            }
            let size = size + 1;
            if size >= 2 {
                let k = (size - 2) as i32;
                let modulus = PI / 2f64.powi(k + i32::from(k == 0));
                if !near_multiple(alpha_sum(&next), modulus, tol) {
                    common_ok = false;
                }
            }
            stack.push((i + 1, next, size));
        }
    }
    Ok(AngleReport {
        state_ok,
        deviation,
        beta_ok,
        common_ok,
        pass: state_ok && beta_ok && common_ok,
    })
}
