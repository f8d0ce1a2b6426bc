//! Replayable moves and the rewriting of a graph into standard form.
//!
//! A graph is in standard form when no vertex has type Y and every neighbour
//! of a type-X vertex has type Z and a larger index.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::genlc::{apply_rlc, VertexMultiset};
use crate::graph::Graph;
use crate::localsets::{vertex_types, TypePartition, VertexType};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Move {
    Lc {
        u: usize,
    },
    Pivot {
        u: usize,
        v: usize,
    },
    Rlc {
        r: u32,
        #[serde(with = "crate::genlc::sparse_keys")]
        mult: BTreeMap<usize, u64>,
    },
}

impl Move {
    pub fn rlc(r: u32, s: &VertexMultiset) -> Self {
        Move::Rlc { r, mult: s.to_sparse() }
    }

    /// Applies the move, checking its precondition on `g`.
    pub fn apply(&self, g: &Graph, caps: &Caps) -> Result<Graph> {
        match self {
            Move::Lc { u } => g.local_complement(*u),
            Move::Pivot { u, v } => g.pivot(*u, *v),
            Move::Rlc { r, mult } => {
                let s = VertexMultiset::from_sparse(g.n(), mult)?;
                apply_rlc(g, &s, *r, caps)
            }
        }
    }
}

/// Applies `moves` in order; the first failing move is reported with its index.
pub fn replay(g: &Graph, moves: &[Move], caps: &Caps) -> Result<Graph> {
    let mut cur = g.clone();
    for (index, mv) in moves.iter().enumerate() {
        cur = mv.apply(&cur, caps).map_err(|e| Error::InvalidMove {
            index,
            reason: e.to_string(),
        })?;
    }
    Ok(cur)
}

/// Expands pivots into their three local complementations.
pub fn expand_pivots(moves: &[Move]) -> Vec<Move> {
    moves
        .iter()
        .flat_map(|m| match *m {
            Move::Pivot { u, v } => vec![Move::Lc { u }, Move::Lc { u: v }, Move::Lc { u }],
            ref other => vec![other.clone()],
        })
        .collect()
}

pub fn is_standard_form(g: &Graph, types: &TypePartition) -> bool {
    if types.n() != g.n() || types.count(VertexType::Y) > 0 {
        return false;
    }
    (0..g.n())
        .filter(|&u| types.get(u) == VertexType::X)
        .all(|u| g.nbrs(u).iter().all(|v| types.get(v) == VertexType::Z && u < v))
}

/// Types of `G⋆u` from the types of `G`.
pub fn update_types_lc(types: &TypePartition, g: &Graph, u: usize) -> Result<TypePartition> {
    use VertexType::*;
    let nbrs = g.neighbors(u)?;
    let mut out = types.clone();
    out.set(
        u,
        match types.get(u) {
            Y => Z,
            Z => Y,
            t => t,
        },
    );
    for v in &nbrs {
        out.set(
            v,
            match types.get(v) {
                X => Y,
                Y => X,
                t => t,
            },
        );
    }
    Ok(out)
}

/// Types of `G∧uv`: only `u` and `v` change.
pub fn update_types_pivot(types: &TypePartition, g: &Graph, u: usize, v: usize) -> Result<TypePartition> {
    use VertexType::*;
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if !g.has_edge(u, v) {
        return Err(Error::NotAnEdge { u, v });
    }
    let mut out = types.clone();
    for w in [u, v] {
        out.set(
            w,
            match types.get(w) {
                X => Z,
                Z => X,
                t => t,
            },
        );
    }
    Ok(out)
}

/// One action of the rewriting loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    /// Which rule fired, 1 to 5.
    pub step: u8,
    #[serde(rename = "move")]
    pub mv: Move,
    /// `2|V_Y| + |V_X|` before and after.
    pub measure_before: usize,
    pub measure_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardFormResult {
    pub graph: Graph,
    pub moves: Vec<Move>,
    pub types: TypePartition,
    pub steps: Vec<StepRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StandardFormOptions {
    /// Compare the table-updated types with a full recomputation after every action.
    pub check_every_step: bool,
    /// Recompute types once at the end and require agreement.
    pub check_final: bool,
}

impl Default for StandardFormOptions {
    fn default() -> Self {
        StandardFormOptions {
            check_every_step: false,
            check_final: true,
        }
    }
}

pub fn to_standard_form(g: &Graph, caps: &Caps) -> Result<StandardFormResult> {
    to_standard_form_with(g, caps, StandardFormOptions::default())
}

/// Smallest edge `(a, b)`, `a < b`, whose endpoint types satisfy `pred(t_a, t_b)`
/// in either orientation; returned as (first, second) in the orientation that matched.
fn find_edge(
    g: &Graph,
    types: &TypePartition,
    pred: impl Fn(usize, VertexType, usize, VertexType) -> bool,
) -> Option<(usize, usize)> {
    g.edges().find_map(|(a, b)| {
        let (ta, tb) = (types.get(a), types.get(b));
        if pred(a, ta, b, tb) {
            Some((a, b))
        } else if pred(b, tb, a, ta) {
            Some((b, a))
        } else {
            None
        }
    })
}

pub fn to_standard_form_with(g: &Graph, caps: &Caps, opts: StandardFormOptions) -> Result<StandardFormResult> {
    use VertexType::*;
    let mut types = vertex_types(g, caps)?;
    let mut cur = g.clone();
    let mut moves = Vec::new();
    let mut steps = Vec::new();

    loop {
        let before = types.measure();
        let (step, mv) = if let Some((u, v)) = find_edge(&cur, &types, |_, a, _, b| a == X && b == X) {
            (1, Move::Pivot { u, v })
        } else if let Some((x, _)) = find_edge(&cur, &types, |_, a, _, b| a == X && b == Y) {
            (2, Move::Lc { u: x })
        } else if let Some(y) = (0..cur.n()).find(|&u| types.get(u) == Y) {
            (3, Move::Lc { u: y })
        } else if let Some((x, b)) = find_edge(&cur, &types, |_, a, _, b| a == X && b == Bot) {
            (
                4,
                Move::Pivot {
                    u: x.min(b),
                    v: x.max(b),
                },
            )
        } else if let Some((x, z)) = find_edge(&cur, &types, |x, a, z, b| a == X && b == Z && z < x) {
            (5, Move::Pivot { u: z, v: x })
        } else {
            break;
        };

        let next_types = match mv {
            Move::Lc { u } => update_types_lc(&types, &cur, u)?,
            Move::Pivot { u, v } => update_types_pivot(&types, &cur, u, v)?,
            Move::Rlc { .. } => unreachable!("the rewriting loop only emits LC and pivots"),
        };
        cur = mv.apply(&cur, caps)?;
        let after = next_types.measure();
        if step <= 4 && after >= before {
            return Err(Error::Internal(format!(
                "step {step} did not decrease 2|V_Y|+|V_X| ({before} -> {after})"
            )));
        }
        if step == 5 {
            if let Move::Pivot { u: z, v: x } = mv {
                if !(next_types.get(z) == X && next_types.get(x) == Z && z < x) {
                    return Err(Error::Internal(format!(
                        "step 5 pivot on ({z}, {x}) did not lower an X vertex"
                    )));
                }
            }
        }
        if opts.check_every_step {
            let fresh = vertex_types(&cur, caps)?;
            if fresh != next_types {
                return Err(Error::Internal(format!(
                    "type tables disagree with recomputation after {mv:?}: {next_types:?} vs {fresh:?}"
                )));
            }
        }
        steps.push(StepRecord {
            step,
            mv: mv.clone(),
            measure_before: before,
            measure_after: after,
        });
        moves.push(mv);
        types = next_types;
    }

    if opts.check_final {
        let fresh = vertex_types(&cur, caps)?;
        if fresh != types {
            return Err(Error::Internal("final types disagree with recomputation".into()));
        }
    }
    if !is_standard_form(&cur, &types) {
        return Err(Error::Internal("rewriting loop ended outside standard form".into()));
    }
    Ok(StandardFormResult {
        graph: cur,
        moves,
        types,
        steps,
    })
}
