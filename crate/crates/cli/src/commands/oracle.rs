use std::f64::consts::FRAC_1_SQRT_2;

use glocal::genlc::apply_rlc;
use glocal::qoracle::{
    apply_gates, build_graph_state, lc_unitary, phase_deviation, pivot_unitary, project_qubit, rlc_unitary,
    stabilizer_deviation, ProjectionBasis, StateVector, TOL_END_TO_END, TOL_GATE,
};
use glocal::{fixtures, Caps, Graph, VertexMultiset, VertexSet};
use serde_json::{json, Value};

use super::{edge_diff, report};
use crate::input::{load_graph, parse_multiplicities, Stdin};
use crate::{BasisArg, Failure, OracleCheck, Outcome, RunConfig};

/// Exhaustive sweeps stop here: order 7 already has 2^21 graphs.
const EXHAUSTIVE_MAX_N: usize = 6;

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let mut g = Graph::empty(n);
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                g.set_edge(i, j, true);
            }
        }
        g
    })
}

fn sweep(caps: &Caps, n_max: usize) -> Result<impl Iterator<Item = Graph>, Failure> {
    if n_max > EXHAUSTIVE_MAX_N.min(caps.oracle_max_n) {
        return Err(Failure::Capped(format!(
            "exhaustive order {n_max} exceeds {}",
            EXHAUSTIVE_MAX_N.min(caps.oracle_max_n)
        )));
    }
    Ok((1..=n_max).flat_map(all_graphs))
}

/// Worst deviation seen; `None` once some pair could not be aligned at all.
struct Tally {
    cases: u64,
    worst: Option<f64>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            worst: Some(0.0),
        }
    }

    fn add(&mut self, dev: Option<f64>) {
        self.cases += 1;
        self.worst = match (self.worst, dev) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
    }

    fn finish(self, cfg: &RunConfig, check: &str, tol: f64, extra: Value) -> Result<Outcome, Failure> {
        let pass = self.worst.is_some_and(|w| w <= tol);
        let mut rep = json!({
            "check": check,
            "cases": self.cases,
            "max_deviation": self.worst,
            "tolerance": tol,
            "pass": pass,
        });
        if let (Value::Object(m), Value::Object(e)) = (&mut rep, extra) {
            m.extend(e);
        }
        report(cfg, &rep, if pass { 0 } else { 1 })
    }
}

fn graphs(
    cfg: &RunConfig,
    stdin: &mut Stdin,
    sweep_n: Option<usize>,
    graph: Option<&str>,
) -> Result<Vec<Graph>, Failure> {
    match (sweep_n, graph) {
        (Some(n), _) => Ok(sweep(&cfg.caps, n)?.collect()),
        (None, Some(arg)) => Ok(vec![load_graph(stdin, arg)?.graph]),
        (None, None) => Err(Failure::Usage("give a sweep size or --graph".into())),
    }
}

fn gate_deviation(
    caps: &Caps,
    g: &Graph,
    gates: &[glocal::qoracle::GateSpec],
    h: &Graph,
) -> Result<Option<f64>, Failure> {
    let out = apply_gates(&build_graph_state(g, caps)?, gates)?;
    Ok(phase_deviation(&out, &build_graph_state(h, caps)?))
}

/// Largest amplitude difference, with no phase freedom.
fn exact_deviation(a: &StateVector, b: &StateVector) -> f64 {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn oracle(cfg: &RunConfig, stdin: &mut Stdin, check: OracleCheck) -> Result<Outcome, Failure> {
    let caps = &cfg.caps;
    match check {
        OracleCheck::Stabilizers { n_max, graph } => {
            let mut t = Tally::new();
            for g in graphs(cfg, stdin, n_max, graph.as_deref())? {
                let n = g.n();
                if n > caps.oracle_max_n {
                    return Err(Failure::Capped(format!(
                        "order {n} exceeds oracle cap {}",
                        caps.oracle_max_n
                    )));
                }
                for mask in 1u64..1 << n {
                    t.add(Some(stabilizer_deviation(&g, &VertexSet::from_mask(n, mask), caps)?));
                }
            }
            t.finish(cfg, "stabilizers", cfg.tol.unwrap_or(TOL_GATE), json!({}))
        }
        OracleCheck::Lc { exhaustive, graph } => {
            let mut t = Tally::new();
            for g in graphs(cfg, stdin, exhaustive, graph.as_deref())? {
                for u in 0..g.n() {
                    t.add(gate_deviation(caps, &g, &lc_unitary(&g, u)?, &g.local_complement(u)?)?);
                }
            }
            t.finish(cfg, "lc", cfg.tol.unwrap_or(TOL_GATE), json!({}))
        }
        OracleCheck::Pivot { exhaustive, graph } => {
            let mut t = Tally::new();
            for g in graphs(cfg, stdin, exhaustive, graph.as_deref())? {
                for (u, v) in g.edges().collect::<Vec<_>>() {
                    t.add(gate_deviation(caps, &g, &pivot_unitary(&g, u, v)?, &g.pivot(u, v)?)?);
                }
            }
            t.finish(cfg, "pivot", cfg.tol.unwrap_or(TOL_GATE), json!({}))
        }
        OracleCheck::Rlc {
            fixture,
            graph,
            mult,
            r,
        } => {
            let tol = cfg.tol.unwrap_or(TOL_END_TO_END);
            let (g, labels, s, r, expected) = match (fixture, graph) {
                (Some(name), _) => {
                    let (lhs, rhs, entries): (_, _, &[(&str, u64)]) = match name.as_str() {
                        "fig2" => (fixtures::fig2_lhs(), fixtures::fig2_rhs(), &[("a", 1), ("b", 1)]),
                        "fig3" => (
                            fixtures::fig3_lhs(),
                            fixtures::fig3_rhs(),
                            &[("a", 2), ("b", 1), ("c", 1)],
                        ),
                        _ => {
                            return Err(Failure::Usage(format!(
                                "unknown r-LC fixture {name:?}; expected fig2 or fig3"
                            )))
                        }
                    };
                    let pairs = entries.iter().map(|&(l, c)| (lhs.vertex(l).expect("fixture label"), c));
                    let s = VertexMultiset::from_pairs(lhs.graph.n(), pairs)?;
                    (lhs.graph, Some(lhs.labels), s, 2, Some(rhs.graph))
                }
                (None, Some(arg)) => {
                    let input = load_graph(stdin, &arg)?;
                    let pairs = parse_multiplicities(mult.as_deref().unwrap_or_default())?;
                    let s = VertexMultiset::from_pairs(input.graph.n(), pairs)?;
                    (input.graph, input.labels, s, r.unwrap_or(1), None)
                }
                (None, None) => return Err(Failure::Usage("give --fixture or --graph".into())),
            };
            let h = apply_rlc(&g, &s, r, caps)?;
            let mut t = Tally::new();
            t.add(gate_deviation(caps, &g, &rlc_unitary(&g, &s, r, caps)?, &h)?);
            let name = |u: usize| labels.as_ref().map_or_else(|| u.to_string(), |l| l[u].clone());
            let toggled: Vec<String> = edge_diff(&g, &h)
                .into_iter()
                .map(|(u, v)| format!("{}{}", name(u), name(v)))
                .collect();
            let mut extra = json!({"r": r, "multiset": s.to_json(), "toggled": toggled});
            if let Some(e) = expected {
                let matches = e == h;
                extra["graph_match"] = json!(matches);
                if !matches {
                    t.worst = None;
                }
            }
            t.finish(cfg, "rlc", tol, extra)
        }
        OracleCheck::Project { graph, vertex, basis } => {
            let g = load_graph(stdin, &graph)?.graph;
            let state = build_graph_state(&g, caps)?;
            let vertices: Vec<usize> = match (vertex, basis) {
                (Some(u), _) if u >= g.n() => {
                    return Err(Failure::Data(format!("vertex {u} out of range for order {}", g.n())))
                }
                (Some(u), BasisArg::Xplus) if g.degree(u) > 0 => {
                    return Err(Failure::Data(format!(
                        "xplus projection needs an isolated vertex; {u} has neighbours"
                    )))
                }
                (Some(u), _) => vec![u],
                (None, BasisArg::Xplus) => (0..g.n()).filter(|&u| g.degree(u) == 0).collect(),
                (None, _) => (0..g.n()).collect(),
            };
            if vertices.is_empty() {
                return Err(Failure::Data(
                    "xplus projection needs an isolated vertex; the graph has none".into(),
                ));
            }
            let mut t = Tally::new();
            for u in vertices {
                let reduced = build_graph_state(&g.remove_vertex(u)?, caps)?;
                let none = VertexSet::empty(g.n() - 1);
                let (b, expected, weight) = match basis {
                    BasisArg::Z0 => (
                        ProjectionBasis::Z0,
                        reduced.apply_pauli(&none, &none, FRAC_1_SQRT_2),
                        0.5,
                    ),
                    BasisArg::Z1 => {
                        let nbrs = g.neighbors(u)?;
                        let zs =
                            VertexSet::from_vertices(g.n() - 1, nbrs.iter().map(|v| if v > u { v - 1 } else { v }));
                        (ProjectionBasis::Z1, reduced.apply_pauli(&none, &zs, FRAC_1_SQRT_2), 0.5)
                    }
                    BasisArg::Xplus => (ProjectionBasis::Xplus, reduced, 1.0),
                };
                let (p, w) = project_qubit(&state, u, b)?;
                t.add(Some(exact_deviation(&p, &expected).max((w - weight).abs())));
            }
            t.finish(cfg, "project", cfg.tol.unwrap_or(TOL_GATE), json!({}))
        }
    }
}
