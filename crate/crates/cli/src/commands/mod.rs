mod oracle;

use glocal::equivalence::{decide_at_level, verify_certificate};
use glocal::families::{
    binomial, check_obstruction, gen_family, gen_repeater, hierarchy_params, search_hierarchy_pair, v2_binomial,
};
use glocal::genlc::{apply_rlc, is_r_incident};
use glocal::localsets::{enumerate_mls, types_from_mls};
use glocal::random::random_graph;
use glocal::standard::is_standard_form;
use glocal::{fixtures, Caps, Error, FamilySpec, Graph, Level, Move, RepeaterKind, Verdict, VertexMultiset, VertexSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::input::{load_graph, parse_vertex_list, read_text, single_stdin, Stdin};
use crate::{output, Failure, GenKind, Outcome, RepeaterArg, RunConfig};

pub use oracle::oracle;

fn report(cfg: &RunConfig, value: &Value, code: u8) -> Result<Outcome, Failure> {
    Ok(Outcome {
        stdout: output::report(value, cfg.format)?,
        code,
    })
}

fn edge_diff(a: &Graph, b: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for v in 1..a.n() {
        for u in 0..v {
            if a.has_edge(u, v) != b.has_edge(u, v) {
                out.push((u, v));
            }
        }
    }
    out
}

pub fn gen(cfg: &RunConfig, kind: GenKind) -> Result<Outcome, Failure> {
    let limit = cfg.caps.family_max_vertices;
    let (g, labels) = match kind {
        GenKind::Family { t, k, variant } => {
            let spec = FamilySpec { t, k, variant };
            (gen_family(&spec, limit)?, Some(spec.labels()))
        }
        GenKind::Repeater { kind, n } => {
            let kind = match kind {
                RepeaterArg::Complete => RepeaterKind::Complete,
                RepeaterArg::Biclique => RepeaterKind::Biclique,
            };
            (gen_repeater(kind, n)?, None)
        }
        GenKind::Random { n, p } => {
            if n > limit {
                return Err(Failure::Capped(format!("random graph order {n} exceeds {limit}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            (random_graph(&mut rng, n, p), None)
        }
        GenKind::Fixture { name } => {
            let f = fixtures::by_name(&name).ok_or_else(|| {
                Failure::Data(format!(
                    "unknown fixture {name:?}; known: {}",
                    fixtures::NAMES.join(", ")
                ))
            })?;
            (f.graph, Some(f.labels))
        }
    };
    Ok(Outcome {
        stdout: output::graph(&g, labels.as_deref(), cfg.format)?,
        code: 0,
    })
}

fn move_failure(i: usize, e: Error) -> Failure {
    match e {
        Error::CapExceeded { .. } => Failure::Capped(format!("move #{i}: {e}")),
        Error::InvalidMove { .. } => Failure::Negative(e.to_string()),
        e => Failure::Negative(format!("invalid move #{i}: {e}")),
    }
}

pub fn apply(cfg: &RunConfig, stdin: &mut Stdin, graph: &str, moves: &str, verify: bool) -> Result<Outcome, Failure> {
    single_stdin(&[graph, moves])?;
    let input = load_graph(stdin, graph)?;
    let text = read_text(stdin, moves)?;
    let moves: Vec<Move> = serde_json::from_str(&text).map_err(|e| Failure::Data(format!("moves: {e}")))?;
    let caps = &cfg.caps;
    let mut cur = input.graph;
    for (i, m) in moves.iter().enumerate() {
        let rlc = match m {
            Move::Rlc { r, mult } if verify => {
                let s = VertexMultiset::from_sparse(cur.n(), mult).map_err(|e| move_failure(i, e))?;
                let rep = is_r_incident(&cur, &s, *r, caps).map_err(|e| move_failure(i, e))?;
                if !rep.ok {
                    let first = serde_json::to_string(&rep.violations[0]).expect("violation serialises");
                    return Err(Failure::Negative(format!(
                        "invalid move #{i}: not {r}-incident ({} violations, first {first})",
                        rep.violations.len()
                    )));
                }
                Some((*r, s, rep.checked))
            }
            _ => None,
        };
        let next = m.apply(&cur, caps).map_err(|e| move_failure(i, e))?;
        if let Some((r, s, checked)) = rlc {
            if !is_r_incident(&next, &s, r, caps).map_err(|e| move_failure(i, e))?.ok {
                return Err(Failure::Internal(format!("move #{i}: result is not {r}-incident")));
            }
            eprintln!(
                "move #{i}: {r}-incident over {:?} ({checked} sets checked), {} pairs toggled",
                s.support().to_vec(),
                edge_diff(&cur, &next).len()
            );
        }
        cur = next;
    }
    Ok(Outcome {
        stdout: output::graph(&cur, input.labels.as_deref(), cfg.format)?,
        code: 0,
    })
}

pub fn analyze(cfg: &RunConfig, stdin: &mut Stdin, graph: &str, cuts: &[String]) -> Result<Outcome, Failure> {
    let input = load_graph(stdin, graph)?;
    let g = &input.graph;
    let mut capped = Vec::new();
    let (mls, count, types, standard) = match enumerate_mls(g, &cfg.caps) {
        Ok(records) => {
            let types = types_from_mls(g, &records)?;
            let standard = is_standard_form(g, &types);
            let list: Vec<Value> = records
                .iter()
                .map(|rec| {
                    let mut v = serde_json::to_value(rec).expect("record serialises");
                    if let Some(l) = &input.labels {
                        v["set_labels"] = json!(rec.set.iter().map(|u| l[u].as_str()).collect::<Vec<_>>());
                    }
                    v
                })
                .collect();
            (json!(list), json!(records.len()), json!(types), json!(standard))
        }
        Err(e @ Error::CapExceeded { .. }) => {
            for field in ["mls", "types", "standard_form"] {
                capped.push(json!({"field": field, "reason": e.to_string()}));
            }
            (Value::Null, Value::Null, Value::Null, Value::Null)
        }
        Err(e) => return Err(e.into()),
    };
    let mut cut_reports = Vec::new();
    for c in cuts {
        let list = parse_vertex_list(c)?;
        if let Some(&v) = list.iter().find(|&&v| v >= g.n()) {
            return Err(Failure::Data(format!(
                "cut vertex {v} out of range for order {}",
                g.n()
            )));
        }
        cut_reports.push(json!(g.cut_rank(&VertexSet::from_vertices(g.n(), list))?));
    }
    let mut rep = json!({
        "n": g.n(),
        "edges": g.edge_count(),
        "mls": mls,
        "mls_count": count,
        "types": types,
        "standard_form": standard,
        "cuts": cut_reports,
        "capped": capped,
    });
    if let Some(l) = &input.labels {
        rep["labels"] = json!(l);
    }
    report(cfg, &rep, if capped.is_empty() { 0 } else { 2 })
}

pub fn equiv(cfg: &RunConfig, stdin: &mut Stdin, g1: &str, g2: &str, level: Level) -> Result<Outcome, Failure> {
    single_stdin(&[g1, g2])?;
    let a = load_graph(stdin, g1)?.graph;
    let b = load_graph(stdin, g2)?.graph;
    let cert = decide_at_level(&a, &b, level, &cfg.caps)?;
    if cert.verdict == Verdict::Equivalent {
        let moves = cert.moves.as_deref().unwrap_or_default();
        if !verify_certificate(&a, moves, &b, &cfg.caps)? {
            return Err(Failure::Internal("certificate does not replay".into()));
        }
    }
    let value = serde_json::to_value(&cert).expect("certificate serialises");
    report(cfg, &value, cert.verdict.exit_code() as u8)
}

/// `C(t, 2)` odd and `2^level | C(k, 2)`.
fn refutation(t: usize, k: usize, level: u32) -> Result<Value, Failure> {
    Ok(json!({
        "level": level,
        "t": t,
        "k": k,
        "pairs_t": binomial(t as i64, 2).to_string(),
        "pairs_t_odd": binomial(t as i64, 2).bit(0),
        "pairs_k": binomial(k as i64, 2).to_string(),
        "v2_pairs_k": v2_binomial(k as u64, 2)?,
        "holds": check_obstruction(t, k, level)?,
    }))
}

/// Builds `C_{t,k}` and checks that the r-LC over the subset side gives `C'_{t,k}`.
fn witness_replay(caps: &Caps, t: usize, k: usize, r: u32) -> Result<(Value, u8), Failure> {
    let caps = Caps {
        incidence_max_n: usize::MAX,
        ..caps.clone()
    };
    let run = || -> glocal::Result<(usize, bool)> {
        let spec = FamilySpec::c(t, k);
        let c = gen_family(&spec, caps.family_max_vertices)?;
        let cp = gen_family(&FamilySpec::c_prime(t, k), caps.family_max_vertices)?;
        let h = apply_rlc(&c, &spec.subset_multiset()?, r, &caps)?;
        Ok((c.n(), h == cp))
    };
    match run() {
        Ok((n, ok)) => Ok((
            json!({"t": t, "k": k, "vertices": n, "verified": ok}),
            if ok { 0 } else { 1 },
        )),
        Err(e @ Error::CapExceeded { .. }) => Ok((json!({"t": t, "k": k, "skipped": e.to_string()}), 2)),
        Err(e) => Err(e.into()),
    }
}

pub fn hierarchy(cfg: &RunConfig, r: u32, validate: bool, t_max: usize) -> Result<Outcome, Failure> {
    let p = hierarchy_params(r)?;
    let mut rep = json!({
        "r": r,
        "formula": {
            "t": p.t,
            "k": p.k,
            "sufficient": p.sufficient.sufficient_ok,
            "obstruction_below": p.obstruction_below,
            "valid": p.valid,
        },
    });
    if validate {
        rep["formula"]["conditions"] = json!(p.sufficient.details);
        rep["formula"]["refutation"] = refutation(p.t, p.k, r - 1)?;
    }
    let chosen = if p.valid {
        Some((p.t, p.k))
    } else {
        let found = search_hierarchy_pair(r, t_max)?;
        rep["fallback"] = match found {
            Some((t, k)) => {
                let mut f = json!({"t": t, "k": k, "t_max": t_max});
                if validate {
                    f["refutation"] = refutation(t, k, r - 1)?;
                }
                f
            }
            None => json!({"t_max": t_max, "found": false}),
        };
        found
    };
    let code = match chosen {
        Some((t, k)) => {
            let (w, code) = witness_replay(&cfg.caps, t, k, r)?;
            rep["witness"] = w;
            code
        }
        None => {
            rep["witness"] = Value::Null;
            1
        }
    };
    report(cfg, &rep, code)
}
