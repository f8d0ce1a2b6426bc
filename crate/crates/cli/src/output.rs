use clap::ValueEnum;
use glocal::io::{to_dot, to_graph6, EdgeList};
use glocal::Graph;
use serde_json::Value;

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Graph6,
    Dot,
}

/// Graph output; graph6 unless asked otherwise.
pub fn graph(g: &Graph, labels: Option<&[String]>, format: Option<Format>) -> Result<String, Failure> {
    Ok(match format.unwrap_or(Format::Graph6) {
        Format::Graph6 => format!("{}\n", to_graph6(g)),
        Format::Dot => to_dot(g, labels),
        Format::Json => {
            let el = EdgeList {
                labels: labels.map(<[String]>::to_vec),
                ..EdgeList::from_graph(g)
            };
            format!("{}\n", serde_json::to_string_pretty(&el).expect("edge list serialises"))
        }
        Format::Text => {
            let name = |u: usize| labels.map_or_else(|| u.to_string(), |l| l[u].clone());
            let mut out = format!("n {}\n", g.n());
            for (u, v) in g.edges() {
                out.push_str(&format!("{} {}\n", name(u), name(v)));
            }
            out
        }
    })
}

/// Report output; JSON unless asked otherwise.
pub fn report(value: &Value, format: Option<Format>) -> Result<String, Failure> {
    match format.unwrap_or(Format::Json) {
        Format::Json => Ok(format!(
            "{}\n",
            serde_json::to_string_pretty(value).expect("report serialises")
        )),
        Format::Text => {
            let mut out = String::new();
            flatten("", value, &mut out);
            Ok(out)
        }
        f => Err(Failure::Usage(format!(
            "--format {} applies to graph output only",
            f.to_possible_value().expect("no skipped variants").get_name()
        ))),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// One `path: value` line per leaf; arrays of scalars stay on one line.
fn flatten(path: &str, v: &Value, out: &mut String) {
    let join = |key: &str| {
        if path.is_empty() {
            key.to_string()
        } else {
            format!("{path}.{key}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{path}: [{}]\n", parts.join(", ")));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        leaf => out.push_str(&format!("{path}: {}\n", scalar(leaf))),
    }
}
