use std::io::Read;

use glocal::io::{from_graph6, EdgeList};
use glocal::{fixtures, Graph};

use crate::Failure;

/// Standard input may be consumed once per invocation.
#[derive(Default)]
pub struct Stdin {
    taken: bool,
}

impl Stdin {
    fn read(&mut self) -> Result<String, Failure> {
        if self.taken {
            return Err(Failure::Usage("standard input (\"-\") can be used only once".into()));
        }
        self.taken = true;
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::NoInput(format!("stdin: {e}")))?;
        Ok(text)
    }
}

/// Rejects invocations that name stdin for more than one input.
pub fn single_stdin(args: &[&str]) -> Result<(), Failure> {
    if args.iter().filter(|a| **a == "-").count() > 1 {
        return Err(Failure::Usage("standard input (\"-\") can be used only once".into()));
    }
    Ok(())
}

pub struct LoadedGraph {
    pub graph: Graph,
    pub labels: Option<Vec<String>>,
}

/// Reads `-`, `fixture:NAME` or a path holding graph6 or edge-list JSON.
pub fn read_text(stdin: &mut Stdin, arg: &str) -> Result<String, Failure> {
    if arg == "-" {
        return stdin.read();
    }
    std::fs::read_to_string(arg).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Failure::NoInput(format!("{arg}: no such file")),
        _ => Failure::NoInput(format!("{arg}: {e}")),
    })
}

pub fn load_graph(stdin: &mut Stdin, arg: &str) -> Result<LoadedGraph, Failure> {
    if let Some(name) = arg.strip_prefix("fixture:") {
        let f = fixtures::by_name(name).ok_or_else(|| {
            Failure::Data(format!(
                "unknown fixture {name:?}; known: {}",
                fixtures::NAMES.join(", ")
            ))
        })?;
        return Ok(LoadedGraph {
            graph: f.graph,
            labels: Some(f.labels),
        });
    }
    let text = read_text(stdin, arg)?;
    let what = if arg == "-" { "stdin" } else { arg };
    if text.trim_start().starts_with('{') {
        let el: EdgeList = serde_json::from_str(&text).map_err(|e| Failure::Data(format!("{what}: {e}")))?;
        let graph = el.to_graph().map_err(|e| Failure::Data(format!("{what}: {e}")))?;
        Ok(LoadedGraph {
            graph,
            labels: el.labels,
        })
    } else {
        let graph = from_graph6(&text).map_err(|e| Failure::Data(format!("{what}: {e}")))?;
        Ok(LoadedGraph { graph, labels: None })
    }
}

/// `0,3,4`
pub fn parse_vertex_list(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("bad vertex {p:?} in list {s:?}")))
        })
        .collect()
}

/// `0:2,1:1`; a bare vertex counts once.
pub fn parse_multiplicities(s: &str) -> Result<Vec<(usize, u64)>, Failure> {
    let bad = || Failure::Usage(format!("bad multiplicity list {s:?}; expected vertex:count,..."));
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (v, c) = p.split_once(':').unwrap_or((p, "1"));
            Ok((
                v.trim().parse().map_err(|_| bad())?,
                c.trim().parse().map_err(|_| bad())?,
            ))
        })
        .collect()
}
