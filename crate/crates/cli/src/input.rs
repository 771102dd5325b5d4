//! Graph inputs: graph6 files, edge-list files, or built-in fixture names.

use anyhow::{Context, Result};
use eden_core::{fixture_graph, parse_edge_list, parse_graph6, Graph, FIXTURE_NAMES};
use std::path::Path;

#[derive(Debug, Clone)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

/// An input argument that is neither an existing file nor a fixture name.
#[derive(Debug)]
pub struct MissingInput(pub String);

impl std::fmt::Display for MissingInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: no such file or fixture (fixtures: {})",
            self.0,
            FIXTURE_NAMES.join(", ")
        )
    }
}

impl std::error::Error for MissingInput {}

fn looks_like_graph6(path: &Path, text: &str) -> bool {
    if path.extension().is_some_and(|e| e == "g6") {
        return true;
    }
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    first.is_some_and(|l| {
        let body = l.strip_prefix(">>graph6<<").unwrap_or(l);
        !body.is_empty() && body.bytes().all(|b| (63..=126).contains(&b))
    })
}

/// Loads every graph named by `arg`. Fixture names take effect only when no
/// file of that name exists.
pub fn load(arg: &str) -> Result<Vec<NamedGraph>> {
    let path = Path::new(arg);
    if !path.exists() {
        if FIXTURE_NAMES.contains(&arg) {
            let graph = fixture_graph(arg)?;
            return Ok(vec![NamedGraph {
                name: arg.to_owned(),
                graph,
            }]);
        }
        return Err(MissingInput(arg.to_owned()).into());
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| arg.to_owned());

    if !looks_like_graph6(path, &text) {
        let graph = parse_edge_list(&text).with_context(|| format!("{arg}: edge list"))?;
        return Ok(vec![NamedGraph { name: stem, graph }]);
    }
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    let single = lines.len() == 1;
    lines
        .into_iter()
        .map(|(k, line)| {
            let graph =
                parse_graph6(line.trim().as_bytes()).with_context(|| format!("{arg}:{}", k + 1))?;
            let name = if single {
                stem.clone()
            } else {
                format!("{stem}:{}", k + 1)
            };
            Ok(NamedGraph { name, graph })
        })
        .collect()
}

pub fn load_all(args: &[String]) -> Result<Vec<NamedGraph>> {
    let mut out = Vec::new();
    for a in args {
        out.extend(load(a)?);
    }
    Ok(out)
}
