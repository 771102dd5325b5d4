//! Feature files (CSV and JSON), the singular-value sidecar, and DOT export.

use anyhow::{bail, Context, Result};
use eden_core::{Encoding, Graph};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Per-graph encoding as written to JSON feature files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureRecord {
    pub graph: String,
    pub encoder: String,
    pub n: usize,
    pub dims: usize,
    /// Singular values for the distance encoders, eigenvalues for the
    /// Laplacian ones.
    pub spectrum: Vec<f64>,
    pub repeated_spectrum: bool,
    pub sign_ambiguous: Vec<bool>,
    pub features: Vec<Vec<f64>>,
}

impl FeatureRecord {
    pub fn new(graph: &str, encoder: &str, e: &Encoding) -> Self {
        FeatureRecord {
            graph: graph.to_owned(),
            encoder: encoder.to_owned(),
            n: e.node_count(),
            dims: e.dims(),
            spectrum: e.spectrum.clone(),
            repeated_spectrum: e.repeated_spectrum,
            sign_ambiguous: e.sign_ambiguous.clone(),
            features: (0..e.node_count()).map(|i| e.row(i)).collect(),
        }
    }
}

/// Sidecar entry next to a CSV feature file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub graph: String,
    pub singular_values: Vec<f64>,
}

/// CSV with header `node,f1..fm`, or `graph,node,f1..fm` for several graphs.
pub fn features_csv(records: &[FeatureRecord]) -> Result<String> {
    let dims = records.first().map_or(0, |r| r.dims);
    let multi = records.len() > 1;
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = Vec::new();
    if multi {
        header.push("graph".into());
    }
    header.push("node".into());
    header.extend((1..=dims).map(|k| format!("f{k}")));
    w.write_record(&header)?;
    for r in records {
        for (i, row) in r.features.iter().enumerate() {
            let mut rec: Vec<String> = Vec::with_capacity(header.len());
            if multi {
                rec.push(r.graph.clone());
            }
            rec.push(i.to_string());
            rec.extend(row.iter().map(f64::to_string));
            w.write_record(&rec)?;
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Reads a file written by [`features_csv`] back as `(graph, rows)` groups;
/// single-graph files yield one group named `""`.
pub fn read_features_csv(text: &str) -> Result<Vec<(String, Vec<Vec<f64>>)>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().context("reading header")?.clone();
    let multi = header.get(0) == Some("graph");
    let skip = if multi { 2 } else { 1 };
    if header.get(skip - 1) != Some("node") {
        bail!("line 1: expected a `node` column");
    }
    let mut groups: Vec<(String, Vec<Vec<f64>>)> = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let name = if multi {
            rec[0].to_owned()
        } else {
            String::new()
        };
        let row = rec
            .iter()
            .skip(skip)
            .map(|f| {
                f.parse::<f64>()
                    .with_context(|| format!("line {line}: bad number {f:?}"))
            })
            .collect::<Result<Vec<_>>>()?;
        match groups.last_mut() {
            Some((g, rows)) if *g == name => rows.push(row),
            _ => groups.push((name, vec![row])),
        }
    }
    Ok(groups)
}

pub fn spectrum_sidecar(records: &[FeatureRecord]) -> Vec<SpectrumRecord> {
    records
        .iter()
        .map(|r| SpectrumRecord {
            graph: r.graph.clone(),
            singular_values: r.spectrum.clone(),
        })
        .collect()
}

/// `#rrggbb` from three values in `[0, 1]`.
pub fn hex_color(rgb: &[f64]) -> String {
    // snap to a fine grid first so that values on a .5 boundary (common for
    // symmetric graphs) do not round differently under float noise
    let byte = |x: f64| {
        let x = (x.clamp(0.0, 1.0) * 1e9).round() / 1e9;
        (x * 255.0).round() as u8
    };
    format!(
        "#{:02x}{:02x}{:02x}",
        byte(rgb[0]),
        byte(rgb[1]),
        byte(rgb[2])
    )
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT graph with one fill colour per node.
pub fn dot_graph(name: &str, g: &Graph, colors: &[String]) -> String {
    let mut out = format!("graph {} {{\n  node [style=filled];\n", dot_id(name));
    for (u, c) in colors.iter().enumerate() {
        let _ = writeln!(out, "  {u} [fillcolor=\"{c}\"];");
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}
