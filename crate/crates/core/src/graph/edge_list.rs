use super::Graph;
use crate::error::ParseError;

/// Parses whitespace-separated `u v` pairs, one per line.
///
/// An optional first line `n <count>` fixes the node count; otherwise it is
/// one more than the largest index seen. Blank lines and `#` comments are
/// skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let err = |line: usize, msg: String| ParseError::EdgeList { line, msg };
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen_data = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "n" {
            if seen_data || declared.is_some() {
                return Err(err(line_no, "node-count line must come first".into()));
            }
            if tokens.len() != 2 {
                return Err(err(line_no, "expected `n <count>`".into()));
            }
            let n = parse_index(tokens[1]).map_err(|m| err(line_no, m))?;
            declared = Some(n);
            seen_data = true;
            continue;
        }
        seen_data = true;
        if tokens.len() != 2 {
            return Err(err(
                line_no,
                format!("expected two node indices, found {}", tokens.len()),
            ));
        }
        let u = parse_index(tokens[0]).map_err(|m| err(line_no, m))?;
        let v = parse_index(tokens[1]).map_err(|m| err(line_no, m))?;
        if let Some(n) = declared {
            if u >= n || v >= n {
                return Err(err(
                    line_no,
                    format!("index {} is not below declared n = {n}", u.max(v)),
                ));
            }
        }
        if u == v {
            return Err(err(line_no, format!("self-loop on node {u}")));
        }
        edges.push((u, v, line_no));
    }

    let n = declared.unwrap_or_else(|| {
        edges
            .iter()
            .map(|&(u, v, _)| u.max(v) + 1)
            .max()
            .unwrap_or(0)
    });
    if n == 0 {
        return Err(err(1, "no nodes declared and no edges listed".into()));
    }
    Graph::new(n, edges.into_iter().map(|(u, v, _)| (u, v))).map_err(|e| err(0, e.to_string()))
}

fn parse_index(tok: &str) -> Result<usize, String> {
    if tok.starts_with('-') {
        return Err(format!("negative index `{tok}`"));
    }
    tok.parse::<usize>()
        .map_err(|_| format!("unparseable token `{tok}`"))
}
