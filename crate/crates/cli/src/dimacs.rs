//! DIMACS graph ingestion and rendering: `c` comment lines, one
//! `p edge <n> <m>` header, then `e <u> <v>` lines with 1-indexed ids.

use stable_cutset::Graph;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(err(line_no, "duplicate problem line"));
                }
                if fields.len() != 4 || fields[1] != "edge" {
                    return Err(err(line_no, "expected `p edge <n> <m>`"));
                }
                let n = fields[2]
                    .parse::<usize>()
                    .map_err(|_| err(line_no, "vertex count is not a number"))?;
                let m = fields[3]
                    .parse::<usize>()
                    .map_err(|_| err(line_no, "edge count is not a number"))?;
                header = Some((n, m));
            }
            "e" => {
                let (n, _) = header
                    .ok_or_else(|| err(line_no, "edge before the problem line"))?;
                if fields.len() != 3 {
                    return Err(err(line_no, "expected `e <u> <v>`"));
                }
                let u = fields[1]
                    .parse::<usize>()
                    .map_err(|_| err(line_no, "endpoint is not a number"))?;
                let v = fields[2]
                    .parse::<usize>()
                    .map_err(|_| err(line_no, "endpoint is not a number"))?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(err(
                        line_no,
                        format!("endpoint out of range 1..={n}"),
                    ));
                }
                if u == v {
                    return Err(err(line_no, format!("self-loop on vertex {u}")));
                }
                let key = (u.min(v) - 1, u.max(v) - 1);
                if edges.contains(&key) {
                    return Err(err(line_no, format!("duplicate edge {u} {v}")));
                }
                edges.push(key);
            }
            other => {
                return Err(err(line_no, format!("unknown line type `{other}`")));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| err(0, "missing `p edge` line"))?;
    if edges.len() != m {
        return Err(err(
            0,
            format!("header declares {m} edges but file has {}", edges.len()),
        ));
    }
    Graph::from_edges(n, &edges).map_err(|e| err(0, e.to_string()))
}

pub fn render_graph(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}
