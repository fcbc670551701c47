//! Graph file formats.
//!
//! Text:
//!
//! ```text
//! # K_2^3
//! v 2
//! e 1 0 1
//! e 2 0 1
//! e 3 0 1
//! ```
//!
//! `v <n>` must come before the edges; each `e <label> <u> <w>` uses 0-based
//! vertices and `u == w` for a loop. `#` starts a comment.
//!
//! JSON: `{ "v": 2, "edges": [[1, 0, 1], [2, 0, 1], [3, 0, 1]] }`.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::edgeset::Label;
use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

/// Serialized form shared by the JSON graph format and every report that
/// embeds a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub v: usize,
    pub edges: Vec<(Label, usize, usize)>,
}

impl From<&Multigraph> for GraphJson {
    fn from(g: &Multigraph) -> Self {
        GraphJson {
            v: g.vertex_count(),
            edges: g.edges().iter().map(|e| (e.label, e.u, e.v)).collect(),
        }
    }
}

impl TryFrom<GraphJson> for Multigraph {
    type Error = Error;

    fn try_from(json: GraphJson) -> Result<Self> {
        Multigraph::new(json.v, json.edges)
    }
}

impl Serialize for Multigraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Multigraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = GraphJson::deserialize(deserializer)?;
        Multigraph::try_from(json).map_err(serde::de::Error::custom)
    }
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses the line-oriented text format.
pub fn parse_text(input: &str) -> Result<Multigraph> {
    let mut vertex_count: Option<usize> = None;
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    for (index, raw) in input.lines().enumerate() {
        let line_no = index + 1;
        let content = raw.split('#').next().unwrap_or("");
        // (column, token) pairs, columns 1-based
        let tokens: Vec<(usize, &str)> = content
            .char_indices()
            .filter(|&(i, c)| {
                !c.is_whitespace() && (i == 0 || content[..i].ends_with(char::is_whitespace))
            })
            .map(|(i, _)| {
                let rest = &content[i..];
                let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
                (i + 1, &rest[..end])
            })
            .collect();
        let Some(&(col, keyword)) = tokens.first() else {
            continue;
        };
        let number = |k: usize| -> Result<usize> {
            let (c, tok) = tokens[k];
            tok.parse::<usize>()
                .map_err(|_| parse_error(line_no, c, format!("expected a nonnegative integer, found `{tok}`")))
        };
        match keyword {
            "v" => {
                if tokens.len() != 2 {
                    return Err(parse_error(line_no, col, "expected `v <vertex count>`"));
                }
                if vertex_count.is_some() {
                    return Err(parse_error(line_no, col, "vertex count given twice"));
                }
                vertex_count = Some(number(1)?);
            }
            "e" => {
                let Some(n) = vertex_count else {
                    return Err(parse_error(line_no, col, "edge before the `v` line"));
                };
                if tokens.len() != 4 {
                    return Err(parse_error(line_no, col, "expected `e <label> <u> <w>`"));
                }
                let label = number(1)?;
                if label == 0 || label > Label::MAX as usize {
                    return Err(parse_error(line_no, tokens[1].0, "labels must be positive 32-bit integers"));
                }
                let label = label as Label;
                if !seen.insert(label) {
                    return Err(parse_error(line_no, tokens[1].0, format!("duplicate edge label {label}")));
                }
                let (u, w) = (number(2)?, number(3)?);
                for (k, x) in [(2, u), (3, w)] {
                    if x >= n {
                        return Err(parse_error(
                            line_no,
                            tokens[k].0,
                            format!("vertex {x} out of range for {n} vertices"),
                        ));
                    }
                }
                edges.push((label, u, w));
            }
            other => {
                return Err(parse_error(line_no, col, format!("unknown directive `{other}`")));
            }
        }
    }
    let n = vertex_count.ok_or_else(|| parse_error(1, 1, "missing `v <vertex count>` line"))?;
    Multigraph::new(n, edges)
}

/// Parses the JSON format.
pub fn parse_json(input: &str) -> Result<Multigraph> {
    let json: GraphJson = serde_json::from_str(input)
        .map_err(|e| parse_error(e.line(), e.column(), e.to_string()))?;
    Multigraph::try_from(json)
}

/// Picks the JSON parser when the first non-blank character is `{`.
pub fn parse_graph(input: &str) -> Result<Multigraph> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

pub fn to_text(g: &Multigraph) -> String {
    let mut out = format!("v {}\n", g.vertex_count());
    for e in g.edges() {
        let _ = writeln!(out, "e {} {} {}", e.label, e.u, e.v);
    }
    out
}

pub fn to_json(g: &Multigraph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph serialization cannot fail")
}
