//! The HBM instance format.
//!
//! ```text
//! c optional comment lines, anywhere
//! p hbm <r> <nA> <nB> <m>
//! e <a> <b1> ... <b_{r-1}>      (m lines, 0-based indices)
//! ```
//!
//! Blank lines are ignored. The canonical serialization has no comments and
//! lists each edge's `B`-vertices in increasing order.

use std::fmt::Write;

use hypermatch_core::{BipartiteHypergraph, InstanceError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("invalid instance: {0}")]
    Instance(#[from] InstanceError),
}

fn syntax(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        reason: reason.into(),
    }
}

struct Header {
    r: usize,
    a_count: usize,
    b_count: usize,
    m: usize,
}

pub fn parse_instance(text: &str) -> Result<BipartiteHypergraph, ParseError> {
    let mut header: Option<Header> = None;
    let mut edges: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let mut tokens = raw.split_whitespace();
        let Some(tag) = tokens.next() else { continue };
        let fields: Vec<&str> = tokens.collect();
        match tag {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(syntax(line, "second problem line"));
                }
                if fields.first() != Some(&"hbm") {
                    return Err(syntax(line, "expected \"p hbm <r> <nA> <nB> <m>\""));
                }
                let nums = numbers(line, &fields[1..])?;
                let [r, a_count, b_count, m] = nums[..] else {
                    return Err(syntax(line, "problem line needs exactly four numbers"));
                };
                header = Some(Header { r, a_count, b_count, m });
            }
            "e" => {
                let Some(h) = &header else {
                    return Err(syntax(line, "edge before the problem line"));
                };
                if edges.len() == h.m {
                    return Err(syntax(line, format!("more than {} edge lines", h.m)));
                }
                let nums = numbers(line, &fields)?;
                if nums.len() != h.r {
                    return Err(syntax(
                        line,
                        format!("edge needs {} indices, found {}", h.r, nums.len()),
                    ));
                }
                edges.push((nums[0], nums[1..].to_vec()));
            }
            other => return Err(syntax(line, format!("unknown line type {other:?}"))),
        }
    }
    let Some(h) = header else {
        return Err(syntax(last_line.max(1), "missing problem line"));
    };
    if edges.len() != h.m {
        return Err(syntax(
            last_line.max(1),
            format!("header announces {} edges, found {}", h.m, edges.len()),
        ));
    }
    Ok(BipartiteHypergraph::new(h.r, h.a_count, h.b_count, edges)?)
}

fn numbers(line: usize, fields: &[&str]) -> Result<Vec<usize>, ParseError> {
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>()
                .map_err(|_| syntax(line, format!("not a vertex index: {f:?}")))
        })
        .collect()
}

/// Canonical text of `h`.
pub fn serialize_instance(h: &BipartiteHypergraph) -> String {
    serialize_with_comments(h, &[])
}

/// Canonical text preceded by `c` lines.
pub fn serialize_with_comments(h: &BipartiteHypergraph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(
        out,
        "p hbm {} {} {} {}",
        h.r(),
        h.a_count(),
        h.b_count(),
        h.edge_count()
    );
    for e in h.edges() {
        out.push_str("e ");
        out.push_str(&e.a.to_string());
        for b in &e.bs {
            out.push(' ');
            out.push_str(&b.to_string());
        }
        out.push('\n');
    }
    out
}
