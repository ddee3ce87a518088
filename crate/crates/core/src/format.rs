//! The polytope text format.
//!
//! ```text
//! # optional comments
//! dim 2
//! vertices 3
//! 0 0
//! 2 0
//! 0 2
//! ```
//!
//! ASCII, LF line endings, `#` starts a comment line. The header gives
//! the ambient dimension and the vertex count, followed by one
//! whitespace-separated integer row per vertex.

use crate::error::Error;
use crate::linalg::{Int, LatticeVector};
use crate::polytope::LatticePolytope;
use std::str::FromStr;

pub fn parse_str(input: &str) -> Result<LatticePolytope, Error> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line, dim) = expect_header(lines.next(), "dim")?;
    let (_, count) = expect_header(lines.next(), "vertices")?;
    if dim == 0 {
        return Err(Error::Parse {
            line,
            message: "dimension must be positive".into(),
        });
    }

    let mut vertices = Vec::with_capacity(count);
    for _ in 0..count {
        let Some((line, text)) = lines.next() else {
            return Err(Error::Parse {
                line: 0,
                message: format!("expected {count} vertex rows, found {}", vertices.len()),
            });
        };
        let coords: Vec<Int> = text
            .split_whitespace()
            .map(|tok| {
                Int::from_str(tok).map_err(|_| Error::Parse {
                    line,
                    message: format!("invalid integer `{tok}`"),
                })
            })
            .collect::<Result<_, _>>()?;
        if coords.len() != dim {
            return Err(Error::Parse {
                line,
                message: format!("expected {dim} coordinates, found {}", coords.len()),
            });
        }
        vertices.push(LatticeVector::new(coords));
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::Parse {
            line,
            message: "unexpected content after vertex rows".into(),
        });
    }
    LatticePolytope::new(vertices)
}

fn expect_header(
    item: Option<(usize, &str)>,
    keyword: &str,
) -> Result<(usize, usize), Error> {
    let Some((line, text)) = item else {
        return Err(Error::Parse {
            line: 0,
            message: format!("missing `{keyword}` header"),
        });
    };
    let mut tokens = text.split_whitespace();
    match (tokens.next(), tokens.next(), tokens.next()) {
        (Some(kw), Some(value), None) if kw == keyword => {
            let value = value.parse::<usize>().map_err(|_| Error::Parse {
                line,
                message: format!("invalid `{keyword}` value `{value}`"),
            })?;
            Ok((line, value))
        }
        _ => Err(Error::Parse {
            line,
            message: format!("expected `{keyword} <n>`, found `{text}`"),
        }),
    }
}

/// Serializes a polytope; `parse_str(emit(p)) == p`.
pub fn emit(p: &LatticePolytope) -> String {
    let mut out = format!("dim {}\nvertices {}\n", p.dim(), p.vertex_count());
    for v in p.vertices() {
        let row: Vec<String> = v.coords().iter().map(|c| c.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
