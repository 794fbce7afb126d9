//! Line-oriented text formats for chains, multigraphs and path families.
//!
//! Chain files:
//!
//! ```text
//! # comment
//! states 3
//! pi 0.5 0.25 0.25          (optional)
//! edge 0 1 0.5
//! ```
//!
//! Probabilities are written with 17 significant digits so a written chain
//! reads back bit for bit.

use std::fmt::Write as _;

use crate::chain::MarkovChain;
use crate::error::{Error, Result};
use crate::generators::Multigraph;
use crate::paths::{AlternatingPathFamily, PathFamily};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then(|| (i + 1, line.split_whitespace().collect()))
    })
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("bad {what} '{tok}'")))
}

fn parse_f64(tok: &str, line: usize, what: &str) -> Result<f64> {
    let v: f64 = tok
        .parse()
        .map_err(|_| parse_err(line, format!("bad {what} '{tok}'")))?;
    if !v.is_finite() {
        return Err(parse_err(line, format!("{what} must be finite, got '{tok}'")));
    }
    Ok(v)
}

/// Parses a chain file. A `pi` line is validated against the kernel;
/// without one the stationary distribution is solved for.
pub fn parse_chain(text: &str) -> Result<MarkovChain> {
    let mut lines = content_lines(text);
    let (first, toks) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty chain file"))?;
    let n = match toks.as_slice() {
        ["states", n] => parse_usize(n, first, "state count")?,
        _ => return Err(parse_err(first, "first line must be 'states <n>'")),
    };
    if n == 0 {
        return Err(parse_err(first, "state count must be positive"));
    }
    if n > crate::chain::MAX_STATES {
        return Err(parse_err(
            first,
            format!("at most {} states are supported", crate::chain::MAX_STATES),
        ));
    }
    let mut rows = vec![vec![0.0; n]; n];
    let mut seen = vec![false; n * n];
    let mut pi: Option<Vec<f64>> = None;
    for (line, toks) in lines {
        match toks.as_slice() {
            ["pi", weights @ ..] => {
                if pi.is_some() {
                    return Err(parse_err(line, "duplicate 'pi' line"));
                }
                if weights.len() != n {
                    return Err(parse_err(
                        line,
                        format!("'pi' needs {n} weights, got {}", weights.len()),
                    ));
                }
                pi = Some(
                    weights
                        .iter()
                        .map(|w| parse_f64(w, line, "weight"))
                        .collect::<Result<_>>()?,
                );
            }
            ["edge", i, j, p] => {
                let i = parse_usize(i, line, "state")?;
                let j = parse_usize(j, line, "state")?;
                if i >= n || j >= n {
                    return Err(parse_err(line, format!("edge ({i},{j}) out of range")));
                }
                if std::mem::replace(&mut seen[i * n + j], true) {
                    return Err(parse_err(line, format!("duplicate edge ({i},{j})")));
                }
                rows[i][j] = parse_f64(p, line, "probability")?;
            }
            [kw, ..] => return Err(parse_err(line, format!("unknown directive '{kw}'"))),
            [] => unreachable!(),
        }
    }
    match pi {
        Some(pi) => MarkovChain::with_stationary(rows, pi),
        None => MarkovChain::new(rows),
    }
}

/// Writes a chain with its stationary distribution and every nonzero
/// transition.
pub fn write_chain(chain: &MarkovChain) -> String {
    let n = chain.n();
    let mut out = format!("states {n}\npi");
    for w in chain.pi() {
        write!(out, " {w:.16e}").unwrap();
    }
    out.push('\n');
    for x in 0..n {
        for y in 0..n {
            let p = chain.p(x, y);
            if p != 0.0 {
                writeln!(out, "edge {x} {y} {p:.16e}").unwrap();
            }
        }
    }
    out
}

/// Parses `states <n>` followed by `arc <i> <j> [count]` lines; repeated
/// arcs add up.
pub fn parse_multigraph(text: &str) -> Result<Multigraph> {
    let mut lines = content_lines(text);
    let (first, toks) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty multigraph file"))?;
    let n = match toks.as_slice() {
        ["states", n] => parse_usize(n, first, "state count")?,
        _ => return Err(parse_err(first, "first line must be 'states <n>'")),
    };
    let mut g = Multigraph::new(n);
    for (line, toks) in lines {
        let (i, j, count) = match toks.as_slice() {
            ["arc", i, j] => (i, j, "1"),
            ["arc", i, j, c] => (i, j, *c),
            _ => return Err(parse_err(line, "expected 'arc <i> <j> [count]'")),
        };
        let i = parse_usize(i, line, "state")?;
        let j = parse_usize(j, line, "state")?;
        if i >= n || j >= n {
            return Err(parse_err(line, format!("arc ({i},{j}) out of range")));
        }
        let count: u32 = count
            .parse()
            .map_err(|_| parse_err(line, format!("bad arc count '{count}'")))?;
        g.add_arc(i, j, count);
    }
    Ok(g)
}

/// Path families read from a file: `path <x> <y> <v0> .. <vk>` lines for a
/// plain family, `altpath <x> <y> <v0> .. <vk>` lines for an alternating one.
#[derive(Debug, Clone, PartialEq)]
pub struct PathFile {
    pub plain: Option<PathFamily>,
    pub alternating: Option<AlternatingPathFamily>,
}

pub fn parse_paths(text: &str, chain: &MarkovChain) -> Result<PathFile> {
    let n = chain.n();
    let mut plain: Option<Vec<Vec<usize>>> = None;
    let mut alt: Option<Vec<Vec<usize>>> = None;
    for (line, toks) in content_lines(text) {
        let (kind, rest) = toks.split_first().unwrap();
        let target = match *kind {
            "path" => plain.get_or_insert_with(|| vec![Vec::new(); n * n]),
            "altpath" => alt.get_or_insert_with(|| vec![Vec::new(); n * n]),
            kw => return Err(parse_err(line, format!("unknown directive '{kw}'"))),
        };
        if rest.len() < 3 {
            return Err(parse_err(line, "expected '<x> <y> <v0> .. <vk>'"));
        }
        let nums = rest
            .iter()
            .map(|t| parse_usize(t, line, "state"))
            .collect::<Result<Vec<_>>>()?;
        let (x, y) = (nums[0], nums[1]);
        if x >= n || y >= n || nums[2..].iter().any(|&v| v >= n) {
            return Err(parse_err(line, "state out of range"));
        }
        let slot = &mut target[x * n + y];
        if !slot.is_empty() {
            return Err(parse_err(line, format!("duplicate path for ({x},{y})")));
        }
        *slot = nums[2..].to_vec();
    }
    if plain.is_none() && alt.is_none() {
        return Err(parse_err(1, "no 'path' or 'altpath' lines"));
    }
    Ok(PathFile {
        plain: plain.map(|p| PathFamily::new(chain, p)).transpose()?,
        alternating: alt.map(|p| AlternatingPathFamily::new(chain, p)).transpose()?,
    })
}

fn write_path_line(out: &mut String, kind: &str, x: usize, y: usize, path: &[usize]) {
    write!(out, "{kind} {x} {y}").unwrap();
    for v in path {
        write!(out, " {v}").unwrap();
    }
    out.push('\n');
}

pub fn write_paths(family: &PathFamily) -> String {
    let mut out = String::new();
    for (x, y) in family.pairs() {
        write_path_line(&mut out, "path", x, y, family.path(x, y));
    }
    out
}

pub fn write_alt_paths(family: &AlternatingPathFamily) -> String {
    let mut out = String::new();
    for x in 0..family.n() {
        for y in 0..family.n() {
            write_path_line(&mut out, "altpath", x, y, family.path(x, y));
        }
    }
    out
}
