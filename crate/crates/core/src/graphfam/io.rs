//! Text formats. `WBG1 <|A|> <|B|>` followed by one 0/1 row per A-vertex;
//! `WSG1 <|V|>` followed by one row per vertex. Trailing `#` lines carry
//! metadata; `# spec …` records the generating parameters.

use std::fmt::Write as _;

use super::graph::{BiGraph, SimpleGraph};
use super::spec::FamilySpec;
use crate::bitset::BitSet;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum GraphFile {
    Bi {
        graph: BiGraph,
        spec: Option<FamilySpec>,
    },
    Simple {
        graph: SimpleGraph,
        spec: Option<FamilySpec>,
    },
}

fn push_row(out: &mut String, r: &BitSet) {
    out.extend((0..r.len()).map(|b| if r.contains(b) { '1' } else { '0' }));
    out.push('\n');
}

pub fn write_bigraph(g: &BiGraph, spec: Option<&FamilySpec>) -> String {
    let mut out = String::new();
    writeln!(out, "WBG1 {} {}", g.na(), g.nb()).unwrap();
    for r in g.rows() {
        push_row(&mut out, r);
    }
    if let Some(s) = spec {
        writeln!(out, "{}", s.meta_line()).unwrap();
    }
    out
}

pub fn write_simple(g: &SimpleGraph, spec: Option<&FamilySpec>) -> String {
    let mut out = String::new();
    writeln!(out, "WSG1 {}", g.order()).unwrap();
    for r in g.nbhds() {
        push_row(&mut out, r);
    }
    if let Some(s) = spec {
        writeln!(out, "{}", s.meta_line()).unwrap();
    }
    out
}

fn parse_row(line: &str, width: usize, lineno: usize) -> Result<BitSet> {
    if line.len() != width {
        return Err(Error::Parse(format!(
            "line {lineno}: expected {width} columns, found {}",
            line.len()
        )));
    }
    let mut r = BitSet::new(width);
    for (b, c) in line.bytes().enumerate() {
        match c {
            b'1' => r.insert(b),
            b'0' => {}
            _ => return Err(Error::Parse(format!("line {lineno}: bad character {:?}", c as char))),
        }
    }
    Ok(r)
}

fn parse_count(tok: Option<&str>) -> Result<usize> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse("bad header".into()))
}

pub fn parse(text: &str) -> Result<GraphFile> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end()));
    let (_, header) = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
    let mut toks = header.split_whitespace();
    let magic = toks.next();
    let (nrows, width, simple) = match magic {
        Some("WBG1") => (parse_count(toks.next())?, parse_count(toks.next())?, false),
        Some("WSG1") => {
            let n = parse_count(toks.next())?;
            (n, n, true)
        }
        _ => return Err(Error::Parse("unknown magic".into())),
    };
    if toks.next().is_some() {
        return Err(Error::Parse("trailing header tokens".into()));
    }
    let mut rows = Vec::with_capacity(nrows);
    let mut spec = None;
    for (no, line) in lines {
        if let Some(meta) = line.strip_prefix('#') {
            if let Some(s) = meta.trim().strip_prefix("spec ") {
                spec = Some(s.parse()?);
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        if rows.len() == nrows {
            return Err(Error::Parse(format!("line {no}: too many rows")));
        }
        rows.push(parse_row(line, width, no)?);
    }
    if rows.len() != nrows {
        return Err(Error::Parse(format!("expected {nrows} rows, found {}", rows.len())));
    }
    if simple {
        for (v, r) in rows.iter().enumerate() {
            if r.contains(v) || r.iter().any(|w| !rows[w].contains(v)) {
                return Err(Error::Parse(format!("row {v}: not a simple graph")));
            }
        }
        Ok(GraphFile::Simple {
            graph: SimpleGraph::from_adj(rows),
            spec,
        })
    } else {
        Ok(GraphFile::Bi {
            graph: BiGraph::from_rows(width, rows),
            spec,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphfam::{build_bigraph, build_simple, Mode};

    #[test]
    fn bigraph_round_trip() {
        let s = FamilySpec::thick(2, 2, 0, 1, 0, Mode::Exact);
        let g = build_bigraph(&s).unwrap().graph;
        let text = write_bigraph(&g, Some(&s));
        assert!(text.starts_with("WBG1 7 7\n"));
        match parse(&text).unwrap() {
            GraphFile::Bi { graph, spec } => {
                assert_eq!(graph, g);
                assert_eq!(spec, Some(s));
            }
            _ => panic!(),
        }
        assert_eq!(write_bigraph(&g, Some(&s)), text);
    }

    #[test]
    fn simple_round_trip() {
        let s = FamilySpec::thin(5, 2, 2, 0, Mode::Exact);
        let g = build_simple(&s).unwrap().graph;
        match parse(&write_simple(&g, None)).unwrap() {
            GraphFile::Simple { graph, spec } => {
                assert_eq!(graph, g);
                assert!(spec.is_none());
            }
            _ => panic!(),
        }
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse("").is_err());
        assert!(parse("WBG1 2 2\n01\n").is_err());
        assert!(parse("WBG1 1 2\n012\n").is_err());
        assert!(parse("WSG1 2\n11\n10\n").is_err());
        assert!(parse("XYZ 1 1\n0\n").is_err());
    }
}
