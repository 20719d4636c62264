//! Edge-list text format.
//!
//! ```text
//! # comment
//! n m
//! u v
//! ...
//! ```
//!
//! Labels that are not all decimal integers in `0..n` are remapped to dense
//! IDs in order of first appearance; the mapping is returned so reports can
//! record it.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct EdgeListFile {
    pub graph: Graph,
    /// `labels[id]` is the original label of dense vertex `id`, present only
    /// when the file's labels were remapped.
    pub labels: Option<Vec<String>>,
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<EdgeListFile> {
    let mut header: Option<(usize, usize)> = None;
    let mut raw: Vec<(String, String)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let mut fields = text.split_whitespace();
        let (a, b) = match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected two fields, got {text:?}"),
                })
            }
        };
        if header.is_none() {
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("header field {s:?} is not a count"),
                })
            };
            header = Some((parse(a)?, parse(b)?));
        } else {
            raw.push((a.to_owned(), b.to_owned()));
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing \"n m\" header".into(),
    })?;
    if raw.len() != m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header declares {m} edges, found {}", raw.len()),
        });
    }

    let numeric: Option<Vec<(u32, u32)>> = raw
        .iter()
        .map(|(a, b)| {
            let a = a.parse::<u32>().ok().filter(|&x| (x as usize) < n)?;
            let b = b.parse::<u32>().ok().filter(|&x| (x as usize) < n)?;
            Some((a, b))
        })
        .collect();
    if let Some(pairs) = numeric {
        let graph = Graph::from_edges(n, pairs)?;
        return Ok(EdgeListFile {
            graph,
            labels: None,
        });
    }

    let mut ids: HashMap<String, u32> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut pairs = Vec::with_capacity(raw.len());
    let mut id = |s: &str| -> u32 {
        *ids.entry(s.to_owned()).or_insert_with(|| {
            labels.push(s.to_owned());
            labels.len() as u32 - 1
        })
    };
    for (a, b) in &raw {
        pairs.push((id(a), id(b)));
    }
    if labels.len() > n {
        return Err(Error::Parse {
            line: 0,
            msg: format!("{} distinct labels exceed declared n = {n}", labels.len()),
        });
    }
    let graph = Graph::from_edges(n, pairs)?;
    Ok(EdgeListFile {
        graph,
        labels: Some(labels),
    })
}

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", g.n(), g.m())?;
    for e in g.edges() {
        writeln!(out, "{} {}", e.u(), e.v())?;
    }
    out.flush()?;
    Ok(())
}
