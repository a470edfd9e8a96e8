//! Text format: `v=<int>`, then row `i` (for `i = 0..v`) as a hex number
//! whose bit `j` is the edge `{i, j}`, `j < i`.  Row 0 may be omitted.
//! Blank lines and `#` comments are ignored.

use crate::bitmat::BitMatrix;

use super::{CayleyGraph, GraphError};

pub fn write_graph(g: &CayleyGraph) -> String {
    let v = g.v();
    let mut out = format!("v={v}\n");
    for i in 0..v {
        // nibble k covers bits 4k..4k+3
        let nibbles = i.div_ceil(4).max(1);
        let line: String = (0..nibbles)
            .rev()
            .map(|k| {
                let d = (0..4).filter(|&b| 4 * k + b < i && g.has_edge(i, 4 * k + b)).fold(0u32, |acc, b| acc | 1 << b);
                char::from_digit(d, 16).unwrap()
            })
            .collect();
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn parse_graph(text: &str) -> Result<CayleyGraph, GraphError> {
    let err = |line: usize, msg: String| GraphError::Parse { line, msg };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (ln, header) = lines.next().ok_or_else(|| err(1, "missing v= header".into()))?;
    let v: usize = header
        .strip_prefix("v=")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| err(ln, format!("expected v=<int>, got {header:?}")))?;
    let rows: Vec<(usize, &str)> = lines.collect();
    let offset = match rows.len() {
        n if n == v => 0,
        n if n + 1 == v => 1,
        n => return Err(err(ln, format!("expected {v} or {} rows, found {n}", v.saturating_sub(1)))),
    };
    let mut adj = BitMatrix::zeros(v, v);
    for (r, &(ln, hex)) in rows.iter().enumerate() {
        let i = r + offset;
        for (k, c) in hex.chars().rev().enumerate() {
            let d = c.to_digit(16).ok_or_else(|| err(ln, format!("bad hex digit {c:?}")))?;
            for b in 0..4 {
                if d >> b & 1 == 1 {
                    let j = 4 * k + b;
                    if j >= i {
                        return Err(err(ln, format!("row {i} sets bit {j}, outside the lower triangle")));
                    }
                    adj.set(i, j, true);
                    adj.set(j, i, true);
                }
            }
        }
    }
    let mut g = CayleyGraph::from_matrix(adj);
    g.detect_xor_translations();
    Ok(g)
}
