//! Line-oriented text formats.
//!
//! * Cayley tables: `n=`, `labels=`, `add=` followed by `n` rows, then
//!   optional `mul=` block, `zero=` and `one=`.
//! * Matrices: header `rows cols semiring`, then rows of value tokens.
//!   Vector and generator files are matrices with one vector per row.
//! * Graphs: `u v w` edge lines.
//! * Sampled functions: header `origin step count orientation`, then one
//!   value per line.
//!
//! `#` starts a comment in every format; blank lines are skipped.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::calculus::{Orientation, SampledFunction};
use crate::error::{Error, Result};
use crate::linalg::{Graph, TropMatrix, TropVector};
use crate::order::CayleyStructure;
use crate::semiring::{fmt_extended, parse_extended, SemiringDescriptor};

/// Reads a file, mapping I/O failures to a parse error on line 0.
pub fn read_file(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    fs::read_to_string(path).map_err(|e| Error::parse(0, format!("{}: {e}", path.display())))
}

/// Non-empty lines with comments stripped, paired with 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_index(line: usize, token: &str, n: usize) -> Result<usize> {
    let i: usize = token
        .trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("expected an index, got {token:?}")))?;
    if i >= n {
        return Err(Error::parse(line, format!("index {i} outside 0..{n}")));
    }
    Ok(i)
}

fn parse_table(
    lines: &mut std::iter::Peekable<impl Iterator<Item = (usize, impl AsRef<str>)>>,
    n: usize,
    what: &str,
    header_line: usize,
) -> Result<Vec<Vec<usize>>> {
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| Error::parse(header_line, format!("{what} table ends after {r} of {n} rows")))?;
        let row = l
            .as_ref()
            .split_whitespace()
            .map(|t| parse_index(ln, t, n))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::parse(ln, format!("{what} row has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn parse_cayley(text: &str) -> Result<CayleyStructure> {
    let mut lines = content_lines(text).peekable();
    let mut n: Option<usize> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut add = None;
    let mut mul = None;
    let mut zero = None;
    let mut one = None;
    while let Some((ln, l)) = lines.next() {
        let (key, value) = l
            .split_once('=')
            .ok_or_else(|| Error::parse(ln, format!("expected key=value, got {l:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        let need_n = || n.ok_or_else(|| Error::parse(ln, format!("{key}= before n=")));
        match key {
            "n" => {
                let v: usize = value
                    .parse()
                    .map_err(|_| Error::parse(ln, format!("bad element count {value:?}")))?;
                if v == 0 {
                    return Err(Error::parse(ln, "element count must be positive"));
                }
                n = Some(v);
            }
            "labels" => {
                let ls: Vec<String> = value.split(',').map(|s| s.trim().to_string()).collect();
                if ls.len() != need_n()? || ls.iter().any(String::is_empty) {
                    return Err(Error::parse(ln, format!("expected {} non-empty labels", need_n()?)));
                }
                labels = Some(ls);
            }
            "add" | "mul" => {
                if !value.is_empty() {
                    return Err(Error::parse(ln, format!("{key}= takes its rows on the following lines")));
                }
                let t = parse_table(&mut lines, need_n()?, key, ln)?;
                if key == "add" {
                    add = Some(t);
                } else {
                    mul = Some(t);
                }
            }
            "zero" => zero = Some(parse_index(ln, value, need_n()?)?),
            "one" => one = Some(parse_index(ln, value, need_n()?)?),
            other => return Err(Error::parse(ln, format!("unknown key {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| Error::parse(0, "missing n="))?;
    let add = add.ok_or_else(|| Error::parse(0, "missing add= table"))?;
    let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
    let mut s = CayleyStructure::new(labels, add)?;
    if let Some(m) = mul {
        s = s.with_mul(m)?;
    }
    if let Some(z) = zero {
        s = s.with_zero(z)?;
    }
    if let Some(o) = one {
        s = s.with_one(o)?;
    }
    Ok(s)
}

fn write_table(out: &mut String, t: &[Vec<usize>]) {
    for row in t {
        let parts: Vec<String> = row.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", parts.join(" "));
    }
}

pub fn write_cayley(s: &CayleyStructure) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n={}", s.len());
    let _ = writeln!(out, "labels={}", s.labels().join(","));
    out.push_str("add=\n");
    write_table(&mut out, s.add_table());
    if let Some(m) = s.mul_table() {
        out.push_str("mul=\n");
        write_table(&mut out, m);
    }
    if let Some(z) = s.zero() {
        let _ = writeln!(out, "zero={z}");
    }
    if let Some(o) = s.one() {
        let _ = writeln!(out, "one={o}");
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<TropMatrix> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(0, "empty matrix file"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let [r, c, sr] = parts.as_slice() else {
        return Err(Error::parse(hl, format!("expected header \"rows cols semiring\", got {header:?}")));
    };
    let dim = |t: &str| {
        t.parse::<usize>()
            .map_err(|_| Error::parse(hl, format!("bad dimension {t:?}")))
    };
    let (rows, cols) = (dim(r)?, dim(c)?);
    let d: SemiringDescriptor = sr.parse().map_err(|e: Error| Error::parse(hl, e.to_string()))?;
    let mut values = Vec::with_capacity(rows * cols);
    let mut seen = 0;
    for (ln, l) in lines {
        if seen == rows {
            return Err(Error::parse(ln, format!("more than {rows} rows")));
        }
        let row: Vec<_> = l
            .split_whitespace()
            .map(|t| d.parse(t).map_err(|e| Error::parse(ln, e.to_string())))
            .collect::<Result<_>>()?;
        if row.len() != cols {
            return Err(Error::parse(ln, format!("row has {} entries, expected {cols}", row.len())));
        }
        values.extend(row);
        seen += 1;
    }
    if seen != rows {
        return Err(Error::parse(hl, format!("header promises {rows} rows, found {seen}")));
    }
    TropMatrix::new(d, rows, cols, values)
}

pub fn write_matrix(m: &TropMatrix) -> String {
    format!("{} {} {}\n{}", m.rows(), m.cols(), m.descriptor(), m)
}

/// Rows of a matrix file as vectors.
pub fn parse_vectors(text: &str) -> Result<Vec<TropVector>> {
    let m = parse_matrix(text)?;
    (0..m.rows())
        .map(|i| TropVector::new(m.descriptor(), m.row(i).to_vec()))
        .collect()
}

/// A single vector stored as a one-row matrix file.
pub fn parse_vector(text: &str) -> Result<TropVector> {
    let mut vs = parse_vectors(text)?;
    if vs.len() != 1 {
        return Err(Error::parse(1, format!("expected one vector, found {}", vs.len())));
    }
    Ok(vs.remove(0))
}

pub fn write_vectors(vs: &[TropVector]) -> Result<String> {
    let first = vs.first().ok_or_else(|| Error::Domain("no vectors to write".into()))?;
    let rows = vs.iter().map(|v| v.values().to_vec()).collect();
    Ok(write_matrix(&TropMatrix::from_rows(first.descriptor(), rows)?))
}

/// Edge list; the node count is one more than the largest id mentioned.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    for (ln, l) in content_lines(text) {
        let parts: Vec<&str> = l.split_whitespace().collect();
        let [u, v, w] = parts.as_slice() else {
            return Err(Error::parse(ln, format!("expected \"u v w\", got {l:?}")));
        };
        let id = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| Error::parse(ln, format!("bad node id {t:?}")))
        };
        let w = parse_extended(w).map_err(|e| Error::parse(ln, e.to_string()))?;
        edges.push((id(u)?, id(v)?, w));
    }
    let n = edges.iter().map(|&(u, v, _)| u.max(v) + 1).max().unwrap_or(0);
    Graph::new(n, edges)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    for &(u, v, w) in &g.edges {
        let _ = writeln!(out, "{u} {v} {}", fmt_extended(w));
    }
    out
}

pub fn parse_sampled(text: &str) -> Result<SampledFunction> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(0, "empty sampled-function file"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let [o, s, c, orient] = parts.as_slice() else {
        return Err(Error::parse(
            hl,
            format!("expected header \"origin step count orientation\", got {header:?}"),
        ));
    };
    let num = |t: &str| parse_extended(t).map_err(|e| Error::parse(hl, e.to_string()));
    let (origin, step) = (num(o)?, num(s)?);
    let count: usize = c
        .parse()
        .map_err(|_| Error::parse(hl, format!("bad sample count {c:?}")))?;
    let orientation: Orientation = orient.parse().map_err(|e: Error| Error::parse(hl, e.to_string()))?;
    let mut values = Vec::with_capacity(count);
    for (ln, l) in lines {
        if values.len() == count {
            return Err(Error::parse(ln, format!("more than {count} samples")));
        }
        values.push(parse_extended(l).map_err(|e| Error::parse(ln, e.to_string()))?);
    }
    if values.len() != count {
        return Err(Error::parse(hl, format!("header promises {count} samples, found {}", values.len())));
    }
    SampledFunction::new(origin, step, values, orientation).map_err(|e| Error::parse(hl, e.to_string()))
}

pub fn write_sampled(f: &SampledFunction) -> String {
    let mut out = format!(
        "{} {} {} {}\n",
        fmt_extended(f.origin()),
        fmt_extended(f.step()),
        f.len(),
        f.orientation()
    );
    for &v in f.values() {
        let _ = writeln!(out, "{}", fmt_extended(v));
    }
    out
}
