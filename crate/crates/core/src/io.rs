//! Reading and writing hypergraphs.
//!
//! Text (`.h3`): a header line `n m`, then `m` lines `a b c` with
//! `0 <= a < b < c < n`. Blank lines and lines starting with `#` are skipped.
//!
//! Binary: the magic `H3G1`, `n` as a little-endian `u32`, then the colex edge
//! bitmap packed LSB-first into `ceil(C(n,3) / 8)` bytes. Padding bits are zero.

use std::io::{BufRead, Read, Write};

use crate::error::{Error, Result};
use crate::hypergraph::{binom3, Hypergraph3, MAX_VERTICES};

pub const MAGIC: &[u8; 4] = b"H3G1";

pub fn write_text<W: Write>(h: &Hypergraph3, mut w: W) -> Result<()> {
    writeln!(w, "{} {}", h.n(), h.edge_count())?;
    let mut edges: Vec<_> = h.edges().collect();
    edges.sort_unstable();
    for (a, b, c) in edges {
        writeln!(w, "{a} {b} {c}")?;
    }
    Ok(())
}

pub fn to_text(h: &Hypergraph3) -> String {
    let mut buf = Vec::new();
    write_text(h, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ascii output")
}

pub fn read_text<R: BufRead>(r: R) -> Result<Hypergraph3> {
    let mut header: Option<(usize, usize)> = None;
    let mut h: Option<Hypergraph3> = None;
    let mut seen = 0usize;
    for (i, line) in r.lines().enumerate() {
        let lineno = i + 1;
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let nums = parse_numbers(t, lineno)?;
        match (&header, &mut h) {
            (None, _) => {
                if nums.len() != 2 {
                    return Err(parse_err(lineno, "header must be `n m`"));
                }
                let (n, m) = (nums[0], nums[1]);
                if n > MAX_VERTICES {
                    return Err(parse_err(lineno, format!("n = {n} exceeds {MAX_VERTICES}")));
                }
                if m > binom3(n) {
                    return Err(parse_err(lineno, format!("m = {m} exceeds C({n}, 3)")));
                }
                header = Some((n, m));
                h = Some(Hypergraph3::empty(n)?);
            }
            (Some((n, m)), Some(g)) => {
                if nums.len() != 3 {
                    return Err(parse_err(lineno, "edge line must be `a b c`"));
                }
                let (a, b, c) = (nums[0], nums[1], nums[2]);
                if !(a < b && b < c) {
                    return Err(parse_err(lineno, format!("edge {a} {b} {c} is not strictly increasing")));
                }
                if c >= *n {
                    return Err(parse_err(lineno, format!("vertex {c} out of range for n = {n}")));
                }
                if g.has_edge(a, b, c) {
                    return Err(parse_err(lineno, format!("duplicate edge {a} {b} {c}")));
                }
                if seen == *m {
                    return Err(parse_err(lineno, format!("more than the declared {m} edges")));
                }
                g.add_edge(a, b, c)?;
                seen += 1;
            }
            (Some(_), None) => unreachable!(),
        }
    }
    match (header, h) {
        (Some((_, m)), Some(g)) => {
            if seen != m {
                return Err(parse_err(0, format!("header declares {m} edges, found {seen}")));
            }
            Ok(g)
        }
        _ => Err(parse_err(0, "missing header")),
    }
}

pub fn from_text(s: &str) -> Result<Hypergraph3> {
    read_text(s.as_bytes())
}

fn parse_numbers(t: &str, lineno: usize) -> Result<Vec<usize>> {
    t.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| parse_err(lineno, format!("not a non-negative integer: {tok:?}")))
        })
        .collect()
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn write_binary<W: Write>(h: &Hypergraph3, mut w: W) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&(h.n() as u32).to_le_bytes())?;
    let nbytes = binom3(h.n()).div_ceil(8);
    let mut out = Vec::with_capacity(nbytes);
    for word in h.raw_bits() {
        out.extend_from_slice(&word.to_le_bytes());
    }
    out.truncate(nbytes);
    w.write_all(&out)?;
    Ok(())
}

pub fn read_binary<R: Read>(mut r: R) -> Result<Hypergraph3> {
    let mut head = [0u8; 8];
    r.read_exact(&mut head).map_err(|_| Error::Binary("truncated header".into()))?;
    if &head[..4] != MAGIC {
        return Err(Error::Binary("bad magic".into()));
    }
    let n = u32::from_le_bytes([head[4], head[5], head[6], head[7]]) as usize;
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    let total = binom3(n);
    let nbytes = total.div_ceil(8);
    let mut body = Vec::with_capacity(nbytes);
    r.read_to_end(&mut body)?;
    if body.len() != nbytes {
        return Err(Error::Binary(format!("expected {nbytes} bitmap bytes, found {}", body.len())));
    }
    if total % 8 != 0 {
        let last = body[nbytes - 1];
        if last >> (total % 8) != 0 {
            return Err(Error::Binary("non-zero padding bits".into()));
        }
    }
    let mut words = vec![0u64; total.div_ceil(64)];
    for (i, chunk) in body.chunks(8).enumerate() {
        let mut b = [0u8; 8];
        b[..chunk.len()].copy_from_slice(chunk);
        words[i] = u64::from_le_bytes(b);
    }
    Ok(Hypergraph3::from_raw(n, words))
}

/// Loads either format, sniffing the magic bytes.
pub fn load(path: &std::path::Path) -> Result<Hypergraph3> {
    let bytes = std::fs::read(path)?;
    if bytes.starts_with(MAGIC) {
        read_binary(&bytes[..])
    } else {
        read_text(&bytes[..])
    }
}
