//! Plain-text instance formats.
//!
//! Matroids:
//!
//! ```text
//! # comment
//! n 4
//! 0x1
//! 0x3
//! w 0x3 2
//! ```
//!
//! The `n` line gives the ambient dimension, each further line one point in
//! hex, and `w <point> <weight>` overrides the default weight 1.
//!
//! Graphs:
//!
//! ```text
//! v 4
//! e 0 0 1
//! e 1 1 2 3
//! ```
//!
//! `v` gives the vertex count, each `e <id> <u> <v> [weight]` one edge.

use crate::error::{Error, Result};
use crate::graph::{EdgeWeights, Graph};
use crate::matroid::{BinaryMatroid, WeightedMatroid};
use std::collections::BTreeMap;
use std::fmt::Write;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then(|| (i + 1, l.split_whitespace().collect()))
    })
}

fn hex(line: usize, s: &str) -> Result<u32> {
    let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    u32::from_str_radix(digits, 16).map_err(|e| parse_err(line, format!("bad point {s:?}: {e}")))
}

fn num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e| parse_err(line, format!("bad number {s:?}: {e}")))
}

pub fn parse_matroid(text: &str) -> Result<WeightedMatroid> {
    let mut dim: Option<u8> = None;
    let mut points = Vec::new();
    let mut weights = BTreeMap::new();
    for (line, words) in lines(text) {
        match words.as_slice() {
            ["n", d] => {
                if dim.is_some() {
                    return Err(parse_err(line, "dimension given twice"));
                }
                dim = Some(num(line, d)?);
            }
            ["w", p, x] => {
                weights.insert(hex(line, p)?, num(line, x)?);
            }
            [p] if dim.is_some() => points.push(hex(line, p)?),
            _ => return Err(parse_err(line, format!("unexpected line {:?}", words.join(" ")))),
        }
    }
    let dim = dim.ok_or_else(|| parse_err(0, "missing `n <dim>` line"))?;
    let m = BinaryMatroid::new(dim, points)?;
    WeightedMatroid::from_map(m, &weights)
}

pub fn write_matroid(mw: &WeightedMatroid) -> String {
    let m = mw.matroid();
    let mut out = format!("n {}\n", m.ambient_dim());
    for &p in m.points() {
        writeln!(out, "{p:#x}").expect("write to string");
    }
    for (&p, &w) in m.points().iter().zip(mw.weights()) {
        if w != 1 {
            writeln!(out, "w {p:#x} {w}").expect("write to string");
        }
    }
    out
}

pub fn parse_graph(text: &str) -> Result<(Graph, EdgeWeights)> {
    let mut vertices: Option<usize> = None;
    let mut edges = Vec::new();
    let mut weights = EdgeWeights::new();
    for (line, words) in lines(text) {
        match words.as_slice() {
            ["v", n] => {
                if vertices.is_some() {
                    return Err(parse_err(line, "vertex count given twice"));
                }
                vertices = Some(num(line, n)?);
            }
            ["e", id, u, v, rest @ ..] if rest.len() <= 1 => {
                let id: u32 = num(line, id)?;
                edges.push((id, num(line, u)?, num(line, v)?));
                if let [w] = rest {
                    weights.insert(id, num(line, w)?);
                }
            }
            _ => return Err(parse_err(line, format!("unexpected line {:?}", words.join(" ")))),
        }
    }
    let n = vertices.ok_or_else(|| parse_err(0, "missing `v <count>` line"))?;
    Ok((Graph::new(n, edges)?, weights))
}

pub fn write_graph(g: &Graph, w: &EdgeWeights) -> String {
    let mut out = format!("v {}\n", g.vertex_count());
    for e in g.edges() {
        match w.get(&e.id) {
            Some(&x) if x != 1 => writeln!(out, "e {} {} {} {x}", e.id, e.u, e.v),
            _ => writeln!(out, "e {} {} {}", e.id, e.u, e.v),
        }
        .expect("write to string");
    }
    out
}
