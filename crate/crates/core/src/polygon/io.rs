//! Line-oriented polygon files:
//!
//! ```text
//! pl-polygon <dim> <n>
//! x y z        # n lines of dim rationals, `p/q` or decimal
//! ```

use super::{validate_embedded, ClosedPolygon, PolygonError};
use crate::exact::{format_rational, parse_rational, Point};
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PolygonIoError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid polygon: {0}")]
    Invalid(#[from] PolygonError),
}

fn parse_err(line: usize, message: impl Into<String>) -> PolygonIoError {
    PolygonIoError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses and validates (structure and embeddedness).
pub fn parse_polygon(text: &str) -> Result<ClosedPolygon, PolygonIoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 || fields[0] != "pl-polygon" {
        return Err(parse_err(hl, "expected header `pl-polygon <dim> <n>`"));
    }
    let dim: usize = fields[1].parse().map_err(|_| parse_err(hl, "bad dimension"))?;
    let n: usize = fields[2].parse().map_err(|_| parse_err(hl, "bad vertex count"))?;
    let mut verts = Vec::with_capacity(n);
    for (ln, l) in lines {
        if verts.len() == n {
            return Err(parse_err(ln, format!("more than {n} vertex lines")));
        }
        let coords = l
            .split_whitespace()
            .map(|tok| parse_rational(tok).map_err(|e| parse_err(ln, e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        if coords.len() != dim {
            return Err(parse_err(
                ln,
                format!("expected {dim} coordinates, found {}", coords.len()),
            ));
        }
        verts.push(Point::new(coords));
    }
    if verts.len() != n {
        return Err(parse_err(
            text.lines().count(),
            format!("expected {n} vertices, found {}", verts.len()),
        ));
    }
    let p = ClosedPolygon::new(verts)?;
    validate_embedded(&p).map_err(PolygonError::NotEmbedded)?;
    Ok(p)
}

pub fn read_polygon(path: impl AsRef<Path>) -> Result<ClosedPolygon, PolygonIoError> {
    parse_polygon(&std::fs::read_to_string(path)?)
}

pub fn format_polygon(p: &ClosedPolygon) -> String {
    let mut s = format!("pl-polygon {} {}\n", p.dim(), p.n());
    for v in p.vertices() {
        let line: Vec<String> = v.coords().iter().map(format_rational).collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    s
}

pub fn write_polygon(p: &ClosedPolygon, path: impl AsRef<Path>) -> Result<(), PolygonIoError> {
    std::fs::write(path, format_polygon(p))?;
    Ok(())
}
