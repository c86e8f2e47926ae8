//! Exact OFF-style mesh files and lossy OBJ export.
//!
//! ```text
//! pl-off <dim>         # or plain `OFF` for dimension 3
//! <V> <F> [E]
//! x y z ...            # V lines, rationals
//! 3 a b c              # F lines, 0-based
//! ```

use super::TriMesh;
use crate::exact::{format_rational, parse_rational, to_f64, Point};
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeshIoError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("OBJ export needs a mesh in R^3, got R^{0}")]
    ObjDimension(usize),
    #[error("unknown mesh format for {0}; use .off or .obj")]
    UnknownFormat(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeshFormat {
    Off,
    Obj,
}

impl MeshFormat {
    pub fn from_path(path: &Path) -> Result<MeshFormat, MeshIoError> {
        match path.extension().and_then(|e| e.to_str()) {
            Some("off") => Ok(MeshFormat::Off),
            Some("obj") => Ok(MeshFormat::Obj),
            _ => Err(MeshIoError::UnknownFormat(path.display().to_string())),
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> MeshIoError {
    MeshIoError::Parse {
        line,
        message: message.into(),
    }
}

pub fn format_off(m: &TriMesh) -> String {
    let mut s = format!("pl-off {}\n{} {}\n", m.dim(), m.vertices().len(), m.t());
    for v in m.vertices() {
        let c: Vec<String> = v.coords().iter().map(format_rational).collect();
        let _ = writeln!(s, "{}", c.join(" "));
    }
    for t in m.triangles() {
        let _ = writeln!(s, "3 {} {} {}", t[0], t[1], t[2]);
    }
    s
}

/// Parses exact OFF text. Provenance tags are not stored in the file.
pub fn parse_off(text: &str) -> Result<TriMesh, MeshIoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| err(1, "empty file"))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    let dim = match h.as_slice() {
        ["OFF"] => 3,
        ["pl-off", d] => d.parse().map_err(|_| err(hl, "bad dimension"))?,
        _ => return Err(err(hl, "expected `pl-off <dim>` or `OFF`")),
    };
    let (cl, counts) = lines.next().ok_or_else(|| err(hl + 1, "missing counts"))?;
    let counts: Vec<usize> = counts
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| err(cl, "bad count")))
        .collect::<Result<_, _>>()?;
    let (nv, nf) = match counts.as_slice() {
        [v, f] | [v, f, _] => (*v, *f),
        _ => return Err(err(cl, "expected `<V> <F>`")),
    };
    let mut verts = Vec::with_capacity(nv);
    let mut tris = Vec::with_capacity(nf);
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if verts.len() < nv {
            if toks.len() != dim {
                return Err(err(ln, format!("expected {dim} coordinates, found {}", toks.len())));
            }
            let c = toks
                .iter()
                .map(|t| parse_rational(t).map_err(|e| err(ln, e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            verts.push(Point::new(c));
        } else if tris.len() < nf {
            let idx: Vec<usize> = toks
                .iter()
                .map(|t| t.parse().map_err(|_| err(ln, "bad index")))
                .collect::<Result<_, _>>()?;
            match idx.as_slice() {
                [3, a, b, c] if *a < nv && *b < nv && *c < nv => tris.push([*a, *b, *c]),
                [3, ..] => return Err(err(ln, "vertex index out of range")),
                _ => return Err(err(ln, "only triangles are supported")),
            }
        } else {
            return Err(err(ln, "trailing data"));
        }
    }
    if verts.len() != nv || tris.len() != nf {
        return Err(err(text.lines().count(), "file ends early"));
    }
    Ok(TriMesh::new(dim, verts, tris))
}

/// Decimal approximation, 1-based faces. Not read back.
pub fn format_obj(m: &TriMesh) -> Result<String, MeshIoError> {
    if m.dim() != 3 {
        return Err(MeshIoError::ObjDimension(m.dim()));
    }
    let mut s = String::from("# decimal approximation of exact coordinates\n");
    for v in m.vertices() {
        let c: Vec<String> = v.coords().iter().map(|x| format!("{}", to_f64(x))).collect();
        let _ = writeln!(s, "v {}", c.join(" "));
    }
    for t in m.triangles() {
        let _ = writeln!(s, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1);
    }
    Ok(s)
}

/// Writes by extension: `.off` (exact) or `.obj` (decimal).
pub fn export_mesh(m: &TriMesh, path: impl AsRef<Path>) -> Result<(), MeshIoError> {
    let path = path.as_ref();
    let text = match MeshFormat::from_path(path)? {
        MeshFormat::Off => format_off(m),
        MeshFormat::Obj => format_obj(m)?,
    };
    std::fs::write(path, text)?;
    Ok(())
}

pub fn import_mesh(path: impl AsRef<Path>) -> Result<TriMesh, MeshIoError> {
    parse_off(&std::fs::read_to_string(path)?)
}
