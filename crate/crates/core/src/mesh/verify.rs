use super::filter::{float, seg_separated, separated, FloatTri};
use super::{validate_manifold, MeshError, TriMesh};
use crate::exact::simplex::witness_raw;
use crate::exact::tri3::{seg_tri_violation, tri_tri_violation, Tri3};
use crate::exact::{Point, Rational, SharedFace};
use crate::par::{find_first, Execution};
use crate::polygon::ClosedPolygon;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// What `check_embedded` requires of the mesh.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EmbedMode {
    /// closed triangles meet only in shared faces
    #[default]
    Embedded,
    /// triangles may cross each other but not the boundary curve, and the
    /// boundary itself is embedded
    ComplementaryImmersed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    Triangles(usize, usize),
    TriangleBoundary { triangle: usize, edge: (usize, usize) },
    BoundaryEdges((usize, usize), (usize, usize)),
    BoundaryMismatch(String),
    NotManifold(MeshError),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct MeshViolation {
    pub kind: ViolationKind,
    pub witness: Option<Point>,
}

impl fmt::Display for MeshViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ViolationKind::Triangles(a, b) => write!(f, "triangles {a} and {b} intersect")?,
            ViolationKind::TriangleBoundary { triangle, edge } => {
                write!(f, "triangle {triangle} meets boundary edge {edge:?}")?
            }
            ViolationKind::BoundaryEdges(a, b) => write!(f, "boundary edges {a:?} and {b:?} intersect")?,
            ViolationKind::BoundaryMismatch(s) => write!(f, "boundary does not match the curve: {s}")?,
            ViolationKind::NotManifold(e) => write!(f, "{e}")?,
        }
        if let Some(w) = &self.witness {
            write!(f, " at {w}")?;
        }
        Ok(())
    }
}

fn violation(kind: ViolationKind, witness: Option<Point>) -> MeshViolation {
    MeshViolation { kind, witness }
}

/// Per-vertex integer ranks of each coordinate; boxes compare on these.
struct Boxes {
    ranks: Vec<Vec<u32>>,
}

impl Boxes {
    fn new(m: &TriMesh) -> Boxes {
        let d = m.dim();
        let mut ranks = vec![vec![0u32; d]; m.vertices().len()];
        for k in 0..d {
            let mut vals: Vec<&Rational> = m.vertices().iter().map(|v| v.coord(k)).collect();
            vals.sort();
            vals.dedup();
            for (i, v) in m.vertices().iter().enumerate() {
                ranks[i][k] = vals.binary_search(&v.coord(k)).expect("present") as u32;
            }
        }
        Boxes { ranks }
    }

    fn of(&self, idx: &[usize]) -> Vec<(u32, u32)> {
        let d = self.ranks.first().map_or(0, |r| r.len());
        (0..d)
            .map(|k| {
                let it = idx.iter().map(|&i| self.ranks[i][k]);
                (it.clone().min().unwrap(), it.max().unwrap())
            })
            .collect()
    }
}

fn overlap(a: &[(u32, u32)], b: &[(u32, u32)]) -> bool {
    a.iter().zip(b).all(|(x, y)| x.0 <= y.1 && y.0 <= x.1)
}

fn shared_pairs(a: &[usize], b: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if x == y {
                out.push((i, j));
            }
        }
    }
    out
}

fn points(m: &TriMesh, idx: &[usize]) -> Vec<Point> {
    idx.iter().map(|&i| m.vertices()[i].clone()).collect()
}

/// Witness for a pair of simplices given by vertex indices, sharing by index.
fn witness(m: &TriMesh, a: &[usize], b: &[usize]) -> Option<Point> {
    witness_raw(&points(m, a), &points(m, b), &SharedFace::pairs(shared_pairs(a, b)))
}

pub fn check_embedded(m: &TriMesh, curve: Option<&ClosedPolygon>, mode: EmbedMode) -> Result<(), MeshViolation> {
    check_embedded_with(m, curve, mode, Execution::default())
}

/// Exact intersection check. Reports the lowest-index violating pair. When
/// `curve` is given the mesh boundary must also trace it.
pub fn check_embedded_with(
    m: &TriMesh,
    curve: Option<&ClosedPolygon>,
    mode: EmbedMode,
    exec: Execution,
) -> Result<(), MeshViolation> {
    let summary = validate_manifold(m).map_err(|e| violation(ViolationKind::NotManifold(e), None))?;
    let boxes = Boxes::new(m);
    let tris = m.triangles();
    let tri_boxes: Vec<_> = tris.iter().map(|t| boxes.of(t)).collect();
    let fast: Option<Vec<(Tri3, FloatTri)>> = (m.dim() == 3).then(|| {
        let v = m.vertices();
        tris.iter()
            .map(|t| {
                let p = [&v[t[0]], &v[t[1]], &v[t[2]]];
                (Tri3::new(p[0], p[1], p[2]), FloatTri::new(p))
            })
            .collect()
    });

    match mode {
        EmbedMode::Embedded => {
            let hit = find_first(tris.len(), exec, |i| {
                (i + 1..tris.len()).find_map(|j| {
                    if !overlap(&tri_boxes[i], &tri_boxes[j]) {
                        return None;
                    }
                    let shared = shared_pairs(&tris[i], &tris[j]);
                    if let Some(f) = &fast {
                        if separated(&f[i].1, &f[j].1, &shared) {
                            return None;
                        }
                        if !tri_tri_violation(&f[i].0, &f[j].0, &shared) {
                            return None;
                        }
                    }
                    let w = witness(m, &tris[i], &tris[j]);
                    debug_assert!(fast.is_none() || w.is_some());
                    w.map(|w| violation(ViolationKind::Triangles(i, j), Some(w)))
                })
            });
            if let Some(v) = hit {
                return Err(v);
            }
        }
        EmbedMode::ComplementaryImmersed => {
            let edges = &summary.boundary_edges;
            let edge_boxes: Vec<_> = edges.iter().map(|&(a, b)| boxes.of(&[a, b])).collect();
            let hit = find_first(tris.len(), exec, |i| {
                edges.iter().enumerate().find_map(|(k, &(a, b))| {
                    if !overlap(&tri_boxes[i], &edge_boxes[k]) {
                        return None;
                    }
                    let shared = shared_pairs(&[a, b], &tris[i]);
                    if let Some(f) = &fast {
                        let v = m.vertices();
                        if seg_separated([float(&v[a]), float(&v[b])], &f[i].1, &shared) {
                            return None;
                        }
                        if !seg_tri_violation([v[a].coords(), v[b].coords()], &f[i].0, &shared) {
                            return None;
                        }
                    }
                    witness(m, &[a, b], &tris[i]).map(|w| {
                        violation(
                            ViolationKind::TriangleBoundary {
                                triangle: i,
                                edge: (a, b),
                            },
                            Some(w),
                        )
                    })
                })
            });
            if let Some(v) = hit {
                return Err(v);
            }
            let hit = find_first(edges.len(), exec, |i| {
                (i + 1..edges.len()).find_map(|j| {
                    if !overlap(&edge_boxes[i], &edge_boxes[j]) {
                        return None;
                    }
                    let (a, b) = (edges[i], edges[j]);
                    witness(m, &[a.0, a.1], &[b.0, b.1]).map(|w| violation(ViolationKind::BoundaryEdges(a, b), Some(w)))
                })
            });
            if let Some(v) = hit {
                return Err(v);
            }
        }
    }

    if let Some(p) = curve {
        check_boundary_match(m, p).map_err(|s| violation(ViolationKind::BoundaryMismatch(s), None))?;
    }
    Ok(())
}

/// The boundary as a single vertex cycle.
fn boundary_cycle(m: &TriMesh) -> Result<Vec<usize>, String> {
    let s = validate_manifold(m).map_err(|e| e.to_string())?;
    if s.boundary_components != 1 {
        return Err(format!("{} boundary components", s.boundary_components));
    }
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(a, b) in &s.boundary_edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.values().any(|v| v.len() != 2) {
        return Err("boundary is not a simple cycle".into());
    }
    let start = s.boundary_edges[0].0;
    let mut cycle = vec![start];
    let mut prev = start;
    let mut cur = adj[&start][0];
    while cur != start {
        cycle.push(cur);
        let next = if adj[&cur][0] == prev {
            adj[&cur][1]
        } else {
            adj[&cur][0]
        };
        prev = cur;
        cur = next;
    }
    Ok(cycle)
}

/// Checks that the mesh boundary is a subdivision of `p`, traversed in
/// either direction.
pub fn check_boundary_match(m: &TriMesh, p: &ClosedPolygon) -> Result<(), String> {
    if m.dim() != p.dim() {
        return Err(format!("mesh in R^{}, curve in R^{}", m.dim(), p.dim()));
    }
    let cycle = boundary_cycle(m)?;
    let v = m.vertices();
    let start = cycle
        .iter()
        .position(|&i| &v[i] == p.vertex(0))
        .ok_or("first curve vertex is not on the boundary")?;
    let mut fwd: Vec<&Point> = (0..cycle.len()).map(|k| &v[cycle[(start + k) % cycle.len()]]).collect();
    if trace(&fwd, p).is_ok() {
        return Ok(());
    }
    fwd[1..].reverse();
    trace(&fwd, p)
}

fn trace(walk: &[&Point], p: &ClosedPolygon) -> Result<(), String> {
    let n = p.n();
    let mut pos: Vec<(usize, Rational)> = Vec::with_capacity(walk.len());
    for q in walk {
        let (e, t) = p
            .locate(q)
            .ok_or_else(|| format!("boundary vertex {q} is off the curve"))?;
        if let Some((pe, pt)) = pos.last() {
            let ok = (e == *pe && t > *pt) || (e == pe + 1 && t == 0u32);
            if !ok {
                return Err(format!("boundary leaves the curve after {q}"));
            }
        }
        pos.push((e, t));
    }
    match pos.last() {
        Some((e, _)) if *e == n - 1 => Ok(()),
        _ => Err("boundary does not close along the last edge".into()),
    }
}

pub fn boundary_matches(m: &TriMesh, p: &ClosedPolygon) -> bool {
    check_boundary_match(m, p).is_ok()
}
