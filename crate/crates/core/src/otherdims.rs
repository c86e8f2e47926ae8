//! Spanning surfaces outside `R^3`: ear clipping in the plane, cones for
//! `d >= 5`, and two constructions in `R^4`.

use crate::earclip::ear_clip;
use crate::exact::point::{dot, rank};
use crate::exact::{hulls_intersect, int, rat, unit_circle_point, Point, Rational};
use crate::mesh::{check_embedded, EmbedMode, MeshViolation, Provenance, TriMesh};
use crate::polygon::ClosedPolygon;
use crate::seifert::{spanning_surface_r3, SeifertError, SeifertSurface, SmoothingRule};
use malachite::num::arithmetic::traits::Ceiling;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;
use thiserror::Error;

pub const CONE_BUDGET: usize = 100;
pub const FLAT_BUDGET: usize = 100;
pub const DIRECTION_BUDGET: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OtherDimError {
    #[error("construction needs dimension {expected}, got {found}")]
    WrongDimension { expected: &'static str, found: usize },
    #[error("polygon is not simple")]
    NotSimple,
    #[error("no valid {what} after {attempts} attempts (seed {seed}); last failure: {last}")]
    Exhausted {
        what: &'static str,
        attempts: usize,
        seed: u64,
        last: String,
    },
    #[error("surface failed verification: {0}")]
    Verification(MeshViolation),
}

fn exhausted(what: &'static str, attempts: usize, seed: u64, last: String) -> OtherDimError {
    OtherDimError::Exhausted {
        what,
        attempts,
        seed,
        last,
    }
}

/// `n - 2` triangles on the polygon's own vertices.
pub fn earclip_2d(p: &ClosedPolygon) -> Result<TriMesh, OtherDimError> {
    if p.dim() != 2 {
        return Err(OtherDimError::WrongDimension {
            expected: "2",
            found: p.dim(),
        });
    }
    let tris = ear_clip(p.vertices()).ok_or(OtherDimError::NotSimple)?;
    let mut m = TriMesh::new(2, p.vertices().to_vec(), Vec::new());
    for t in tris {
        m.add_triangle(t, Provenance::Ear);
    }
    Ok(m)
}

/// Fan of `n` triangles from `apex` to the edges of `p`. Not checked.
pub fn cone_with_apex(p: &ClosedPolygon, apex: &Point) -> TriMesh {
    let n = p.n();
    let mut verts = p.vertices().to_vec();
    verts.push(apex.clone());
    let mut m = TriMesh::new(p.dim(), verts, Vec::new());
    for i in 0..n {
        m.add_triangle([n, i, (i + 1) % n], Provenance::Cone);
    }
    m
}

/// Coordinate scale of `p`: one more than its largest absolute coordinate.
fn extent(p: &ClosedPolygon) -> i64 {
    let mut r = int(1);
    for v in p.vertices() {
        for c in v.coords() {
            let a = if *c < 0u32 { -c } else { c.clone() };
            if a > r {
                r = a;
            }
        }
    }
    i64::try_from(&r.ceiling()).unwrap_or(1 << 40) + 1
}

fn random_point(rng: &mut ChaCha8Rng, dim: usize, scale: i64) -> Point {
    Point::new(
        (0..dim)
            .map(|_| rat(rng.gen_range(-8 * scale..=8 * scale), 8))
            .collect(),
    )
}

#[derive(Clone, Debug)]
pub struct Cone {
    pub mesh: TriMesh,
    pub apex: Point,
    pub attempts: usize,
}

/// Cone to a seeded random apex, resampled until the fan is embedded.
pub fn cone_highdim(p: &ClosedPolygon, seed: u64) -> Result<Cone, OtherDimError> {
    if p.dim() < 5 {
        return Err(OtherDimError::WrongDimension {
            expected: ">= 5",
            found: p.dim(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = extent(p);
    let mut last = String::new();
    for attempt in 1..=CONE_BUDGET {
        let apex = random_point(&mut rng, p.dim(), scale);
        let mesh = cone_with_apex(p, &apex);
        match check_embedded(&mesh, Some(p), EmbedMode::Embedded) {
            Ok(()) => {
                return Ok(Cone {
                    mesh,
                    apex,
                    attempts: attempt,
                })
            }
            Err(v) => last = v.to_string(),
        }
    }
    Err(exhausted("cone apex", CONE_BUDGET, seed, last))
}

/// Exact basis of `{x : row . x = 0 for every row}` in `R^dim`.
fn nullspace(rows: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..dim {
        let Some(p) = (r..m.len()).find(|&i| m[i][col] != 0u32) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::from(1u32) / m[r][col].clone();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && m[i][col] != 0u32 {
                let f = m[i][col].clone();
                for k in 0..dim {
                    let sub = &f * &m[r][k];
                    m[i][k] -= sub;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (0..dim)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![int(0); dim];
            v[free] = int(1);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free].clone();
            }
            v
        })
        .collect()
}

/// Affine span of the lines through edges `i` and `j`, as a base point and
/// independent directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadCell {
    pub edges: (usize, usize),
    pub base: Point,
    pub directions: Vec<Vec<Rational>>,
}

impl BadCell {
    /// 1 for a line, 2 for a 2-flat, 3 for a hyperplane.
    pub fn dim(&self) -> usize {
        self.directions.len()
    }
}

/// The `n(n+1)/2` spans of pairs of extended edge lines, `i <= j`.
pub fn bad_set(p: &ClosedPolygon) -> Vec<BadCell> {
    let n = p.n();
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            let (a, b) = p.edge(i);
            let (c, d) = p.edge(j);
            let mut dirs: Vec<Vec<Rational>> = Vec::new();
            for v in [a.vector_to(b), a.vector_to(c), a.vector_to(d)] {
                let mut trial = dirs.clone();
                trial.push(v);
                if rank(&trial) == trial.len() {
                    dirs = trial;
                }
            }
            out.push(BadCell {
                edges: (i, j),
                base: a.clone(),
                directions: dirs,
            });
        }
    }
    out
}

/// What a bad cell leaves in a 2-flat, in the flat's `(s, t)` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Trace2 {
    Empty,
    Point([Rational; 2]),
    /// `a s + b t = c`
    Line([Rational; 3]),
    Everything,
}

/// A 2-flat `origin + s e1 + t e2` with a small convex polygon `Q` in it.
#[derive(Clone, Debug)]
pub struct FlatPlacement {
    pub origin: Point,
    pub e1: Vec<Rational>,
    pub e2: Vec<Rational>,
    /// circumradius of `Q` around the origin, in `(s, t)` units
    pub radius: Rational,
    pub q_plane: Vec<[Rational; 2]>,
    pub q: Vec<Point>,
    pub traces: Vec<Trace2>,
}

impl FlatPlacement {
    fn at(&self, s: &Rational, t: &Rational) -> Point {
        let c = self
            .origin
            .coords()
            .iter()
            .zip(self.e1.iter().zip(&self.e2))
            .map(|(o, (x, y))| o + s * x + t * y)
            .collect();
        Point::new(c)
    }
}

fn trace_in_flat(cell: &BadCell, origin: &Point, e1: &[Rational], e2: &[Rational]) -> Trace2 {
    let normals = nullspace(&cell.directions, origin.dim());
    let shift = origin.vector_to(&cell.base);
    // rows of a s + b t = c
    let mut rows: Vec<[Rational; 3]> = normals
        .iter()
        .map(|nv| [dot(nv, e1), dot(nv, e2), dot(nv, &shift)])
        .collect();
    let mut r = 0;
    for col in 0..2 {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0u32) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::from(1u32) / rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0u32 {
                let f = rows[i][col].clone();
                for k in 0..3 {
                    let sub = &f * &rows[r][k];
                    rows[i][k] -= sub;
                }
            }
        }
        r += 1;
    }
    if rows[r..].iter().any(|row| row[2] != 0u32) {
        return Trace2::Empty;
    }
    match r {
        0 => Trace2::Everything,
        1 => Trace2::Line(rows[0].clone()),
        _ => Trace2::Point([rows[0][2].clone(), rows[1][2].clone()]),
    }
}

/// Squared distance from the flat's origin to a trace, `None` for
/// `Everything`, `Some(0)` when the origin lies on it.
fn clearance2(t: &Trace2) -> Option<Option<Rational>> {
    match t {
        Trace2::Empty => Some(None),
        Trace2::Point([s, u]) => Some(Some(s * s + u * u)),
        Trace2::Line([a, b, c]) => Some(Some(c * c / (a * a + b * b))),
        Trace2::Everything => None,
    }
}

/// Whether the convex polygon `q` (in flat coordinates) misses the trace.
fn polygon_misses(q: &[[Rational; 2]], t: &Trace2) -> bool {
    match t {
        Trace2::Empty => true,
        Trace2::Everything => false,
        Trace2::Line([a, b, c]) => {
            let side: Vec<std::cmp::Ordering> = q.iter().map(|p| (a * &p[0] + b * &p[1]).cmp(c)).collect();
            side.iter().all(|s| *s == std::cmp::Ordering::Less)
                || side.iter().all(|s| *s == std::cmp::Ordering::Greater)
        }
        Trace2::Point(x) => {
            let pts: Vec<Point> = q.iter().map(|p| Point::new(p.to_vec())).collect();
            crate::exact::winding_number(&pts, &Point::new(x.to_vec())) == Some(0)
        }
    }
}

/// Complementary-immersed disk in `R^4` together with its placement.
#[derive(Clone, Debug)]
pub struct ImmersedDisk {
    pub mesh: TriMesh,
    pub placement: FlatPlacement,
    pub attempts: usize,
}

fn random_direction(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rational> {
    (0..dim).map(|_| int(rng.gen_range(-9..=9))).collect()
}

/// `3n` triangles: a fan over a small convex polygon `Q` placed in a
/// generic 2-flat away from every bad cell, and an annulus joining `Q` to
/// the polygon. Triangles may cross each other but never the boundary.
pub fn immersed_disk_4d(p: &ClosedPolygon, seed: u64) -> Result<ImmersedDisk, OtherDimError> {
    if p.dim() != 4 {
        return Err(OtherDimError::WrongDimension {
            expected: "4",
            found: p.dim(),
        });
    }
    let n = p.n();
    let cells = bad_set(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = extent(p);
    let mut last = String::new();
    for attempt in 1..=FLAT_BUDGET {
        let origin = random_point(&mut rng, 4, 2 * scale);
        let e1 = random_direction(&mut rng, 4);
        let e2 = random_direction(&mut rng, 4);
        if rank(&[e1.clone(), e2.clone()]) < 2 {
            last = "dependent directions".into();
            continue;
        }
        if hulls_intersect(std::slice::from_ref(&origin), p.vertices()).unwrap_or(true) {
            last = "centre inside the hull of P".into();
            continue;
        }
        let traces: Vec<Trace2> = cells.iter().map(|c| trace_in_flat(c, &origin, &e1, &e2)).collect();
        let mut min: Option<Rational> = None;
        let mut ok = true;
        for t in &traces {
            match clearance2(t) {
                None => ok = false,
                Some(Some(d)) if d == 0u32 => ok = false,
                Some(Some(d)) => {
                    if min.as_ref().is_none_or(|m| d < *m) {
                        min = Some(d);
                    }
                }
                Some(None) => {}
            }
        }
        if !ok {
            last = "flat meets a bad cell at its centre".into();
            continue;
        }
        // largest r = 2^-k with (2r)^2 below every clearance
        let mut radius = int(1);
        if let Some(m) = &min {
            while &radius * &radius * int(4) >= *m {
                radius /= int(2);
            }
        }
        for _shrink in 0..8 {
            let q_plane: Vec<[Rational; 2]> = (0..n)
                .map(|k| {
                    let (x, y) = unit_circle_point(TAU * k as f64 / n as f64, 16);
                    [&radius * x, &radius * y]
                })
                .collect();
            let mut placement = FlatPlacement {
                origin: origin.clone(),
                e1: e1.clone(),
                e2: e2.clone(),
                radius: radius.clone(),
                q: Vec::new(),
                q_plane,
                traces: traces.clone(),
            };
            placement.q = placement.q_plane.iter().map(|[s, t]| placement.at(s, t)).collect();
            radius /= int(2);
            if !placement.traces.iter().all(|t| polygon_misses(&placement.q_plane, t)) {
                last = "Q meets a bad cell".into();
                continue;
            }
            if hulls_intersect(&placement.q, p.vertices()).unwrap_or(true) {
                last = "Q meets the hull of P".into();
                continue;
            }
            let mesh = immersed_mesh(p, &placement.q);
            match check_embedded(&mesh, Some(p), EmbedMode::ComplementaryImmersed) {
                Ok(()) => {
                    return Ok(ImmersedDisk {
                        mesh,
                        placement,
                        attempts: attempt,
                    })
                }
                Err(v) => last = v.to_string(),
            }
        }
    }
    Err(exhausted("2-flat", FLAT_BUDGET, seed, last))
}

/// Annulus `[v_j, v_j+1, w_j+1]`, `[v_j, w_j, w_j+1]` plus a fan of `Q` to
/// its centroid.
fn immersed_mesh(p: &ClosedPolygon, q: &[Point]) -> TriMesh {
    let n = p.n();
    let mut verts = p.vertices().to_vec();
    verts.extend(q.iter().cloned());
    verts.push(Point::centroid(q));
    let mut m = TriMesh::new(4, verts, Vec::new());
    let (v, w, o) = (|j: usize| j % n, |j: usize| n + j % n, 2 * n);
    for j in 0..n {
        m.add_triangle([v(j), v(j + 1), w(j + 1)], Provenance::Annulus);
        m.add_triangle([v(j), w(j), w(j + 1)], Provenance::Annulus);
    }
    for j in 0..n {
        m.add_triangle([o, w(j), w(j + 1)], Provenance::Fan);
    }
    m
}

/// Embedded surface in `R^4`: a column from the polygon down to its image
/// in a hyperplane below it, capped by a spanning surface built there.
#[derive(Clone, Debug)]
pub struct Embedded4d {
    pub mesh: TriMesh,
    /// projection direction `(a, b, c, 1)`; `None` when `P` already lies in
    /// a hyperplane `x4 = const`
    pub direction: Option<Vec<Rational>>,
    pub cap: SeifertSurface,
    pub column_triangles: usize,
    pub attempts: usize,
}

pub fn embedded_4d(p: &ClosedPolygon, seed: u64, rule: SmoothingRule) -> Result<Embedded4d, OtherDimError> {
    if p.dim() != 4 {
        return Err(OtherDimError::WrongDimension {
            expected: "4",
            found: p.dim(),
        });
    }
    let heights: Vec<&Rational> = p.vertices().iter().map(|v| v.coord(3)).collect();
    let low = (*heights.iter().min().unwrap()).clone();
    let flat = heights.iter().all(|h| **h == low);
    let lift = |q: &Point, h: &Rational| q.extend(std::slice::from_ref(h));

    if flat {
        let p3 = p
            .map_vertices(|v| v.truncate(3))
            .map_err(|_| exhausted("projection", 1, seed, "flattened polygon is degenerate".into()))?;
        let cap = spanning_surface_r3(&p3, seed, rule).map_err(|e| exhausted("cap", 1, seed, e.to_string()))?;
        let mesh = cap.mesh.map_vertices(4, |v| lift(v, &low));
        check_embedded(&mesh, Some(p), EmbedMode::Embedded).map_err(OtherDimError::Verification)?;
        return Ok(Embedded4d {
            mesh,
            direction: None,
            cap,
            column_triangles: 0,
            attempts: 1,
        });
    }

    let floor = &low - int(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = String::new();
    for attempt in 1..=DIRECTION_BUDGET {
        let u: Vec<Rational> = if attempt == 1 {
            vec![int(0), int(0), int(0), int(1)]
        } else {
            let mut u: Vec<Rational> = (0..3).map(|_| rat(rng.gen_range(-16..=16), 16)).collect();
            u.push(int(1));
            u
        };
        let down = |v: &Point| -> Point {
            let h = v.coord(3) - &floor;
            Point::new((0..3).map(|k| v.coord(k) - &h * &u[k]).collect())
        };
        let star = match ClosedPolygon::embedded(p.vertices().iter().map(down).collect()) {
            Ok(s) => s,
            Err(e) => {
                last = format!("projected polygon: {e}");
                continue;
            }
        };
        let cap = match spanning_surface_r3(&star, seed, rule) {
            Ok(c) => c,
            Err(e @ SeifertError::Internal(_)) => return Err(exhausted("cap", attempt, seed, e.to_string())),
            Err(e) => {
                last = e.to_string();
                continue;
            }
        };
        let mut mesh = cap.mesh.map_vertices(4, |v| lift(v, &floor));
        let boundary = crate::mesh::validate_manifold(&cap.mesh)
            .map_err(|e| exhausted("cap", attempt, seed, e.to_string()))?
            .boundary_edges;
        let mut column = TriMesh::empty(4);
        let above = |v: &Point| -> Point {
            let (e, t) = star.locate(v).expect("cap boundary lies on the projected polygon");
            let (a, b) = p.edge(e);
            Point::lerp(a, b, &t)
        };
        for &(i, j) in &boundary {
            let (bi, bj) = (&cap.mesh.vertices()[i], &cap.mesh.vertices()[j]);
            let a = column.add_vertex(above(bi));
            let b = column.add_vertex(above(bj));
            let a_low = column.add_vertex(lift(bi, &floor));
            let b_low = column.add_vertex(lift(bj, &floor));
            column.add_triangle([a, b, b_low], Provenance::Column);
            column.add_triangle([a, b_low, a_low], Provenance::Column);
        }
        let column_triangles = column.t();
        mesh.merge(&column);
        match check_embedded(&mesh, Some(p), EmbedMode::Embedded) {
            Ok(()) => {
                return Ok(Embedded4d {
                    mesh,
                    direction: Some(u),
                    cap,
                    column_triangles,
                    attempts: attempt,
                })
            }
            Err(v) => last = v.to_string(),
        }
    }
    Err(exhausted("projection direction", DIRECTION_BUDGET, seed, last))
}
