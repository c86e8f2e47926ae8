//! Triangulated surfaces in `R^d` and the checks run on them.

mod filter;
mod io;
mod verify;

pub use io::{export_mesh, format_obj, format_off, import_mesh, parse_off, MeshFormat, MeshIoError};
pub use verify::{
    boundary_matches, check_boundary_match, check_embedded, check_embedded_with, EmbedMode, MeshViolation,
    ViolationKind,
};

use crate::exact::point::affinely_independent;
use crate::exact::{Point, Rational};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, VecDeque};
use thiserror::Error;

/// Which construction step produced a triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// planar triangulation of a circuit's copy at its level
    Bowl(usize),
    /// vertical wall under a circuit edge
    Wall(usize),
    /// half-twisted band at a crossing
    BowTie(usize),
    Ear,
    Cone,
    Fan,
    Annulus,
    /// strip joining a 4-dimensional polygon to its projection
    Column,
}

impl Provenance {
    pub fn kind(&self) -> &'static str {
        match self {
            Provenance::Bowl(_) => "bowl",
            Provenance::Wall(_) => "wall",
            Provenance::BowTie(_) => "bowtie",
            Provenance::Ear => "ear",
            Provenance::Cone => "cone",
            Provenance::Fan => "fan",
            Provenance::Annulus => "annulus",
            Provenance::Column => "column",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriMesh {
    dim: usize,
    vertices: Vec<Point>,
    triangles: Vec<[usize; 3]>,
    provenance: Vec<Option<Provenance>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeshError {
    #[error("vertex {index} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("triangle {0} refers to a missing vertex")]
    IndexOutOfRange(usize),
    #[error("triangle {0} is degenerate")]
    DegenerateTriangle(usize),
    #[error("triangles {0} and {1} are the same")]
    DuplicateTriangle(usize, usize),
    #[error("edge ({}, {}) lies on {count} triangles", .edge.0, .edge.1)]
    EdgeMultiplicity { edge: (usize, usize), count: usize },
    #[error("the triangles around vertex {0} do not form a disk or half-disk")]
    NonManifoldVertex(usize),
}

impl TriMesh {
    pub fn new(dim: usize, vertices: Vec<Point>, triangles: Vec<[usize; 3]>) -> TriMesh {
        let provenance = vec![None; triangles.len()];
        TriMesh {
            dim,
            vertices,
            triangles,
            provenance,
        }
    }

    pub fn empty(dim: usize) -> TriMesh {
        TriMesh::new(dim, Vec::new(), Vec::new())
    }

    pub fn add_vertex(&mut self, p: Point) -> usize {
        self.vertices.push(p);
        self.vertices.len() - 1
    }

    pub fn add_triangle(&mut self, t: [usize; 3], tag: Provenance) {
        self.triangles.push(t);
        self.provenance.push(Some(tag));
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn provenance(&self) -> &[Option<Provenance>] {
        &self.provenance
    }

    /// Number of triangles.
    pub fn t(&self) -> usize {
        self.triangles.len()
    }

    pub fn triangle_points(&self, i: usize) -> [&Point; 3] {
        let [a, b, c] = self.triangles[i];
        [&self.vertices[a], &self.vertices[b], &self.vertices[c]]
    }

    /// Applies `f` to every vertex, keeping the combinatorics.
    pub fn map_vertices(&self, dim: usize, f: impl Fn(&Point) -> Point) -> TriMesh {
        TriMesh {
            dim,
            vertices: self.vertices.iter().map(f).collect(),
            triangles: self.triangles.clone(),
            provenance: self.provenance.clone(),
        }
    }

    /// Counts per provenance kind.
    pub fn provenance_counts(&self) -> BTreeMap<&'static str, usize> {
        let mut m = BTreeMap::new();
        for p in self.provenance.iter().flatten() {
            *m.entry(p.kind()).or_insert(0) += 1;
        }
        m
    }

    /// Flips the listed triangles.
    pub fn flip(&mut self, flips: &[bool]) {
        for (t, &f) in self.triangles.iter_mut().zip(flips) {
            if f {
                t.swap(1, 2);
            }
        }
    }

    /// Appends another mesh, identifying vertices with equal coordinates.
    pub fn merge(&mut self, other: &TriMesh) {
        let mut index: HashMap<Point, usize> = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            index.entry(v.clone()).or_insert(i);
        }
        let mut remap = Vec::with_capacity(other.vertices.len());
        for v in &other.vertices {
            let next = self.vertices.len();
            let i = *index.entry(v.clone()).or_insert(next);
            if i == next {
                self.vertices.push(v.clone());
            }
            remap.push(i);
        }
        for (t, p) in other.triangles.iter().zip(&other.provenance) {
            self.triangles.push([remap[t[0]], remap[t[1]], remap[t[2]]]);
            self.provenance.push(*p);
        }
    }
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Counts from the edge census of a valid surface triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldSummary {
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub chi: i64,
    /// undirected, sorted
    pub boundary_edges: Vec<(usize, usize)>,
    pub boundary_components: usize,
    pub components: usize,
}

/// Edge census plus structural checks: nondegenerate, no duplicates, each
/// edge on one or two triangles, each vertex star a disk or half-disk.
pub fn validate_manifold(m: &TriMesh) -> Result<ManifoldSummary, MeshError> {
    for (i, v) in m.vertices.iter().enumerate() {
        if v.dim() != m.dim {
            return Err(MeshError::DimensionMismatch {
                index: i,
                expected: m.dim,
                found: v.dim(),
            });
        }
    }
    let nv = m.vertices.len();
    let mut seen: HashMap<[usize; 3], usize> = HashMap::new();
    for (i, t) in m.triangles.iter().enumerate() {
        if t.iter().any(|&x| x >= nv) {
            return Err(MeshError::IndexOutOfRange(i));
        }
        let [a, b, c] = m.triangle_points(i);
        if !affinely_independent(&[a, b, c]) {
            return Err(MeshError::DegenerateTriangle(i));
        }
        let mut key = *t;
        key.sort();
        if let Some(&j) = seen.get(&key) {
            return Err(MeshError::DuplicateTriangle(j, i));
        }
        seen.insert(key, i);
    }

    let mut edges: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for t in &m.triangles {
        for k in 0..3 {
            *edges.entry(edge_key(t[k], t[(k + 1) % 3])).or_insert(0) += 1;
        }
    }
    if let Some((&edge, &count)) = edges.iter().find(|(_, &c)| c > 2) {
        return Err(MeshError::EdgeMultiplicity { edge, count });
    }

    // vertex links must be a single path or cycle
    let mut links: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for t in &m.triangles {
        for k in 0..3 {
            links.entry(t[k]).or_default().push((t[(k + 1) % 3], t[(k + 2) % 3]));
        }
    }
    for (&v, link) in &links {
        if !link_is_path_or_cycle(link) {
            return Err(MeshError::NonManifoldVertex(v));
        }
    }

    let boundary_edges: Vec<(usize, usize)> = edges.iter().filter(|(_, &c)| c == 1).map(|(&e, _)| e).collect();
    let v = links.len();
    let e = edges.len();
    let f = m.triangles.len();
    let chi = v as i64 - e as i64 + f as i64;
    let boundary_components = count_components(boundary_edges.iter().copied());
    let components = count_components(m.triangles.iter().flat_map(|t| [(t[0], t[1]), (t[1], t[2])]));
    Ok(ManifoldSummary {
        v,
        e,
        f,
        chi,
        boundary_edges,
        boundary_components,
        components,
    })
}

fn link_is_path_or_cycle(link: &[(usize, usize)]) -> bool {
    let mut deg: HashMap<usize, usize> = HashMap::new();
    for &(a, b) in link {
        *deg.entry(a).or_insert(0) += 1;
        *deg.entry(b).or_insert(0) += 1;
    }
    if deg.values().any(|&d| d > 2) {
        return false;
    }
    count_components(link.iter().copied()) == 1
}

/// Connected components of the graph spanned by the given edges.
fn count_components(edges: impl Iterator<Item = (usize, usize)>) -> usize {
    let mut parent: HashMap<usize, usize> = HashMap::new();
    fn find(p: &mut HashMap<usize, usize>, x: usize) -> usize {
        let mut r = x;
        while let Some(&q) = p.get(&r) {
            if q == r {
                break;
            }
            r = q;
        }
        let mut y = x;
        while y != r {
            let next = p[&y];
            p.insert(y, r);
            y = next;
        }
        r
    }
    for (a, b) in edges {
        parent.entry(a).or_insert(a);
        parent.entry(b).or_insert(b);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent.insert(ra, rb);
        }
    }
    let keys: Vec<usize> = parent.keys().copied().collect();
    let mut roots: Vec<usize> = keys.into_iter().map(|k| find(&mut parent, k)).collect();
    roots.sort();
    roots.dedup();
    roots.len()
}

/// Euler characteristic built up one triangle at a time.
pub fn chi_incremental(m: &TriMesh) -> i64 {
    let mut verts = std::collections::HashSet::new();
    let mut edges = std::collections::HashSet::new();
    let mut chi = 0i64;
    for t in &m.triangles {
        for &v in t {
            if verts.insert(v) {
                chi += 1;
            }
        }
        for k in 0..3 {
            if edges.insert(edge_key(t[k], t[(k + 1) % 3])) {
                chi -= 1;
            }
        }
        chi += 1;
    }
    chi
}

/// `3F = 2E - m` where `m` counts boundary edges.
pub fn check_identity_3t(s: &ManifoldSummary) -> bool {
    3 * s.f == 2 * s.e - s.boundary_edges.len()
}

/// A closed chain of triangles, each sharing an edge with the next (and the
/// last with the first), around which orientation cannot be transported.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("non-orientable: orientation reverses around triangles {cycle:?}")]
pub struct NonOrientable {
    pub cycle: Vec<usize>,
}

/// Breadth-first orientation transport across interior edges. On success,
/// which triangles to flip for a coherent orientation.
pub fn orientation_propagate(m: &TriMesh) -> Result<Vec<bool>, NonOrientable> {
    let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, t) in m.triangles.iter().enumerate() {
        for k in 0..3 {
            by_edge.entry(edge_key(t[k], t[(k + 1) % 3])).or_default().push(i);
        }
    }
    let forward = |t: &[usize; 3], a: usize, b: usize| (0..3).any(|k| t[k] == a && t[(k + 1) % 3] == b);
    let nt = m.triangles.len();
    let mut flip: Vec<Option<bool>> = vec![None; nt];
    let mut parent: Vec<usize> = (0..nt).collect();
    for root in 0..nt {
        if flip[root].is_some() {
            continue;
        }
        flip[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let t = m.triangles[i];
            let fi = flip[i].expect("visited");
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                for &j in &by_edge[&edge_key(a, b)] {
                    if j == i {
                        continue;
                    }
                    // coherent iff the shared edge is traversed in opposite directions
                    let di = forward(&t, a, b) ^ fi;
                    let need = forward(&m.triangles[j], a, b) ^ !di;
                    match flip[j] {
                        None => {
                            flip[j] = Some(need);
                            parent[j] = i;
                            queue.push_back(j);
                        }
                        Some(fj) if fj != need => {
                            return Err(NonOrientable {
                                cycle: tree_cycle(&parent, i, j),
                            })
                        }
                        Some(_) => {}
                    }
                }
            }
        }
    }
    Ok(flip.into_iter().map(|f| f.unwrap_or(false)).collect())
}

fn tree_cycle(parent: &[usize], a: usize, b: usize) -> Vec<usize> {
    let path = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != x {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let pa = path(a);
    let pb = path(b);
    let lca = *pa.iter().find(|x| pb.contains(x)).expect("same tree");
    let mut cycle: Vec<usize> = pa.iter().copied().take_while(|&x| x != lca).collect();
    cycle.push(lca);
    let back: Vec<usize> = pb.iter().copied().take_while(|&x| x != lca).collect();
    cycle.extend(back.into_iter().rev());
    cycle
}

/// Coherently oriented copy, or the obstruction.
pub fn orient_consistently(m: &TriMesh) -> Result<TriMesh, NonOrientable> {
    let flips = orientation_propagate(m)?;
    let mut out = m.clone();
    out.flip(&flips);
    Ok(out)
}

/// Everything the checks establish about one surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    #[serde(rename = "V")]
    pub v: usize,
    #[serde(rename = "E")]
    pub e: usize,
    #[serde(rename = "F")]
    pub f: usize,
    pub chi: i64,
    pub boundary_components: usize,
    pub boundary_edges: usize,
    pub components: usize,
    pub orientable: bool,
    /// `(2 - chi - b) / 2`, a half-integer for non-orientable surfaces
    #[serde(serialize_with = "ser_rational")]
    pub genus: Rational,
    pub identity_3t: bool,
    pub t: usize,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::exact::format_rational(q))
}

/// Census, orientability and genus (embeddedness is checked separately).
pub fn surface_report(m: &TriMesh) -> Result<SurfaceReport, MeshError> {
    let s = validate_manifold(m)?;
    let orientable = orientation_propagate(m).is_ok();
    let genus = Rational::from_signeds(2 - s.chi - s.boundary_components as i64, 2);
    Ok(SurfaceReport {
        v: s.v,
        e: s.e,
        f: s.f,
        chi: s.chi,
        boundary_components: s.boundary_components,
        boundary_edges: s.boundary_edges.len(),
        components: s.components,
        orientable,
        genus,
        identity_3t: check_identity_3t(&s),
        t: m.t(),
    })
}
