//! Spanning surfaces in `R^3` from a knot diagram: smooth the crossings into
//! disjoint circuits, put a flat bowl under each circuit at a depth given by
//! its nesting level, raise vertical walls from the bowls to the curve, and
//! close each crossing with a two-triangle half-twisted band.

use crate::diagram::{diagram_for, Crossing, DiagramError, GeneralPositionCert, KnotDiagram};
use crate::earclip::ear_clip;
use crate::exact::predicates::seg_intersect_raw;
use crate::exact::{int, winding_number, Point, Rational, SegIntersection};
use crate::mesh::{check_embedded_with, orient_consistently, EmbedMode, MeshViolation, Provenance, TriMesh};
use crate::par::{map_indexed, Execution};
use crate::polygon::ClosedPolygon;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Halvings of the interior-vertex offset tried before giving up.
pub const SHRINK_BUDGET: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SmoothingRule {
    /// incoming strand to outgoing strand
    #[default]
    Orientation,
    /// keep the corners of the checkerboard colouring that are white
    WhiteEdge,
}

impl SmoothingRule {
    pub fn name(self) -> &'static str {
        match self {
            SmoothingRule::Orientation => "orientation",
            SmoothingRule::WhiteEdge => "white-edge",
        }
    }
}

impl fmt::Display for SmoothingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SmoothingRule {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "orientation" => Ok(SmoothingRule::Orientation),
            "white-edge" => Ok(SmoothingRule::WhiteEdge),
            _ => Err(format!("unknown smoothing rule `{s}` (orientation | white-edge)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeifertError {
    #[error("the construction needs a polygon in R^3, got R^{0}")]
    NotThreeDimensional(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    /// Local failure fixed by moving interior vertices closer to crossings.
    #[error("degenerate smoothing: {0}")]
    Degenerate(String),
    #[error("no valid smoothing after {attempts} offset halvings; last failure: {last}")]
    ShrinkExhausted { attempts: u32, last: String },
    #[error("construction invariant violated: {0}")]
    Internal(String),
}

/// Where a graph node sits on the curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Vertex(usize),
    /// just before a crossing passage
    Enter {
        crossing: usize,
        over: bool,
    },
    /// just after a crossing passage
    Exit {
        crossing: usize,
        over: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphNode {
    pub kind: NodeKind,
    pub edge: usize,
    pub param: Rational,
    /// projection to the diagram plane
    pub plane: Point,
    /// point of the lifted curve above `plane`
    pub lift: Point,
}

/// Which two opposite sides of a crossing's quadrilateral.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadPair {
    /// over-in to under-out and under-in to over-out
    Crossed,
    /// over-in to under-in and over-out to under-out
    Parallel,
}

/// Node ids around one crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Quad {
    pub over_in: usize,
    pub over_out: usize,
    pub under_in: usize,
    pub under_out: usize,
}

impl Quad {
    pub fn pair(&self, p: QuadPair) -> [(usize, usize); 2] {
        match p {
            QuadPair::Crossed => [(self.over_in, self.under_out), (self.under_in, self.over_out)],
            QuadPair::Parallel => [(self.over_in, self.under_in), (self.over_out, self.under_out)],
        }
    }

    fn sides(&self) -> [(usize, usize); 4] {
        let [a, b] = self.pair(QuadPair::Crossed);
        let [c, d] = self.pair(QuadPair::Parallel);
        [a, b, c, d]
    }
}

/// The subdivided curve with interior vertices beside every crossing.
#[derive(Clone, Debug)]
pub struct AugmentedDiagram {
    /// in curve order; node `i` is joined to node `i + 1`
    pub nodes: Vec<GraphNode>,
    pub quads: Vec<Quad>,
    /// the pair of quadrilateral sides lying in white faces
    pub white: Vec<QuadPair>,
    pub shrink: u32,
}

fn degenerate(msg: impl Into<String>) -> SeifertError {
    SeifertError::Degenerate(msg.into())
}

fn min_max<'a>(x: &'a Rational, y: &'a Rational) -> (&'a Rational, &'a Rational) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

/// Whether closed segments `ab`, `cd` (node ids) meet only in shared nodes.
fn segments_clear(nodes: &[GraphNode], (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    let p = |i: usize| nodes[i].plane.coords();
    for k in 0..2 {
        let (lo1, hi1) = min_max(&p(a)[k], &p(b)[k]);
        let (lo2, hi2) = min_max(&p(c)[k], &p(d)[k]);
        if hi1 < lo2 || hi2 < lo1 {
            return true;
        }
    }
    let shared: Vec<usize> = [a, b].into_iter().filter(|x| *x == c || *x == d).collect();
    match seg_intersect_raw(p(a), p(b), p(c), p(d)) {
        SegIntersection::Empty => true,
        SegIntersection::Overlap => false,
        SegIntersection::Point(q, _) => shared.iter().any(|&s| nodes[s].plane == q),
    }
}

/// Places nodes at parameter offset `delta = gap / 4 / 2^shrink` on both
/// sides of every crossing passage, where `gap` is the distance to the
/// nearest other mark or edge end.
pub fn insert_interior_vertices(d: &KnotDiagram, shrink: u32) -> Result<AugmentedDiagram, SeifertError> {
    let n = d.n();
    let c = d.crossings().len();
    let scale = Rational::from_unsigneds(1u32, 4u32) / Rational::from(1u64 << shrink.min(62));
    let mut nodes = Vec::with_capacity(n + 4 * c);
    let mut quads = vec![
        Quad {
            over_in: 0,
            over_out: 0,
            under_in: 0,
            under_out: 0,
        };
        c
    ];
    let node = |kind, e: usize, t: Rational| {
        let lift = d.lift_at(e, &t);
        GraphNode {
            kind,
            edge: e,
            plane: lift.truncate(2),
            lift,
            param: t,
        }
    };
    for e in 0..n {
        nodes.push(node(NodeKind::Vertex(e), e, int(0)));
        let marks = d.marks(e);
        for (k, m) in marks.iter().enumerate() {
            let prev = if k == 0 { int(0) } else { marks[k - 1].param.clone() };
            let next = marks.get(k + 1).map_or(int(1), |x| x.param.clone());
            let gap = (&m.param - prev).min(next - &m.param);
            let delta = gap * &scale;
            let (crossing, over) = (m.crossing, m.over);
            let q = &mut quads[crossing];
            let (slot_in, slot_out) = if over {
                (&mut q.over_in, &mut q.over_out)
            } else {
                (&mut q.under_in, &mut q.under_out)
            };
            *slot_in = nodes.len();
            *slot_out = nodes.len() + 1;
            nodes.push(node(NodeKind::Enter { crossing, over }, e, &m.param - &delta));
            nodes.push(node(NodeKind::Exit { crossing, over }, e, &m.param + &delta));
        }
    }

    let total = nodes.len();
    let arcs: Vec<(usize, usize)> = (0..total).map(|i| (i, (i + 1) % total)).collect();
    let plane = d.plane_polygon();
    let mut white = Vec::with_capacity(c);
    for (x, q) in quads.iter().enumerate() {
        for side in q.sides() {
            if let Some(a) = arcs.iter().find(|&&a| !segments_clear(&nodes, side, a)) {
                return Err(degenerate(format!(
                    "quadrilateral side {side:?} of crossing {x} meets arc {a:?}"
                )));
            }
        }
        let parity = |p: QuadPair| -> Result<[bool; 2], SeifertError> {
            let mut out = [false; 2];
            for (k, (a, b)) in q.pair(p).into_iter().enumerate() {
                let mid = Point::lerp(&nodes[a].plane, &nodes[b].plane, &Rational::from_unsigneds(1u32, 2u32));
                let w = winding_number(&plane, &mid)
                    .ok_or_else(|| degenerate(format!("corner of crossing {x} lies on the curve")))?;
                out[k] = w % 2 == 0;
            }
            Ok(out)
        };
        let crossed = parity(QuadPair::Crossed)?;
        let parallel = parity(QuadPair::Parallel)?;
        white.push(match (crossed, parallel) {
            ([true, true], [false, false]) => QuadPair::Crossed,
            ([false, false], [true, true]) => QuadPair::Parallel,
            _ => {
                return Err(degenerate(format!(
                    "corners of crossing {x} are not checkerboard coloured"
                )))
            }
        });
    }
    Ok(AugmentedDiagram {
        nodes,
        quads,
        white,
        shrink,
    })
}

/// Disjoint simple circuits left after smoothing every crossing.
#[derive(Clone, Debug)]
pub struct SmoothedGraph {
    pub nodes: Vec<GraphNode>,
    /// node cycles; consecutive nodes (cyclically) are joined
    pub circuits: Vec<Vec<usize>>,
    pub circuit_of: Vec<usize>,
    /// the two connecting edges added at each crossing
    pub connectors: Vec<[(usize, usize); 2]>,
    pub quads: Vec<Quad>,
    pub chosen: Vec<QuadPair>,
    pub rule: SmoothingRule,
    pub shrink: u32,
}

impl SmoothedGraph {
    pub fn s(&self) -> usize {
        self.circuits.len()
    }

    pub fn circuit_edge_count(&self) -> usize {
        self.circuits.iter().map(Vec::len).sum()
    }

    /// Circuit `k` in the diagram plane.
    pub fn circuit_polygon(&self, k: usize) -> Vec<Point> {
        self.circuits[k].iter().map(|&i| self.nodes[i].plane.clone()).collect()
    }

    fn circuit_edges(&self) -> Vec<(usize, usize)> {
        self.circuits
            .iter()
            .flat_map(|c| (0..c.len()).map(move |k| (c[k], c[(k + 1) % c.len()])))
            .collect()
    }
}

/// Deletes each crossing passage and reconnects the four nearby nodes in
/// pairs according to `rule`.
pub fn smooth(aug: &AugmentedDiagram, rule: SmoothingRule) -> Result<SmoothedGraph, SeifertError> {
    let total = aug.nodes.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
    for i in 0..total {
        if matches!(aug.nodes[i].kind, NodeKind::Enter { .. }) {
            continue;
        }
        let j = (i + 1) % total;
        adj[i].push(j);
        adj[j].push(i);
    }
    let chosen: Vec<QuadPair> = match rule {
        SmoothingRule::Orientation => vec![QuadPair::Crossed; aug.quads.len()],
        SmoothingRule::WhiteEdge => aug.white.clone(),
    };
    let connectors: Vec<[(usize, usize); 2]> = aug.quads.iter().zip(&chosen).map(|(q, &p)| q.pair(p)).collect();
    for &(a, b) in connectors.iter().flatten() {
        adj[a].push(b);
        adj[b].push(a);
    }
    if let Some(i) = adj.iter().position(|a| a.len() != 2) {
        return Err(SeifertError::Internal(format!("node {i} has degree {}", adj[i].len())));
    }

    let mut circuit_of = vec![usize::MAX; total];
    let mut circuits = Vec::new();
    for start in 0..total {
        if circuit_of[start] != usize::MAX {
            continue;
        }
        let id = circuits.len();
        let mut cyc = vec![start];
        circuit_of[start] = id;
        let (mut prev, mut cur) = (start, adj[start][0]);
        while cur != start {
            circuit_of[cur] = id;
            cyc.push(cur);
            let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
            prev = cur;
            cur = next;
        }
        if cyc.len() < 3 {
            return Err(degenerate(format!("circuit {id} has {} edges", cyc.len())));
        }
        circuits.push(cyc);
    }
    let g = SmoothedGraph {
        nodes: aug.nodes.clone(),
        circuits,
        circuit_of,
        connectors,
        quads: aug.quads.clone(),
        chosen,
        rule,
        shrink: aug.shrink,
    };
    let edges = g.circuit_edges();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if !segments_clear(&g.nodes, edges[i], edges[j]) {
                return Err(degenerate(format!(
                    "circuit edges {:?} and {:?} cross",
                    edges[i], edges[j]
                )));
            }
        }
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelAssignment {
    pub level: Vec<usize>,
}

impl LevelAssignment {
    pub fn max(&self) -> usize {
        self.level.iter().copied().max().unwrap_or(0)
    }

    /// Number of circuits per level.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &l in &self.level {
            *h.entry(l).or_insert(0) += 1;
        }
        h
    }
}

/// Level 1 for circuits containing no other circuit, otherwise one more
/// than the deepest circuit inside.
pub fn assign_levels(g: &SmoothedGraph) -> LevelAssignment {
    let s = g.s();
    let polys: Vec<Vec<Point>> = (0..s).map(|k| g.circuit_polygon(k)).collect();
    // inside[a] lists the circuits contained in circuit a
    let inside: Vec<Vec<usize>> = (0..s)
        .map(|a| {
            (0..s)
                .filter(|&b| b != a)
                .filter(|&b| {
                    let probe = &g.nodes[g.circuits[b][0]].plane;
                    winding_number(&polys[a], probe).is_some_and(|w| w != 0)
                })
                .collect()
        })
        .collect();
    let mut order: Vec<usize> = (0..s).collect();
    order.sort_by_key(|&a| inside[a].len());
    let mut level = vec![0usize; s];
    for a in order {
        level[a] = 1 + inside[a].iter().map(|&b| level[b]).max().unwrap_or(0);
    }
    LevelAssignment { level }
}

/// Counts recorded while building a surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertBuildTrace {
    pub s: usize,
    pub c: usize,
    pub circuit_edges: usize,
    pub t: usize,
    pub bowl: usize,
    pub wall: usize,
    pub bowtie: usize,
    pub levels: BTreeMap<usize, usize>,
    pub shrink: u32,
}

impl SeifertBuildTrace {
    /// `t = sum(|C| - 2) + 2 sum |C| + 2c`
    pub fn count_identity(&self) -> bool {
        self.t == (self.circuit_edges - 2 * self.s) + 2 * self.circuit_edges + 2 * self.c
    }
}

/// The surface in the diagram frame. Mesh vertex `i < N` is the lift of
/// node `i`; vertex `N + i` is node `i` dropped onto its bowl plane.
pub fn build_surface(g: &SmoothedGraph, levels: &LevelAssignment) -> (TriMesh, SeifertBuildTrace) {
    let total = g.nodes.len();
    let mut m = TriMesh::empty(3);
    for node in &g.nodes {
        m.add_vertex(node.lift.clone());
    }
    for (i, node) in g.nodes.iter().enumerate() {
        let z = -Rational::from(levels.level[g.circuit_of[i]] as u64);
        m.add_vertex(node.plane.extend(&[z]));
    }

    let bowls = map_indexed(g.s(), Execution::default(), |k| {
        ear_clip(&g.circuit_polygon(k)).expect("circuits are simple polygons")
    });
    let mut trace = SeifertBuildTrace {
        s: g.s(),
        c: g.quads.len(),
        circuit_edges: g.circuit_edge_count(),
        t: 0,
        bowl: 0,
        wall: 0,
        bowtie: 0,
        levels: levels.histogram(),
        shrink: g.shrink,
    };
    for (k, tris) in bowls.into_iter().enumerate() {
        let cyc = &g.circuits[k];
        for [a, b, c] in tris {
            m.add_triangle([total + cyc[a], total + cyc[b], total + cyc[c]], Provenance::Bowl(k));
            trace.bowl += 1;
        }
    }
    for (k, cyc) in g.circuits.iter().enumerate() {
        for j in 0..cyc.len() {
            let (u, v) = (cyc[j], cyc[(j + 1) % cyc.len()]);
            let (ub, vb) = (total + u, total + v);
            if g.nodes[u].lift < g.nodes[v].lift {
                m.add_triangle([ub, vb, u], Provenance::Wall(k));
                m.add_triangle([vb, v, u], Provenance::Wall(k));
            } else {
                m.add_triangle([ub, vb, v], Provenance::Wall(k));
                m.add_triangle([ub, v, u], Provenance::Wall(k));
            }
            trace.wall += 2;
        }
    }
    for (x, (q, &p)) in g.quads.iter().zip(&g.chosen).enumerate() {
        let (x1, y1) = (q.over_in, q.over_out);
        let (x2, y2) = match p {
            QuadPair::Crossed => (q.under_out, q.under_in),
            QuadPair::Parallel => (q.under_in, q.under_out),
        };
        m.add_triangle([x1, x2, y1], Provenance::BowTie(x));
        m.add_triangle([x2, y1, y2], Provenance::BowTie(x));
        trace.bowtie += 2;
    }
    trace.t = m.t();
    (m, trace)
}

/// A verified spanning surface together with how it was obtained.
#[derive(Clone, Debug)]
pub struct SeifertSurface {
    /// in the input coordinates, coherently oriented when possible
    pub mesh: TriMesh,
    /// the same surface in the diagram frame
    pub frame_mesh: TriMesh,
    pub trace: SeifertBuildTrace,
    pub levels: LevelAssignment,
    pub cert: GeneralPositionCert,
    pub writhe: i64,
    pub crossings: Vec<Crossing>,
    pub orientable: bool,
    pub rule: SmoothingRule,
}

pub fn spanning_surface_r3(p: &ClosedPolygon, seed: u64, rule: SmoothingRule) -> Result<SeifertSurface, SeifertError> {
    spanning_surface_r3_with(p, seed, rule, Execution::default())
}

/// The whole pipeline. The mesh is checked to be embedded before it is
/// returned; any local failure halves the interior-vertex offset.
pub fn spanning_surface_r3_with(
    p: &ClosedPolygon,
    seed: u64,
    rule: SmoothingRule,
    exec: Execution,
) -> Result<SeifertSurface, SeifertError> {
    if p.dim() != 3 {
        return Err(SeifertError::NotThreeDimensional(p.dim()));
    }
    let (cert, d) = diagram_for(p, seed)?;
    let n = p.n();
    let c = d.crossing_count();
    let mut last = String::new();
    for shrink in 0..SHRINK_BUDGET {
        let attempt = insert_interior_vertices(&d, shrink).and_then(|aug| smooth(&aug, rule));
        let g = match attempt {
            Ok(g) => g,
            Err(SeifertError::Degenerate(msg)) => {
                last = msg;
                continue;
            }
            Err(e) => return Err(e),
        };
        let levels = assign_levels(&g);
        if levels.max() > n {
            return Err(SeifertError::Internal(format!(
                "level {} exceeds n = {n}",
                levels.max()
            )));
        }
        let (frame_mesh, trace) = build_surface(&g, &levels);
        if !trace.count_identity() || trace.t > 3 * n + 14 * c || trace.t > 7 * n * n {
            return Err(SeifertError::Internal(format!(
                "triangle count {} out of budget",
                trace.t
            )));
        }
        if let Err(v) = check_embedded_with(&frame_mesh, None, EmbedMode::Embedded, exec) {
            last = v.to_string();
            continue;
        }
        let back = d.frame().inverse().map_err(|e| SeifertError::Internal(e.to_string()))?;
        let mesh = frame_mesh.map_vertices(3, |v| back.apply(v).expect("3d point"));
        let (mesh, orientable) = match orient_consistently(&mesh) {
            Ok(o) => (o, true),
            Err(_) => (mesh, false),
        };
        return Ok(SeifertSurface {
            mesh,
            frame_mesh,
            trace,
            levels,
            cert,
            writhe: d.writhe(),
            crossings: d.crossings().to_vec(),
            orientable,
            rule,
        });
    }
    Err(SeifertError::ShrinkExhausted {
        attempts: SHRINK_BUDGET,
        last,
    })
}

/// Embeddedness failure of a finished surface, for callers re-verifying.
pub fn verify_surface(s: &SeifertSurface, p: &ClosedPolygon, exec: Execution) -> Result<(), MeshViolation> {
    check_embedded_with(&s.mesh, Some(p), EmbedMode::Embedded, exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::project_canonical;
    use crate::mesh::{boundary_matches, surface_report};
    use crate::polygon::{gen_planar_ngon, gen_torus_stick, gen_twist_writhe};

    fn trefoil_graph(rule: SmoothingRule) -> SmoothedGraph {
        let d = project_canonical(&gen_torus_stick(3).unwrap()).unwrap();
        smooth(&insert_interior_vertices(&d, 0).unwrap(), rule).unwrap()
    }

    #[test]
    fn planar_polygons() {
        for n in [3, 4, 9] {
            let p = gen_planar_ngon(n, 3).unwrap();
            let s = spanning_surface_r3(&p, 0, SmoothingRule::Orientation).unwrap();
            assert_eq!(s.trace.s, 1);
            assert_eq!(s.trace.t, 3 * n - 2);
            assert!(s.orientable);
            assert!(boundary_matches(&s.mesh, &p));
        }
    }

    #[test]
    fn trefoil_smoothing() {
        let d = project_canonical(&gen_torus_stick(3).unwrap()).unwrap();
        let aug = insert_interior_vertices(&d, 0).unwrap();
        assert_eq!(aug.nodes.len() - 6, 12);
        let g = trefoil_graph(SmoothingRule::Orientation);
        assert_eq!(g.s(), 2);
        assert_eq!(g.circuit_edge_count(), 18);
        let w = trefoil_graph(SmoothingRule::WhiteEdge);
        let mut a = g.circuits.clone();
        let mut b = w.circuits.clone();
        for c in a.iter_mut().chain(b.iter_mut()) {
            c.sort();
        }
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn trefoil_surface() {
        let p = gen_torus_stick(3).unwrap();
        let s = spanning_surface_r3(&p, 0, SmoothingRule::Orientation).unwrap();
        assert_eq!(s.trace.t, 56);
        assert!(s.trace.count_identity());
        let r = surface_report(&s.mesh).unwrap();
        assert_eq!(r.chi, -1);
        assert_eq!(r.genus, int(1));
        assert!(r.orientable);
        assert_eq!(verify_surface(&s, &p, Execution::Sequential), Ok(()));
    }

    #[test]
    fn walls_reach_their_bowl_plane() {
        let p = gen_torus_stick(3).unwrap();
        let s = spanning_surface_r3(&p, 0, SmoothingRule::Orientation).unwrap();
        let m = &s.frame_mesh;
        for (t, tag) in m.triangles().iter().zip(m.provenance()) {
            if let Some(Provenance::Wall(k)) | Some(Provenance::Bowl(k)) = tag {
                let z = -Rational::from(s.levels.level[*k] as u64);
                let low = t.iter().map(|&i| m.vertices()[i].coord(2)).min().unwrap();
                assert_eq!(low, &z);
            }
        }
    }

    #[test]
    fn levels_of_nested_circuits() {
        // two concentric squares as circuits of one graph
        let sq = |r: i64, base: usize| -> Vec<GraphNode> {
            [(-r, -r), (r, -r), (r, r), (-r, r)]
                .iter()
                .enumerate()
                .map(|(k, &(x, y))| GraphNode {
                    kind: NodeKind::Vertex(base + k),
                    edge: base + k,
                    param: int(0),
                    plane: Point::from_ints(&[x, y]),
                    lift: Point::from_ints(&[x, y, 1]),
                })
                .collect()
        };
        let mut nodes = sq(2, 0);
        nodes.extend(sq(1, 4));
        let mk = |nodes: Vec<GraphNode>, circuits: Vec<Vec<usize>>| SmoothedGraph {
            circuit_of: vec![0; nodes.len()],
            nodes,
            circuits,
            connectors: vec![],
            quads: vec![],
            chosen: vec![],
            rule: SmoothingRule::Orientation,
            shrink: 0,
        };
        let g = mk(nodes.clone(), vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]]);
        assert_eq!(assign_levels(&g).level, vec![2, 1]);
        let mut apart = sq(1, 0);
        apart.extend(sq(1, 4).into_iter().map(|mut n| {
            n.plane = n.plane.translate(&[int(10), int(0)]);
            n
        }));
        let g = mk(apart, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]]);
        assert_eq!(assign_levels(&g).level, vec![1, 1]);
        let g = mk(nodes, vec![vec![0, 1, 2, 3]]);
        assert_eq!(assign_levels(&g).level, vec![1]);
    }

    #[test]
    fn twist_surface() {
        let p = gen_twist_writhe(2).unwrap();
        let s = spanning_surface_r3(&p, 0, SmoothingRule::Orientation).unwrap();
        assert_eq!(s.writhe.abs(), 6);
        assert!(s.trace.t >= 7);
        assert!(s.orientable);
        let r = surface_report(&s.mesh).unwrap();
        assert_eq!(r.chi, s.trace.s as i64 - s.trace.c as i64);
    }

    #[test]
    fn rule_names_round_trip() {
        for r in [SmoothingRule::Orientation, SmoothingRule::WhiteEdge] {
            assert_eq!(r.name().parse::<SmoothingRule>(), Ok(r));
        }
        assert!("black".parse::<SmoothingRule>().is_err());
    }
}
