//! Knot diagrams: projection along the third coordinate after a rational
//! shear, crossings with over/under data and signs.

use crate::exact::predicates::{orient2d_raw, seg_intersect_raw, SegIntersection};
use crate::exact::{int, rat, segment_crossing_params, AffineMap, IntersectionKind, Point, Rational, Sign};
use crate::polygon::ClosedPolygon;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

/// Names of the general-position predicates, in the order they are checked.
pub const PREDICATES: [&str; 6] = [
    "no-vertical-edge",
    "vertices-turn",
    "edges-meet-at-most-once",
    "crossings-interior",
    "crossings-distinct",
    "crossings-off-vertices",
];

/// Random shears tried after the identity.
pub const SHEAR_BUDGET: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("diagrams need a polygon in R^3, got dimension {0}")]
    NotThreeDimensional(usize),
    #[error("no general position shear in {attempts} attempts (seed {seed}); last failure: {predicate}")]
    Exhausted {
        seed: u64,
        attempts: usize,
        predicate: &'static str,
    },
    #[error("projection not in general position: {0}")]
    NotGeneral(&'static str),
    #[error("edges {0} and {1} meet in space")]
    NotEmbedded(usize, usize),
}

/// A shear under which projecting along the third axis is generic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralPositionCert {
    pub transform: AffineMap,
    pub checks: Vec<&'static str>,
    /// 0 for the identity, `k` for the `k`-th random shear.
    pub attempt: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    #[serde(serialize_with = "ser_point")]
    pub position: Point,
    pub over_edge: usize,
    pub under_edge: usize,
    #[serde(skip)]
    pub over_param: Rational,
    #[serde(skip)]
    pub under_param: Rational,
    pub sign: i32,
}

fn ser_point<S: serde::Serializer>(p: &Point, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(p.dim()))?;
    for c in p.coords() {
        seq.serialize_element(&crate::exact::format_rational(c))?;
    }
    seq.end()
}

/// A crossing seen from one of its two edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mark {
    pub param: Rational,
    pub crossing: usize,
    pub over: bool,
}

/// A point of the subdivided curve: an original vertex or a crossing passage.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveNode {
    Vertex(usize),
    Passage { crossing: usize, over: bool },
}

#[derive(Clone, Debug)]
pub struct KnotDiagram {
    /// original coordinates to diagram frame (shear, then lift to `z >= 1`)
    frame: AffineMap,
    lifted: Vec<Point>,
    crossings: Vec<Crossing>,
    marks: Vec<Vec<Mark>>,
}

fn project_xy(p: &Point) -> [Rational; 2] {
    [p.coord(0).clone(), p.coord(1).clone()]
}

fn shear(a: Rational, b: Rational) -> AffineMap {
    AffineMap::linear(vec![
        vec![int(1), int(0), a],
        vec![int(0), int(1), b],
        vec![int(0), int(0), int(1)],
    ])
    .expect("3x3")
}

/// First failing general-position predicate for projecting `p` after `t`.
pub fn check_general_position(p: &ClosedPolygon, t: &AffineMap) -> Result<(), &'static str> {
    let pts: Vec<Point> = p.vertices().iter().map(|v| t.apply_unchecked(v)).collect();
    let q: Vec<[Rational; 2]> = pts.iter().map(project_xy).collect();
    let n = q.len();
    if (0..n).any(|i| q[i] == q[(i + 1) % n]) {
        return Err(PREDICATES[0]);
    }
    if (0..n).any(|i| orient2d_raw(&q[(i + n - 1) % n], &q[i], &q[(i + 1) % n]) == Sign::Zero) {
        return Err(PREDICATES[1]);
    }
    let mut hits = Vec::new();
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            match seg_intersect_raw(&q[i], &q[(i + 1) % n], &q[j], &q[(j + 1) % n]) {
                SegIntersection::Empty => {}
                hit => hits.push(hit),
            }
        }
    }
    if hits.contains(&SegIntersection::Overlap) {
        return Err(PREDICATES[2]);
    }
    let mut positions = Vec::with_capacity(hits.len());
    for h in hits {
        match h {
            SegIntersection::Point(x, IntersectionKind::InteriorInterior) => positions.push(x),
            _ => return Err(PREDICATES[3]),
        }
    }
    positions.sort();
    if positions.windows(2).any(|w| w[0] == w[1]) {
        return Err(PREDICATES[4]);
    }
    if positions.iter().any(|x| q.iter().any(|v| x.coords() == v.as_slice())) {
        return Err(PREDICATES[5]);
    }
    Ok(())
}

/// Identity first, then seeded shears `x += a z, y += b z` with
/// `a, b in {k / 1024 : |k| <= 1024}`.
pub fn find_general_position(p: &ClosedPolygon, seed: u64) -> Result<GeneralPositionCert, DiagramError> {
    search(p, seed, 0)
}

/// Like `find_general_position` but never the identity, so different seeds
/// give different projection directions.
pub fn find_random_position(p: &ClosedPolygon, seed: u64) -> Result<GeneralPositionCert, DiagramError> {
    search(p, seed, 1)
}

fn search(p: &ClosedPolygon, seed: u64, first: usize) -> Result<GeneralPositionCert, DiagramError> {
    if p.dim() != 3 {
        return Err(DiagramError::NotThreeDimensional(p.dim()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = PREDICATES[0];
    for attempt in first..=SHEAR_BUDGET {
        let t = if attempt == 0 {
            AffineMap::identity(3)
        } else {
            let a = rat(rng.gen_range(-1024..=1024), 1024);
            let b = rat(rng.gen_range(-1024..=1024), 1024);
            shear(a, b)
        };
        match check_general_position(p, &t) {
            Ok(()) => {
                return Ok(GeneralPositionCert {
                    transform: t,
                    checks: PREDICATES.to_vec(),
                    attempt,
                })
            }
            Err(pred) => last = pred,
        }
    }
    Err(DiagramError::Exhausted {
        seed,
        attempts: SHEAR_BUDGET + 1,
        predicate: last,
    })
}

/// Projects along the third axis after `cert.transform`, lifted so the
/// lowest vertex sits at height 1.
pub fn project(p: &ClosedPolygon, cert: &GeneralPositionCert) -> Result<KnotDiagram, DiagramError> {
    if p.dim() != 3 {
        return Err(DiagramError::NotThreeDimensional(p.dim()));
    }
    check_general_position(p, &cert.transform).map_err(DiagramError::NotGeneral)?;
    let sheared: Vec<Point> = p.vertices().iter().map(|v| cert.transform.apply_unchecked(v)).collect();
    let min_z = sheared.iter().map(|v| v.coord(2)).min().expect("n >= 3").clone();
    let lift = AffineMap::translation(vec![int(0), int(0), int(1) - min_z]);
    let frame = lift.compose(&cert.transform).expect("3x3");
    let lifted: Vec<Point> = sheared.iter().map(|v| lift.apply_unchecked(v)).collect();

    let n = lifted.len();
    let q: Vec<Point> = lifted.iter().map(|v| v.truncate(2)).collect();
    let mut crossings = Vec::new();
    let mut marks = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (a, b) = (&q[i], &q[(i + 1) % n]);
            let (c, d) = (&q[j], &q[(j + 1) % n]);
            let Some((s, u)) = segment_crossing_params(a, b, c, d) else {
                continue;
            };
            let hi = Point::lerp(&lifted[i], &lifted[(i + 1) % n], &s).coord(2).clone();
            let hj = Point::lerp(&lifted[j], &lifted[(j + 1) % n], &u).coord(2).clone();
            let position = Point::lerp(a, b, &s);
            let (over, under, op, up) = match hi.cmp(&hj) {
                std::cmp::Ordering::Greater => (i, j, s, u),
                std::cmp::Ordering::Less => (j, i, u, s),
                std::cmp::Ordering::Equal => return Err(DiagramError::NotEmbedded(i, j)),
            };
            let dir = |e: usize| q[e].vector_to(&q[(e + 1) % n]);
            let (ov, un) = (dir(over), dir(under));
            let cross = &ov[0] * &un[1] - &ov[1] * &un[0];
            let sign = Sign::of(&cross).as_i32();
            let id = crossings.len();
            marks[over].push(Mark {
                param: op.clone(),
                crossing: id,
                over: true,
            });
            marks[under].push(Mark {
                param: up.clone(),
                crossing: id,
                over: false,
            });
            crossings.push(Crossing {
                position,
                over_edge: over,
                under_edge: under,
                over_param: op,
                under_param: up,
                sign,
            });
        }
    }
    for m in &mut marks {
        m.sort_by(|x, y| x.param.cmp(&y.param));
    }
    Ok(KnotDiagram {
        frame,
        lifted,
        crossings,
        marks,
    })
}

/// The projection along the third axis with no shear; fails if that is
/// not generic.
pub fn project_canonical(p: &ClosedPolygon) -> Result<KnotDiagram, DiagramError> {
    let cert = GeneralPositionCert {
        transform: AffineMap::identity(3),
        checks: PREDICATES.to_vec(),
        attempt: 0,
    };
    project(p, &cert)
}

/// `find_general_position` followed by `project`.
pub fn diagram_for(p: &ClosedPolygon, seed: u64) -> Result<(GeneralPositionCert, KnotDiagram), DiagramError> {
    let cert = find_general_position(p, seed)?;
    let d = project(p, &cert)?;
    Ok((cert, d))
}

/// Diagram under a seeded non-identity shear.
pub fn random_diagram(p: &ClosedPolygon, seed: u64) -> Result<KnotDiagram, DiagramError> {
    project(p, &find_random_position(p, seed)?)
}

/// Upper bound `n(n-3)/2` on the number of crossings.
pub fn crossing_budget(n: usize) -> usize {
    n * n.saturating_sub(3) / 2
}

impl KnotDiagram {
    pub fn n(&self) -> usize {
        self.lifted.len()
    }

    pub fn frame(&self) -> &AffineMap {
        &self.frame
    }

    /// Polygon vertices in the diagram frame, all with height at least 1.
    pub fn lifted_vertices(&self) -> &[Point] {
        &self.lifted
    }

    pub fn plane_vertex(&self, i: usize) -> Point {
        self.lifted[i % self.n()].truncate(2)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Crossings along edge `e`, sorted by parameter.
    pub fn marks(&self, e: usize) -> &[Mark] {
        &self.marks[e]
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Number of crossings; panics if the `n(n-3)/2` budget is exceeded,
    /// which would mean a predicate bug.
    pub fn crossing_count(&self) -> usize {
        let c = self.crossings.len();
        assert!(c <= crossing_budget(self.n()), "crossing budget exceeded: {c}");
        c
    }

    /// Point on edge `e` of the lifted polygon at parameter `t`.
    pub fn lift_at(&self, e: usize, t: &Rational) -> Point {
        let n = self.n();
        Point::lerp(&self.lifted[e % n], &self.lifted[(e + 1) % n], t)
    }

    /// The curve as a cyclic sequence of vertices and crossing passages.
    pub fn curve_nodes(&self) -> Vec<CurveNode> {
        let mut out = Vec::with_capacity(self.n() + 2 * self.crossings.len());
        for e in 0..self.n() {
            out.push(CurveNode::Vertex(e));
            for m in &self.marks[e] {
                out.push(CurveNode::Passage {
                    crossing: m.crossing,
                    over: m.over,
                });
            }
        }
        out
    }

    /// Projected polygon, for winding numbers.
    pub fn plane_polygon(&self) -> Vec<Point> {
        (0..self.n()).map(|i| self.plane_vertex(i)).collect()
    }
}
