//! Closed polygons in `R^d`, their embeddedness check, generator families
//! and the text file format.

mod generators;
mod io;

pub use generators::{
    gen_planar_ngon, gen_random, gen_random_with_budget, gen_torus_stick, gen_twist_writhe, lift_generic, Family,
    FamilySpec,
};
pub use io::{format_polygon, parse_polygon, read_polygon, write_polygon, PolygonIoError};

use crate::exact::point::rank;
use crate::exact::simplex::witness_raw;
use crate::exact::{Point, SharedFace};
use crate::par::{find_first, Execution};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("a closed polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {index} has dimension {found}, expected {expected}")]
    MixedDimension {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("ambient dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("vertices {0} and {1} coincide")]
    RepeatedVertex(usize, usize),
    #[error("vertex {0} is collinear with its neighbours")]
    StraightVertex(usize),
    #[error("edges {} and {} intersect at {}", .0.edges.0, .0.edges.1, .0.witness)]
    NotEmbedded(EmbeddingViolation),
    #[error("{family} parameter {value} out of range: {reason}")]
    BadParameter {
        family: &'static str,
        value: usize,
        reason: &'static str,
    },
    #[error("generator failed after {attempts} attempts (seed {seed})")]
    GeneratorExhausted { seed: u64, attempts: usize },
    #[error("generator self-check failed: {0}")]
    SelfCheck(String),
}

/// Two edges (0-based, edge `i` runs from vertex `i` to vertex `i+1`) that
/// meet where they should not, with a point of the intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingViolation {
    pub edges: (usize, usize),
    pub witness: Point,
}

/// A closed polygonal curve `v_0 -> v_1 -> ... -> v_{n-1} -> v_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedPolygon {
    vertices: Vec<Point>,
}

impl ClosedPolygon {
    /// Checks structure only: size, dimension, no repeated consecutive
    /// vertices and no vertex collinear with its two neighbours.
    pub fn new(vertices: Vec<Point>) -> Result<Self, PolygonError> {
        let n = vertices.len();
        if n < 3 {
            return Err(PolygonError::TooFewVertices(n));
        }
        let d = vertices[0].dim();
        if d < 2 {
            return Err(PolygonError::DimensionTooSmall(d));
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.dim() != d {
                return Err(PolygonError::MixedDimension {
                    index: i,
                    expected: d,
                    found: v.dim(),
                });
            }
        }
        for i in 0..n {
            let j = (i + 1) % n;
            if vertices[i] == vertices[j] {
                return Err(PolygonError::RepeatedVertex(i, j));
            }
        }
        for i in 0..n {
            let prev = &vertices[(i + n - 1) % n];
            let next = &vertices[(i + 1) % n];
            let cur = &vertices[i];
            if rank(&[prev.vector_to(cur), cur.vector_to(next)]) < 2 {
                return Err(PolygonError::StraightVertex(i));
            }
        }
        Ok(ClosedPolygon { vertices })
    }

    /// Structural checks plus the full embeddedness check.
    pub fn embedded(vertices: Vec<Point>) -> Result<Self, PolygonError> {
        let p = Self::new(vertices)?;
        validate_embedded(&p).map_err(PolygonError::NotEmbedded)?;
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i % self.n()]
    }

    /// Endpoints of edge `i`.
    pub fn edge(&self, i: usize) -> (&Point, &Point) {
        (self.vertex(i), self.vertex(i + 1))
    }

    /// Same curve traversed backwards, starting at the same vertex.
    pub fn reversed(&self) -> ClosedPolygon {
        let mut v = vec![self.vertices[0].clone()];
        v.extend(self.vertices[1..].iter().rev().cloned());
        ClosedPolygon { vertices: v }
    }

    /// Applies `f` to every vertex and re-checks structure.
    pub fn map_vertices(&self, f: impl Fn(&Point) -> Point) -> Result<ClosedPolygon, PolygonError> {
        ClosedPolygon::new(self.vertices.iter().map(f).collect())
    }

    /// Edge index and parameter of a point lying on the polygon, if any.
    /// Vertices report parameter 0 on their outgoing edge.
    pub fn locate(&self, q: &Point) -> Option<(usize, crate::exact::Rational)> {
        (0..self.n()).find_map(|i| {
            let (a, b) = self.edge(i);
            crate::exact::point::segment_parameter(a, b, q)
                .filter(|t| *t < 1u32)
                .map(|t| (i, t))
        })
    }
}

fn adjacent(n: usize, i: usize, j: usize) -> bool {
    j == i + 1 || (i == 0 && j == n - 1)
}

/// Exact pairwise edge check. Adjacent edges may only share their common
/// vertex. The violation reported is the first in `(i, j)` order.
pub fn validate_embedded(p: &ClosedPolygon) -> Result<(), EmbeddingViolation> {
    validate_embedded_with(p, Execution::default())
}

pub fn validate_embedded_with(p: &ClosedPolygon, exec: Execution) -> Result<(), EmbeddingViolation> {
    let n = p.n();
    let hit = find_first(n, exec, |i| {
        (i + 1..n).find_map(|j| {
            let a = [p.vertex(i).clone(), p.vertex(i + 1).clone()];
            let b = [p.vertex(j).clone(), p.vertex(j + 1).clone()];
            let shared = if j == i + 1 {
                SharedFace::pairs(vec![(1, 0)])
            } else if adjacent(n, i, j) {
                SharedFace::pairs(vec![(0, 1)])
            } else {
                SharedFace::none()
            };
            witness_raw(&a, &b, &shared).map(|w| EmbeddingViolation {
                edges: (i, j),
                witness: w,
            })
        })
    });
    match hit {
        Some(v) => Err(v),
        None => Ok(()),
    }
}
