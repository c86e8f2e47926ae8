use super::{int, GeomError, Rational};
use std::fmt;

/// A point of `R^d` with exact rational coordinates.
///
/// Ordering is lexicographic on coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Point {
        Point { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Point {
        Point::new(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn origin(dim: usize) -> Point {
        Point::new(vec![int(0); dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<(), GeomError> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(GeomError::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            })
        }
    }

    /// `self - other` as a coordinate vector.
    pub fn vector_to(&self, other: &Point) -> Vec<Rational> {
        self.coords.iter().zip(&other.coords).map(|(a, b)| b - a).collect()
    }

    pub fn translate(&self, v: &[Rational]) -> Point {
        Point::new(self.coords.iter().zip(v).map(|(a, b)| a + b).collect())
    }

    /// `a + t (b - a)`.
    pub fn lerp(a: &Point, b: &Point, t: &Rational) -> Point {
        Point::new(a.coords.iter().zip(&b.coords).map(|(x, y)| x + t * &(y - x)).collect())
    }

    /// The first `k` coordinates.
    pub fn truncate(&self, k: usize) -> Point {
        Point::new(self.coords[..k].to_vec())
    }

    /// Appends coordinates, e.g. to lift a planar point into `R^3`.
    pub fn extend(&self, extra: &[Rational]) -> Point {
        let mut coords = self.coords.clone();
        coords.extend_from_slice(extra);
        Point::new(coords)
    }

    /// Pads with zeros up to dimension `dim`.
    pub fn pad_to(&self, dim: usize) -> Point {
        let mut coords = self.coords.clone();
        coords.resize(dim, int(0));
        Point::new(coords)
    }

    pub fn with_coord(&self, i: usize, value: Rational) -> Point {
        let mut coords = self.coords.clone();
        coords[i] = value;
        Point::new(coords)
    }

    pub fn centroid<'a>(points: impl IntoIterator<Item = &'a Point>) -> Point {
        let mut it = points.into_iter();
        let first = it.next().expect("centroid of no points");
        let mut acc = first.coords.clone();
        let mut count = 1i64;
        for p in it {
            for (a, c) in acc.iter_mut().zip(&p.coords) {
                *a += c;
            }
            count += 1;
        }
        let k = int(count);
        Point::new(acc.into_iter().map(|a| a / &k).collect())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The `t` in `[0, 1]` with `q = a + t (b - a)`, if `q` is on the segment.
pub(crate) fn segment_parameter(a: &Point, b: &Point, q: &Point) -> Option<Rational> {
    let k = (0..a.dim()).find(|&k| a.coords[k] != b.coords[k])?;
    let t = (&q.coords[k] - &a.coords[k]) / (&b.coords[k] - &a.coords[k]);
    if !(0u32..=1u32).contains(&t) {
        return None;
    }
    (Point::lerp(a, b, &t) == *q).then_some(t)
}

/// Rank of a set of row vectors, by exact Gaussian elimination.
pub(crate) fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0u32) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in r + 1..m.len() {
            if m[i][c] != 0u32 {
                let f = &m[i][c] / &pivot;
                for k in c..cols {
                    let d = &f * &m[r][k];
                    m[i][k] -= d;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// True when the points are affinely independent.
pub(crate) fn affinely_independent(points: &[&Point]) -> bool {
    if points.len() <= 1 {
        return true;
    }
    let base = points[0];
    let rows: Vec<Vec<Rational>> = points[1..].iter().map(|p| base.vector_to(p)).collect();
    rank(&rows) == rows.len()
}
