use super::lp::find_nonnegative_solution;
use super::point::affinely_independent;
use super::{int, GeomError, Point, Rational};

/// A nondegenerate point, segment or triangle (any simplex really) in `R^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    vertices: Vec<Point>,
}

impl Simplex {
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeomError> {
        let Some(first) = vertices.first() else {
            return Err(GeomError::DegenerateSimplex);
        };
        let d = first.dim();
        for v in &vertices {
            v.check_dim(d)?;
        }
        let refs: Vec<&Point> = vertices.iter().collect();
        if vertices.len() > d + 1 || !affinely_independent(&refs) {
            return Err(GeomError::DegenerateSimplex);
        }
        Ok(Simplex { vertices })
    }

    pub fn segment(a: Point, b: Point) -> Result<Self, GeomError> {
        Self::new(vec![a, b])
    }

    pub fn triangle(a: Point, b: Point, c: Point) -> Result<Self, GeomError> {
        Self::new(vec![a, b, c])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }
}

/// Vertices the two simplices have in common, as `(index in a, index in b)`.
/// Intersection inside the face they span is allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SharedFace {
    pairs: Vec<(usize, usize)>,
}

impl SharedFace {
    pub fn none() -> Self {
        SharedFace::default()
    }

    pub fn pairs(pairs: Vec<(usize, usize)>) -> Self {
        SharedFace { pairs }
    }

    /// All coincident vertex pairs.
    pub fn detect(a: &Simplex, b: &Simplex) -> Self {
        let mut pairs = Vec::new();
        for (i, p) in a.vertices.iter().enumerate() {
            for (j, q) in b.vertices.iter().enumerate() {
                if p == q {
                    pairs.push((i, j));
                }
            }
        }
        SharedFace { pairs }
    }

    pub fn as_pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// The same face seen from the other simplex.
    pub fn reversed(&self) -> SharedFace {
        SharedFace {
            pairs: self.pairs.iter().map(|&(i, j)| (j, i)).collect(),
        }
    }
}

/// True iff the closed simplices meet somewhere outside the allowed face.
pub fn simplex_intersect(a: &Simplex, b: &Simplex, allowed: &SharedFace) -> Result<bool, GeomError> {
    Ok(simplex_intersection_witness(a, b, allowed)?.is_some())
}

/// A point of `a ∩ b` outside the allowed face, if any.
pub fn simplex_intersection_witness(
    a: &Simplex,
    b: &Simplex,
    allowed: &SharedFace,
) -> Result<Option<Point>, GeomError> {
    if a.dim() != b.dim() {
        return Err(GeomError::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    for &(i, j) in &allowed.pairs {
        match (a.vertices.get(i), b.vertices.get(j)) {
            (Some(p), Some(q)) if p == q => {}
            _ => return Err(GeomError::SharedFaceMismatch),
        }
    }
    Ok(witness_raw(&a.vertices, &b.vertices, allowed))
}

pub(crate) fn witness_raw(a: &[Point], b: &[Point], allowed: &SharedFace) -> Option<Point> {
    let free: Vec<usize> = (0..a.len())
        .filter(|i| !allowed.pairs.iter().any(|&(s, _)| s == *i))
        .collect();
    if free.is_empty() {
        return None;
    }
    // lambda, mu >= 0 with sum(lambda a) = sum(mu b), sum lambda = sum mu,
    // and unit weight on the vertices of `a` outside the shared face
    let d = a[0].dim();
    let (na, nb) = (a.len(), b.len());
    let mut rows = Vec::with_capacity(d + 2);
    let mut rhs = Vec::with_capacity(d + 2);
    for k in 0..d {
        let mut r: Vec<Rational> = a.iter().map(|p| p.coord(k).clone()).collect();
        r.extend(b.iter().map(|q| -q.coord(k)));
        rows.push(r);
        rhs.push(int(0));
    }
    let mut r = vec![int(1); na];
    r.extend(std::iter::repeat_n(int(-1), nb));
    rows.push(r);
    rhs.push(int(0));
    let mut r = vec![int(0); na + nb];
    for &i in &free {
        r[i] = int(1);
    }
    rows.push(r);
    rhs.push(int(1));

    let x = find_nonnegative_solution(&rows, &rhs)?;
    let total: Rational = x[..na].iter().sum();
    let coords = (0..d)
        .map(|k| {
            let s: Rational = a.iter().zip(&x).map(|(p, l)| p.coord(k) * l).sum();
            s / &total
        })
        .collect();
    Some(Point::new(coords))
}

/// Whether the convex hulls of two finite point sets meet.
pub fn hulls_intersect(p: &[Point], q: &[Point]) -> Result<bool, GeomError> {
    let Some(first) = p.first().or(q.first()) else {
        return Ok(false);
    };
    if p.is_empty() || q.is_empty() {
        return Ok(false);
    }
    let d = first.dim();
    for x in p.iter().chain(q) {
        x.check_dim(d)?;
    }
    let mut rows = Vec::with_capacity(d + 2);
    let mut rhs = Vec::with_capacity(d + 2);
    for k in 0..d {
        let mut r: Vec<Rational> = p.iter().map(|x| x.coord(k).clone()).collect();
        r.extend(q.iter().map(|x| -x.coord(k)));
        rows.push(r);
        rhs.push(int(0));
    }
    let mut r = vec![int(1); p.len()];
    r.extend(std::iter::repeat_n(int(0), q.len()));
    rows.push(r);
    rhs.push(int(1));
    let mut r = vec![int(0); p.len()];
    r.extend(std::iter::repeat_n(int(1), q.len()));
    rows.push(r);
    rhs.push(int(1));
    Ok(find_nonnegative_solution(&rows, &rhs).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn p3(x: i64, y: i64, z: i64) -> Point {
        Point::from_ints(&[x, y, z])
    }

    #[test]
    fn shared_edge_adjacency() {
        let a = Simplex::triangle(p3(0, 0, 0), p3(1, 0, 0), p3(0, 1, 0)).unwrap();
        let b = Simplex::triangle(p3(0, 0, 0), p3(1, 0, 0), p3(0, -1, 0)).unwrap();
        let allowed = SharedFace::pairs(vec![(0, 0), (1, 1)]);
        assert!(!simplex_intersect(&a, &b, &allowed).unwrap());
        assert!(!simplex_intersect(&b, &a, &allowed.reversed()).unwrap());
        // without the allowance the shared edge is a real intersection
        assert!(simplex_intersect(&a, &b, &SharedFace::none()).unwrap());
    }

    #[test]
    fn transversal_puncture() {
        let t = Simplex::triangle(p3(0, 0, 0), p3(2, 0, 0), p3(0, 2, 0)).unwrap();
        let s = Simplex::segment(
            Point::new(vec![rat(1, 2), rat(1, 2), int(-1)]),
            Point::new(vec![rat(1, 2), rat(1, 2), int(1)]),
        )
        .unwrap();
        let w = simplex_intersection_witness(&t, &s, &SharedFace::none()).unwrap();
        assert_eq!(w, Some(Point::new(vec![rat(1, 2), rat(1, 2), int(0)])));
        assert!(simplex_intersect(&s, &t, &SharedFace::none()).unwrap());
    }

    #[test]
    fn parallel_planes_in_r4() {
        let a = Simplex::triangle(
            Point::from_ints(&[0, 0, 0, 0]),
            Point::from_ints(&[1, 0, 0, 0]),
            Point::from_ints(&[0, 1, 0, 0]),
        )
        .unwrap();
        let b = Simplex::triangle(
            Point::from_ints(&[0, 0, 1, 1]),
            Point::from_ints(&[1, 0, 1, 1]),
            Point::from_ints(&[0, 1, 1, 1]),
        )
        .unwrap();
        assert!(!simplex_intersect(&a, &b, &SharedFace::none()).unwrap());
    }

    #[test]
    fn coplanar_overlap_beyond_shared_vertex() {
        let a = Simplex::triangle(p3(0, 0, 0), p3(2, 0, 0), p3(0, 2, 0)).unwrap();
        let b = Simplex::triangle(p3(0, 0, 0), p3(1, 1, 0), p3(3, 1, 0)).unwrap();
        assert!(simplex_intersect(&a, &b, &SharedFace::pairs(vec![(0, 0)])).unwrap());
        let c = Simplex::triangle(p3(0, 0, 0), p3(-1, 0, 0), p3(0, -1, 0)).unwrap();
        assert!(!simplex_intersect(&a, &c, &SharedFace::pairs(vec![(0, 0)])).unwrap());
    }

    #[test]
    fn errors() {
        assert_eq!(
            Simplex::triangle(p3(0, 0, 0), p3(1, 1, 1), p3(2, 2, 2)),
            Err(GeomError::DegenerateSimplex)
        );
        let a = Simplex::segment(p3(0, 0, 0), p3(1, 0, 0)).unwrap();
        let b = Simplex::segment(Point::from_ints(&[0, 0]), Point::from_ints(&[1, 1])).unwrap();
        assert!(matches!(
            simplex_intersect(&a, &b, &SharedFace::none()),
            Err(GeomError::DimensionMismatch { .. })
        ));
        let c = Simplex::segment(p3(5, 0, 0), p3(6, 0, 0)).unwrap();
        assert_eq!(
            simplex_intersect(&a, &c, &SharedFace::pairs(vec![(0, 0)])),
            Err(GeomError::SharedFaceMismatch)
        );
    }

    #[test]
    fn hulls() {
        let sq = [p3(0, 0, 0), p3(2, 0, 0), p3(2, 2, 0), p3(0, 2, 0)];
        let stick = [p3(1, 1, -1), p3(1, 1, 1)];
        assert!(hulls_intersect(&sq, &stick).unwrap());
        let off = [p3(3, 1, -1), p3(3, 1, 1)];
        assert!(!hulls_intersect(&sq, &off).unwrap());
    }
}
