use super::{GeomError, Point, Rational, Sign};

pub(crate) fn orient2d_raw(a: &[Rational], b: &[Rational], c: &[Rational]) -> Sign {
    let abx = &b[0] - &a[0];
    let aby = &b[1] - &a[1];
    let acx = &c[0] - &a[0];
    let acy = &c[1] - &a[1];
    (abx * acy).cmp(&(aby * acx)).into()
}

/// Sign of the signed area of `(b - a, c - a)`.
pub fn orient2d(a: &Point, b: &Point, c: &Point) -> Result<Sign, GeomError> {
    for p in [a, b, c] {
        p.check_dim(2)?;
    }
    Ok(orient2d_raw(a.coords(), b.coords(), c.coords()))
}

pub(crate) fn det3(u: &[Rational], v: &[Rational], w: &[Rational]) -> Rational {
    &u[0] * (&v[1] * &w[2] - &v[2] * &w[1]) - &u[1] * (&v[0] * &w[2] - &v[2] * &w[0])
        + &u[2] * (&v[0] * &w[1] - &v[1] * &w[0])
}

/// Sign of `det(b - a, c - a, d - a)`.
pub fn orient3d(a: &Point, b: &Point, c: &Point, d: &Point) -> Result<Sign, GeomError> {
    for p in [a, b, c, d] {
        p.check_dim(3)?;
    }
    let u = a.vector_to(b);
    let v = a.vector_to(c);
    let w = a.vector_to(d);
    Ok(Sign::of(&det3(&u, &v, &w)))
}

/// A planar segment with distinct endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment2 {
    a: Point,
    b: Point,
}

impl Segment2 {
    pub fn new(a: Point, b: Point) -> Result<Self, GeomError> {
        a.check_dim(2)?;
        b.check_dim(2)?;
        if a == b {
            return Err(GeomError::DegenerateSegment);
        }
        Ok(Segment2 { a, b })
    }

    pub fn start(&self) -> &Point {
        &self.a
    }

    pub fn end(&self) -> &Point {
        &self.b
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntersectionKind {
    /// The point is interior to both segments.
    InteriorInterior,
    /// An endpoint of one segment lies on the other.
    EndpointTouch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegIntersection {
    Empty,
    Point(Point, IntersectionKind),
    Overlap,
}

/// Exact classification of the intersection of two closed planar segments.
pub fn seg_intersect_2d(s: &Segment2, t: &Segment2) -> SegIntersection {
    seg_intersect_raw(s.a.coords(), s.b.coords(), t.a.coords(), t.b.coords())
}

pub(crate) fn seg_intersect_raw(a: &[Rational], b: &[Rational], c: &[Rational], d: &[Rational]) -> SegIntersection {
    let d1 = orient2d_raw(a, b, c);
    let d2 = orient2d_raw(a, b, d);
    if d1 == Sign::Zero && d2 == Sign::Zero {
        return collinear_overlap(a, b, c, d);
    }
    if d1 == d2 {
        return SegIntersection::Empty;
    }
    let d3 = orient2d_raw(c, d, a);
    let d4 = orient2d_raw(c, d, b);
    if d3 == d4 {
        return SegIntersection::Empty;
    }
    let touch = [d1, d2, d3, d4].contains(&Sign::Zero);
    let (s, _) = line_params(a, b, c, d).expect("non-parallel by orientation test");
    let p = Point::new(vec![&a[0] + &s * (&b[0] - &a[0]), &a[1] + &s * (&b[1] - &a[1])]);
    let kind = if touch {
        IntersectionKind::EndpointTouch
    } else {
        IntersectionKind::InteriorInterior
    };
    SegIntersection::Point(p, kind)
}

fn collinear_overlap(a: &[Rational], b: &[Rational], c: &[Rational], d: &[Rational]) -> SegIntersection {
    // parametrise along the dominant axis of ab
    let axis = if a[0] != b[0] { 0 } else { 1 };
    let (lo1, hi1) = minmax(&a[axis], &b[axis]);
    let (lo2, hi2) = minmax(&c[axis], &d[axis]);
    let lo = if lo1 > lo2 { lo1 } else { lo2 };
    let hi = if hi1 < hi2 { hi1 } else { hi2 };
    match lo.cmp(hi) {
        std::cmp::Ordering::Greater => SegIntersection::Empty,
        std::cmp::Ordering::Equal => {
            let p = [a, b, c, d]
                .into_iter()
                .find(|p| &p[axis] == lo)
                .expect("touching endpoint");
            SegIntersection::Point(Point::new(p.to_vec()), IntersectionKind::EndpointTouch)
        }
        std::cmp::Ordering::Less => SegIntersection::Overlap,
    }
}

fn minmax<'a>(x: &'a Rational, y: &'a Rational) -> (&'a Rational, &'a Rational) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

/// Parameters `(s, u)` with `a + s (b - a) = c + u (d - c)` for non-parallel lines.
fn line_params(a: &[Rational], b: &[Rational], c: &[Rational], d: &[Rational]) -> Option<(Rational, Rational)> {
    let rx = &b[0] - &a[0];
    let ry = &b[1] - &a[1];
    let qx = &d[0] - &c[0];
    let qy = &d[1] - &c[1];
    let den = &rx * &qy - &ry * &qx;
    if den == 0u32 {
        return None;
    }
    let wx = &c[0] - &a[0];
    let wy = &c[1] - &a[1];
    let s = (&wx * &qy - &wy * &qx) / &den;
    let u = (&wx * &ry - &wy * &rx) / &den;
    Some((s, u))
}

/// For two planar segments `ab`, `cd` crossing at a single point interior to
/// both, the parameters of that point along each. `None` otherwise.
pub fn segment_crossing_params(a: &Point, b: &Point, c: &Point, d: &Point) -> Option<(Rational, Rational)> {
    let (s, u) = line_params(a.coords(), b.coords(), c.coords(), d.coords())?;
    let inside = |t: &Rational| *t > 0u32 && *t < 1u32;
    (inside(&s) && inside(&u)).then_some((s, u))
}

/// Closed containment of `p` in triangle `abc` (either orientation).
pub fn point_in_triangle_2d(p: &Point, a: &Point, b: &Point, c: &Point) -> bool {
    point_in_triangle_raw(p.coords(), a.coords(), b.coords(), c.coords())
}

pub(crate) fn point_in_triangle_raw(p: &[Rational], a: &[Rational], b: &[Rational], c: &[Rational]) -> bool {
    let s1 = orient2d_raw(a, b, p);
    let s2 = orient2d_raw(b, c, p);
    let s3 = orient2d_raw(c, a, p);
    let has_neg = [s1, s2, s3].contains(&Sign::Negative);
    let has_pos = [s1, s2, s3].contains(&Sign::Positive);
    !(has_neg && has_pos)
}

/// Winding number of a closed planar polygon around `q`, or `None` when `q`
/// lies on the polygon.
pub fn winding_number(polygon: &[Point], q: &Point) -> Option<i64> {
    let qc = q.coords();
    let n = polygon.len();
    let mut w = 0i64;
    for i in 0..n {
        let a = polygon[i].coords();
        let b = polygon[(i + 1) % n].coords();
        let o = orient2d_raw(a, b, qc);
        if o == Sign::Zero && on_segment_collinear(a, b, qc) {
            return None;
        }
        if a[1] <= qc[1] {
            if b[1] > qc[1] && o == Sign::Positive {
                w += 1;
            }
        } else if b[1] <= qc[1] && o == Sign::Negative {
            w -= 1;
        }
    }
    Some(w)
}

/// For `q` collinear with `ab`: whether it lies on the closed segment.
pub(crate) fn on_segment_collinear(a: &[Rational], b: &[Rational], q: &[Rational]) -> bool {
    a.iter().zip(b).zip(q).all(|((x, y), z)| {
        let (lo, hi) = minmax(x, y);
        lo <= z && z <= hi
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(&[x, y])
    }

    fn seg(a: (i64, i64), b: (i64, i64)) -> Segment2 {
        Segment2::new(p(a.0, a.1), p(b.0, b.1)).unwrap()
    }

    #[test]
    fn orient2d_examples() {
        assert_eq!(orient2d(&p(0, 0), &p(1, 0), &p(0, 1)).unwrap(), Sign::Positive);
        assert_eq!(orient2d(&p(0, 0), &p(1, 0), &p(2, 0)).unwrap(), Sign::Zero);
        assert_eq!(orient2d(&p(0, 0), &p(0, 1), &p(1, 0)).unwrap(), Sign::Negative);
        assert!(orient2d(&Point::from_ints(&[0, 0, 0]), &p(1, 0), &p(0, 1)).is_err());
    }

    #[test]
    fn orient3d_examples() {
        let o = Point::from_ints(&[0, 0, 0]);
        let x = Point::from_ints(&[1, 0, 0]);
        let y = Point::from_ints(&[0, 1, 0]);
        let z = Point::from_ints(&[0, 0, 1]);
        assert_eq!(orient3d(&o, &x, &y, &z).unwrap(), Sign::Positive);
        assert_eq!(orient3d(&o, &y, &x, &z).unwrap(), Sign::Negative);
        assert_eq!(orient3d(&o, &x, &y, &Point::from_ints(&[3, 5, 0])).unwrap(), Sign::Zero);
    }

    #[test]
    fn segment_examples() {
        assert_eq!(
            seg_intersect_2d(&seg((0, 0), (2, 2)), &seg((0, 2), (2, 0))),
            SegIntersection::Point(p(1, 1), IntersectionKind::InteriorInterior)
        );
        assert_eq!(
            seg_intersect_2d(&seg((0, 0), (1, 0)), &seg((2, 0), (3, 0))),
            SegIntersection::Empty
        );
        assert_eq!(
            seg_intersect_2d(&seg((0, 0), (2, 0)), &seg((1, 0), (3, 0))),
            SegIntersection::Overlap
        );
        assert_eq!(
            seg_intersect_2d(&seg((0, 0), (1, 0)), &seg((1, 0), (3, 0))),
            SegIntersection::Point(p(1, 0), IntersectionKind::EndpointTouch)
        );
        assert_eq!(
            seg_intersect_2d(&seg((0, 0), (2, 0)), &seg((1, 0), (1, 5))),
            SegIntersection::Point(p(1, 0), IntersectionKind::EndpointTouch)
        );
        assert_eq!(
            seg_intersect_2d(&seg((0, 0), (1, 1)), &seg((0, 1), (1, 2))),
            SegIntersection::Empty
        );
    }

    #[test]
    fn degenerate_segment_rejected() {
        assert_eq!(Segment2::new(p(1, 1), p(1, 1)), Err(GeomError::DegenerateSegment));
    }

    #[test]
    fn crossing_params() {
        let (s, u) = segment_crossing_params(&p(0, 0), &p(4, 0), &p(1, -1), &p(1, 3)).unwrap();
        assert_eq!(s, rat(1, 4));
        assert_eq!(u, rat(1, 4));
        assert!(segment_crossing_params(&p(0, 0), &p(4, 0), &p(0, 1), &p(4, 1)).is_none());
    }

    #[test]
    fn winding() {
        let sq = [p(0, 0), p(2, 0), p(2, 2), p(0, 2)];
        let inside = Point::new(vec![int(1), rat(1, 2)]);
        assert_eq!(winding_number(&sq, &inside), Some(1));
        let rev: Vec<Point> = sq.iter().rev().cloned().collect();
        assert_eq!(winding_number(&rev, &inside), Some(-1));
        assert_eq!(winding_number(&sq, &p(3, 1)), Some(0));
        assert_eq!(winding_number(&sq, &p(2, 1)), None);
    }
}
