//! Specialised exact triangle/triangle and segment/triangle tests in `R^3`.
//!
//! Same answers as the LP in `simplex`, an order of magnitude cheaper. The
//! proptests below keep the two in agreement.

use super::predicates::{det3, orient2d_raw, point_in_triangle_raw, seg_intersect_raw, SegIntersection};
use super::{Point, Rational, Sign};

/// A triangle with its supporting plane precomputed.
#[derive(Clone, Debug)]
pub(crate) struct Tri3 {
    v: [Vec<Rational>; 3],
    normal: [Rational; 3],
    offset: Rational,
    /// coordinate to drop when working inside the plane
    drop: usize,
}

fn sub(a: &[Rational], b: &[Rational]) -> [Rational; 3] {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

fn abs_cmp(a: &Rational, b: &Rational) -> std::cmp::Ordering {
    let a = if *a < 0u32 { -a } else { a.clone() };
    let b = if *b < 0u32 { -b } else { b.clone() };
    a.cmp(&b)
}

impl Tri3 {
    pub(crate) fn new(a: &Point, b: &Point, c: &Point) -> Tri3 {
        let (a, b, c) = (a.coords(), b.coords(), c.coords());
        let u = sub(b, a);
        let w = sub(c, a);
        let normal = [
            &u[1] * &w[2] - &u[2] * &w[1],
            &u[2] * &w[0] - &u[0] * &w[2],
            &u[0] * &w[1] - &u[1] * &w[0],
        ];
        let offset = &normal[0] * &a[0] + &normal[1] * &a[1] + &normal[2] * &a[2];
        let mut drop = 0;
        for k in 1..3 {
            if abs_cmp(&normal[k], &normal[drop]).is_gt() {
                drop = k;
            }
        }
        Tri3 {
            v: [a.to_vec(), b.to_vec(), c.to_vec()],
            normal,
            offset,
            drop,
        }
    }

    fn side(&self, x: &[Rational]) -> Sign {
        let s = &self.normal[0] * &x[0] + &self.normal[1] * &x[1] + &self.normal[2] * &x[2];
        s.cmp(&self.offset).into()
    }

    fn flat(&self, x: &[Rational]) -> [Rational; 2] {
        match self.drop {
            0 => [x[1].clone(), x[2].clone()],
            1 => [x[2].clone(), x[0].clone()],
            _ => [x[0].clone(), x[1].clone()],
        }
    }

    fn vertex(&self, i: usize) -> &[Rational] {
        &self.v[i % 3]
    }
}

fn orient3d_raw(a: &[Rational], b: &[Rational], c: &[Rational], d: &[Rational]) -> Sign {
    Sign::of(&det3(&sub(b, a), &sub(c, a), &sub(d, a)))
}

/// Closed segment `ab` against closed triangle `t`.
fn seg_meets_tri(a: &[Rational], b: &[Rational], t: &Tri3) -> bool {
    let sa = t.side(a);
    let sb = t.side(b);
    if sa == sb && sa != Sign::Zero {
        return false;
    }
    if sa == Sign::Zero && sb == Sign::Zero {
        return coplanar_seg_meets_tri(a, b, t);
    }
    let o = [
        orient3d_raw(a, b, t.vertex(0), t.vertex(1)),
        orient3d_raw(a, b, t.vertex(1), t.vertex(2)),
        orient3d_raw(a, b, t.vertex(2), t.vertex(0)),
    ];
    !(o.contains(&Sign::Positive) && o.contains(&Sign::Negative))
}

fn coplanar_seg_meets_tri(a: &[Rational], b: &[Rational], t: &Tri3) -> bool {
    let a = t.flat(a);
    let b = t.flat(b);
    let v = [t.flat(t.vertex(0)), t.flat(t.vertex(1)), t.flat(t.vertex(2))];
    if point_in_triangle_raw(&a, &v[0], &v[1], &v[2]) || point_in_triangle_raw(&b, &v[0], &v[1], &v[2]) {
        return true;
    }
    (0..3).any(|i| seg_intersect_raw(&a, &b, &v[i], &v[(i + 1) % 3]) != SegIntersection::Empty)
}

/// Half-open segment `(t[k], b]` against closed triangle `t`.
fn ray_from_vertex_meets_tri(k: usize, b: &[Rational], t: &Tri3) -> bool {
    if t.side(b) != Sign::Zero {
        return false;
    }
    let o = t.flat(t.vertex(k));
    let u = t.flat(t.vertex(k + 1));
    let v = t.flat(t.vertex(k + 2));
    let w = t.flat(b);
    let s = orient2d_raw(&o, &u, &v);
    orient2d_raw(&o, &u, &w) != s.flip() && orient2d_raw(&o, &w, &v) != s.flip()
}

/// Whether two triangles meet outside the face spanned by the shared
/// vertex index pairs `(i in a, j in b)`.
pub(crate) fn tri_tri_violation(a: &Tri3, b: &Tri3, shared: &[(usize, usize)]) -> bool {
    match shared {
        [] => {
            let sa = [b.side(a.vertex(0)), b.side(a.vertex(1)), b.side(a.vertex(2))];
            if sa[0] != Sign::Zero && sa[0] == sa[1] && sa[1] == sa[2] {
                return false;
            }
            let sb = [a.side(b.vertex(0)), a.side(b.vertex(1)), a.side(b.vertex(2))];
            if sb[0] != Sign::Zero && sb[0] == sb[1] && sb[1] == sb[2] {
                return false;
            }
            (0..3).any(|i| seg_meets_tri(a.vertex(i), a.vertex(i + 1), b))
                || (0..3).any(|i| seg_meets_tri(b.vertex(i), b.vertex(i + 1), a))
        }
        &[(i, j)] => {
            seg_meets_tri(a.vertex(i + 1), a.vertex(i + 2), b)
                || seg_meets_tri(b.vertex(j + 1), b.vertex(j + 2), a)
                || ray_from_vertex_meets_tri(j, a.vertex(i + 1), b)
                || ray_from_vertex_meets_tri(j, a.vertex(i + 2), b)
                || ray_from_vertex_meets_tri(i, b.vertex(j + 1), a)
                || ray_from_vertex_meets_tri(i, b.vertex(j + 2), a)
        }
        &[(i0, _), (i1, _)] => {
            let i2 = 3 - i0 - i1;
            let j2 = 3 - shared[0].1 - shared[1].1;
            let c = a.vertex(i2);
            let d = b.vertex(j2);
            if b.side(c) != Sign::Zero {
                return false;
            }
            // coplanar: overlap iff the free vertices lie on the same side of the shared edge
            let p = b.flat(a.vertex(i0));
            let q = b.flat(a.vertex(i1));
            orient2d_raw(&p, &q, &b.flat(c)) == orient2d_raw(&p, &q, &b.flat(d))
        }
        _ => false,
    }
}

/// Whether segment `s` meets triangle `t` outside the shared vertices
/// `(i in s, j in t)`.
pub(crate) fn seg_tri_violation(s: [&[Rational]; 2], t: &Tri3, shared: &[(usize, usize)]) -> bool {
    match shared {
        [] => seg_meets_tri(s[0], s[1], t),
        &[(i, j)] => ray_from_vertex_meets_tri(j, s[1 - i], t),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::simplex::witness_raw;
    use crate::exact::{int, SharedFace};
    use proptest::prelude::*;

    fn p(c: [i64; 3]) -> Point {
        Point::from_ints(&c)
    }

    fn lp_violation(a: &[Point], b: &[Point], shared: &[(usize, usize)]) -> bool {
        witness_raw(a, b, &SharedFace::pairs(shared.to_vec())).is_some()
    }

    fn independent(t: &[Point]) -> bool {
        let refs: Vec<&Point> = t.iter().collect();
        crate::exact::point::affinely_independent(&refs)
    }

    #[test]
    fn known_cases() {
        let a = [p([0, 0, 0]), p([2, 0, 0]), p([0, 2, 0])];
        let ta = Tri3::new(&a[0], &a[1], &a[2]);
        // vertical triangle through the interior
        let b = [p([1, -1, 0]), p([1, 3, 0]), p([1, 1, 2])];
        let tb = Tri3::new(&b[0], &b[1], &b[2]);
        assert!(tri_tri_violation(&ta, &tb, &[]));
        // shared edge, folded up
        let c = [p([0, 0, 0]), p([2, 0, 0]), p([1, -1, 1])];
        let tc = Tri3::new(&c[0], &c[1], &c[2]);
        assert!(!tri_tri_violation(&ta, &tc, &[(0, 0), (1, 1)]));
        // shared edge, coplanar and overlapping
        let d = [p([0, 0, 0]), p([2, 0, 0]), p([1, 1, 0])];
        let td = Tri3::new(&d[0], &d[1], &d[2]);
        assert!(tri_tri_violation(&ta, &td, &[(0, 0), (1, 1)]));
        let s0 = Point::new(vec![int(1), int(1), int(-1)]);
        let s1 = Point::new(vec![int(0), int(0), int(1)]);
        assert!(seg_tri_violation([s0.coords(), s1.coords()], &ta, &[]));
    }

    fn coord() -> impl Strategy<Value = i64> {
        -2i64..3
    }

    fn tri() -> impl Strategy<Value = [[i64; 3]; 3]> {
        [
            [coord(), coord(), coord()],
            [coord(), coord(), coord()],
            [coord(), coord(), coord()],
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        // small integer grids make coplanar and touching configurations common
        #[test]
        fn tri_tri_agrees_with_lp(ra in tri(), rb in tri(), share in 0usize..4, perm in 0usize..6) {
            let a: Vec<Point> = ra.iter().map(|c| p(*c)).collect();
            let mut b: Vec<Point> = rb.iter().map(|c| p(*c)).collect();
            // graft shared vertices of `a` into `b` at permuted slots
            let slots = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]][perm];
            let k = share.min(3);
            let mut pairs = Vec::new();
            for (i, &slot) in slots.iter().enumerate().take(k) {
                b[slot] = a[i].clone();
                pairs.push((i, slot));
            }
            prop_assume!(independent(&a) && independent(&b));
            // shared by index only: other coincidences count as violations
            let ta = Tri3::new(&a[0], &a[1], &a[2]);
            let tb = Tri3::new(&b[0], &b[1], &b[2]);
            let fast = tri_tri_violation(&ta, &tb, &pairs);
            prop_assert_eq!(fast, lp_violation(&a, &b, &pairs));
            let rev: Vec<(usize, usize)> = pairs.iter().map(|&(i, j)| (j, i)).collect();
            prop_assert_eq!(tri_tri_violation(&tb, &ta, &rev), fast);
        }

        #[test]
        fn seg_tri_agrees_with_lp(ra in tri(), s0 in [coord(), coord(), coord()], s1 in [coord(), coord(), coord()], share in 0usize..3, slot in 0usize..3) {
            let t: Vec<Point> = ra.iter().map(|c| p(*c)).collect();
            let mut s = vec![p(s0), p(s1)];
            let mut pairs = Vec::new();
            if share == 1 {
                s[0] = t[slot].clone();
                pairs.push((0, slot));
            } else if share == 2 {
                s[0] = t[slot].clone();
                s[1] = t[(slot + 1) % 3].clone();
                pairs.push((0, slot));
                pairs.push((1, (slot + 1) % 3));
            }
            prop_assume!(independent(&t) && s[0] != s[1]);
            let tt = Tri3::new(&t[0], &t[1], &t[2]);
            let fast = seg_tri_violation([s[0].coords(), s[1].coords()], &tt, &pairs);
            prop_assert_eq!(fast, lp_violation(&s, &t, &pairs));
        }
    }
}
