use crate::exact::{point_in_triangle_2d, Point, Rational, Sign};

fn cross(o: &[Rational], a: &[Rational], b: &[Rational]) -> Sign {
    let l = (&a[0] - &o[0]) * (&b[1] - &o[1]);
    let r = (&a[1] - &o[1]) * (&b[0] - &o[0]);
    l.cmp(&r).into()
}

/// Twice the signed area of a planar polygon.
pub(crate) fn signed_area2(pts: &[Point]) -> Rational {
    let n = pts.len();
    let mut s = Rational::from(0u32);
    for i in 0..n {
        let a = pts[i].coords();
        let b = pts[(i + 1) % n].coords();
        s += &a[0] * &b[1] - &a[1] * &b[0];
    }
    s
}

/// Triangulates a simple planar polygon without adding vertices.
///
/// Triangles keep the polygon's orientation. Returns `None` if the input is
/// not simple (no ear can be found).
pub fn ear_clip(pts: &[Point]) -> Option<Vec<[usize; 3]>> {
    let n = pts.len();
    if n < 3 {
        return None;
    }
    let orient = Sign::of(&signed_area2(pts));
    if orient == Sign::Zero {
        return None;
    }
    let mut idx: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n - 2);
    while idx.len() > 3 {
        let m = idx.len();
        let reflex: Vec<bool> = (0..m)
            .map(|k| {
                let p = pts[idx[(k + m - 1) % m]].coords();
                let c = pts[idx[k]].coords();
                let q = pts[idx[(k + 1) % m]].coords();
                cross(p, c, q) != orient
            })
            .collect();
        let ear = (0..m).find(|&k| {
            if reflex[k] {
                return false;
            }
            let (kp, kn) = ((k + m - 1) % m, (k + 1) % m);
            // only reflex (or straight) vertices can sit inside an ear
            !(0..m).any(|j| {
                j != k
                    && j != kp
                    && j != kn
                    && reflex[j]
                    && point_in_triangle_2d(&pts[idx[j]], &pts[idx[kp]], &pts[idx[k]], &pts[idx[kn]])
            })
        })?;
        let m = idx.len();
        out.push([idx[(ear + m - 1) % m], idx[ear], idx[(ear + 1) % m]]);
        idx.remove(ear);
    }
    if cross(pts[idx[0]].coords(), pts[idx[1]].coords(), pts[idx[2]].coords()) != orient {
        return None;
    }
    out.push([idx[0], idx[1], idx[2]]);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[(i64, i64)]) -> Vec<Point> {
        c.iter().map(|&(x, y)| Point::from_ints(&[x, y])).collect()
    }

    #[test]
    fn convex_and_nonconvex() {
        let sq = poly(&[(0, 0), (2, 0), (2, 2), (0, 2)]);
        assert_eq!(ear_clip(&sq).unwrap().len(), 2);
        let l = poly(&[(0, 0), (4, 0), (4, 1), (1, 1), (1, 4), (0, 4)]);
        let tris = ear_clip(&l).unwrap();
        assert_eq!(tris.len(), 4);
        let total: Rational = tris
            .iter()
            .map(|t| signed_area2(&[l[t[0]].clone(), l[t[1]].clone(), l[t[2]].clone()]))
            .sum();
        assert_eq!(total, signed_area2(&l));
    }

    #[test]
    fn clockwise_input_keeps_orientation() {
        let cw = poly(&[(0, 0), (0, 3), (1, 1), (3, 0)]);
        let tris = ear_clip(&cw).unwrap();
        assert_eq!(tris.len(), 2);
        for t in tris {
            let a = signed_area2(&[cw[t[0]].clone(), cw[t[1]].clone(), cw[t[2]].clone()]);
            assert!(a < 0u32);
        }
    }

    #[test]
    fn collinear_vertex_is_handled() {
        let p = poly(&[(0, 0), (1, 0), (2, 0), (1, 1)]);
        assert_eq!(ear_clip(&p).unwrap().len(), 2);
    }
}
