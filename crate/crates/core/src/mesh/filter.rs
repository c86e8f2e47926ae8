//! Conservative floating-point separation filter for 3D triangle pairs.
//!
//! Every test compares against an error margin far larger than the rounding
//! error of the arithmetic involved, so `true` means the exact test would
//! also find the pair disjoint (apart from shared vertices). `false` only
//! means "ask the exact kernel".

use crate::exact::{to_f64, Point};

type V3 = [f64; 3];

/// Relative margin; the worst rounding error here is below `1e-14`.
const SLACK: f64 = 1e-9;

pub(crate) struct FloatTri {
    v: [V3; 3],
    normal: V3,
    /// scale of the normal's error against the exact one
    nerr: f64,
}

impl FloatTri {
    pub(crate) fn new(p: [&Point; 3]) -> FloatTri {
        let v = p.map(float);
        let r = abs(v[0]);
        let nerr = cross_abs(add(abs(v[1]), r), add(abs(v[2]), r)).iter().sum();
        FloatTri {
            normal: cross(sub(v[1], v[0]), sub(v[2], v[0])),
            v,
            nerr,
        }
    }

    fn edge(&self, k: usize) -> V3 {
        sub(self.v[(k + 1) % 3], self.v[k])
    }
}

pub(crate) fn float(p: &Point) -> V3 {
    [0, 1, 2].map(|k| to_f64(p.coord(k)))
}

fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn add(a: V3, b: V3) -> V3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn cross(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn cross_abs(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] + a[2] * b[1],
        a[2] * b[0] + a[0] * b[2],
        a[0] * b[1] + a[1] * b[0],
    ]
}

fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn abs(a: V3) -> V3 {
    a.map(f64::abs)
}

fn unit(a: V3) -> V3 {
    let l = dot(a, a).sqrt();
    a.map(|x| x / l)
}

fn norm1(a: V3) -> f64 {
    a.iter().map(|x| x.abs()).sum()
}

/// `w . (x - o)` with a bound on its error. `werr` bounds how far `w` is
/// from the exact vector it stands for; zero for an arbitrary axis.
fn offset(w: V3, x: V3, o: V3, werr: f64) -> (f64, f64) {
    let val = dot(w, sub(x, o));
    let r = add(abs(x), abs(o));
    (val, SLACK * (dot(abs(w), r) + werr * norm1(r)))
}

/// `a` lies strictly below and `b` strictly above some level along `w`,
/// or the other way round.
fn axis_splits(w: V3, a: &[V3], b: &[V3]) -> bool {
    if !w.iter().all(|x| x.is_finite()) || w == [0.0; 3] {
        return false;
    }
    let range = |pts: &[V3]| {
        pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            let (v, e) = offset(w, x, [0.0; 3], 0.0);
            (lo.min(v - e), hi.max(v + e))
        })
    };
    let (alo, ahi) = range(a);
    let (blo, bhi) = range(b);
    ahi < blo || bhi < alo
}

/// The points `a` lie strictly on one side, and `b` strictly on the other,
/// of the plane through `o` normal to `w`. Either list may be empty.
fn plane_splits(w: V3, werr: f64, o: V3, a: &[V3], b: &[V3]) -> bool {
    if !w.iter().all(|x| x.is_finite()) || w == [0.0; 3] {
        return false;
    }
    let side = |x: V3| {
        let (v, e) = offset(w, x, o, werr);
        if v > e {
            1
        } else if v < -e {
            -1
        } else {
            0
        }
    };
    let sa: Vec<i8> = a.iter().map(|&x| side(x)).collect();
    let sb: Vec<i8> = b.iter().map(|&x| side(x)).collect();
    let uniform = |s: &[i8]| {
        s.first()
            .map_or(Some(0), |&f| (f != 0 && s.iter().all(|&x| x == f)).then_some(f))
    };
    match (uniform(&sa), uniform(&sb)) {
        (Some(x), Some(y)) => x != y,
        _ => false,
    }
}

fn candidate_axes(a: &FloatTri, b: &FloatTri) -> Vec<V3> {
    let mut axes = vec![a.normal, b.normal];
    for i in 0..3 {
        for j in 0..3 {
            axes.push(cross(a.edge(i), b.edge(j)));
        }
        axes.push(cross(a.normal, a.edge(i)));
        axes.push(cross(b.normal, b.edge(i)));
    }
    axes
}

/// The triangles provably meet only in the face spanned by `shared`
/// (pairs of vertex indices `(in a, in b)`).
pub(crate) fn separated(a: &FloatTri, b: &FloatTri, shared: &[(usize, usize)]) -> bool {
    let rest = |t: &FloatTri, pick: fn(&(usize, usize)) -> usize| -> Vec<V3> {
        (0..3)
            .filter(|k| shared.iter().all(|s| pick(s) != *k))
            .map(|k| t.v[k])
            .collect()
    };
    let ra = rest(a, |s| s.0);
    let rb = rest(b, |s| s.1);
    match shared.len() {
        0 => candidate_axes(a, b).into_iter().any(|w| axis_splits(w, &a.v, &b.v)),
        1 => {
            let s = a.v[shared[0].0];
            // one triangle's free vertices off the other's plane
            if plane_splits(a.normal, a.nerr, s, &[], &rb) || plane_splits(b.normal, b.nerr, s, &[], &ra) {
                return true;
            }
            let mut axes = candidate_axes(a, b);
            for &x in &ra {
                for &y in &rb {
                    let (ux, uy) = (unit(sub(x, s)), unit(sub(y, s)));
                    for u in [add(ux, uy), sub(ux, uy)] {
                        axes.push(cross(a.normal, u));
                        axes.push(cross(b.normal, u));
                    }
                }
            }
            axes.into_iter().any(|w| plane_splits(w, 0.0, s, &ra, &rb))
        }
        2 => {
            let (p, q) = (a.v[shared[0].0], a.v[shared[1].0]);
            let (c, d) = (ra[0], rb[0]);
            if plane_splits(a.normal, a.nerr, p, &[], &rb) || plane_splits(b.normal, b.nerr, p, &[], &ra) {
                return true;
            }
            // coplanar: free vertices on opposite sides of the shared edge
            let e = sub(q, p);
            let werr = (a.nerr + norm1(a.normal)) * norm1(add(abs(q), abs(p)));
            plane_splits(cross(a.normal, e), werr, p, &[c], &[d])
        }
        _ => false,
    }
}

/// Segment `s` (with `shared` pairs `(in s, in t)`) provably meets `t` only
/// in shared vertices.
pub(crate) fn seg_separated(s: [V3; 2], t: &FloatTri, shared: &[(usize, usize)]) -> bool {
    let free: Vec<V3> = (0..2)
        .filter(|k| shared.iter().all(|x| x.0 != *k))
        .map(|k| s[k])
        .collect();
    match shared {
        [] => {
            let e = sub(s[1], s[0]);
            let mut axes = vec![t.normal];
            for i in 0..3 {
                axes.push(cross(e, t.edge(i)));
                axes.push(cross(t.normal, t.edge(i)));
            }
            axes.push(cross(t.normal, e));
            axes.into_iter().any(|w| axis_splits(w, &s, &t.v))
        }
        &[(_, j)] => {
            let o = t.v[j];
            if plane_splits(t.normal, t.nerr, o, &[], &free) {
                return true;
            }
            let others: Vec<V3> = (0..3).filter(|&k| k != j).map(|k| t.v[k]).collect();
            let ux = unit(sub(free[0], o));
            others.iter().any(|&y| {
                let uy = unit(sub(y, o));
                [add(ux, uy), sub(ux, uy)]
                    .into_iter()
                    .any(|u| plane_splits(cross(t.normal, u), 0.0, o, &free, &others))
            })
        }
        _ => false,
    }
}
