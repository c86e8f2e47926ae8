use super::{ClosedPolygon, PolygonError};
use crate::exact::{int, rat, unit_circle_point, Point, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

/// Generator families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    PlanarNgon,
    TorusStick,
    TwistWrithe,
    Random,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::PlanarNgon => "ngon",
            Family::TorusStick => "torus",
            Family::TwistWrithe => "twist",
            Family::Random => "random",
        }
    }
}

/// A fully specified generator call. `param` is `n` for `ngon`/`random`
/// and `m` for `torus`/`twist`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub param: usize,
    pub dim: usize,
    pub seed: u64,
}

impl FamilySpec {
    /// Torus and twist polygons live in `R^3`; for `dim > 3` they are lifted
    /// with seeded generic heights in the fourth coordinate.
    pub fn generate(&self) -> Result<ClosedPolygon, PolygonError> {
        match self.family {
            Family::PlanarNgon => gen_planar_ngon(self.param, self.dim),
            Family::Random => gen_random(self.param, self.dim, self.seed),
            Family::TorusStick | Family::TwistWrithe => {
                if self.dim < 3 {
                    return Err(PolygonError::BadParameter {
                        family: self.family.name(),
                        value: self.dim,
                        reason: "dimension must be at least 3",
                    });
                }
                let p = if self.family == Family::TorusStick {
                    gen_torus_stick(self.param)?
                } else {
                    gen_twist_writhe(self.param)?
                };
                if self.dim == 3 {
                    Ok(p)
                } else {
                    lift_generic(&p, self.dim, self.seed)
                }
            }
        }
    }
}

/// Convex `n`-gon on the unit circle of the first coordinate plane.
pub fn gen_planar_ngon(n: usize, dim: usize) -> Result<ClosedPolygon, PolygonError> {
    if n < 3 {
        return Err(PolygonError::BadParameter {
            family: "ngon",
            value: n,
            reason: "need n >= 3",
        });
    }
    if dim < 2 {
        return Err(PolygonError::DimensionTooSmall(dim));
    }
    // distinct points of a circle are in convex position
    let verts = (0..n)
        .map(|k| {
            let (x, y) = unit_circle_point(TAU * k as f64 / n as f64, 20);
            Point::new(vec![x, y]).pad_to(dim)
        })
        .collect();
    ClosedPolygon::new(verts)
}

/// Where the inner vertex sits between consecutive outer ones, as a fraction
/// of the angular step; later entries are fallbacks.
const TORUS_SPLITS: [f64; 3] = [0.4, 0.45, 0.35];

fn torus_candidate(m: usize, inner: &Rational, split: f64) -> Vec<Point> {
    let step = TAU * (m - 1) as f64 / m as f64;
    let mut v = Vec::with_capacity(2 * m);
    for k in 0..m {
        let base = k as f64 * step;
        let (x, y) = unit_circle_point(base, 12);
        v.push(Point::new(vec![x, y, int(1)]));
        let (x, y) = unit_circle_point(base + split * step, 12);
        v.push(Point::new(vec![inner * x, inner * y, int(-1)]));
    }
    v
}

/// `2m`-stick polygon of antiprism type winding `m - 1` times around the
/// axis: even vertices on the unit circle at height 1, odd vertices on a
/// smaller circle at height -1.
pub fn gen_torus_stick(m: usize) -> Result<ClosedPolygon, PolygonError> {
    if m < 3 {
        return Err(PolygonError::BadParameter {
            family: "torus",
            value: m,
            reason: "need m >= 3",
        });
    }
    let radii = [rat(1, 5), rat(2, 5), rat(1, 2), rat(3, 5), rat(4, 5), int(1)];
    let mut last = None;
    for split in TORUS_SPLITS {
        for r in &radii {
            match ClosedPolygon::embedded(torus_candidate(m, r, split)) {
                Ok(p) => return Ok(p),
                Err(e) => last = Some(e),
            }
        }
    }
    Err(last.expect("at least one candidate radius"))
}

/// Polygon with `6m + 3` edges: `m` strands over `m + 1` strands at right
/// angles, closed by connector edges, all crossings positive.
///
/// The writhe along the third axis is recomputed and must be `m(m + 1)`.
pub fn gen_twist_writhe(m: usize) -> Result<ClosedPolygon, PolygonError> {
    if m < 1 {
        return Err(PolygonError::BadParameter {
            family: "twist",
            value: m,
            reason: "need m >= 1",
        });
    }
    let mi = m as i64;
    let p = |x: i64, y: i64, z: i64| Point::from_ints(&[x, y, z]);
    let far = 4 * mi + 4;
    let mut v = Vec::with_capacity(6 * m + 3);
    for j in 1..=mi {
        v.push(p(j, 0, -1));
        v.push(p(j, mi + 1, -1));
        v.push(p(-j, mi + 1 + j, 0));
        let i = mi + 1 - j;
        v.push(p(0, i, 1));
        v.push(p(mi + 2, i, 1));
        v.push(p(mi + 2 + i, -i, 0));
    }
    v.push(p(mi + 1, 0, -1));
    v.push(p(mi + 1, mi + 1, -1));
    v.push(p(-far, far, 0));
    let poly = ClosedPolygon::embedded(v)?;

    let d = crate::diagram::project_canonical(&poly)
        .map_err(|e| PolygonError::SelfCheck(format!("canonical projection: {e}")))?;
    let want = (m * (m + 1)) as i64;
    if d.writhe() != want || d.crossings().iter().any(|c| c.sign != 1) {
        return Err(PolygonError::SelfCheck(format!(
            "writhe {} with {} crossings, expected {want} all positive",
            d.writhe(),
            d.crossing_count()
        )));
    }
    Ok(poly)
}

/// Seeded embedded polygon with `n` edges, vertices on a lattice of step
/// `1/4` around a circle. Gives up after `budget` rejected samples.
pub fn gen_random_with_budget(n: usize, dim: usize, seed: u64, budget: usize) -> Result<ClosedPolygon, PolygonError> {
    if n < 3 {
        return Err(PolygonError::BadParameter {
            family: "random",
            value: n,
            reason: "need n >= 3",
        });
    }
    if dim < 2 {
        return Err(PolygonError::DimensionTooSmall(dim));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let radius = (4 * n).max(16) as i64;
    // planar loops must stay simple; in higher dimensions a wild projection
    // gives diagrams with plenty of crossings
    let wobble = if dim == 2 { radius / 5 } else { radius };
    for _ in 0..budget {
        let verts = (0..n)
            .map(|k| {
                let a = TAU * k as f64 / n as f64;
                let mut c = Vec::with_capacity(dim);
                c.push((radius as f64 * a.cos()).round() as i64 + rng.gen_range(-wobble..=wobble));
                c.push((radius as f64 * a.sin()).round() as i64 + rng.gen_range(-wobble..=wobble));
                for _ in 2..dim {
                    c.push(rng.gen_range(-radius..=radius));
                }
                Point::new(c.into_iter().map(|x| rat(x, 4)).collect())
            })
            .collect();
        if let Ok(p) = ClosedPolygon::embedded(verts) {
            return Ok(p);
        }
    }
    Err(PolygonError::GeneratorExhausted { seed, attempts: budget })
}

pub fn gen_random(n: usize, dim: usize, seed: u64) -> Result<ClosedPolygon, PolygonError> {
    gen_random_with_budget(n, dim, seed, 1000)
}

/// Pads `p` into `R^dim`, giving the first new coordinate seeded values in
/// `[-2, 2]` with step `1/16` and the rest zero.
pub fn lift_generic(p: &ClosedPolygon, dim: usize, seed: u64) -> Result<ClosedPolygon, PolygonError> {
    if dim < p.dim() {
        return Err(PolygonError::BadParameter {
            family: "lift",
            value: dim,
            reason: "target dimension below polygon dimension",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = p.dim();
    let verts = p
        .vertices()
        .iter()
        .map(|v| {
            let w = v.pad_to(dim);
            if dim > base {
                w.with_coord(base, rat(rng.gen_range(-32..=32), 16))
            } else {
                w
            }
        })
        .collect();
    ClosedPolygon::new(verts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::validate_embedded;

    #[test]
    fn ngon_shapes() {
        let t = gen_planar_ngon(3, 3).unwrap();
        assert_eq!(t.n(), 3);
        assert!(validate_embedded(&t).is_ok());
        let q = gen_planar_ngon(4, 2).unwrap();
        assert_eq!(q.vertex(1), &Point::from_ints(&[0, 1]));
        let p = gen_planar_ngon(12, 5).unwrap();
        assert_eq!(p.dim(), 5);
        assert!(p.vertices().iter().all(|v| v.coords()[2..].iter().all(|c| *c == 0u32)));
        assert!(gen_planar_ngon(2, 3).is_err());
    }

    #[test]
    fn torus_sticks() {
        for m in 3..=16 {
            let p = gen_torus_stick(m).unwrap();
            assert_eq!(p.n(), 2 * m);
            let mut v = p.vertices().to_vec();
            v.sort();
            v.dedup();
            assert_eq!(v.len(), 2 * m);
        }
    }

    #[test]
    fn random_is_deterministic() {
        let a = gen_random(8, 3, 1).unwrap();
        let b = gen_random(8, 3, 1).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, gen_random(8, 3, 2).unwrap());
        assert_eq!(gen_random(3, 4, 7).unwrap().dim(), 4);
    }

    #[test]
    fn twist_sizes() {
        for m in 1..=3 {
            assert_eq!(gen_twist_writhe(m).unwrap().n(), 6 * m + 3);
        }
    }
}
