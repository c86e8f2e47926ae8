//! Lower and upper bounds on triangle counts of spanning surfaces.

use crate::exact::{format_rational, int, Rational};
use malachite::num::arithmetic::traits::{Ceiling, Gcd};
use malachite::Integer;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("genus must be non-negative, got {0}")]
    NegativeGenus(i64),
    #[error("unoriented genus must be a non-negative multiple of 1/2, got {0}")]
    BadUnorientedGenus(String),
    #[error("torus knot parameters must be at least 2 and coprime, got ({0}, {1})")]
    NotTorusKnot(u64, u64),
    #[error("need n >= 3, got {0}")]
    TooFewEdges(usize),
}

/// `4g + 1`
pub fn genus_lower_bound(g: i64) -> Result<i64, BoundsError> {
    if g < 0 {
        return Err(BoundsError::NegativeGenus(g));
    }
    Ok(4 * g + 1)
}

/// `(p - 1)(q - 1) / 2`
pub fn torus_genus(p: u64, q: u64) -> Result<u64, BoundsError> {
    if p < 2 || q < 2 || p.gcd(q) != 1 {
        return Err(BoundsError::NotTorusKnot(p, q));
    }
    Ok((p - 1) * (q - 1) / 2)
}

/// `|w| + 1`
pub fn writhe_lower_bound(w: i64) -> i64 {
    w.abs() + 1
}

/// `4g* + 1` for a half-integer `g*`.
pub fn unoriented_genus_bound(g: &Rational) -> Result<i64, BoundsError> {
    let four = g * int(4);
    let bad = || BoundsError::BadUnorientedGenus(format_rational(g));
    if *g < 0u32 || (g * int(2)).denominator_ref() != &1u32 {
        return Err(bad());
    }
    let v = i64::try_from(&Integer::from(four.numerator_ref())).map_err(|_| bad())?;
    Ok(v + 1)
}

/// `max(0, ceil((|w| - 3n) / 16))`
pub fn crossing_lower_bound(w: i64, n: usize) -> i64 {
    let raw = Rational::from(w.abs() - 3 * n as i64) / int(16);
    let c = i64::try_from(&raw.ceiling()).expect("small");
    c.max(0)
}

/// `n^2/2 - 3n + 5` and `n^2/36 + 3/4`.
pub fn family_bounds(n: usize) -> Result<(Rational, Rational), BoundsError> {
    if n < 3 {
        return Err(BoundsError::TooFewEdges(n));
    }
    let n = Rational::from(n as u64);
    let sq = &n * &n;
    let torus = &sq / int(2) - int(3) * &n + int(5);
    let twist = sq / int(36) + Rational::from_unsigneds(3u32, 4u32);
    Ok((torus, twist))
}

/// `t / n^2`
pub fn iso_ratio(t: usize, n: usize) -> Rational {
    Rational::from_unsigneds(t as u64, (n * n) as u64)
}

fn ser_rat<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

fn ser_opt_rat<S: serde::Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&format_rational(q)),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBounds {
    pub genus: Option<i64>,
    pub writhe: i64,
    pub unoriented: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpperBounds {
    pub seifert: usize,
    /// `7n^2`
    pub quadratic: usize,
    #[serde(rename = "d4-immersed")]
    pub d4_immersed: usize,
    #[serde(rename = "d4-embedded")]
    pub d4_embedded: usize,
    #[serde(rename = "d5-cone")]
    pub d5_cone: usize,
    pub d2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyBounds {
    #[serde(rename = "torus-family", serialize_with = "ser_rat")]
    pub torus: Rational,
    #[serde(rename = "twist-family", serialize_with = "ser_rat")]
    pub twist: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub c: usize,
    pub writhe: i64,
    pub knot_genus: Option<i64>,
    #[serde(serialize_with = "ser_opt_rat")]
    pub unoriented_genus: Option<Rational>,
    pub lower: LowerBounds,
    pub upper: UpperBounds,
    pub family: FamilyBounds,
    pub crossing_bound: i64,
    #[serde(serialize_with = "ser_opt_rat")]
    pub iso_ratio: Option<Rational>,
    /// the range the isoperimetric constant is known to lie in
    pub iso_bracket: [&'static str; 2],
    /// the looser `t >= |w|` form is implied by the writhe bound
    pub writhe_note: &'static str,
}

/// Every bound for a polygon with `n` edges whose diagram has `c` crossings
/// and writhe `w`.
pub fn bounds_report(
    n: usize,
    c: usize,
    w: i64,
    knot_genus: Option<i64>,
    unoriented_genus: Option<Rational>,
    t: Option<usize>,
) -> Result<BoundsReport, BoundsError> {
    let (torus, twist) = family_bounds(n)?;
    let genus = knot_genus.map(genus_lower_bound).transpose()?;
    let unoriented = unoriented_genus.as_ref().map(unoriented_genus_bound).transpose()?;
    Ok(BoundsReport {
        n,
        c,
        writhe: w,
        knot_genus,
        unoriented_genus,
        lower: LowerBounds {
            genus,
            writhe: writhe_lower_bound(w),
            unoriented,
        },
        upper: UpperBounds {
            seifert: 3 * n + 14 * c,
            quadratic: 7 * n * n,
            d4_immersed: 3 * n,
            d4_embedded: 21 * n * n,
            d5_cone: n,
            d2: n - 2,
        },
        family: FamilyBounds { torus, twist },
        crossing_bound: crossing_lower_bound(w, n),
        iso_ratio: t.map(|t| iso_ratio(t, n)),
        iso_bracket: ["1/2", "7"],
        writhe_note: "t >= |w| + 1 (implies t >= |w|)",
    })
}

impl BoundsReport {
    /// Largest populated lower bound.
    pub fn best_lower(&self) -> i64 {
        [self.lower.genus, Some(self.lower.writhe), self.lower.unoriented]
            .into_iter()
            .flatten()
            .max()
            .expect("writhe bound is always present")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn genus_bounds() {
        assert_eq!(genus_lower_bound(0), Ok(1));
        assert_eq!(genus_lower_bound(1), Ok(5));
        assert_eq!(genus_lower_bound(torus_genus(4, 3).unwrap() as i64), Ok(13));
        assert!(genus_lower_bound(-1).is_err());
    }

    #[test]
    fn torus_genera() {
        assert_eq!(torus_genus(3, 2), Ok(1));
        assert_eq!(torus_genus(2, 3), Ok(1));
        assert_eq!(torus_genus(5, 4), Ok(6));
        assert!(torus_genus(4, 2).is_err());
        assert!(torus_genus(1, 3).is_err());
    }

    #[test]
    fn writhe_and_unoriented() {
        assert_eq!(writhe_lower_bound(0), 1);
        assert_eq!(writhe_lower_bound(12), 13);
        assert_eq!(writhe_lower_bound(-3), 4);
        assert_eq!(unoriented_genus_bound(&rat(1, 2)), Ok(3));
        assert_eq!(unoriented_genus_bound(&int(1)), Ok(5));
        assert_eq!(unoriented_genus_bound(&int(0)), Ok(1));
        assert!(unoriented_genus_bound(&rat(1, 3)).is_err());
        assert!(unoriented_genus_bound(&rat(-1, 2)).is_err());
    }

    #[test]
    fn crossing_bounds() {
        assert_eq!(crossing_lower_bound(0, 6), 0);
        for m in 1..40i64 {
            let n = (6 * m + 3) as usize;
            let w = m * (m + 1);
            let exact = Rational::from(m * m - 17 * m - 9) / int(16);
            let want = i64::try_from(&exact.ceiling()).unwrap().max(0);
            assert_eq!(crossing_lower_bound(w, n), want);
        }
        assert_eq!(crossing_lower_bound(100, 4), 6);
    }

    #[test]
    fn family_values() {
        assert_eq!(family_bounds(6).unwrap().0, int(5));
        assert_eq!(family_bounds(9).unwrap().1, int(3));
        for m in 3..30u64 {
            let g = torus_genus(m, m - 1).unwrap() as i64;
            assert_eq!(
                family_bounds(2 * m as usize).unwrap().0,
                int(genus_lower_bound(g).unwrap())
            );
        }
        assert_eq!(family_bounds(10).unwrap().0, int(25));
    }

    #[test]
    fn ratios() {
        assert_eq!(iso_ratio(56, 6), rat(14, 9));
        assert_eq!(iso_ratio(7 * 25, 5), int(7));
        assert_eq!(iso_ratio(3 * 10 - 2, 10), rat(7, 25));
    }

    #[test]
    fn report_keys() {
        let r = bounds_report(6, 3, 3, Some(1), None, Some(56)).unwrap();
        assert_eq!(r.best_lower(), 5);
        assert_eq!(r.upper.seifert, 60);
        assert_eq!(r.iso_ratio, Some(rat(14, 9)));
    }
}
