//! Exact rational geometry kernel.
//!
//! Every decision made anywhere in the crate (orientation, intersection,
//! containment, general position) goes through this module and is computed
//! over arbitrary precision rationals. There are no tolerances.

mod affine;
pub(crate) mod lp;
pub(crate) mod point;
pub(crate) mod predicates;
pub(crate) mod simplex;
pub(crate) mod tri3;

pub use affine::AffineMap;
pub use point::Point;
pub use predicates::{
    orient2d, orient3d, point_in_triangle_2d, seg_intersect_2d, segment_crossing_params, winding_number,
    IntersectionKind, SegIntersection, Segment2,
};
pub use simplex::{hulls_intersect, simplex_intersect, simplex_intersection_witness, SharedFace, Simplex};

pub use malachite::Rational;

use malachite::num::arithmetic::traits::Sign as _;
use malachite::num::conversion::traits::{FromSciString, RoundingFrom};
use malachite::rounding_modes::RoundingMode;
use std::cmp::Ordering;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degenerate segment: endpoints coincide")]
    DegenerateSegment,
    #[error("degenerate simplex: vertices are affinely dependent")]
    DegenerateSimplex,
    #[error("shared face names vertices that are not equal points")]
    SharedFaceMismatch,
    #[error("affine map is singular")]
    Singular,
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
}

/// Sign of an exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(q: &Rational) -> Sign {
        q.sign().into()
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl From<Ordering> for Sign {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from(n)
}

/// `n / d`, panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::from_signeds(n, d)
}

/// Parses `p/q`, an integer, or a decimal literal (`-1.25`, `3e-2`) exactly.
pub fn parse_rational(s: &str) -> Result<Rational, GeomError> {
    let s = s.trim();
    let bad = || GeomError::BadRational(s.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_decimal(p).ok_or_else(bad)?;
        let q = parse_decimal(q).ok_or_else(bad)?;
        if q == 0u32 {
            return Err(bad());
        }
        return Ok(p / q);
    }
    parse_decimal(s).ok_or_else(bad)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() || s.contains(char::is_whitespace) {
        return None;
    }
    let body = s.strip_prefix('+').unwrap_or(s);
    if let Ok(q) = Rational::from_str(body) {
        return Some(q);
    }
    Rational::from_sci_string(body)
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Nearest `f64`, used only for viewer output and human-facing summaries.
pub fn to_f64(q: &Rational) -> f64 {
    f64::rounding_from(q, RoundingMode::Nearest).0
}

/// Nearest rational with denominator `2^bits` to a float. Generators use
/// this to place points; everything downstream re-verifies exactly.
pub fn dyadic_from_f64(x: f64, bits: u32) -> Rational {
    let scale = (1u64 << bits) as f64;
    rat((x * scale).round() as i64, 1i64 << bits)
}

/// Exact point on the unit circle near angle `theta`, via the rational
/// parametrisation `((1 - u^2)/(1 + u^2), 2u/(1 + u^2))` with `u ~ tan(theta/2)`.
pub fn unit_circle_point(theta: f64, bits: u32) -> (Rational, Rational) {
    let t = theta.rem_euclid(std::f64::consts::TAU);
    // keep |u| <= 1 by reflecting through the origin for angles past pi/2
    let (t, flip) = if t > std::f64::consts::FRAC_PI_2 && t < 3.0 * std::f64::consts::FRAC_PI_2 {
        (t - std::f64::consts::PI, true)
    } else {
        (t, false)
    };
    let u = dyadic_from_f64((t / 2.0).tan(), bits);
    let one = int(1);
    let u2 = &u * &u;
    let den = &one + &u2;
    let x = (&one - &u2) / &den;
    let y = (int(2) * u) / den;
    if flip {
        (-x, -y)
    } else {
        (x, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_rational("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rational("-4/6").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("1e-2").unwrap(), rat(1, 100));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formatting_round_trips() {
        for q in [rat(1, 3), rat(-7, 2), int(0), int(12), rat(5, 1024)] {
            assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }
    }

    #[test]
    fn circle_points_lie_on_the_circle() {
        for k in 0..16 {
            let (x, y) = unit_circle_point(k as f64 * 0.41, 10);
            assert_eq!(&x * &x + &y * &y, int(1));
        }
    }
}
