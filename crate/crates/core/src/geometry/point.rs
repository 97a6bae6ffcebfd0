use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A planar point with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point {
            x: BigRational::from_integer(x.into()),
            y: BigRational::from_integer(y.into()),
        }
    }

    /// Exact conversion of a finite float pair (every finite `f64` is a
    /// dyadic rational, so nothing is rounded).
    pub fn from_f64(x: f64, y: f64) -> Result<Self> {
        let conv = |v: f64| {
            BigRational::from_float(v).ok_or_else(|| Error::InvalidRational(v.to_string()))
        };
        Ok(Point {
            x: conv(x)?,
            y: conv(y)?,
        })
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [
            self.x.to_f64().unwrap_or(f64::NAN),
            self.y.to_f64().unwrap_or(f64::NAN),
        ]
    }

    pub fn origin() -> Self {
        Point::from_ints(0, 0)
    }

    /// `self + (other − self)·t`.
    pub fn lerp(&self, other: &Point, t: &BigRational) -> Point {
        Point {
            x: &self.x + (&other.x - &self.x) * t,
            y: &self.y + (&other.y - &self.y) * t,
        }
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        self.lerp(other, &half)
    }

    pub fn translate(&self, dx: &BigRational, dy: &BigRational) -> Point {
        Point {
            x: &self.x + dx,
            y: &self.y + dy,
        }
    }

    /// Rotation by 90° counter-clockwise about the origin.
    pub fn rotate90(&self) -> Point {
        Point {
            x: -self.y.clone(),
            y: self.x.clone(),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            format_rational(&self.x),
            format_rational(&self.y)
        )
    }
}

/// Canonical text form: `"7/3"`, or `"5"` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"a/b"`, an integer, or a finite decimal such as `"-0.125"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidRational(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if frac.is_empty() && int_digits.is_empty()
            || !frac.chars().all(|c| c.is_ascii_digit())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let digits = format!("{int_digits}{frac}");
        let mag: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(mag, scale);
        return Ok(if negative { -r } else { r });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_forms() {
        assert_eq!(format_rational(&parse_rational("7/3").unwrap()), "7/3");
        assert_eq!(format_rational(&parse_rational("14/6").unwrap()), "7/3");
        assert_eq!(format_rational(&parse_rational("-0.125").unwrap()), "-1/8");
        assert_eq!(format_rational(&parse_rational("5").unwrap()), "5");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn float_conversion_is_exact() {
        let p = Point::from_f64(0.1, -2.5).unwrap();
        assert_eq!(p.to_f64(), [0.1, -2.5]);
        assert!(Point::from_f64(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn midpoint_is_exact() {
        let m = Point::from_ints(0, 0).midpoint(&Point::from_ints(3, 1));
        assert_eq!(m, Point::new(rational(3, 2), rational(1, 2)));
    }
}
