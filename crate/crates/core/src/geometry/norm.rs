use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::point::{parse_rational, Point};
use crate::error::{Error, Result};

/// The exponent of a planar ℓp norm, `1 ≤ p ≤ ∞`.
///
/// Finite exponents are kept as reduced fractions so that integer exponents
/// can be detected reliably; infinity is its own variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PNorm {
    Finite { num: u32, den: u32 },
    Infinity,
}

impl PNorm {
    pub const L1: PNorm = PNorm::Finite { num: 1, den: 1 };
    pub const L2: PNorm = PNorm::Finite { num: 2, den: 1 };

    pub fn new(num: u32, den: u32) -> Result<Self> {
        if den == 0 || num < den {
            return Err(Error::InvalidNorm(format!("{num}/{den}")));
        }
        let g = num.gcd(&den);
        Ok(PNorm::Finite {
            num: num / g,
            den: den / g,
        })
    }

    pub fn integer(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    /// `p` as a float; `f64::INFINITY` for the max norm.
    pub fn exponent(&self) -> f64 {
        match *self {
            PNorm::Finite { num, den } => num as f64 / den as f64,
            PNorm::Infinity => f64::INFINITY,
        }
    }

    pub fn integer_exponent(&self) -> Option<u32> {
        match *self {
            PNorm::Finite { num, den: 1 } => Some(num),
            _ => None,
        }
    }

    /// Exponent of the exact comparison key: `p` for integer `p`, `1` for the
    /// max norm (whose lengths are rational themselves), `None` otherwise.
    pub fn key_exponent(&self) -> Option<u32> {
        match *self {
            PNorm::Finite { num, den: 1 } => Some(num),
            PNorm::Finite { .. } => None,
            PNorm::Infinity => Some(1),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.key_exponent().is_some()
    }

    /// Length of the vector `(dx, dy)`.
    pub fn norm_f64(&self, dx: f64, dy: f64) -> f64 {
        let (ax, ay) = (dx.abs(), dy.abs());
        match *self {
            PNorm::Infinity => ax.max(ay),
            PNorm::Finite { num: 1, den: 1 } => ax + ay,
            PNorm::Finite { num: 2, den: 1 } => ax.hypot(ay),
            PNorm::Finite { .. } => {
                let hi = ax.max(ay);
                if hi == 0.0 {
                    return 0.0;
                }
                let lo = ax.min(ay);
                let p = self.exponent();
                hi * (1.0 + (lo / hi).powf(p)).powf(1.0 / p)
            }
        }
    }

    pub fn dist_f64(&self, a: [f64; 2], b: [f64; 2]) -> f64 {
        self.norm_f64(a[0] - b[0], a[1] - b[1])
    }

    /// A subgradient of `c ↦ ‖c − b‖_p` at `c = a`.
    pub fn gradient(&self, a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
        let d = [a[0] - b[0], a[1] - b[1]];
        let len = self.norm_f64(d[0], d[1]);
        if len == 0.0 {
            return [0.0, 0.0];
        }
        match *self {
            PNorm::Infinity => {
                if d[0].abs() >= d[1].abs() {
                    [d[0].signum(), 0.0]
                } else {
                    [0.0, d[1].signum()]
                }
            }
            PNorm::Finite { num: 1, den: 1 } => [sign0(d[0]), sign0(d[1])],
            PNorm::Finite { .. } => {
                let p = self.exponent();
                let g = |v: f64| sign0(v) * (v.abs() / len).powf(p - 1.0);
                [g(d[0]), g(d[1])]
            }
        }
    }

    /// Distance between exact points, as a float.
    pub fn dist(&self, a: &Point, b: &Point) -> f64 {
        self.dist_f64(a.to_f64(), b.to_f64())
    }

    /// Exact comparison key of `|dx|, |dy|`: `|dx|^p + |dy|^p` for integer
    /// `p`, `max(|dx|, |dy|)` for the max norm.
    pub fn key_of(&self, dx: &BigRational, dy: &BigRational) -> Option<BigRational> {
        let (ax, ay) = (dx.abs(), dy.abs());
        match *self {
            PNorm::Infinity => Some(if ax >= ay { ax } else { ay }),
            PNorm::Finite { num, den: 1 } => {
                let e = num as i32;
                Some(num_traits::pow::Pow::pow(&ax, e) + num_traits::pow::Pow::pow(&ay, e))
            }
            PNorm::Finite { .. } => None,
        }
    }

    /// Integer analogue of [`PNorm::key_of`].
    pub fn int_key_of(&self, dx: &BigInt, dy: &BigInt) -> Option<BigInt> {
        let (ax, ay) = (dx.abs(), dy.abs());
        match *self {
            PNorm::Infinity => Some(ax.max(ay)),
            PNorm::Finite { num, den: 1 } => Some(ax.pow(num) + ay.pow(num)),
            PNorm::Finite { .. } => None,
        }
    }

    /// The key-space image of a nonnegative rational length.
    pub fn key_of_length(&self, len: &BigRational) -> Option<BigRational> {
        self.key_exponent()
            .map(|e| num_traits::pow::Pow::pow(len, e as i32))
    }

    /// Converts an exact key back to a float length.
    pub fn length_of_key(&self, key: &BigRational) -> f64 {
        let v = key.to_f64().unwrap_or(f64::INFINITY);
        match self.key_exponent() {
            Some(1) | None => v,
            Some(2) => v.sqrt(),
            Some(e) => v.powf(1.0 / e as f64),
        }
    }
}

fn sign0(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

impl Default for PNorm {
    fn default() -> Self {
        PNorm::L2
    }
}

impl fmt::Display for PNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PNorm::Finite { num, den: 1 } => write!(f, "{num}"),
            // Terminating decimals print as such ("1.5"); others as "7/3".
            PNorm::Finite { num, den } => match (1..=12u32).find(|&k| 10u128.pow(k) % den as u128 == 0) {
                Some(k) => {
                    let unit = 10u128.pow(k);
                    let scaled = num as u128 * (unit / den as u128);
                    write!(f, "{}.{:0w$}", scaled / unit, scaled % unit, w = k as usize)
                }
                None => write!(f, "{num}/{den}"),
            },
            PNorm::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for PNorm {
    type Err = Error;

    /// Accepts `"2"`, `"3/2"`, `"1.5"`, `"inf"` (also `"infinity"`, `"∞"`).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t.to_ascii_lowercase().as_str(), "inf" | "infinity" | "∞") {
            return Ok(PNorm::Infinity);
        }
        let r = parse_rational(t).map_err(|_| Error::InvalidNorm(t.to_string()))?;
        if r < BigRational::from_integer(1.into()) {
            return Err(Error::InvalidNorm(t.to_string()));
        }
        let (num, den) = (r.numer().to_u32(), r.denom().to_u32());
        match (num, den) {
            (Some(n), Some(d)) if !r.is_zero() => PNorm::new(n, d),
            _ => Err(Error::InvalidNorm(t.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_spellings() {
        assert_eq!("2".parse::<PNorm>().unwrap(), PNorm::L2);
        assert_eq!("3/2".parse::<PNorm>().unwrap(), PNorm::new(3, 2).unwrap());
        assert_eq!("1.5".parse::<PNorm>().unwrap(), PNorm::new(3, 2).unwrap());
        assert_eq!("6/4".parse::<PNorm>().unwrap(), PNorm::new(3, 2).unwrap());
        assert_eq!("inf".parse::<PNorm>().unwrap(), PNorm::Infinity);
        assert_eq!("∞".parse::<PNorm>().unwrap(), PNorm::Infinity);
    }

    #[test]
    fn rejects_sub_unit_exponents() {
        let err = "0.5".parse::<PNorm>().unwrap_err();
        assert_eq!(err.to_string(), "p must be ≥ 1 (got 0.5)");
        assert!(PNorm::new(1, 2).is_err());
        assert!("0".parse::<PNorm>().is_err());
        assert!("abc".parse::<PNorm>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["1", "2", "1.5", "2.25", "7/3", "inf", "10"] {
            assert_eq!(s.parse::<PNorm>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn general_p_matches_direct_formula() {
        let n = PNorm::new(3, 2).unwrap();
        let direct = (3f64.powf(1.5) + 4f64.powf(1.5)).powf(1.0 / 1.5);
        assert!((n.norm_f64(3.0, -4.0) - direct).abs() < 1e-12);
    }

    #[test]
    fn gradient_is_unit_dual() {
        // <g, d> = ‖d‖ for a subgradient of the norm at d.
        for n in [PNorm::L1, PNorm::L2, PNorm::integer(3).unwrap(), PNorm::Infinity] {
            let g = n.gradient([3.0, -1.5], [0.0, 0.0]);
            let ip = 3.0 * g[0] - 1.5 * g[1];
            assert!((ip - n.norm_f64(3.0, -1.5)).abs() < 1e-12, "{n}");
        }
    }
}
