use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use super::norm::PNorm;
use super::point::Point;

/// Relative tolerance for comparing lengths that have no exact key
/// (non-integer `p`).
pub const APPROX_TOL: f64 = 1e-9;

/// An ℓp length carrying an exact comparison key whenever the norm allows it.
///
/// For integer `p` the key is the `p`-th power of the length; for the max
/// norm it is the length itself. Keys of the same norm are compared exactly;
/// everything else falls back to floats with [`APPROX_TOL`].
#[derive(Clone, Debug)]
pub struct Length {
    value: f64,
    key: Option<BigRational>,
    exponent: u32,
}

impl Length {
    pub fn between(norm: PNorm, a: &Point, b: &Point) -> Length {
        let key = norm.key_of(&(&a.x - &b.x), &(&a.y - &b.y));
        let value = match &key {
            Some(k) => norm.length_of_key(k),
            None => norm.dist(a, b),
        };
        Length {
            value,
            key,
            exponent: norm.key_exponent().unwrap_or(0),
        }
    }

    pub fn zero(norm: PNorm) -> Length {
        Length {
            value: 0.0,
            key: norm.key_exponent().map(|_| BigRational::zero()),
            exponent: norm.key_exponent().unwrap_or(0),
        }
    }

    /// A length given by its exact key (e.g. key `2` is `2^(1/p)`).
    pub fn from_key(norm: PNorm, key: BigRational) -> Length {
        match norm.key_exponent() {
            Some(e) => Length {
                value: norm.length_of_key(&key),
                key: Some(key),
                exponent: e,
            },
            None => Length::approx(key.to_f64().unwrap_or(f64::NAN)),
        }
    }

    /// A rational length such as `1`, `2` or `4n+2`.
    pub fn from_rational(norm: PNorm, len: &BigRational) -> Length {
        match norm.key_of_length(len) {
            Some(key) => Length::from_key(norm, key),
            None => Length::approx(len.to_f64().unwrap_or(f64::NAN)),
        }
    }

    pub fn approx(value: f64) -> Length {
        Length {
            value,
            key: None,
            exponent: 0,
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// The exact key (`p`-th power for integer `p`), if any.
    pub fn key(&self) -> Option<&BigRational> {
        self.key.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.key.is_some()
    }

    /// The length divided by a positive integer `m`.
    pub fn divided(&self, m: u32) -> Length {
        debug_assert!(m > 0);
        Length {
            value: self.value / m as f64,
            key: self
                .key
                .as_ref()
                .map(|k| k / BigRational::from_integer(BigInt::from(m).pow(self.exponent))),
            exponent: self.exponent,
        }
    }

    pub fn compare(&self, other: &Length) -> Ordering {
        match (&self.key, &other.key) {
            (Some(a), Some(b)) if self.exponent == other.exponent => a.cmp(b),
            _ => approx_cmp(self.value, other.value),
        }
    }

    pub fn max(self, other: Length) -> Length {
        if other.compare(&self) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    pub fn lt(&self, other: &Length) -> bool {
        self.compare(other) == Ordering::Less
    }

    pub fn le(&self, other: &Length) -> bool {
        self.compare(other) != Ordering::Greater
    }

    pub fn ge(&self, other: &Length) -> bool {
        self.compare(other) != Ordering::Less
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.9}", self.value)
    }
}

pub fn approx_cmp(a: f64, b: f64) -> Ordering {
    let scale = 1f64.max(a.abs()).max(b.abs());
    if (a - b).abs() <= APPROX_TOL * scale {
        Ordering::Equal
    } else {
        a.partial_cmp(&b).unwrap_or(Ordering::Equal)
    }
}

/// A point set rescaled by the common denominator of its coordinates, so
/// pairwise keys become integers.
///
/// Used wherever many pairwise comparisons are needed (gap certification,
/// threshold graphs, bead costs).
#[derive(Clone, Debug)]
pub struct IntFrame {
    norm: PNorm,
    scale: BigInt,
    xs: Vec<BigInt>,
    ys: Vec<BigInt>,
    approx: Vec<[f64; 2]>,
}

impl IntFrame {
    pub fn new(points: &[Point], norm: PNorm) -> IntFrame {
        let mut scale = BigInt::one();
        for p in points {
            scale = scale.lcm(p.x.denom()).lcm(p.y.denom());
        }
        let s = BigRational::from_integer(scale.clone());
        let to_int = |v: &BigRational| (v * &s).to_integer();
        IntFrame {
            norm,
            xs: points.iter().map(|p| to_int(&p.x)).collect(),
            ys: points.iter().map(|p| to_int(&p.y)).collect(),
            approx: points.iter().map(Point::to_f64).collect(),
            scale,
        }
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn norm(&self) -> PNorm {
        self.norm
    }

    /// Integer key of the pair, in frame units.
    pub fn key(&self, i: usize, j: usize) -> Option<BigInt> {
        self.norm
            .int_key_of(&(&self.xs[i] - &self.xs[j]), &(&self.ys[i] - &self.ys[j]))
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.norm.dist_f64(self.approx[i], self.approx[j])
    }

    /// Converts an absolute key into frame units.
    pub fn to_frame_key(&self, key: &BigRational) -> Option<BigRational> {
        let e = self.norm.key_exponent()?;
        Some(key * BigRational::from_integer(num_traits::Pow::pow(&self.scale, e)))
    }

    /// The exact length of the pair.
    pub fn length(&self, i: usize, j: usize) -> Length {
        match (self.key(i, j), self.norm.key_exponent()) {
            (Some(k), Some(e)) => {
                let key = BigRational::new(k, num_traits::Pow::pow(&self.scale, e));
                Length::from_key(self.norm, key)
            }
            _ => Length::approx(self.dist(i, j)),
        }
    }
}
