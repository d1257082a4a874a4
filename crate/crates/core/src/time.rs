//! Exact rational time instants.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::Error;

/// A point on the real time axis, held as a reduced arbitrary-precision
/// fraction. Every interval endpoint and every delay parameter is a
/// `TimePoint`; no operation ever rounds.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TimePoint(BigRational);

impl TimePoint {
    /// `num / den`, reduced. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        TimePoint(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(n: i64) -> Self {
        TimePoint(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(r: BigRational) -> Self {
        TimePoint(r)
    }

    pub fn zero() -> Self {
        TimePoint(BigRational::zero())
    }

    pub fn one() -> Self {
        TimePoint(BigRational::one())
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Midpoint of `self` and `other`.
    pub fn midpoint(&self, other: &TimePoint) -> TimePoint {
        TimePoint((&self.0 + &other.0) / BigRational::from_integer(2.into()))
    }

    pub fn min(self, other: TimePoint) -> TimePoint {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: TimePoint) -> TimePoint {
        std::cmp::max(self, other)
    }

    /// True when `self` is an integer multiple of `step`.
    pub fn is_multiple_of(&self, step: &TimePoint) -> bool {
        (&self.0 / &step.0).is_integer()
    }

    /// `self / step` as an integer, when it is one.
    pub fn steps_of(&self, step: &TimePoint) -> Option<BigInt> {
        let q = &self.0 / &step.0;
        q.is_integer().then(|| q.to_integer())
    }

    /// Greatest common divisor of two non-zero rationals: the largest
    /// positive rational of which both are integer multiples.
    pub fn gcd(&self, other: &TimePoint) -> TimePoint {
        let num = self.numer().gcd(other.numer());
        let den = self.denom().lcm(other.denom());
        TimePoint(BigRational::new(num, den))
    }
}

impl fmt::Display for TimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for TimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for TimePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Accepts integers (`7`, `-2`), decimals (`1.25`) and fractions (`5/4`).
impl FromStr for TimePoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid time value `{s}`"));
        if s.is_empty() {
            return Err(bad());
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            return Ok(TimePoint(BigRational::new(n, d)));
        }
        if let Some((int, frac)) = s.split_once('.') {
            let negative = int.starts_with('-');
            let digits = int.trim_start_matches(['-', '+']);
            let valid = |p: &str| p.chars().all(|c| c.is_ascii_digit());
            if !valid(digits) || !valid(frac) || (digits.is_empty() && frac.is_empty()) {
                return Err(bad());
            }
            let whole: BigInt = if digits.is_empty() {
                BigInt::zero()
            } else {
                digits.parse().map_err(|_| bad())?
            };
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let part: BigInt = if frac.is_empty() {
                BigInt::zero()
            } else {
                frac.parse().map_err(|_| bad())?
            };
            let mut r = BigRational::new(whole * &scale + part, scale);
            if negative {
                r = -r;
            }
            return Ok(TimePoint(r));
        }
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(TimePoint(BigRational::from_integer(n)))
    }
}

impl From<i64> for TimePoint {
    fn from(n: i64) -> Self {
        TimePoint::from_integer(n)
    }
}

impl From<i32> for TimePoint {
    fn from(n: i32) -> Self {
        TimePoint::from_integer(n.into())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&TimePoint> for &TimePoint {
            type Output = TimePoint;
            fn $method(self, rhs: &TimePoint) -> TimePoint {
                TimePoint((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<TimePoint> for TimePoint {
            type Output = TimePoint;
            fn $method(self, rhs: TimePoint) -> TimePoint {
                TimePoint(self.0.$method(rhs.0))
            }
        }
        impl $tr<&TimePoint> for TimePoint {
            type Output = TimePoint;
            fn $method(self, rhs: &TimePoint) -> TimePoint {
                TimePoint(self.0.$method(&rhs.0))
            }
        }
        impl $tr<TimePoint> for &TimePoint {
            type Output = TimePoint;
            fn $method(self, rhs: TimePoint) -> TimePoint {
                TimePoint((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&TimePoint> for TimePoint {
    fn add_assign(&mut self, rhs: &TimePoint) {
        self.0 += &rhs.0;
    }
}

impl Neg for TimePoint {
    type Output = TimePoint;
    fn neg(self) -> TimePoint {
        TimePoint(-self.0)
    }
}

impl Neg for &TimePoint {
    type Output = TimePoint;
    fn neg(self) -> TimePoint {
        TimePoint(-&self.0)
    }
}

/// Shorthand for building time points in code and tests: `tp(3)`, `tp((3, 2))`.
pub fn tp(v: impl IntoTimePoint) -> TimePoint {
    v.into_time_point()
}

pub trait IntoTimePoint {
    fn into_time_point(self) -> TimePoint;
}

impl IntoTimePoint for i64 {
    fn into_time_point(self) -> TimePoint {
        TimePoint::from_integer(self)
    }
}

impl IntoTimePoint for i32 {
    fn into_time_point(self) -> TimePoint {
        TimePoint::from_integer(self.into())
    }
}

impl IntoTimePoint for (i64, i64) {
    fn into_time_point(self) -> TimePoint {
        TimePoint::new(self.0, self.1)
    }
}

impl IntoTimePoint for TimePoint {
    fn into_time_point(self) -> TimePoint {
        self
    }
}

impl IntoTimePoint for &TimePoint {
    fn into_time_point(self) -> TimePoint {
        self.clone()
    }
}
