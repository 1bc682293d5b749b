//! Reduced fractions with exact comparison.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A non-negative reduced fraction. Ordering is by cross-multiplication.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExactRatio {
    num: u128,
    den: u128,
}

impl ExactRatio {
    /// Panics if `den == 0`.
    pub fn new(num: u128, den: u128) -> Self {
        assert!(den != 0, "ExactRatio with zero denominator");
        let g = num.gcd(&den);
        ExactRatio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn integer(n: u128) -> Self {
        ExactRatio { num: n, den: 1 }
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn numerator(&self) -> u128 {
        self.num
    }

    pub fn denominator(&self) -> u128 {
        self.den
    }

    /// Decimal approximation; for display only.
    pub fn approx(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn approx_string(&self) -> String {
        format!("{:.6}", self.approx())
    }
}

impl Ord for ExactRatio {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self
            .num
            .checked_mul(other.den)
            .expect("ratio comparison overflow");
        let rhs = other
            .num
            .checked_mul(self.den)
            .expect("ratio comparison overflow");
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for ExactRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ExactRatio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidArgument(format!("'{s}' is not a ratio"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: u128 = n.parse().map_err(|_| bad())?;
        let den: u128 = d.parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        Ok(ExactRatio::new(num, den))
    }
}

impl Serialize for ExactRatio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRatio {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
