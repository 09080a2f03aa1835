use std::fmt;
use std::str::FromStr;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{parse_rational, Integer, Rational};
use crate::error::ParseError;

/// A point `[a : b]` of the projective line over Q.
///
/// Canonical: `gcd(a, b) = 1` and `b > 0`, or the point at infinity `[1 : 0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    a: Integer,
    b: Integer,
}

impl ProjPoint {
    /// Canonicalizes `[a : b]`; returns `None` for `(0, 0)`.
    pub fn new(a: Integer, b: Integer) -> Option<Self> {
        if a.is_zero() && b.is_zero() {
            return None;
        }
        if b.is_zero() {
            return Some(Self::infinity());
        }
        let g = a.gcd(&b);
        let (mut a, mut b) = (a / &g, b / &g);
        if b.is_negative() {
            a = -a;
            b = -b;
        }
        Some(ProjPoint { a, b })
    }

    /// `[λa : λb]` with rational coordinates.
    pub fn from_rationals(a: &Rational, b: &Rational) -> Option<Self> {
        let l = a.denom().lcm(b.denom());
        let aa = a.numer() * (&l / a.denom());
        let bb = b.numer() * (&l / b.denom());
        Self::new(aa, bb)
    }

    pub fn infinity() -> Self {
        ProjPoint { a: Integer::one(), b: Integer::zero() }
    }

    pub fn from_rational(q: &Rational) -> Self {
        ProjPoint { a: q.numer().clone(), b: q.denom().clone() }
    }

    pub fn is_infinity(&self) -> bool {
        self.b.is_zero()
    }

    pub fn a(&self) -> &Integer {
        &self.a
    }

    pub fn b(&self) -> &Integer {
        &self.b
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_infinity() {
            None
        } else {
            Some(Rational::new(self.a.clone(), self.b.clone()))
        }
    }

    pub fn height(&self) -> Integer {
        height(self)
    }
}

/// `max(|a|, |b|)` of the canonical representative.
pub fn height(c: &ProjPoint) -> Integer {
    c.a.abs().max(c.b.abs())
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else if self.b.is_one() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}/{}", self.a, self.b)
        }
    }
}

impl FromStr for ProjPoint {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let t = s.trim();
        if t == "inf" || t == "∞" {
            return Ok(Self::infinity());
        }
        Ok(Self::from_rational(&parse_rational(t)?))
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
