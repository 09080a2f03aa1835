//! Ground arithmetic: big integers, normalized rationals, points of the
//! projective line over Q and elements of quadratic fields.

mod proj;
mod quad;

pub use proj::ProjPoint;
pub use quad::{quad_cube_root, quad_sqrt, Quad};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

/// Arbitrary precision integer.
pub type Integer = BigInt;

/// Normalized rational: `gcd(num, den) = 1` and `den > 0`, maintained by
/// `num_rational` on every operation.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Integer {
    Integer::from(n)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(Integer::from(n))
}

/// Height `max(|a|, |b|)` of a rational `a/b` in lowest terms.
pub fn rational_height(q: &Rational) -> Integer {
    let a = q.numer().abs();
    let b = q.denom().abs();
    a.max(b)
}

/// Non-negative `r` with `r² = n`, if `n` is a perfect square.
pub fn perfect_square_root(n: &Integer) -> Option<Integer> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Integer `r` with `r³ = n`, if one exists.
pub fn perfect_cube_root(n: &Integer) -> Option<Integer> {
    let r = n.cbrt();
    if &r * &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let a = perfect_square_root(q.numer())?;
    let b = perfect_square_root(q.denom())?;
    Some(Rational::new(a, b))
}

pub fn rational_cube_root(q: &Rational) -> Option<Rational> {
    let a = perfect_cube_root(q.numer())?;
    let b = perfect_cube_root(q.denom())?;
    Some(Rational::new(a, b))
}

/// Squarefree part of a nonzero integer, keeping the sign.
///
/// Trial division runs up to the cube root of `|n|`; the remaining cofactor
/// then has at most two prime factors, so it is squarefree unless it is a
/// perfect square.
pub fn squarefree_part(n: &Integer) -> Integer {
    assert!(!n.is_zero(), "squarefree part of zero");
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut out = Integer::one();
    let mut p = Integer::from(2u32);
    while &p * &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += if p == Integer::from(2u32) { 1u32 } else { 2u32 };
    }
    if perfect_square_root(&m).is_none() {
        out *= m;
    }
    out * sign
}

/// Squarefree integer `d` and rational `w` with `q = w²·d` (q nonzero).
pub fn rational_squarefree_decomposition(q: &Rational) -> (Integer, Rational) {
    // q = a/b = a·b / b²
    let ab = q.numer() * q.denom();
    let d = squarefree_part(&ab);
    let w2 = q / Rational::from_integer(d.clone());
    let w = rational_sqrt(&w2).expect("q/d is a square by construction");
    (d, w)
}

pub fn is_rational_square(q: &Rational) -> bool {
    rational_sqrt(q).is_some()
}

pub fn parse_integer(s: &str) -> Result<Integer, ParseError> {
    let t = s.trim();
    t.parse::<Integer>()
        .map_err(|_| ParseError::new(0, format!("invalid integer `{t}`")))
}

/// Parses `a/b` or `a`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let t = s.trim();
    match t.split_once('/') {
        Some((a, b)) => {
            let a = parse_integer(a)?;
            let b = parse_integer(b)?;
            if b.is_zero() {
                return Err(ParseError::new(t.len(), "zero denominator"));
            }
            Ok(Rational::new(a, b))
        }
        None => Ok(Rational::from_integer(parse_integer(t)?)),
    }
}

/// Prints `a/b`, or `a` for integers.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn is_zero_int(n: &Integer) -> bool {
    n.is_zero()
}

pub(crate) fn is_one_int(n: &Integer) -> bool {
    n.is_one()
}

pub(crate) fn sign_of(n: &Integer) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
