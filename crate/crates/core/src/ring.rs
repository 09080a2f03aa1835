//! Coefficient-domain traits shared by the polynomial code.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::arith::Rational;

/// Commutative ring with exact division where it exists.
///
/// Methods take references so that big coefficients are never moved by
/// accident; concrete types keep their operator impls for local code.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / o` when the quotient lies in the ring.
    fn try_div(&self, o: &Self) -> Option<Self>;
    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn scale_rational(&self, q: &Rational) -> Self {
        self.mul(&Self::from_rational(q))
    }

    /// The value as a rational constant, if it is one.
    fn as_rational(&self) -> Option<Rational>;

    /// Text used when this value is printed as a polynomial coefficient.
    fn fmt_coeff(&self) -> String;

    /// True when `fmt_coeff` needs parentheses inside a product.
    fn needs_parens(&self) -> bool {
        let s = self.fmt_coeff();
        s.trim_start_matches('-').contains(['+', '-', '/', ' '])
    }
}

/// Ring where every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Self;

    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    /// Scalar `u` such that `u·coeffs` is the canonical representative of
    /// the line through `coeffs` (last entry is the leading one).
    fn normalizer(coeffs: &[Self]) -> Self;
}

/// Ring with a gcd, used for content removal in coefficient rings like Q[t].
pub trait GcdRing: Ring {
    fn gcd(a: &Self, b: &Self) -> Self;
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            None
        } else {
            Some(self / o)
        }
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn fmt_coeff(&self) -> String {
        crate::arith::fmt_rational(self)
    }
}

impl Field for Rational {
    fn inv(&self) -> Self {
        self.recip()
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    /// Makes the integer vector primitive with positive leading entry.
    fn normalizer(coeffs: &[Self]) -> Self {
        primitive_normalizer(coeffs)
    }
}

impl GcdRing for Rational {
    fn gcd(a: &Self, b: &Self) -> Self {
        if Zero::is_zero(a) && Zero::is_zero(b) {
            Zero::zero()
        } else {
            One::one()
        }
    }
}

/// `u` with `u·coeffs` integral, primitive, and with positive last nonzero entry.
pub fn primitive_normalizer(coeffs: &[Rational]) -> Rational {
    use num_integer::Integer as _;
    let mut den = crate::arith::Integer::one();
    let mut num = crate::arith::Integer::zero();
    let mut last_sign = 1;
    for c in coeffs {
        if Zero::is_zero(c) {
            continue;
        }
        den = den.lcm(c.denom());
        num = num.gcd(c.numer());
        last_sign = crate::arith::sign_of(c.numer());
    }
    if num.is_zero() {
        return One::one();
    }
    Rational::new(den * last_sign, num)
}
