use std::fmt;

use super::UniPoly;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::ring::{primitive_normalizer, Field, Ring};

type QT = UniPoly<Rational>;

/// Element `num/den` of Q(t) with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc {
    num: QT,
    den: QT,
}

impl RatFunc {
    pub fn new(num: QT, den: QT) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: QT, den: QT) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.deg() == 0 {
            let inv = den.lc().recip();
            return RatFunc { num: num.scale(&inv), den: QT::one() };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.deg() > 0 {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        } else {
            (num, den)
        };
        let l = d.lc().recip();
        n = n.scale(&l);
        d = d.scale(&l);
        RatFunc { num: n, den: d }
    }

    pub fn poly(p: QT) -> Self {
        RatFunc { num: p, den: QT::one() }
    }

    pub fn t() -> Self {
        Self::poly(QT::x())
    }

    pub fn num(&self) -> &QT {
        &self.num
    }

    pub fn den(&self) -> &QT {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.deg() == 0
    }

    /// Value at `t = c`.
    pub fn eval(&self, c: &Rational) -> Result<Rational> {
        let d = self.den.eval(c);
        if d.is_zero() {
            return Err(Error::Pole(crate::arith::fmt_rational(c)));
        }
        Ok(self.num.eval(c) / d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.fmt_var("t");
        if self.is_poly() {
            return write!(f, "{n}");
        }
        let wrap = |p: &QT, s: String| if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 { format!("({s})") } else { s };
        write!(f, "{}/{}", wrap(&self.num, n), wrap(&self.den, self.den.fmt_var("t")))
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc { num: QT::zero(), den: QT::one() }
    }
    fn one() -> Self {
        RatFunc { num: QT::one(), den: QT::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.is_poly() && o.is_poly() {
            return RatFunc { num: self.num.add(&o.num), den: QT::one() };
        }
        if self.den == o.den {
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        Self::reduce(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_poly() && o.is_poly() {
            return RatFunc { num: self.num.mul(&o.num), den: QT::one() };
        }
        Self::reduce(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        if self.is_poly() && o.is_poly() {
            let (q, r) = self.num.div_rem(&o.num);
            if r.is_zero() {
                return Some(Self::poly(q));
            }
        }
        Some(Self::reduce(self.num.mul(&o.den), self.den.mul(&o.num)))
    }
    fn from_rational(q: &Rational) -> Self {
        Self::poly(QT::constant(q.clone()))
    }
    fn as_rational(&self) -> Option<Rational> {
        if self.is_poly() {
            self.num.as_rational()
        } else {
            None
        }
    }
    fn fmt_coeff(&self) -> String {
        self.to_string()
    }
    fn needs_parens(&self) -> bool {
        !self.is_poly() || self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 || !crate::arith::is_one_int(self.num.lc().denom())
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::reduce(self.den.clone(), self.num.clone())
    }

    /// Clears denominators, removes the Q[t] content and then the integer
    /// content; the leading coefficient's leading coefficient ends positive.
    fn normalizer(coeffs: &[Self]) -> Self {
        let nz: Vec<&Self> = coeffs.iter().filter(|c| !c.is_zero()).collect();
        if nz.is_empty() {
            return Self::one();
        }
        let mut l = QT::one();
        for c in &nz {
            if c.den.deg() > 0 {
                let g = l.gcd(&c.den);
                l = l.mul(&c.den.div_rem(&g).0);
            }
        }
        let mut g = QT::zero();
        for c in &nz {
            let n = c.num.mul(&l.div_rem(&c.den).0);
            g = if g.is_zero() { n.monic() } else { g.gcd(&n) };
            if g.deg() == 0 {
                break;
            }
        }
        let scale = Self::reduce(l, g);
        let mut flat: Vec<Rational> = Vec::new();
        for c in &nz {
            let p = c.mul(&scale);
            debug_assert!(p.is_poly());
            flat.extend(p.num.coeffs().iter().cloned());
        }
        // primitive_normalizer fixes the sign by its last entry, which is the
        // leading coefficient of the leading coefficient
        let u = primitive_normalizer(&flat);
        scale.mul(&Self::from_rational(&u))
    }
}

impl RatFunc {
    pub fn from_i64s(num: &[i64], den: &[i64]) -> Self {
        Self::new(QT::from_i64s(num), QT::from_i64s(den)).expect("nonzero denominator")
    }

    pub fn pow_i(&self, e: i32) -> Self {
        if e >= 0 {
            Ring::pow(self, e as u32)
        } else {
            Ring::pow(&self.inv(), (-e) as u32)
        }
    }

    pub fn is_constant(&self) -> bool {
        self.is_poly() && self.num.deg() <= 0
    }

    pub fn zero_value() -> Rational {
        Rational::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn reduces() {
        let f = RatFunc::from_i64s(&[0, 0, 1], &[0, 2]);
        assert_eq!(f, RatFunc::poly(QT::from_i64s(&[0, 1]).scale(&rat(1, 2))));
        let g = RatFunc::from_i64s(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(g, RatFunc::poly(QT::from_i64s(&[1, 1])));
        assert_eq!(RatFunc::from_i64s(&[1], &[-2, 1]).to_string(), "1/(t - 2)");
    }

    #[test]
    fn poles() {
        let f = RatFunc::from_i64s(&[1], &[-2, 1]);
        assert!(matches!(f.eval(&rat(2, 1)), Err(Error::Pole(_))));
        assert_eq!(f.eval(&rat(3, 1)).unwrap(), rat(1, 1));
    }

    #[test]
    fn normalizer_makes_integral_primitive() {
        let cs = vec![RatFunc::from_i64s(&[1], &[0, 2]), RatFunc::from_i64s(&[-3], &[1, 1])];
        let u = RatFunc::normalizer(&cs);
        let out: Vec<RatFunc> = cs.iter().map(|c| c.mul(&u)).collect();
        assert!(out.iter().all(|c| c.is_poly()));
        // 1/(2t) and -3/(t+1) scale to (t+1) and -6t, then sign flips to make
        // the leading entry positive
        assert_eq!(out[0].num(), &QT::from_i64s(&[-1, -1]));
        assert_eq!(out[1].num(), &QT::from_i64s(&[0, 6]));
    }
}
