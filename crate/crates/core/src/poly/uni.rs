use std::fmt;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::ring::{Field, GcdRing, Ring};

/// Dense univariate polynomial, coefficients stored low to high.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is
/// the empty vector.
#[derive(Clone, PartialEq, Debug)]
pub struct UniPoly<R: Ring> {
    c: Vec<R>,
}

impl<R: Ring> UniPoly<R> {
    pub fn new(mut c: Vec<R>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(a: R) -> Self {
        Self::new(vec![a])
    }

    pub fn x() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn monomial(a: R, k: usize) -> Self {
        let mut c = vec![R::zero(); k + 1];
        c[k] = a;
        Self::new(c)
    }

    /// `x - a`.
    pub fn linear_root(a: &R) -> Self {
        Self::new(vec![a.neg(), R::one()])
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&n| R::from_i64(n)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with `-1` for the zero polynomial.
    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lc(&self) -> R {
        self.c.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn coeff(&self, i: usize) -> R {
        self.c.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.c
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(out)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly { c: self.c.iter().map(|a| a.neg()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, a: &R) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        Self::new(self.c.iter().map(|x| x.mul(a)).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![R::zero(); k];
        c.extend(self.c.iter().cloned());
        UniPoly { c }
    }

    pub fn pow(&self, mut e: u32) -> Self {
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

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(a);
        }
        acc
    }

    /// `Σ aᵢ pⁱ q^(D-i)`, the homogeneous substitution of `p/q` at degree `D`.
    pub fn hom_compose(&self, p: &Self, q: &Self, d: usize) -> Self {
        assert!(self.c.len() <= d + 1, "degree exceeds homogenizing degree");
        if self.is_zero() {
            return Self::zero();
        }
        let top = self.c.len() - 1;
        let mut qpow = vec![Self::one()];
        for _ in 0..d {
            let next = qpow.last().unwrap().mul(q);
            qpow.push(next);
        }
        let mut out = Self::zero();
        let mut ppow = Self::one();
        for (i, a) in self.c.iter().enumerate() {
            if !a.is_zero() {
                out = out.add(&ppow.mul(&qpow[d - i]).scale(a));
            }
            if i < top {
                ppow = ppow.mul(p);
            }
        }
        out
    }

    /// `self(o(x))`.
    pub fn compose(&self, o: &Self) -> Self {
        let mut acc = Self::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(o).add(&Self::constant(a.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.mul(&R::from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> UniPoly<S> {
        UniPoly::new(self.c.iter().map(f).collect())
    }

    pub fn try_map<S: Ring, E>(&self, f: impl Fn(&R) -> std::result::Result<S, E>) -> std::result::Result<UniPoly<S>, E> {
        Ok(UniPoly::new(self.c.iter().map(f).collect::<std::result::Result<_, _>>()?))
    }

    /// Divides every coefficient exactly by `a`.
    pub fn div_scalar_exact(&self, a: &R) -> Option<Self> {
        let mut out = Vec::with_capacity(self.c.len());
        for x in &self.c {
            out.push(x.try_div(a)?);
        }
        Some(Self::new(out))
    }

    /// `lc(b)^(deg a - deg b + 1) · a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        assert!(!b.is_zero(), "pseudo-remainder by zero");
        let db = b.deg();
        if self.deg() < db {
            return self.clone();
        }
        let lb = b.lc();
        let mut e = self.deg() - db + 1;
        let mut r = self.clone();
        while !r.is_zero() && r.deg() >= db {
            let k = (r.deg() - db) as usize;
            let t = b.scale(&r.lc()).shift(k);
            r = r.scale(&lb).sub(&t);
            e -= 1;
        }
        if e > 0 {
            r = r.scale(&lb.pow(e as u32));
        }
        r
    }

    /// Quotient of an exact division, staying inside the coefficient ring.
    pub fn exact_div(&self, b: &Self) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let db = b.deg();
        if self.deg() < db {
            return Err(Error::InexactDivision("degree of divisor exceeds dividend".into()));
        }
        let lb = b.lc();
        let mut r = self.c.clone();
        let mut q = vec![R::zero(); (self.deg() - db + 1) as usize];
        for k in (0..q.len()).rev() {
            let top = &r[k + db as usize];
            if top.is_zero() {
                continue;
            }
            let qk = top
                .try_div(&lb)
                .ok_or_else(|| Error::InexactDivision("leading coefficient does not divide".into()))?;
            for (j, bj) in b.c.iter().enumerate() {
                if !bj.is_zero() {
                    r[k + j] = r[k + j].sub(&qk.mul(bj));
                }
            }
            q[k] = qk;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return Err(Error::InexactDivision("nonzero remainder".into()));
        }
        Ok(Self::new(q))
    }

    /// Resultant by the subresultant pseudo-remainder sequence; every
    /// division in the sequence is exact in the coefficient ring.
    pub fn resultant(&self, b: &Self) -> R {
        let (mut a, mut b) = (self.clone(), b.clone());
        if a.is_zero() || b.is_zero() {
            return R::zero();
        }
        let mut sign = false;
        if a.deg() < b.deg() {
            if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
                sign = !sign;
            }
            std::mem::swap(&mut a, &mut b);
        }
        if b.deg() == 0 {
            let r = b.lc().pow(a.deg() as u32);
            return if sign { r.neg() } else { r };
        }
        let mut g = R::one();
        let mut h = R::one();
        loop {
            let delta = (a.deg() - b.deg()) as u32;
            if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
                sign = !sign;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            if r.is_zero() {
                return R::zero();
            }
            let divisor = g.mul(&h.pow(delta));
            b = r.div_scalar_exact(&divisor).expect("subresultant division is exact");
            g = a.lc();
            if delta >= 1 {
                h = g.pow(delta).try_div(&h.pow(delta - 1)).expect("subresultant h update is exact");
            }
            if b.deg() == 0 {
                let da = a.deg() as u32;
                let num = b.lc().pow(da);
                let res = if da >= 1 {
                    num.try_div(&h.pow(da - 1)).expect("subresultant final step is exact")
                } else {
                    num
                };
                return if sign { res.neg() } else { res };
            }
        }
    }

    /// `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> R {
        let n = self.deg();
        assert!(n >= 1, "discriminant of a constant");
        let r = self.resultant(&self.derivative());
        let r = r.try_div(&self.lc()).expect("lc divides Res(f, f')");
        if (n * (n - 1) / 2) % 2 == 1 {
            r.neg()
        } else {
            r
        }
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mut s = a.fmt_coeff();
            let negative = s.starts_with('-') && !a.needs_parens();
            if negative {
                s.remove(0);
            }
            if a.needs_parens() {
                s = format!("({s})");
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = if i == 0 {
                s
            } else if s == "1" {
                mono
            } else {
                format!("{s}*{mono}")
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

impl<R: Field> UniPoly<R> {
    pub fn div_rem(&self, b: &Self) -> (Self, Self) {
        assert!(!b.is_zero(), "division by zero polynomial");
        if self.deg() < b.deg() {
            return (Self::zero(), self.clone());
        }
        let db = b.deg() as usize;
        let inv = b.lc().inv();
        let mut r = self.c.clone();
        let mut q = vec![R::zero(); self.c.len() - db];
        for k in (0..q.len()).rev() {
            let top = &r[k + db];
            if top.is_zero() {
                continue;
            }
            let qk = top.mul(&inv);
            for (j, bj) in b.c.iter().enumerate() {
                if !bj.is_zero() {
                    r[k + j] = r[k + j].sub(&qk.mul(bj));
                }
            }
            q[k] = qk;
        }
        r.truncate(db);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, b: &Self) -> Self {
        self.div_rem(b).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lc().inv())
    }

    /// Canonical representative of the line through `self` (primitive integer
    /// with positive leading coefficient over Q, monic elsewhere).
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&R::normalizer(&self.c))
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, b: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·b = g`, `g` monic.
    pub fn ext_gcd(&self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// `p / gcd(p, p')`, normalized.
    pub fn squarefree_part(&self) -> Self {
        if self.deg() <= 0 {
            return self.normalized();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.normalized()
    }

    pub fn is_squarefree(&self) -> bool {
        self.deg() <= 0 || self.gcd(&self.derivative()).deg() == 0
    }

    /// Monic `T` with `Tⁿ = self/lc(self)`, matched from the top coefficient
    /// down and verified by expansion.
    pub fn nth_root(&self, n: usize) -> Result<Self> {
        if n == 0 || self.is_zero() {
            return Err(Error::NotPerfectPower(n));
        }
        let s = self.monic();
        let big = s.deg() as usize;
        if !big.is_multiple_of(n) {
            return Err(Error::NotPerfectPower(n));
        }
        let m = big / n;
        if n == 1 {
            return Ok(s);
        }
        // T = x^m + t_{m-1} x^{m-1} + ...; the coefficient of x^(N-k) in Tⁿ
        // is n·t_{m-k} plus terms in higher t's, so solve top-down.
        let nn = R::from_i64(n as i64);
        let mut t = vec![R::zero(); m + 1];
        t[m] = R::one();
        for k in 1..=m {
            let cur = UniPoly::new(t.clone());
            let pw = cur.pow(n as u32);
            let diff = s.coeff(big - k).sub(&pw.coeff(big - k));
            t[m - k] = diff.div(&nn);
        }
        let root = UniPoly::new(t);
        if root.pow(n as u32) != s {
            return Err(Error::NotPerfectPower(n));
        }
        Ok(root)
    }
}

impl<R: GcdRing> UniPoly<R> {
    pub fn content(&self) -> R {
        let mut g = R::zero();
        for a in &self.c {
            g = R::gcd(&g, a);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.content();
        self.div_scalar_exact(&g).expect("content divides")
    }
}

impl UniPoly<Rational> {
    /// Integer coefficients, primitive, positive leading coefficient.
    pub fn primitive_integer(&self) -> Self {
        self.normalized()
    }

    /// Homogeneous evaluation at `[a : b]` with homogenizing degree `d`.
    pub fn eval_hom(&self, a: &Rational, b: &Rational, d: usize) -> Rational {
        let mut acc = Rational::from_integer(0.into());
        let mut bp = Rational::from_integer(1.into());
        // Σ cᵢ aⁱ b^(d-i), Horner from the bottom with b powers
        let mut apows = Vec::with_capacity(self.c.len());
        let mut ap = Rational::from_integer(1.into());
        for _ in 0..self.c.len() {
            apows.push(ap.clone());
            ap *= a;
        }
        for i in (0..=d).rev() {
            if let Some(ci) = self.c.get(i) {
                acc += ci * &apows[i] * &bp;
            }
            bp *= b;
        }
        acc
    }
}

impl<R: Ring> fmt::Display for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("x"))
    }
}

impl<R: Ring> Ring for UniPoly<R> {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn one() -> Self {
        UniPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        UniPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        UniPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        UniPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        UniPoly::neg(self)
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        self.exact_div(o).ok()
    }
    fn from_rational(q: &Rational) -> Self {
        UniPoly::constant(R::from_rational(q))
    }
    fn pow(&self, e: u32) -> Self {
        UniPoly::pow(self, e)
    }
    fn as_rational(&self) -> Option<Rational> {
        match self.c.len() {
            0 => Some(Rational::from_integer(0.into())),
            1 => self.c[0].as_rational(),
            _ => None,
        }
    }
    fn fmt_coeff(&self) -> String {
        self.fmt_var("t")
    }
    fn needs_parens(&self) -> bool {
        self.c.iter().filter(|a| !a.is_zero()).count() > 1 || self.c.first().is_some_and(|a| a.needs_parens())
    }
}

impl<R: Field> GcdRing for UniPoly<R> {
    fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() && b.is_zero() {
            return UniPoly::zero();
        }
        UniPoly::gcd(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    type P = UniPoly<Rational>;

    fn p(c: &[i64]) -> P {
        P::from_i64s(c)
    }

    #[test]
    fn exact_division() {
        assert_eq!(p(&[0, 0, -1, 0, 1]).exact_div(&p(&[0, -1, 1])).unwrap(), p(&[0, 1, 1]));
        let a = p(&[3, 0, 2]);
        assert_eq!(a.exact_div(&P::one()).unwrap(), a);
        assert!(matches!(p(&[1, 0, 1]).exact_div(&p(&[1, 1])), Err(Error::InexactDivision(_))));
    }

    #[test]
    fn resultants() {
        assert_eq!(p(&[-1, 0, 0, 1]).resultant(&p(&[-2])), rat(-8, 1));
        assert_eq!(p(&[-3, 1]).resultant(&p(&[-5, 1])), rat(-2, 1));
        assert_eq!(p(&[-1, 0, 0, 1]).resultant(&p(&[0, 0, 0, 1])), rat(1, 1));
    }

    #[test]
    fn discriminants() {
        assert_eq!(p(&[3, 0, 1]).discriminant(), rat(-12, 1));
        assert_eq!(p(&[2, -3, 1]).discriminant(), rat(1, 1));
    }

    #[test]
    fn squarefree() {
        // (x-1)²(x+2)
        let f = p(&[-1, 1]).pow(2).mul(&p(&[2, 1]));
        assert_eq!(f.squarefree_part(), p(&[-2, 1, 1]));
        assert_eq!(p(&[0, 0, 0, 1]).squarefree_part(), p(&[0, 1]));
    }

    #[test]
    fn nth_roots() {
        assert_eq!(p(&[1, 2, 1]).nth_root(2).unwrap(), p(&[1, 1]));
        assert_eq!(p(&[0, 0, 0, 1]).nth_root(3).unwrap(), p(&[0, 1]));
        assert_eq!(p(&[1, 1, 1]).pow(2).nth_root(2).unwrap(), p(&[1, 1, 1]));
        assert!(p(&[1, 0, 1]).nth_root(2).is_err());
    }

    #[test]
    fn hom_compose_matches_direct() {
        let f = p(&[1, -2, 3]);
        let (a, b) = (p(&[1, 1]), p(&[-1, 0, 2]));
        let got = f.hom_compose(&a, &b, 3);
        let direct = b.pow(3).add(&a.mul(&b.pow(2)).scale(&rat(-2, 1))).add(&a.pow(2).mul(&b).scale(&rat(3, 1)));
        assert_eq!(got, direct);
    }

    #[test]
    fn printing() {
        assert_eq!(p(&[1, -3, 0, 2]).to_string(), "2*x^3 - 3*x + 1");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        let q = UniPoly::new(vec![p(&[0, 1]), p(&[1, 1])]);
        assert_eq!(q.to_string(), "(t + 1)*x + t");
    }
}
