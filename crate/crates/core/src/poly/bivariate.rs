//! Polynomials in `Q[t][x]` and rational functions in `t, x`.

use super::{RatFunc, UniPoly};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::ring::{primitive_normalizer, Field, Ring};

pub type QX = UniPoly<Rational>;
pub type QT = UniPoly<Rational>;
pub type QTX = UniPoly<QT>;
pub type KX = UniPoly<RatFunc>;

pub fn kx_from_qtx(p: &QTX) -> KX {
    p.map(|c| RatFunc::poly(c.clone()))
}

/// `(P, u)` with `p = u·P`, `P ∈ Z[t][x]` primitive over Q[t] and Z and with
/// positive leading coefficient (lc in x, then lc in t).
pub fn qtx_from_kx(p: &KX) -> (QTX, RatFunc) {
    if p.is_zero() {
        return (QTX::zero(), RatFunc::one());
    }
    let u = RatFunc::normalizer(p.coeffs());
    let scaled = p.scale(&u);
    let out = scaled.map(|c| {
        debug_assert!(c.is_poly());
        c.num().clone()
    });
    (out, u.inv())
}

/// Primitive integer normal form of a `Q[t][x]` polynomial and the unit removed.
pub fn qtx_normalize(p: &QTX) -> (QTX, RatFunc) {
    qtx_from_kx(&kx_from_qtx(p))
}

/// Coefficientwise evaluation at `t = c`.
pub fn specialize_qtx(p: &QTX, c: &Rational) -> QX {
    p.map(|a| a.eval(c))
}

/// Coefficientwise evaluation at `t = c`; fails at a pole.
pub fn specialize(p: &KX, c: &Rational) -> Result<QX> {
    p.try_map(|a| a.eval(c))
}

/// Total multi-degree view: the `x`-lc, then its `t`-lc.
pub fn lead_rational(p: &QTX) -> Rational {
    p.lc().lc()
}

pub fn qtx_eval(p: &QTX, t: &Rational, x: &Rational) -> Rational {
    specialize_qtx(p, t).eval(x)
}

/// Swaps the roles of `t` and `x`.
pub fn qtx_transpose(p: &QTX) -> QTX {
    let dt = p.coeffs().iter().map(|c| c.deg()).max().unwrap_or(-1);
    if dt < 0 {
        return QTX::zero();
    }
    let mut out = vec![vec![Rational::zero(); p.coeffs().len()]; dt as usize + 1];
    for (i, c) in p.coeffs().iter().enumerate() {
        for (j, a) in c.coeffs().iter().enumerate() {
            out[j][i] = a.clone();
        }
    }
    QTX::new(out.into_iter().map(QT::new).collect())
}

/// `t`-values cheap to try when a generic specialization is needed.
pub fn sample_points() -> impl Iterator<Item = Rational> {
    (1i64..).flat_map(|k| {
        let a = Rational::new((2 * k + 1).into(), (k + 2).into());
        let b = Rational::new((-(3 * k) - 1).into(), (2 * k + 3).into());
        [a, b]
    })
}

/// `gcd(a, b)` in `Q(t)[x]`, returned as a primitive element of `Q[t][x]`.
///
/// A specialization at a point where neither leading coefficient vanishes
/// proves coprimality cheaply; otherwise falls back to Euclid over Q(t).
pub fn qtx_gcd(a: &QTX, b: &QTX) -> QTX {
    if a.is_zero() {
        return qtx_normalize(b).0;
    }
    if b.is_zero() {
        return qtx_normalize(a).0;
    }
    if a.deg() == 0 || b.deg() == 0 {
        return QTX::one();
    }
    for t0 in sample_points().take(3) {
        if a.lc().eval(&t0).is_zero() || b.lc().eval(&t0).is_zero() {
            continue;
        }
        let g = specialize_qtx(a, &t0).gcd(&specialize_qtx(b, &t0));
        if g.deg() == 0 {
            return QTX::one();
        }
        break;
    }
    let g = kx_from_qtx(a).gcd(&kx_from_qtx(b));
    qtx_from_kx(&g).0
}

/// `f = (p_num/p_den) · A/B` with `A, B ∈ Z[t][x]` coprime and primitive.
///
/// Conventions: `A` and `p_den` have positive leading coefficients, `p_den`
/// is integer-primitive, `p_num` carries the rational scalar with positive
/// leading coefficient, and any leftover sign sits in `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedBivariate {
    pub p_num: QT,
    pub p_den: QT,
    pub a: QTX,
    pub b: QTX,
}

impl NormalizedBivariate {
    pub fn content(&self) -> RatFunc {
        RatFunc::new(self.p_num.clone(), self.p_den.clone()).expect("nonzero content denominator")
    }

    /// Cross-multiplied check that `p·A/B = num/den`.
    pub fn reproduces(&self, num: &KX, den: &KX) -> bool {
        let lhs = kx_from_qtx(&self.a).scale(&self.content()).mul(den);
        let rhs = num.mul(&kx_from_qtx(&self.b));
        lhs == rhs
    }
}

/// Normalizes the rational function `num/den` in `t, x`.
pub fn content_split(num: &KX, den: &KX) -> Result<NormalizedBivariate> {
    if num.is_zero() || den.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (n, un) = qtx_from_kx(num);
    let (d, ud) = qtx_from_kx(den);
    let g = qtx_gcd(&n, &d);
    let (a, b) = if g.deg() > 0 {
        (n.exact_div(&g)?, d.exact_div(&g)?)
    } else {
        (n, d)
    };
    let (a, ua) = qtx_normalize(&a);
    let (b, ub) = qtx_normalize(&b);
    let mut p = un.mul(&ua).div(&ud.mul(&ub));
    let mut b = b;
    // move the scalar into p_num and the sign into B
    let pd_norm = primitive_normalizer(p.den().coeffs());
    let mut p_den = p.den().scale(&pd_norm);
    let mut p_num = p.num().scale(&pd_norm);
    if p_num.lc() < Rational::zero() {
        p_num = p_num.neg();
        b = b.neg();
    }
    if p_den.lc() < Rational::zero() {
        p_den = p_den.neg();
        p_num = p_num.neg();
    }
    p = RatFunc::new(p_num.clone(), p_den.clone())?;
    let _ = p;
    Ok(NormalizedBivariate { p_num, p_den, a, b })
}

/// `f` given as one polynomial over `Q(t)`.
pub fn content_split_poly(f: &KX) -> Result<NormalizedBivariate> {
    content_split(f, &KX::one())
}

/// Convenience: integer-primitive `Q[t]` polynomial with positive lc.
pub fn qt_primitive(p: &QT) -> QT {
    p.normalized()
}

pub fn qt_is_one(p: &QT) -> bool {
    p.deg() == 0 && p.lc().is_one()
}
