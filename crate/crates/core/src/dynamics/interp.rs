use rayon::prelude::*;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::poly::{RatFunc, UniPoly};
use crate::ring::Ring;

type QX = UniPoly<Rational>;

/// Newton interpolation through `(xs[i], ys[i])`.
pub fn newton_interpolate(xs: &[Rational], ys: &[Rational]) -> QX {
    let n = xs.len();
    let mut coef: Vec<Rational> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut out = QX::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        out = out.mul(&QX::new(vec![-xs[i].clone(), Rational::one()])).add(&QX::constant(coef[i].clone()));
    }
    out
}

/// `a/b` with `deg a + deg b < xs.len()` agreeing with the samples, via the
/// extended Euclidean algorithm on `(∏(t - xᵢ), interpolant)`.
pub fn rational_reconstruction(xs: &[Rational], ys: &[Rational]) -> Option<RatFunc> {
    let n = xs.len();
    let mut m = QX::one();
    for x in xs {
        m = m.mul(&QX::new(vec![-x.clone(), Rational::one()]));
    }
    let f = newton_interpolate(xs, ys);
    let (mut r0, mut r1) = (m, f);
    let (mut t0, mut t1) = (QX::zero(), QX::one());
    let half = n / 2;
    while r1.deg() >= half as isize {
        let (q, r) = r0.div_rem(&r1);
        let t2 = t0.sub(&q.mul(&t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || (r1.deg() + t1.deg()) as usize >= n {
        return None;
    }
    if xs.iter().any(|x| t1.eval(x).is_zero()) {
        return None;
    }
    RatFunc::new(r1, t1).ok()
}

pub fn sample_point(k: usize) -> Rational {
    // distinct small rationals of both signs
    let a = (k / 2) as i64;
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    Rational::new((sign * (a + 2)).into(), (2 * a + 3).into())
}

/// Recovers a polynomial over Q(t) of x-degree `deg_x` from its
/// specializations; `f` returns `None` at unusable parameters.
///
/// The point count doubles until every coefficient reconstructs and the
/// result matches `checks` fresh specializations.
pub fn interpolate_qtx(f: impl Fn(&Rational) -> Option<QX> + Sync, deg_x: usize, max_points: usize) -> Result<UniPoly<RatFunc>> {
    let checks = 4;
    let mut npts = 16;
    let mut cache: Vec<(Rational, QX)> = Vec::new();
    let mut next = 0usize;
    loop {
        let need = npts + checks;
        while cache.len() < need {
            let batch: Vec<Rational> = (next..next + (need - cache.len()) * 2).map(sample_point).collect();
            next += batch.len();
            let got: Vec<Option<(Rational, QX)>> = batch
                .par_iter()
                .map(|c| f(c).filter(|p| p.deg() == deg_x as isize).map(|p| (c.clone(), p)))
                .collect();
            for g in got.into_iter().flatten() {
                if cache.len() < need && !cache.iter().any(|(c, _)| *c == g.0) {
                    cache.push(g);
                }
            }
        }
        let (fit, test) = cache.split_at(npts);
        let xs: Vec<Rational> = fit.iter().map(|(c, _)| c.clone()).collect();
        let coeffs: Option<Vec<RatFunc>> = (0..=deg_x)
            .into_par_iter()
            .map(|i| {
                let ys: Vec<Rational> = fit.iter().map(|(_, p)| p.coeff(i)).collect();
                rational_reconstruction(&xs, &ys)
            })
            .collect();
        if let Some(cs) = coeffs {
            let poly = UniPoly::new(cs);
            let ok = test[..checks].iter().all(|(c, p)| poly.try_map(|a| a.eval(c)).map(|s| &s == p).unwrap_or(false));
            if ok {
                return Ok(poly);
            }
        }
        if npts >= max_points {
            return Err(Error::Budget(format!("rational reconstruction did not stabilize with {npts} points")));
        }
        npts *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn reconstructs_a_fraction() {
        let target = RatFunc::from_i64s(&[1, 0, 3], &[-2, 1, 1]);
        let xs: Vec<Rational> = (0..8).map(sample_point).filter(|x| !target.den().eval(x).is_zero()).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| target.eval(x).unwrap()).collect();
        assert_eq!(rational_reconstruction(&xs, &ys), Some(target));
    }

    #[test]
    fn reconstructs_bivariate() {
        // x² + (t/(t-5)) x + t³
        let f = |c: &Rational| {
            let d = c - rat(5, 1);
            if d == rat(0, 1) {
                return None;
            }
            Some(QX::new(vec![c * c * c, c / d, rat(1, 1)]))
        };
        let p = interpolate_qtx(f, 2, 64).unwrap();
        assert_eq!(p.coeff(1), RatFunc::from_i64s(&[0, 1], &[-5, 1]));
        assert_eq!(p.coeff(0), RatFunc::from_i64s(&[0, 0, 0, 1], &[1]));
    }
}
