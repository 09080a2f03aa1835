use serde::Serialize;

use super::{Pt, RationalMap};
use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::ring::{Field, Ring};

pub fn mobius_mu(mut n: usize) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

pub fn divisors_of(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// `Σ_{k|n} μ(n/k)(d^k + 1)`.
pub fn dynatomic_degree(d: usize, n: usize) -> i64 {
    divisors_of(n).into_iter().map(|k| mobius_mu(n / k) as i64 * ((d as i64).pow(k as u32) + 1)).sum()
}

/// `(p_k, q_k)` for `k = 0..=n`, by homogeneous substitution; no gcd is
/// taken, which is exact for morphisms.
pub fn iterate_pairs<R: Ring>(p: &UniPoly<R>, q: &UniPoly<R>, n: usize) -> Vec<(UniPoly<R>, UniPoly<R>)> {
    let d = p.deg().max(q.deg()) as usize;
    let mut out = vec![(UniPoly::x(), UniPoly::one())];
    for _ in 0..n {
        let (pk, qk) = out.last().unwrap();
        let next = (p.hom_compose(pk, qk, d), q.hom_compose(pk, qk, d));
        out.push(next);
    }
    out
}

/// `∏_{d|n} (x q_d - p_d)^μ(n/d)` from the iterate table.
pub fn dynatomic_raw<R: Ring>(pairs: &[(UniPoly<R>, UniPoly<R>)], n: usize) -> Result<UniPoly<R>> {
    let mut top = UniPoly::one();
    let mut bottom = UniPoly::one();
    for d in divisors_of(n) {
        let (p, q) = &pairs[d];
        let f = UniPoly::x().mul(q).sub(p);
        match mobius_mu(n / d) {
            1 => top = top.mul(&f),
            -1 => bottom = bottom.mul(&f),
            _ => {}
        }
    }
    top.exact_div(&bottom)
}

/// `Φ̂_n(p_m, q_m) / Φ̂_n(p_{m-1}, q_{m-1})` with `Φ̂_n` homogenized at its
/// own degree; this equals the generalized dynatomic quotient.
pub fn gen_dynatomic_raw<R: Ring>(phi_n: &UniPoly<R>, pairs: &[(UniPoly<R>, UniPoly<R>)], m: usize) -> Result<UniPoly<R>> {
    let big = phi_n.deg() as usize;
    let (pm, qm) = &pairs[m];
    let (pl, ql) = &pairs[m - 1];
    let top = phi_n.hom_compose(pm, qm, big);
    let bottom = phi_n.hom_compose(pl, ql, big);
    top.exact_div(&bottom)
}

/// `Res(Φ, dp)/Res(Φ, dq) · ℓ^(deg dq - deg dp)`.
pub fn u_invariant_raw<R: Ring>(phi_n: &UniPoly<R>, dp: &UniPoly<R>, dq: &UniPoly<R>) -> Result<R> {
    let l = phi_n.lc();
    let e = dq.deg() - dp.deg();
    let mut num = phi_n.resultant(dp);
    let mut den = phi_n.resultant(dq);
    if e > 0 {
        num = num.mul(&l.pow(e as u32));
    } else if e < 0 {
        den = den.mul(&l.pow((-e) as u32));
    }
    if den.is_zero() {
        return Err(Error::Precondition("a root of the dynatomic polynomial is a pole of the derivative".into()));
    }
    num.try_div(&den).ok_or_else(|| Error::InexactDivision("U_n quotient".into()))
}

/// `∏ (x - f(αᵢ))` over the roots of `p`, for `f = q/h` sharing no root
/// of `p` with `h`.
pub fn root_image_product<F: Field>(p: &UniPoly<F>, q: &UniPoly<F>, h: &UniPoly<F>) -> Result<UniPoly<F>> {
    let k = q.deg().max(h.deg()) as usize;
    let e = k as u32 - h.deg() as u32;
    let rh = p.resultant(h);
    if rh.is_zero() {
        return Err(Error::Precondition("p and h share a root".into()));
    }
    let lift = |a: &F| UniPoly::constant(a.clone());
    let py: UniPoly<UniPoly<F>> = p.map(lift);
    let g: UniPoly<UniPoly<F>> =
        UniPoly::new((0..=k).map(|i| UniPoly::new(vec![q.coeff(i).neg(), h.coeff(i)])).collect());
    let r = py.resultant(&g);
    let scale = rh.mul(&p.lc().pow(e)).inv();
    Ok(r.scale(&scale))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DynKind {
    Periodic,
    Generalized,
    Trace,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DynatomicPolynomial<F: Field> {
    pub poly: UniPoly<F>,
    pub kind: DynKind,
    pub m: usize,
    pub n: usize,
}

impl<F: Field> RationalMap<F> {
    fn pairs(&self, n: usize) -> Vec<(UniPoly<F>, UniPoly<F>)> {
        iterate_pairs(self.num(), self.den(), n)
    }

    /// `Φ_n`, normalized by the coefficient field's canonical scaling.
    pub fn dynatomic(&self, n: usize) -> Result<DynatomicPolynomial<F>> {
        assert!(n >= 1);
        let poly = dynatomic_raw(&self.pairs(n), n)?.normalized();
        Ok(DynatomicPolynomial { poly, kind: DynKind::Periodic, m: 0, n })
    }

    pub fn generalized_dynatomic(&self, m: usize, n: usize) -> Result<DynatomicPolynomial<F>> {
        assert!(m >= 1 && n >= 1);
        let pairs = self.pairs(m.max(n));
        let phi_n = dynatomic_raw(&pairs, n)?;
        let poly = gen_dynatomic_raw(&phi_n, &pairs, m)?.normalized();
        Ok(DynatomicPolynomial { poly, kind: DynKind::Generalized, m, n })
    }

    /// True when `∞` has exact period `n`.
    pub fn infinity_has_period(&self, n: usize) -> bool {
        let mut x = Pt::Inf;
        for k in 1..=n {
            x = self.eval(&x);
            if x == Pt::Inf {
                return k == n;
            }
        }
        false
    }

    fn check_root_image_hypotheses(&self, phi_n: &UniPoly<F>, n: usize) -> Result<()> {
        if phi_n.deg() >= 1 && phi_n.discriminant().is_zero() {
            return Err(Error::Precondition(format!("Phi_{n} has zero discriminant")));
        }
        if self.infinity_has_period(n) {
            return Err(Error::Precondition(format!("infinity is {n}-periodic")));
        }
        Ok(())
    }

    /// Product of the multipliers of all `n`-cycles.
    pub fn u_invariant(&self, n: usize) -> Result<F> {
        let phi_n = self.dynatomic(n)?.poly;
        self.check_root_image_hypotheses(&phi_n, n)?;
        let (dp, dq) = self.derivative();
        u_invariant_raw(&phi_n, &dp, &dq)
    }

    /// `τ = Σ_{i<n} φ^i` as a reduced fraction.
    pub fn cycle_trace(&self, n: usize) -> (UniPoly<F>, UniPoly<F>) {
        let pairs = self.pairs(n.saturating_sub(1));
        let mut num = UniPoly::zero();
        let mut den = UniPoly::one();
        for (p, q) in pairs.iter().take(n) {
            let g = den.gcd(q);
            let l = q.div_rem(&g).0;
            num = num.mul(&l).add(&p.mul(&den.div_rem(&g).0));
            den = den.mul(&l);
            let g = num.gcd(&den);
            if g.deg() > 0 {
                num = num.div_rem(&g).0;
                den = den.div_rem(&g).0;
            }
        }
        (num, den)
    }

    /// Monic `T_n` with `T_nⁿ = ∏ (x - τ(β))` over the roots of `Φ_n`.
    pub fn trace_polynomial(&self, n: usize) -> Result<DynatomicPolynomial<F>> {
        let phi_n = self.dynatomic(n)?.poly;
        self.check_root_image_hypotheses(&phi_n, n)?;
        let (q, h) = self.cycle_trace(n);
        let prod = root_image_product(&phi_n, &q, &h)?;
        let poly = prod.nth_root(n)?;
        Ok(DynatomicPolynomial { poly, kind: DynKind::Trace, m: 0, n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Rational};

    type QX = UniPoly<Rational>;

    fn q(c: &[i64]) -> QX {
        QX::from_i64s(c)
    }

    #[test]
    fn mobius_function() {
        let mu: Vec<i32> = (1..=12).map(mobius_mu).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
        let degs: Vec<i64> = (1..=4).map(|n| dynatomic_degree(2, n)).collect();
        assert_eq!(degs, vec![3, 2, 6, 12]);
    }

    #[test]
    fn squaring_map() {
        let sq = RationalMap::new(q(&[0, 0, 1]), q(&[1])).unwrap();
        assert_eq!(sq.dynatomic(1).unwrap().poly, q(&[0, -1, 1]));
        assert_eq!(sq.generalized_dynatomic(1, 1).unwrap().poly, q(&[0, 1, 1]));
    }

    #[test]
    fn u_invariant_of_inverse_square() {
        let m = RationalMap::new(q(&[1]), q(&[0, 0, 1])).unwrap();
        assert_eq!(m.u_invariant(1).unwrap(), rat(-8, 1));
    }

    #[test]
    fn root_image_micro() {
        // roots 1, 2 of x² - 3x + 2 pushed through x²
        let r = root_image_product(&q(&[2, -3, 1]), &q(&[0, 0, 1]), &q(&[1])).unwrap();
        assert_eq!(r, q(&[-1, 1]).mul(&q(&[-4, 1])));
    }
}
