use std::collections::HashMap;

use serde::Serialize;

use super::{Mobius, PointField, Pt, RationalMap};
use crate::arith::{rational_squarefree_decomposition, rational_sqrt, Integer, Quad, Rational};
use crate::error::{Error, Result};
use crate::ring::Ring;

pub const DEFAULT_STEP_CAP: usize = 64;
pub const DEFAULT_HEIGHT_CAP_DIGITS: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum OrbitStatus {
    Periodic { n: usize },
    Preperiodic { m: usize, n: usize },
    WanderingWithinCap,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitReport<F> {
    pub point: Pt<F>,
    pub status: OrbitStatus,
    pub orbit: Vec<Pt<F>>,
}

impl<F: PointField> RationalMap<F> {
    /// Preperiodic type of `p`, or wandering once the orbit passes either cap.
    pub fn orbit_type(&self, p: &Pt<F>, height_cap: &Integer, step_cap: usize) -> OrbitReport<F> {
        let mut seen: HashMap<Pt<F>, usize> = HashMap::new();
        let mut orbit = Vec::new();
        let mut x = p.clone();
        loop {
            if let Some(&j) = seen.get(&x) {
                let n = orbit.len() - j;
                let status = if j == 0 { OrbitStatus::Periodic { n } } else { OrbitStatus::Preperiodic { m: j, n } };
                return OrbitReport { point: p.clone(), status, orbit };
            }
            if orbit.len() >= step_cap || x.height() > *height_cap {
                return OrbitReport { point: p.clone(), status: OrbitStatus::WanderingWithinCap, orbit };
            }
            seen.insert(x.clone(), orbit.len());
            orbit.push(x.clone());
            x = self.eval(&x);
        }
    }

    pub fn orbit_type_default(&self, p: &Pt<F>) -> OrbitReport<F> {
        let cap = Integer::from(10).pow(DEFAULT_HEIGHT_CAP_DIGITS);
        self.orbit_type(p, &cap, DEFAULT_STEP_CAP)
    }

    /// Exact period of `p` if it is periodic with period at most `max`.
    pub fn exact_period(&self, p: &Pt<F>, max: usize) -> Option<usize> {
        let mut x = self.eval(p);
        for k in 1..=max {
            if &x == p {
                return Some(k);
            }
            x = self.eval(&x);
        }
        None
    }

    /// `(φⁿ)'(p)` for an `n`-periodic `p`.
    pub fn multiplier(&self, p: &Pt<F>, n: usize) -> Result<F> {
        let mut orbit = vec![p.clone()];
        for _ in 1..n {
            orbit.push(self.eval(orbit.last().unwrap()));
        }
        if &self.eval(orbit.last().unwrap()) != p {
            return Err(Error::NotPeriodic(n));
        }
        if !orbit.iter().any(|x| x.is_inf()) {
            let mut acc = F::one();
            for x in &orbit {
                let x = x.finite().expect("finite orbit");
                acc = acc.mul(&self.derivative_at(x).expect("finite image"));
            }
            return Ok(acc);
        }
        // move the orbit off infinity with x -> 1/(x - a)
        let a = (0i64..)
            .map(F::from_i64)
            .find(|a| !orbit.contains(&Pt::Fin(a.clone())))
            .expect("some integer avoids a finite orbit");
        let tau = Mobius::new(F::zero(), F::one(), F::one(), a.neg()).expect("nonsingular");
        let psi = self.conjugate(&tau.inverse());
        psi.multiplier(&tau.apply(p), n)
    }
}

/// The two critical points of a quadratic map over Q.
#[derive(Clone, Debug, PartialEq)]
pub enum CriticalPoints {
    Rational([Pt<Rational>; 2]),
    /// Conjugate pair `u ± v√d` with `v > 0` first.
    Conjugate([Quad; 2]),
}

impl CriticalPoints {
    pub fn rational(&self) -> Option<&[Pt<Rational>; 2]> {
        match self {
            CriticalPoints::Rational(p) => Some(p),
            CriticalPoints::Conjugate(_) => None,
        }
    }
}

/// Roots of the Wronskian `p'q - pq'` on the projective line.
pub fn critical_points(phi: &RationalMap<Rational>) -> Result<CriticalPoints> {
    if phi.degree() != 2 {
        return Err(Error::Precondition("critical points need a degree-2 map".into()));
    }
    let (w, _) = phi.derivative_raw();
    match w.deg() {
        2 => {
            let (a, b, c) = (w.coeff(2), w.coeff(1), w.coeff(0));
            let disc = &b * &b - Rational::from_integer(4.into()) * &a * &c;
            let two_a = &a + &a;
            if let Some(s) = rational_sqrt(&disc) {
                let mut r = [Pt::Fin((-&b + &s) / &two_a), Pt::Fin((-&b - &s) / &two_a)];
                r.sort();
                Ok(CriticalPoints::Rational(r))
            } else {
                let (d, k) = rational_squarefree_decomposition(&disc);
                let root = Quad::new(d, Rational::zero(), k).map_err(|e| Error::Verification(e.to_string()))?;
                let u = -&b / &two_a;
                let mut plus = Quad::in_field(root.d(), u).add(&root.scale_rational(&two_a.recip()));
                if plus.v() < &Rational::zero() {
                    plus = plus.conj();
                }
                let minus = plus.conj();
                Ok(CriticalPoints::Conjugate([plus, minus]))
            }
        }
        1 => {
            let r = -w.coeff(0) / w.coeff(1);
            Ok(CriticalPoints::Rational([Pt::Fin(r), Pt::Inf]))
        }
        _ => Err(Error::Verification("Wronskian of a quadratic map has degree below one".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::poly::UniPoly;

    type QX = UniPoly<Rational>;

    fn q(c: &[i64]) -> QX {
        QX::from_i64s(c)
    }

    fn p2() -> RationalMap<Rational> {
        RationalMap::new(q(&[-4, -2]), q(&[-4, -2, 3])).unwrap()
    }

    #[test]
    fn orbit_types() {
        let m = p2();
        let r = m.orbit_type_default(&Pt::from_i64(0));
        assert_eq!(r.status, OrbitStatus::Periodic { n: 4 });
        assert_eq!(r.orbit, vec![Pt::from_i64(0), Pt::from_i64(1), Pt::from_i64(2), Pt::from_i64(-2)]);
        assert_eq!(m.orbit_type_default(&Pt::from_i64(-1)).status, OrbitStatus::Preperiodic { m: 1, n: 4 });
        let wander = m.orbit_type(&Pt::Fin(rat(7, 3)), &Integer::from(1000), 64);
        assert_eq!(wander.status, OrbitStatus::WanderingWithinCap);
    }

    #[test]
    fn multipliers() {
        let inv_sq = RationalMap::new(q(&[1]), q(&[0, 0, 1])).unwrap();
        assert_eq!(inv_sq.multiplier(&Pt::from_i64(1), 1).unwrap(), rat(-2, 1));
        // 0 <-> inf is a critical 2-cycle
        assert_eq!(inv_sq.multiplier(&Pt::from_i64(0), 2).unwrap(), rat(0, 1));
        assert!(matches!(inv_sq.multiplier(&Pt::from_i64(2), 1), Err(Error::NotPeriodic(1))));
        let phi_c = RationalMap::new(q(&[-5, 5]), q(&[0, 0, 1])).unwrap();
        assert_eq!(phi_c.multiplier(&Pt::from_i64(0), 2).unwrap(), rat(0, 1));
    }

    #[test]
    fn critical_point_examples() {
        let phi_c = RationalMap::new(q(&[-3, 3]), q(&[0, 0, 1])).unwrap();
        assert_eq!(critical_points(&phi_c).unwrap(), CriticalPoints::Rational([Pt::from_i64(0), Pt::from_i64(2)]));
        let psi = RationalMap::new(q(&[-2, 4]), q(&[-2, 0, 9])).unwrap();
        assert_eq!(
            critical_points(&psi).unwrap(),
            CriticalPoints::Rational([Pt::Fin(rat(1, 3)), Pt::Fin(rat(2, 3))])
        );
        let psi2 = RationalMap::new(q(&[-1, 2]), q(&[-1, 0, 2])).unwrap();
        let CriticalPoints::Conjugate([a, b]) = critical_points(&psi2).unwrap() else { panic!() };
        assert_eq!(a.to_string(), "1/2+1/2*sqrt(-1)");
        assert_eq!(b, a.conj());
    }
}
