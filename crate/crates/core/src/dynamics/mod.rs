//! Rational maps on the projective line and their dynatomic data.

mod dynatomic;
mod interp;
mod mobius;
mod orbit;

use std::fmt;
use std::hash::Hash;

use serde_json::{json, Value};

pub use dynatomic::{
    divisors_of, dynatomic_degree, dynatomic_raw, gen_dynatomic_raw, iterate_pairs, root_image_product, mobius_mu,
    u_invariant_raw, DynKind, DynatomicPolynomial,
};
pub use interp::{interpolate_qtx, newton_interpolate, rational_reconstruction, sample_point};
pub use mobius::Mobius;
pub use orbit::{critical_points, CriticalPoints, OrbitReport, OrbitStatus, DEFAULT_HEIGHT_CAP_DIGITS, DEFAULT_STEP_CAP};

use crate::arith::{rational_height, Integer, ProjPoint, Quad, Rational};
use crate::error::{Error, Result};
use crate::poly::{RatFunc, UniPoly};
use crate::ring::{Field, Ring};

/// Coefficient fields whose points can be hashed, ordered and measured.
pub trait PointField: Field + Eq + Hash + Ord + fmt::Display {
    fn height(&self) -> Integer;
}

impl PointField for Rational {
    fn height(&self) -> Integer {
        rational_height(self)
    }
}

impl PointField for Quad {
    fn height(&self) -> Integer {
        rational_height(self.u()).max(rational_height(self.v()))
    }
}

/// A point of the projective line over `F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pt<F> {
    Fin(F),
    Inf,
}

impl<F: Ring> Pt<F> {
    pub fn is_inf(&self) -> bool {
        matches!(self, Pt::Inf)
    }

    pub fn finite(&self) -> Option<&F> {
        match self {
            Pt::Fin(x) => Some(x),
            Pt::Inf => None,
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Pt::Fin(F::from_i64(n))
    }
}

impl<F: PointField> Pt<F> {
    pub fn height(&self) -> Integer {
        match self {
            Pt::Fin(x) => x.height(),
            Pt::Inf => Integer::from(1),
        }
    }
}

impl Pt<Rational> {
    pub fn to_proj(&self) -> ProjPoint {
        match self {
            Pt::Fin(x) => ProjPoint::from_rational(x),
            Pt::Inf => ProjPoint::infinity(),
        }
    }
}

impl From<&ProjPoint> for Pt<Rational> {
    fn from(p: &ProjPoint) -> Self {
        match p.to_rational() {
            Some(x) => Pt::Fin(x),
            None => Pt::Inf,
        }
    }
}

impl<F: fmt::Display> fmt::Display for Pt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pt::Fin(x) => write!(f, "{x}"),
            Pt::Inf => write!(f, "inf"),
        }
    }
}

/// `p/q` with `p, q` coprime, as a morphism of the projective line.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMap<F: Field> {
    num: UniPoly<F>,
    den: UniPoly<F>,
    degree: usize,
}

impl<F: Field> RationalMap<F> {
    /// Reduces `p/q` to lowest terms and rejects constant maps.
    pub fn new(p: UniPoly<F>, q: UniPoly<F>) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::DegenerateMap("zero denominator".into()));
        }
        if p.is_zero() {
            return Err(Error::DegenerateMap("constant map".into()));
        }
        let g = p.gcd(&q);
        let (p, q) = if g.deg() > 0 { (p.div_rem(&g).0, q.div_rem(&g).0) } else { (p, q) };
        let degree = p.deg().max(q.deg()) as usize;
        if degree == 0 {
            return Err(Error::DegenerateMap("constant map".into()));
        }
        Ok(Self::normalize(p, q, degree))
    }

    /// Trusts that `p, q` are coprime (true for iterates of a morphism).
    fn from_coprime(p: UniPoly<F>, q: UniPoly<F>) -> Self {
        let degree = p.deg().max(q.deg()) as usize;
        Self::normalize(p, q, degree)
    }

    fn normalize(p: UniPoly<F>, q: UniPoly<F>, degree: usize) -> Self {
        let all: Vec<F> = p.coeffs().iter().chain(q.coeffs()).cloned().collect();
        let u = F::normalizer(&all);
        RationalMap { num: p.scale(&u), den: q.scale(&u), degree }
    }

    pub fn identity() -> Self {
        RationalMap { num: UniPoly::x(), den: UniPoly::one(), degree: 1 }
    }

    pub fn num(&self) -> &UniPoly<F> {
        &self.num
    }

    pub fn den(&self) -> &UniPoly<F> {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.deg() == 0
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let p = self.num.hom_compose(&other.num, &other.den, self.degree);
        let q = self.den.hom_compose(&other.num, &other.den, self.degree);
        Self::from_coprime(p, q)
    }

    pub fn iterate(&self, n: usize) -> Self {
        assert!(n >= 1, "iterate needs n >= 1");
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn eval_finite(&self, x: &F) -> Pt<F> {
        let d = self.den.eval(x);
        if d.is_zero() {
            Pt::Inf
        } else {
            Pt::Fin(self.num.eval(x).div(&d))
        }
    }

    pub fn eval(&self, p: &Pt<F>) -> Pt<F> {
        match p {
            Pt::Fin(x) => self.eval_finite(x),
            Pt::Inf => match self.num.deg().cmp(&self.den.deg()) {
                std::cmp::Ordering::Greater => Pt::Inf,
                std::cmp::Ordering::Equal => Pt::Fin(self.num.lc().div(&self.den.lc())),
                std::cmp::Ordering::Less => Pt::Fin(F::zero()),
            },
        }
    }

    pub fn eval_n(&self, p: &Pt<F>, n: usize) -> Pt<F> {
        let mut x = p.clone();
        for _ in 0..n {
            x = self.eval(&x);
        }
        x
    }

    /// Unreduced quotient-rule pair `(p'q - pq', q²)`.
    pub fn derivative_raw(&self) -> (UniPoly<F>, UniPoly<F>) {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        (n, self.den.mul(&self.den))
    }

    /// `φ' = p/q` with `p, q` coprime, `q` normalized.
    pub fn derivative(&self) -> (UniPoly<F>, UniPoly<F>) {
        let (n, d) = self.derivative_raw();
        if n.is_zero() {
            return (n, UniPoly::one());
        }
        let g = n.gcd(&d);
        let (n, d) = (n.div_rem(&g).0, d.div_rem(&g).0);
        let u = F::normalizer(d.coeffs());
        (n.scale(&u), d.scale(&u))
    }

    /// `φ'(x)` at a finite point that is not a pole.
    pub fn derivative_at(&self, x: &F) -> Option<F> {
        let (n, d) = self.derivative_raw();
        let dv = d.eval(x);
        if dv.is_zero() {
            None
        } else {
            Some(n.eval(x).div(&dv))
        }
    }

    /// `σ⁻¹ ∘ φ ∘ σ`.
    pub fn conjugate(&self, s: &Mobius<F>) -> Self {
        let (a, b, c, d) = s.entries();
        let lin_num = UniPoly::new(vec![b.clone(), a.clone()]);
        let lin_den = UniPoly::new(vec![d.clone(), c.clone()]);
        let n = self.num.hom_compose(&lin_num, &lin_den, self.degree);
        let m = self.den.hom_compose(&lin_num, &lin_den, self.degree);
        // σ⁻¹ = [[d, -b], [-c, a]]
        let p = n.scale(d).sub(&m.scale(b));
        let q = m.scale(a).sub(&n.scale(c));
        Self::new(p, q).expect("conjugate of a morphism is a morphism")
    }

    /// Applies `f` to every coefficient, then reduces.
    pub fn try_map_coeffs<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<RationalMap<G>> {
        RationalMap::new(self.num.try_map(&f)?, self.den.try_map(&f)?)
    }

    /// Fixed-point polynomial `x·q - p`.
    pub fn fixed_point_poly(&self) -> UniPoly<F> {
        UniPoly::x().mul(&self.den).sub(&self.num)
    }

    pub fn to_json(&self, field: &str) -> Value {
        json!({
            "num": self.num.fmt_var("x"),
            "den": self.den.fmt_var("x"),
            "field": field,
        })
    }
}

impl RationalMap<RatFunc> {
    /// The specialized map at `t = c`; fails when `c` is a pole of a
    /// coefficient or the degree drops.
    pub fn specialize(&self, c: &Rational) -> Result<RationalMap<Rational>> {
        let bad = || Error::ExcludedParameter(crate::arith::fmt_rational(c), "this family".into());
        let p = self.num.try_map(|a| a.eval(c)).map_err(|_| bad())?;
        let q = self.den.try_map(|a| a.eval(c)).map_err(|_| bad())?;
        let m = RationalMap::new(p, q).map_err(|_| bad())?;
        if m.degree() != self.degree {
            return Err(bad());
        }
        Ok(m)
    }

    /// Lifts a map over Q to a constant family.
    pub fn constant_family(m: &RationalMap<Rational>) -> Self {
        let lift = |p: &UniPoly<Rational>| p.map(RatFunc::from_rational);
        RationalMap::from_coprime(lift(m.num()), lift(m.den()))
    }
}

impl<F: Field> fmt::Display for RationalMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.fmt_var("x");
        if self.den.deg() == 0 && self.den.lc().is_one() {
            return write!(f, "{n}");
        }
        write!(f, "({n})/({})", self.den.fmt_var("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    type QX = UniPoly<Rational>;

    fn q(c: &[i64]) -> QX {
        QX::from_i64s(c)
    }

    fn period4(c: Rational) -> RationalMap<Rational> {
        let c2 = &c * &c;
        let c3 = &c2 * &c;
        let num = QX::new(vec![-c2.clone(), &c + &c2 - &c3]);
        let den = QX::new(vec![-c2.clone(), -(&c3 - &c2 - &c), &c3 - &c2 - &c + rat(1, 1)]);
        RationalMap::new(num, den).unwrap()
    }

    #[test]
    fn construction() {
        let m = RationalMap::new(q(&[0, 0, 1]), q(&[0, 1])).unwrap();
        assert_eq!(m.degree(), 1);
        assert_eq!(m.num(), &q(&[0, 1]));
        assert!(matches!(RationalMap::new(q(&[0, 1]), q(&[0, 1])), Err(Error::DegenerateMap(_))));
        let psi = RationalMap::new(q(&[-1, 2]), q(&[-1, 0, 2])).unwrap();
        assert_eq!(psi.degree(), 2);
    }

    #[test]
    fn iteration_and_eval() {
        let c = rat(7, 1);
        // c(x-1)/x²
        let phi = RationalMap::new(QX::new(vec![-c.clone(), c.clone()]), q(&[0, 0, 1])).unwrap();
        let two = phi.iterate(2).eval(&Pt::Fin(rat(2, 1)));
        assert_eq!(two, Pt::Fin((rat(4, 1) * &c - rat(16, 1)) / &c));
        assert_eq!(phi.iterate(3).degree(), 8);
        let p2 = period4(rat(2, 1));
        assert_eq!(p2.num(), &q(&[4, 2]).neg());
        assert_eq!(p2.eval(&Pt::Fin(rat(-2, 1))), Pt::Fin(rat(0, 1)));
        assert_eq!(p2.eval(&Pt::Inf), Pt::Fin(rat(0, 1)));
    }

    #[test]
    fn derivatives() {
        let m = RationalMap::new(q(&[1]), q(&[0, 0, 1])).unwrap();
        assert_eq!(m.derivative(), (q(&[-2]), q(&[0, 0, 0, 1])));
        let sq = RationalMap::new(q(&[0, 0, 1]), q(&[1])).unwrap();
        assert_eq!(sq.derivative(), (q(&[0, 2]), q(&[1])));
        // (2x+1)/(x+3): det 5
        let lin = RationalMap::new(q(&[1, 2]), q(&[3, 1])).unwrap();
        assert_eq!(lin.derivative(), (q(&[5]), q(&[9, 6, 1])));
    }

    #[test]
    fn display_round_trip_shape() {
        let psi = RationalMap::new(q(&[-1, 2]), QX::new(vec![rat(-1, 1), rat(0, 1), rat(9, 2)])).unwrap();
        assert_eq!(psi.to_string(), "(4*x - 2)/(9*x^2 - 2)");
    }
}
