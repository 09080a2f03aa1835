use super::{Pt, RationalMap};
use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::ring::Field;

/// `x ↦ (a x + b)/(c x + d)` with `ad - bc ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mobius<F: Field> {
    a: F,
    b: F,
    c: F,
    d: F,
}

impl<F: Field> Mobius<F> {
    pub fn new(a: F, b: F, c: F, d: F) -> Result<Self> {
        if a.mul(&d).sub(&b.mul(&c)).is_zero() {
            return Err(Error::DegenerateMap("singular Mobius matrix".into()));
        }
        Ok(Mobius { a, b, c, d })
    }

    pub fn identity() -> Self {
        Mobius { a: F::one(), b: F::zero(), c: F::zero(), d: F::one() }
    }

    pub fn entries(&self) -> (&F, &F, &F, &F) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    pub fn det(&self) -> F {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn apply(&self, p: &Pt<F>) -> Pt<F> {
        let (num, den) = match p {
            Pt::Fin(x) => (self.a.mul(x).add(&self.b), self.c.mul(x).add(&self.d)),
            Pt::Inf => (self.a.clone(), self.c.clone()),
        };
        if den.is_zero() {
            Pt::Inf
        } else {
            Pt::Fin(num.div(&den))
        }
    }

    pub fn inverse(&self) -> Self {
        Mobius { a: self.d.clone(), b: self.b.neg(), c: self.c.neg(), d: self.a.clone() }
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Self {
        Mobius {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            c: self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            d: self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        }
    }

    pub fn as_map(&self) -> RationalMap<F> {
        RationalMap::new(UniPoly::new(vec![self.b.clone(), self.a.clone()]), UniPoly::new(vec![self.d.clone(), self.c.clone()]))
            .expect("nonsingular")
    }

    /// Sends `z1, z2, z3` to `0, 1, ∞`.
    fn to_standard(z: &[Pt<F>; 3]) -> Result<Self> {
        if z[0] == z[1] || z[0] == z[2] || z[1] == z[2] {
            return Err(Error::RepeatedPoint);
        }
        let (o, z_) = (F::one(), F::zero());
        let m = match z {
            [Pt::Inf, Pt::Fin(z2), Pt::Fin(z3)] => Mobius { a: z_, b: z2.sub(z3), c: o, d: z3.neg() },
            [Pt::Fin(z1), Pt::Inf, Pt::Fin(z3)] => Mobius { a: o.clone(), b: z1.neg(), c: o, d: z3.neg() },
            [Pt::Fin(z1), Pt::Fin(z2), Pt::Inf] => Mobius { a: o, b: z1.neg(), c: z_, d: z2.sub(z1) },
            [Pt::Fin(z1), Pt::Fin(z2), Pt::Fin(z3)] => {
                let u = z2.sub(z3);
                let v = z2.sub(z1);
                Mobius { a: u.clone(), b: z1.mul(&u).neg(), c: v.clone(), d: z3.mul(&v).neg() }
            }
            _ => unreachable!("distinct points include at most one infinity"),
        };
        Ok(m)
    }

    /// The unique transform with `src[i] ↦ dst[i]`.
    pub fn through(src: &[Pt<F>; 3], dst: &[Pt<F>; 3]) -> Result<Self> {
        let a = Self::to_standard(src)?;
        let b = Self::to_standard(dst)?;
        Ok(b.inverse().compose(&a))
    }
}
