use std::sync::Arc;

use super::UniPoly;
use crate::arith::Rational;
use crate::ring::{Field, Ring};

type QX = UniPoly<Rational>;

/// Element of `Q[s]/(g)` for an irreducible `g`.
///
/// Constants created without a modulus adopt the modulus of the other
/// operand, like the rational sentinel of [`crate::arith::Quad`].
#[derive(Clone, Debug)]
pub struct NfElem {
    modulus: Option<Arc<QX>>,
    value: QX,
}

impl NfElem {
    pub fn new(modulus: Arc<QX>, value: &QX) -> Self {
        let value = value.rem(&modulus);
        NfElem { modulus: Some(modulus), value }
    }

    pub fn value(&self) -> &QX {
        &self.value
    }

    fn join(&self, o: &Self) -> Option<Arc<QX>> {
        match (&self.modulus, &o.modulus) {
            (Some(a), Some(b)) => {
                assert!(Arc::ptr_eq(a, b) || a == b, "number field mismatch");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    fn make(m: Option<Arc<QX>>, v: QX) -> Self {
        match m {
            Some(m) => NfElem::new(m, &v),
            None => NfElem { modulus: None, value: v },
        }
    }
}

impl PartialEq for NfElem {
    fn eq(&self, o: &Self) -> bool {
        self.value == o.value
    }
}

impl Ring for NfElem {
    fn zero() -> Self {
        NfElem { modulus: None, value: QX::zero() }
    }
    fn one() -> Self {
        NfElem { modulus: None, value: QX::one() }
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        NfElem { modulus: self.join(o), value: self.value.add(&o.value) }
    }
    fn sub(&self, o: &Self) -> Self {
        NfElem { modulus: self.join(o), value: self.value.sub(&o.value) }
    }
    fn mul(&self, o: &Self) -> Self {
        Self::make(self.join(o), self.value.mul(&o.value))
    }
    fn neg(&self) -> Self {
        NfElem { modulus: self.modulus.clone(), value: self.value.neg() }
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            None
        } else {
            Some(self.mul(&o.inv()))
        }
    }
    fn from_rational(q: &Rational) -> Self {
        NfElem { modulus: None, value: QX::constant(q.clone()) }
    }
    fn as_rational(&self) -> Option<Rational> {
        match self.value.deg() {
            -1 => Some(Rational::zero()),
            0 => Some(self.value.lc()),
            _ => None,
        }
    }
    fn fmt_coeff(&self) -> String {
        self.value.fmt_var("a")
    }
}

impl Field for NfElem {
    fn inv(&self) -> Self {
        match &self.modulus {
            None => NfElem { modulus: None, value: QX::constant(self.value.lc().recip()) },
            Some(m) => {
                let (g, s, _) = self.value.ext_gcd(m);
                assert!(g.deg() == 0, "element is a zero divisor; modulus is reducible");
                NfElem::new(m.clone(), &s)
            }
        }
    }
    fn normalizer(coeffs: &[Self]) -> Self {
        match coeffs.iter().rev().find(|c| !c.is_zero()) {
            Some(c) => c.inv(),
            None => Self::one(),
        }
    }
}
