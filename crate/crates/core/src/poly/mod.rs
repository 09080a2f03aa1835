//! Polynomial arithmetic over the coefficient domains used by the crate.

pub mod bivariate;
pub mod factor;
pub mod modp;
mod multi;
mod numfield;
mod ratfunc;
mod roots;
mod uni;

pub use bivariate::{content_split, specialize, NormalizedBivariate, KX, QT, QTX, QX};
pub use factor::{irreducibility_certificate, quadratic_factors, Certification, CertifiedFactor, FactorCertificate};
pub use modp::factor_mod_p;
pub use multi::{Mono, MultiPoly};
pub use numfield::NfElem;
pub use ratfunc::RatFunc;
pub use roots::{divisors, rational_roots, roots_by_divisors};
pub use uni::UniPoly;

use crate::arith::Rational;
use crate::error::Result;

/// Exact quotient `a / b`; fails when the division leaves a remainder.
pub fn exact_divide<R: crate::ring::Ring>(a: &UniPoly<R>, b: &UniPoly<R>) -> Result<UniPoly<R>> {
    a.exact_div(b)
}

pub fn resultant<R: crate::ring::Ring>(a: &UniPoly<R>, b: &UniPoly<R>) -> R {
    a.resultant(b)
}

pub fn squarefree_part(p: &UniPoly<Rational>) -> UniPoly<Rational> {
    p.squarefree_part()
}

/// Monic `T` with `Tⁿ = s` up to the leading coefficient of `s`.
pub fn nth_root_poly<F: crate::ring::Field>(s: &UniPoly<F>, n: usize) -> Result<UniPoly<F>> {
    s.nth_root(n)
}
