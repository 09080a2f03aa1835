use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_traits::Signed;

use super::{fmt_rational, is_one_int, is_zero_int, parse_integer, parse_rational, rational_sqrt, squarefree_part, Integer, Rational};
use crate::error::{Error, ParseError};
use crate::poly::{rational_roots, UniPoly};
use crate::ring::{Field, Ring};

/// `u + v·√d` with squarefree `d ∉ {0, 1}`.
///
/// Elements built without a field (`from_rational`, `zero`, `one`) carry
/// `d = 0` and adopt the field of whatever they are combined with.
#[derive(Clone, Debug)]
pub struct Quad {
    d: Integer,
    u: Rational,
    v: Rational,
}

impl Quad {
    pub fn new(d: Integer, u: Rational, v: Rational) -> Result<Self, Error> {
        if is_zero_int(&d) || is_one_int(&d) || squarefree_part(&d) != d {
            return Err(Error::Precondition(format!("{d} is not a squarefree integer other than 0, 1")));
        }
        Ok(Quad { d, u, v })
    }

    /// `√d` itself.
    pub fn sqrt_of(d: i64) -> Self {
        Quad::new(d.into(), Rational::zero(), Rational::one()).expect("squarefree d")
    }

    pub fn rational(u: Rational) -> Self {
        Quad { d: Integer::from(0), u, v: Rational::zero() }
    }

    pub fn in_field(d: &Integer, u: Rational) -> Self {
        Quad { d: d.clone(), u, v: Rational::zero() }
    }

    pub fn d(&self) -> &Integer {
        &self.d
    }
    pub fn u(&self) -> &Rational {
        &self.u
    }
    pub fn v(&self) -> &Rational {
        &self.v
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    pub fn conj(&self) -> Self {
        Quad { d: self.d.clone(), u: self.u.clone(), v: -&self.v }
    }

    /// `u² − d·v²`.
    pub fn norm(&self) -> Rational {
        &self.u * &self.u - Rational::from_integer(self.d.clone()) * &self.v * &self.v
    }

    pub fn trace(&self) -> Rational {
        &self.u + &self.u
    }

    fn common_d(&self, o: &Self) -> Result<Integer, Error> {
        if is_zero_int(&self.d) {
            Ok(o.d.clone())
        } else if is_zero_int(&o.d) || o.d == self.d {
            Ok(self.d.clone())
        } else {
            Err(Error::FieldMismatch(self.d.to_string(), o.d.to_string()))
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, Error> {
        Ok(Quad { d: self.common_d(o)?, u: &self.u + &o.u, v: &self.v + &o.v })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, Error> {
        Ok(Quad { d: self.common_d(o)?, u: &self.u - &o.u, v: &self.v - &o.v })
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, Error> {
        let d = self.common_d(o)?;
        let dd = Rational::from_integer(d.clone());
        let u = &self.u * &o.u + dd * &self.v * &o.v;
        let v = &self.u * &o.v + &self.v * &o.u;
        Ok(Quad { d, u, v })
    }

    pub fn checked_inv(&self) -> Result<Self, Error> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Quad { d: self.d.clone(), u: &self.u / &n, v: -&self.v / &n })
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, Error> {
        self.checked_mul(&o.checked_inv()?)
    }
}

impl PartialEq for Quad {
    fn eq(&self, o: &Self) -> bool {
        self.u == o.u && self.v == o.v && (self.v.is_zero() || self.d == o.d)
    }
}

impl Eq for Quad {}

impl Hash for Quad {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.u.hash(h);
        if !self.v.is_zero() {
            self.v.hash(h);
            self.d.hash(h);
        }
    }
}

impl Ord for Quad {
    fn cmp(&self, o: &Self) -> Ordering {
        let key = |q: &Quad| if q.v.is_zero() { Integer::from(0) } else { q.d.clone() };
        key(self).cmp(&key(o)).then_with(|| self.u.cmp(&o.u)).then_with(|| self.v.cmp(&o.v))
    }
}

impl PartialOrd for Quad {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ring for Quad {
    fn zero() -> Self {
        Quad::rational(Rational::zero())
    }
    fn one() -> Self {
        Quad::rational(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self.checked_add(o).expect("quadratic field mismatch")
    }
    fn sub(&self, o: &Self) -> Self {
        self.checked_sub(o).expect("quadratic field mismatch")
    }
    fn mul(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("quadratic field mismatch")
    }
    fn neg(&self) -> Self {
        Quad { d: self.d.clone(), u: -&self.u, v: -&self.v }
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        self.checked_div(o).ok()
    }
    fn from_rational(q: &Rational) -> Self {
        Quad::rational(q.clone())
    }
    fn as_rational(&self) -> Option<Rational> {
        self.v.is_zero().then(|| self.u.clone())
    }
    fn fmt_coeff(&self) -> String {
        self.to_string()
    }
    fn needs_parens(&self) -> bool {
        !self.v.is_zero() || !is_one_int(self.u.denom())
    }
}

impl Field for Quad {
    fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of zero")
    }
    /// Makes the polynomial monic.
    fn normalizer(coeffs: &[Self]) -> Self {
        match coeffs.iter().rev().find(|c| !c.is_zero()) {
            Some(c) => c.inv(),
            None => Quad::one(),
        }
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return write!(f, "{}", fmt_rational(&self.u));
        }
        let root = format!("sqrt({})", self.d);
        let mag = self.v.abs();
        let vpart = if mag.is_one() { root } else { format!("{}*{}", fmt_rational(&mag), root) };
        if self.u.is_zero() {
            if self.v.is_negative() {
                write!(f, "-{vpart}")
            } else {
                write!(f, "{vpart}")
            }
        } else {
            let sign = if self.v.is_negative() { '-' } else { '+' };
            write!(f, "{}{}{}", fmt_rational(&self.u), sign, vpart)
        }
    }
}

impl FromStr for Quad {
    type Err = ParseError;
    /// Accepts `u`, `u+v*sqrt(d)`, `u-v*sqrt(d)`, `v*sqrt(d)` and `sqrt(d)`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(pos) = t.find("sqrt(") else {
            return Ok(Quad::rational(parse_rational(&t)?));
        };
        let close = t[pos..]
            .find(')')
            .map(|i| i + pos)
            .ok_or_else(|| ParseError::new(t.len(), "missing `)`"))?;
        if close + 1 != t.len() {
            return Err(ParseError::new(close + 1, "trailing input"));
        }
        let d = parse_integer(&t[pos + 5..close]).map_err(|e| ParseError::new(pos + 5, e.message))?;
        let head = &t[..pos];
        let head = head.strip_suffix('*').unwrap_or(head);
        // split head into u and the signed v coefficient at the last +/- that
        // is not the leading sign or part of the u literal's own sign
        let split = head
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .next_back();
        let (u, vtxt) = match split {
            Some(i) => (parse_rational(&head[..i])?, &head[i..]),
            None => (Rational::zero(), head),
        };
        let v = match vtxt {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            x => parse_rational(x.strip_prefix('+').unwrap_or(x))?,
        };
        Quad::new(d, u, v).map_err(|e| ParseError::new(pos, e.to_string()))
    }
}

/// Square root inside `Q(√d)` via the norm criterion.
pub fn quad_sqrt(e: &Quad) -> Option<Quad> {
    if e.is_zero() {
        return Some(e.clone());
    }
    let d = e.d.clone();
    if e.v.is_zero() {
        if let Some(r) = rational_sqrt(&e.u) {
            return Some(Quad::in_field(&d, r));
        }
        if is_zero_int(&d) {
            return None;
        }
        let dd = Rational::from_integer(d.clone());
        let w = rational_sqrt(&(&e.u / &dd))?;
        return Some(Quad { d, u: Rational::zero(), v: w });
    }
    let n = rational_sqrt(&e.norm())?;
    let two = Rational::from_integer(2.into());
    for cand in [(&e.u + &n) / &two, (&e.u - &n) / &two] {
        if let Some(a) = rational_sqrt(&cand) {
            if a.is_zero() {
                continue;
            }
            let b = &e.v / (&two * &a);
            let s = Quad { d: d.clone(), u: a, v: b };
            if s.mul(&s) == *e {
                return Some(s);
            }
        }
    }
    None
}

/// Cube root inside `Q(√d)`.
///
/// Writing `w = a + b√d`, the components of `w³ = u + v√d` are
/// `a³ + 3dab² = u` and `3a²b + db³ = v`; the resultant in `b` leaves a
/// polynomial in `a` whose rational roots are back-substituted.
pub fn quad_cube_root(e: &Quad) -> Option<Quad> {
    if e.is_zero() {
        return Some(e.clone());
    }
    let d = e.d.clone();
    if e.v.is_zero() {
        if let Some(r) = super::rational_cube_root(&e.u) {
            return Some(Quad::in_field(&d, r));
        }
    }
    if is_zero_int(&d) {
        return None;
    }
    let dq = Rational::from_integer(d.clone());
    type P = UniPoly<Rational>;
    let c = |x: Rational| P::constant(x);
    let q = |n: i64| Rational::from_integer(n.into());
    // coefficients in Q[a] of the two equations as polynomials in b
    let a = P::x();
    let a2 = a.mul(&a);
    let a3 = a2.mul(&a);
    let eq1 = UniPoly::new(vec![a3.sub(&c(e.u.clone())), P::zero(), a.scale(&(q(3) * &dq))]);
    let eq2 = UniPoly::new(vec![c(-e.v.clone()), a2.scale(&q(3)), P::zero(), c(dq.clone())]);
    let elim = eq1.resultant(&eq2);
    let mut roots = if elim.is_zero() { Vec::new() } else { rational_roots(&elim) };
    roots.dedup();
    let mut found: Vec<Quad> = Vec::new();
    for ra in roots {
        let e1 = eq1.map(|cf| cf.eval(&ra));
        let e2 = eq2.map(|cf| cf.eval(&ra));
        let g = e1.gcd(&e2);
        for rb in rational_roots(&g) {
            let w = Quad { d: d.clone(), u: ra.clone(), v: rb };
            if w.mul(&w).mul(&w) == *e {
                found.push(w);
            }
        }
    }
    found.sort_by_key(|w| !w.v.is_zero());
    found.into_iter().next()
}
