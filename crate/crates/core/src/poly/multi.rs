use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::UniPoly;
use crate::arith::{fmt_rational, Rational};
use crate::ring::primitive_normalizer;

/// Exponent vector with trailing zeros trimmed.
pub type Mono = Vec<u32>;

fn trim(mut m: Mono) -> Mono {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &[u32], b: &[u32]) -> Mono {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0));
    }
    out
}

fn mono_div(a: &[u32], b: &[u32]) -> Option<Mono> {
    if b.len() > a.len() {
        return None;
    }
    let mut out = a.to_vec();
    for (i, &e) in b.iter().enumerate() {
        out[i] = out[i].checked_sub(e)?;
    }
    Some(trim(out))
}

/// Sparse polynomial over Q in variables `x₀ > x₁ > …` (named at print
/// time, `r, s` by default), ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Mono, Rational>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Style {
    Ascii,
    Pretty,
    Latex,
}

pub const DEFAULT_VARS: [&str; 4] = ["r", "s", "u", "v"];

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, vec![])
    }

    pub fn term(c: Rational, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(m), c);
        }
        MultiPoly { terms }
    }

    /// The `i`-th variable.
    pub fn var(i: usize) -> Self {
        let mut m = vec![0; i + 1];
        m[i] = 1;
        Self::term(Rational::one(), m)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Mono, Rational)>) -> Self {
        let mut acc: HashMap<Mono, Rational> = HashMap::new();
        for (m, c) in it {
            *acc.entry(trim(m)).or_insert_with(Rational::zero) += c;
        }
        MultiPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Builds from `(coefficient, [exponents])` with small integers.
    pub fn from_i64_terms(t: &[(i64, &[u32])]) -> Self {
        Self::from_terms(t.iter().map(|(c, e)| (e.to_vec(), Rational::from_integer((*c).into()))))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending lex order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn leading(&self) -> Option<(&Mono, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &[u32]) -> Rational {
        self.terms.get(&trim(m.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.get(i).copied().unwrap_or(0)).max().unwrap_or(0)
    }

    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            match terms.get_mut(m) {
                Some(x) => {
                    *x += c;
                    if x.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        MultiPoly { terms }
    }

    pub fn neg(&self) -> Self {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut acc: HashMap<Mono, Rational> = HashMap::with_capacity(self.len() * o.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = mono_mul(ma, mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(x) => *x += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        MultiPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    fn mul_term(&self, m: &[u32], c: &Rational) -> Self {
        MultiPoly { terms: self.terms.iter().map(|(mm, x)| (mono_mul(mm, m), x * c)).collect() }
    }

    /// Exact quotient, if `o` divides `self`.
    pub fn exact_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        if let Some(c) = o.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lcf) = o.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut r = self.clone();
        let mut q = BTreeMap::new();
        while let Some((rm, rc)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let m = mono_div(&rm, &lm)?;
            let c = rc / &lcf;
            r = r.sub(&o.mul_term(&m, &c));
            q.insert(m, c);
        }
        Some(MultiPoly { terms: q })
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `x_i = v`, leaving the other variables.
    pub fn subs(&self, i: usize, v: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let mut m = m.clone();
            let e = m.get(i).copied().unwrap_or(0);
            if e > 0 {
                m[i] = 0;
            }
            (m, c * num_traits::pow(v.clone(), e as usize))
        }))
    }

    /// Views the polynomial as univariate in `x_i`.
    pub fn to_uni(&self, i: usize) -> UniPoly<MultiPoly> {
        let mut parts: BTreeMap<u32, Vec<(Mono, Rational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.get(i).copied().unwrap_or(0);
            let mut mm = m.clone();
            if e > 0 {
                mm[i] = 0;
            }
            parts.entry(e).or_default().push((mm, c.clone()));
        }
        let deg = parts.keys().next_back().copied().unwrap_or(0) as usize;
        let mut c = vec![MultiPoly::zero(); deg + 1];
        for (e, ts) in parts {
            c[e as usize] = MultiPoly::from_terms(ts);
        }
        UniPoly::new(c)
    }

    pub fn from_uni(p: &UniPoly<MultiPoly>, i: usize) -> Self {
        let mut acc = MultiPoly::zero();
        let x = MultiPoly::var(i);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(&x).add(c);
        }
        acc
    }

    /// Univariate polynomial over Q, if only `x_i` occurs.
    pub fn to_uni_rational(&self, i: usize) -> Option<UniPoly<Rational>> {
        let u = self.to_uni(i);
        let c: Option<Vec<Rational>> = u.coeffs().iter().map(|c| c.as_constant()).collect();
        Some(UniPoly::new(c?))
    }

    pub fn from_uni_rational(p: &UniPoly<Rational>, i: usize) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| {
            let mut m = vec![0; i + 1];
            m[i] = k as u32;
            (m, c.clone())
        }))
    }

    /// Integer primitive with positive leading coefficient (lex).
    pub fn primitive_integer(&self) -> Self {
        let cs: Vec<Rational> = self.terms.values().cloned().collect();
        self.scale(&primitive_normalizer(&cs))
    }

    fn fmt_with(&self, vars: &[&str], style: Style) -> String {
        let pretty = style == Style::Pretty;
        let star = if style == Style::Ascii { "*" } else { "" };
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms_desc() {
            let neg = c.is_negative();
            let mag = c.abs();
            let mut mono = String::new();
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = vars.get(i).copied().unwrap_or("?");
                if pretty {
                    mono.push_str(name);
                    if e > 1 {
                        mono.push_str(&superscript(e));
                    }
                } else {
                    if !mono.is_empty() {
                        mono.push_str(star);
                    }
                    mono.push_str(name);
                    if e > 1 {
                        mono.push_str(&format!("^{e}"));
                    }
                }
            }
            let coeff = fmt_rational(&mag);
            let term = if mono.is_empty() {
                coeff
            } else if mag.is_one() {
                mono
            } else {
                format!("{coeff}{star}{mono}")
            };
            let minus = if pretty { "−" } else { "-" };
            if out.is_empty() {
                if neg {
                    out.push_str(minus);
                }
            } else {
                out.push_str(&format!(" {} ", if neg { minus } else { "+" }));
            }
            out.push_str(&term);
        }
        out
    }

    /// ASCII form, e.g. `2*r^3 + 5*r^2*s - r^2`.
    pub fn fmt_vars(&self, vars: &[&str]) -> String {
        self.fmt_with(vars, Style::Ascii)
    }

    /// TeX-source form without multiplication signs, e.g. `2r^3 + 5r^2s - r^2`.
    pub fn fmt_latex(&self, vars: &[&str]) -> String {
        self.fmt_with(vars, Style::Latex)
    }

    /// Typeset form with superscripts and a true minus sign, e.g. `2r³ − r²`.
    pub fn fmt_pretty(&self, vars: &[&str]) -> String {
        self.fmt_with(vars, Style::Pretty)
    }

    pub fn to_json(&self, vars: &[&str]) -> Value {
        let n = self.nvars().max(vars.len());
        let terms: Vec<Value> = self
            .terms_desc()
            .map(|(m, c)| {
                let mut e: Vec<u32> = m.clone();
                e.resize(n, 0);
                json!([e, c.to_string()])
            })
            .collect();
        json!({ "vars": vars, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        let terms = v.get("terms")?.as_array()?;
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let t = t.as_array()?;
            let e: Vec<u32> = t.first()?.as_array()?.iter().map(|x| x.as_u64().map(|x| x as u32)).collect::<Option<_>>()?;
            let c = crate::arith::parse_rational(t.get(1)?.as_str()?).ok()?;
            out.push((e, c));
        }
        Some(Self::from_terms(out))
    }
}

fn superscript(e: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    e.to_string().chars().map(|d| DIGITS[d.to_digit(10).unwrap() as usize]).collect()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_vars(&DEFAULT_VARS))
    }
}

impl crate::ring::Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::constant(<Rational as One>::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        MultiPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        MultiPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        MultiPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        self.exact_div(o)
    }
    fn from_rational(q: &Rational) -> Self {
        MultiPoly::constant(q.clone())
    }
    fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(q)
    }
    fn as_rational(&self) -> Option<Rational> {
        self.as_constant()
    }
    fn fmt_coeff(&self) -> String {
        self.to_string()
    }
    fn needs_parens(&self) -> bool {
        self.len() > 1 || self.as_constant().is_some_and(|c| !c.denom().is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn f3() -> MultiPoly {
        MultiPoly::from_i64_terms(&[
            (2, &[3, 0]),
            (5, &[2, 1]),
            (-1, &[2, 0]),
            (4, &[1, 2]),
            (-2, &[1, 1]),
            (12, &[1, 0]),
            (1, &[0, 3]),
            (28, &[0, 0]),
        ])
    }

    #[test]
    fn lex_printing() {
        assert_eq!(f3().fmt_pretty(&["r", "s"]), "2r³ + 5r²s − r² + 4rs² − 2rs + 12r + s³ + 28");
        assert_eq!(f3().to_string(), "2*r^3 + 5*r^2*s - r^2 + 4*r*s^2 - 2*r*s + 12*r + s^3 + 28");
    }

    #[test]
    fn exact_division_round_trip() {
        let a = f3();
        let b = MultiPoly::from_i64_terms(&[(3, &[1, 1]), (-1, &[0, 2]), (7, &[])]);
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert!(a.exact_div(&b).is_none());
    }

    #[test]
    fn eval_and_subs() {
        let p = f3();
        assert_eq!(p.eval(&[rat(-6, 1), rat(8, 1)]), rat(0, 1));
        let q = p.subs(0, &rat(-6, 1));
        assert_eq!(q.eval(&[rat(0, 1), rat(8, 1)]), rat(0, 1));
        assert_eq!(MultiPoly::from_uni(&p.to_uni(1), 1), p);
    }

    #[test]
    fn json_round_trip() {
        let j = f3().to_json(&["r", "s"]);
        assert_eq!(MultiPoly::from_json(&j).unwrap(), f3());
        assert_eq!(j["terms"][0], json!([[3, 0], "2"]));
    }
}
