//! Map expressions: `+ - * / ^`, parentheses, rationals, `x`, `t`, and
//! named parameters bound from the command line.

use std::collections::BTreeMap;

use crate::arith::Rational;
use crate::dynamics::RationalMap;
use crate::error::{Error, ParseError, Result};
use crate::poly::{RatFunc, UniPoly, KX};
use crate::ring::{Field, Ring};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    X,
    T,
    Param(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: &str) -> std::result::Result<T, ParseError> {
        Err(ParseError::new(self.pos, msg))
    }

    fn expr(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == b'+' { Expr::Add(lhs.into(), rhs.into()) } else { Expr::Sub(lhs.into(), rhs.into()) };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = if op == b'*' { Expr::Mul(lhs.into(), rhs.into()) } else { Expr::Div(lhs.into(), rhs.into()) };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> std::result::Result<Expr, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(self.factor()?.into()));
        }
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return self.err("expected an integer exponent");
            }
            let e: i64 = digits.parse().map_err(|_| ParseError::new(start, "exponent too large"))?;
            return Ok(Expr::Pow(base.into(), if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.s[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> std::result::Result<Expr, ParseError> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: crate::Integer = d.parse().expect("digit string");
                Ok(Expr::Num(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii identifier");
                Ok(match name {
                    "x" => Expr::X,
                    "t" => Expr::T,
                    _ => Expr::Param(name.to_string()),
                })
            }
            Some(_) => self.err("unexpected character"),
        }
    }
}

/// Parses the whole of `text` as one expression.
pub fn parse_expr(text: &str) -> std::result::Result<Expr, ParseError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// A fraction of polynomials in `x` over `Q(t)`.
#[derive(Clone)]
struct Frac {
    num: KX,
    den: KX,
}

impl Frac {
    fn poly(p: KX) -> Self {
        Frac { num: p, den: KX::one() }
    }

    fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Frac { num: self.den.clone(), den: self.num.clone() })
    }
}

impl Expr {
    pub fn mentions_t(&self) -> bool {
        match self {
            Expr::T => true,
            Expr::Num(_) | Expr::X | Expr::Param(_) => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.mentions_t(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.mentions_t() || b.mentions_t(),
        }
    }

    pub fn mentions_x(&self) -> bool {
        match self {
            Expr::X => true,
            Expr::Num(_) | Expr::T | Expr::Param(_) => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.mentions_x(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.mentions_x() || b.mentions_x(),
        }
    }

    fn eval(&self, env: &BTreeMap<String, Rational>) -> Result<Frac> {
        let konst = |r: RatFunc| Frac::poly(KX::constant(r));
        Ok(match self {
            Expr::Num(q) => konst(RatFunc::from_rational(q)),
            Expr::T => konst(RatFunc::t()),
            Expr::X => Frac::poly(KX::x()),
            Expr::Param(name) => match env.get(name) {
                Some(v) => konst(RatFunc::from_rational(v)),
                None => return Err(Error::Precondition(format!("unbound parameter {name}"))),
            },
            Expr::Neg(a) => {
                let a = a.eval(env)?;
                Frac { num: a.num.neg(), den: a.den }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let (a, b) = (a.eval(env)?, b.eval(env)?);
                let (l, r) = (a.num.mul(&b.den), b.num.mul(&a.den));
                let num = if matches!(self, Expr::Add(..)) { l.add(&r) } else { l.sub(&r) };
                reduce(num, a.den.mul(&b.den))
            }
            Expr::Mul(a, b) => {
                let (a, b) = (a.eval(env)?, b.eval(env)?);
                reduce(a.num.mul(&b.num), a.den.mul(&b.den))
            }
            Expr::Div(a, b) => {
                let (a, b) = (a.eval(env)?, b.eval(env)?.inv()?);
                reduce(a.num.mul(&b.num), a.den.mul(&b.den))
            }
            Expr::Pow(a, e) => {
                let a = a.eval(env)?;
                let base = if *e < 0 { a.inv()? } else { a };
                let k = u32::try_from(e.unsigned_abs()).map_err(|_| Error::Precondition("exponent too large".into()))?;
                Frac { num: base.num.pow(k), den: base.den.pow(k) }
            }
        })
    }

    /// The expression as a rational function of `t`; fails if it uses `x`.
    pub fn to_ratfunc(&self) -> Result<RatFunc> {
        self.to_ratfunc_with(&BTreeMap::new())
    }

    pub fn to_ratfunc_with(&self, env: &BTreeMap<String, Rational>) -> Result<RatFunc> {
        if self.mentions_x() {
            return Err(Error::Precondition("expected an expression in t only".into()));
        }
        let f = self.eval(env)?;
        Ok(f.num.lc().div(&f.den.lc()))
    }
}

fn reduce(num: KX, den: KX) -> Frac {
    if num.is_zero() {
        return Frac { num, den: KX::one() };
    }
    let g = num.gcd(&den);
    if g.deg() > 0 {
        Frac { num: num.div_rem(&g).0, den: den.div_rem(&g).0 }
    } else {
        Frac { num, den }
    }
}

/// A parsed map: over Q when the text has no `t`, otherwise over Q(t).
#[derive(Clone, Debug, PartialEq)]
pub enum ParsedMap {
    Rational(RationalMap<Rational>),
    Family(RationalMap<RatFunc>),
}

/// Parses a rational map in `x`, substituting `bindings` for named
/// parameters.
pub fn parse_map(text: &str, bindings: &BTreeMap<String, Rational>) -> Result<ParsedMap> {
    let e = parse_expr(text)?;
    let f = e.eval(bindings)?;
    let fam = RationalMap::new(f.num, f.den)?;
    if e.mentions_t() {
        return Ok(ParsedMap::Family(fam));
    }
    let down = |p: &KX| -> UniPoly<Rational> { p.map(|c| c.num().coeff(0).div(&c.den().coeff(0))) };
    Ok(ParsedMap::Rational(RationalMap::new(down(fam.num()), down(fam.den()))?))
}

/// [`parse_map`] for maps over Q.
pub fn parse_rational_map(text: &str, bindings: &BTreeMap<String, Rational>) -> Result<RationalMap<Rational>> {
    match parse_map(text, bindings)? {
        ParsedMap::Rational(m) => Ok(m),
        ParsedMap::Family(_) => Err(Error::Precondition("the map depends on t; pass a parameter value".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    type QX = UniPoly<Rational>;

    fn none() -> BTreeMap<String, Rational> {
        BTreeMap::new()
    }

    #[test]
    fn psi_literal() {
        let m = parse_rational_map("(2*x-1)/((9/2)*x^2-1)", &none()).unwrap();
        let want = RationalMap::new(QX::from_i64s(&[-1, 2]), QX::new(vec![rat_int(-1), rat_int(0), rat(9, 2)])).unwrap();
        assert_eq!(m, want);
    }

    #[test]
    fn bound_parameter() {
        let env = BTreeMap::from([("c".to_string(), rat_int(1))]);
        let m = parse_rational_map("1 - (c+1)/x + c/x^2", &env).unwrap();
        let want = RationalMap::new(QX::from_i64s(&[1, -2, 1]), QX::from_i64s(&[0, 0, 1])).unwrap();
        assert_eq!(m, want);
        assert!(matches!(parse_rational_map("c/x", &none()), Err(Error::Precondition(_))));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match parse_expr("x/(x") {
            Err(e) => assert_eq!(e.offset, 4),
            Ok(_) => panic!("accepted"),
        }
        assert_eq!(parse_expr("x + * 2").unwrap_err().offset, 4);
        assert_eq!(parse_expr("x^y").unwrap_err().offset, 2);
        assert_eq!(parse_expr("x )").unwrap_err().offset, 2);
    }

    #[test]
    fn degenerate_maps() {
        assert!(matches!(parse_map("x/x", &none()), Err(Error::DegenerateMap(_))));
        assert!(matches!(parse_map("1/(x-x)", &none()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn family_and_round_trip() {
        let m = match parse_map("t*(x-1)/x^2", &none()).unwrap() {
            ParsedMap::Family(m) => m,
            ParsedMap::Rational(_) => panic!("expected a family"),
        };
        let again = parse_map(&m.to_string(), &none()).unwrap();
        assert_eq!(again, ParsedMap::Family(m));
        let r = parse_rational_map("-x^2/(3*x - 7/5) + 2", &none()).unwrap();
        assert_eq!(parse_rational_map(&r.to_string(), &none()).unwrap(), r);
        assert_eq!(parse_expr("1/(1-t)").unwrap().to_ratfunc().unwrap(), RatFunc::from_i64s(&[1], &[1, -1]));
    }
}
