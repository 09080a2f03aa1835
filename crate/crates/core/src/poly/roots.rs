use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::modp::{self, odd_primes};
use super::UniPoly;
use crate::arith::{Integer, Rational};

type QX = UniPoly<Rational>;

/// Integer coefficient vector of a primitive integer polynomial.
pub(crate) fn int_coeffs(f: &QX) -> Vec<Integer> {
    f.coeffs().iter().map(|c| {
        debug_assert!(c.denom().is_one());
        c.numer().clone()
    }).collect()
}

pub(crate) fn eval_int_mod(c: &[Integer], x: &Integer, m: &Integer) -> Integer {
    let mut acc = Integer::zero();
    for a in c.iter().rev() {
        acc = (acc * x + a).mod_floor(m);
    }
    acc
}

pub(crate) fn inv_mod_int(a: &Integer, m: &Integer) -> Option<Integer> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

pub(crate) fn symmetric(a: &Integer, m: &Integer) -> Integer {
    let r = a.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

/// Prime with good reduction for the squarefree integer polynomial `g`,
/// chosen among the first few as the one with fewest roots mod p.
fn choose_prime(g: &QX) -> Option<(u64, Vec<u64>)> {
    let mut best: Option<(u64, Vec<u64>)> = None;
    let mut tried = 0;
    for p in odd_primes().take(400) {
        let Ok(img) = modp::good_image(g, p) else { continue };
        let r = modp::roots(&img, p);
        tried += 1;
        if best.as_ref().is_none_or(|(_, b)| r.len() < b.len()) {
            best = Some((p, r));
        }
        if best.as_ref().is_some_and(|(_, b)| b.is_empty()) || tried >= 6 {
            break;
        }
    }
    best
}

/// Rational roots of a squarefree primitive integer polynomial.
fn roots_squarefree(g: &QX) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut g = g.clone();
    // factor out x so the lifting never sees a zero constant term
    if g.coeff(0).is_zero() {
        out.push(Rational::zero());
        g = g.exact_div(&QX::x()).expect("x divides");
    }
    if g.deg() < 1 {
        return out;
    }
    let c = int_coeffs(&g);
    let lc = c.last().unwrap().clone();
    let bound: Integer = lc.abs() + c.iter().map(|x| x.abs()).max().unwrap();
    let target: Integer = bound * 2 + 1;
    let Some((p, rs)) = choose_prime(&g) else {
        return roots_by_divisors(&g, None).unwrap_or_default();
    };
    let pb = Integer::from(p);
    let dc: Vec<Integer> = int_coeffs(&g.derivative());
    // two more good primes for a cheap filter before exact evaluation
    let filters: Vec<u64> = odd_primes()
        .filter(|&q| q != p)
        .filter(|&q| (&lc % Integer::from(q)) != Integer::zero())
        .take(2)
        .collect();
    for r0 in rs {
        // Newton lifting: the root is simple mod p, so f' is a unit
        let mut m = pb.clone();
        let mut r = Integer::from(r0);
        while m < target {
            let m2 = &m * &m;
            let fr = eval_int_mod(&c, &r, &m2);
            let dr = eval_int_mod(&dc, &r, &m2);
            let inv = inv_mod_int(&dr, &m2).expect("simple root lifts");
            r = (r - fr * inv).mod_floor(&m2);
            m = m2;
        }
        let y = symmetric(&(&lc * &r), &m);
        let x = Rational::new(y, lc.clone());
        let passes = filters.iter().all(|&q| {
            let qq = Integer::from(q);
            let num = x.numer().mod_floor(&qq);
            let den = x.denom().mod_floor(&qq);
            if den.is_zero() {
                return true;
            }
            // evaluate homogeneously: Σ cᵢ numⁱ den^(n-i) ≡ 0
            let n = c.len() - 1;
            let mut acc = Integer::zero();
            let mut dp = Integer::one();
            let mut terms = vec![Integer::zero(); c.len()];
            for i in (0..=n).rev() {
                terms[i] = dp.clone();
                dp = (dp * &den).mod_floor(&qq);
            }
            let mut np = Integer::one();
            for (i, ci) in c.iter().enumerate() {
                acc = (acc + ci * &np * &terms[i]).mod_floor(&qq);
                np = (np * &num).mod_floor(&qq);
            }
            acc.is_zero()
        });
        if passes && g.eval(&x).is_zero() {
            out.push(x);
        }
    }
    out
}

/// All rational roots with multiplicity, sorted ascending.
///
/// Roots are found on the squarefree part by lifting the roots mod a good
/// prime past the bound on `lc·x`, then confirmed by exact evaluation.
pub fn rational_roots(f: &QX) -> Vec<Rational> {
    assert!(!f.is_zero(), "rational roots of the zero polynomial");
    if f.deg() < 1 {
        return Vec::new();
    }
    let prim = f.primitive_integer();
    let sqf = prim.squarefree_part();
    let mut out = Vec::new();
    for r in roots_squarefree(&sqf) {
        let lin = QX::new(vec![-r.numer().to_rational(), r.denom().to_rational()]);
        let mut rest = prim.clone();
        while let Ok(q) = rest.exact_div(&lin) {
            out.push(r.clone());
            rest = q;
        }
    }
    out.sort();
    out
}

trait IntoRational {
    fn to_rational(&self) -> Rational;
}

impl IntoRational for Integer {
    fn to_rational(&self) -> Rational {
        Rational::from_integer(self.clone())
    }
}

/// Distinct rational roots by candidate enumeration `±a/b` with `a | c₀`,
/// `b | lc`; `None` once more than `budget` candidates would be tested.
/// Kept as an independent cross-check of [`rational_roots`].
pub fn roots_by_divisors(f: &QX, budget: Option<usize>) -> Option<Vec<Rational>> {
    let mut f = f.primitive_integer();
    let mut out = Vec::new();
    if f.coeff(0).is_zero() {
        out.push(Rational::zero());
        while f.coeff(0).is_zero() {
            f = f.exact_div(&QX::x()).unwrap();
        }
    }
    if f.deg() < 1 {
        return Some(out);
    }
    let c0 = f.coeff(0).numer().abs();
    let lc = f.lc().numer().abs();
    let da = divisors(&c0)?;
    let db = divisors(&lc)?;
    if budget.is_some_and(|b| 2 * da.len() * db.len() > b) {
        return None;
    }
    for a in &da {
        for b in &db {
            if !a.gcd(b).is_one() {
                continue;
            }
            for s in [1, -1] {
                let x = Rational::new(a * s, b.clone());
                if f.eval(&x).is_zero() {
                    out.push(x);
                }
            }
        }
    }
    out.sort();
    Some(out)
}

/// Positive divisors by trial division; `None` if `n` has a prime factor
/// above 10⁷.
pub fn divisors(n: &Integer) -> Option<Vec<Integer>> {
    let mut n = n.abs();
    let mut primes: Vec<(Integer, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(10_000_000u64);
    while &p * &p <= n {
        if p > limit {
            return None;
        }
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut out = vec![Integer::one()];
    for (q, e) in primes {
        let mut next = Vec::new();
        for d in &out {
            let mut x = d.clone();
            for _ in 0..=e {
                next.push(x.clone());
                x *= &q;
            }
        }
        out = next;
    }
    out.sort();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn q(c: &[i64]) -> QX {
        QX::from_i64s(c)
    }

    #[test]
    fn examples() {
        assert_eq!(rational_roots(&q(&[6, -47, 41, 175])), vec![rat(2, 7)]);
        assert_eq!(rational_roots(&q(&[4, -2, -2, 3])), vec![]);
        assert_eq!(rational_roots(&q(&[-1, 0, 1])), vec![rat(-1, 1), rat(1, 1)]);
    }

    #[test]
    fn multiplicities() {
        let f = q(&[-1, 2]).pow(3).mul(&q(&[0, 1]).pow(2)).mul(&q(&[5, 0, 1]));
        assert_eq!(rational_roots(&f), vec![rat(0, 1), rat(0, 1), rat(1, 2), rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn oracle_agrees() {
        let f = q(&[6, -47, 41, 175]);
        assert_eq!(roots_by_divisors(&f, None).unwrap(), vec![rat(2, 7)]);
        assert_eq!(roots_by_divisors(&q(&[4, -2, -2, 3]), None).unwrap(), vec![]);
    }

    #[test]
    fn large_root() {
        let r = rat(-123456789, 1000003);
        let f = QX::new(vec![-r.clone(), rat(1, 1)]).mul(&q(&[7, 1, 0, 3]));
        assert_eq!(rational_roots(&f), vec![r]);
    }
}
