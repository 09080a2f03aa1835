//! Resultants and discriminants in `Q[t]`, computed modulo word-size
//! primes at evaluation nodes and lifted by Chinese remaindering.
//!
//! Both the `t`-degree (Sylvester row/column sums) and the coefficient size
//! (`‖det‖₁ ≤ ∏ row sums of ‖·‖₁`) are bounded in advance, so the result
//! is exact rather than probabilistic.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{Integer, Rational};
use crate::error::{Error, Result};
use crate::poly::modp::{inv_mod, is_prime, pow_mod, reduce_int};
use crate::poly::{QT, QTX};

fn tdeg(c: &QT) -> Option<usize> {
    c.degree()
}

/// Bound on `deg_t Res_x(a, b)` from the Sylvester matrix: the smaller of
/// the row-wise and column-wise sums of entry degrees.
pub fn resultant_degree_bound(a: &QTX, b: &QTX) -> usize {
    let (m, n) = (a.deg() as usize, b.deg() as usize);
    let max_deg = |p: &QTX| p.coeffs().iter().filter_map(tdeg).max().unwrap_or(0);
    let rows = n * max_deg(a) + m * max_deg(b);
    let mut cols = 0;
    for c in 0..m + n {
        let mut best: Option<usize> = None;
        for i in 0..n {
            if c >= i && c - i <= m {
                best = best.max(tdeg(&a.coeff(m - (c - i))));
            }
        }
        for i in 0..m {
            if c >= i && c - i <= n {
                best = best.max(tdeg(&b.coeff(n - (c - i))));
            }
        }
        cols += best.unwrap_or(0);
    }
    rows.min(cols)
}

type IntPoly2 = Vec<Vec<Integer>>;

/// `(L·p, L)` with `L·p` integral.
fn integral(p: &QTX) -> (IntPoly2, Integer) {
    let mut l = Integer::one();
    for c in p.coeffs() {
        for a in c.coeffs() {
            l = l.lcm(a.denom());
        }
    }
    let ints = p
        .coeffs()
        .iter()
        .map(|c| c.coeffs().iter().map(|a| (a * Rational::from_integer(l.clone())).to_integer()).collect())
        .collect();
    (ints, l)
}

fn norm1_bits(p: &IntPoly2) -> u64 {
    let s: Integer = p.iter().flatten().map(|a| a.abs()).sum();
    s.bits()
}

/// Primes below 2³¹, largest first.
fn primes() -> impl Iterator<Item = u64> {
    (1u64 << 30..1u64 << 31).rev().filter(|&n| n % 2 == 1 && is_prime(n))
}

fn horner(c: &[u64], t: u64, p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &a| (acc * t + a) % p)
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn rem_mod(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while a.len() > db && !a.is_empty() {
        let k = a.len() - 1;
        let q = a[k] * inv % p;
        if q != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let j = k - db + i;
                a[j] = (a[j] + p - q * bi % p) % p;
            }
        }
        a.pop();
        a = trim(a);
    }
    a
}

/// `Res(a, b)` over `F_p` by the Euclidean recurrence
/// `Res(a, b) = (-1)^{mn} lc(b)^{m - deg r} Res(b, r)` with `r = a mod b`.
fn res_mod(a: Vec<u64>, b: Vec<u64>, p: u64) -> u64 {
    let (mut a, mut b) = (trim(a), trim(b));
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut acc = 1u64;
    loop {
        let (m, n) = (a.len() - 1, b.len() - 1);
        if n == 0 {
            return acc * pow_mod(b[0], m as u64, p) % p;
        }
        let r = rem_mod(a.clone(), &b, p);
        if r.is_empty() {
            return 0;
        }
        if (m * n) % 2 == 1 {
            acc = (p - acc) % p;
        }
        acc = acc * pow_mod(b[n], (m - (r.len() - 1)) as u64, p) % p;
        a = std::mem::replace(&mut b, r);
    }
}

/// Newton interpolation over `F_p`, returned in the monomial basis.
fn interpolate_mod(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let d = (xs[i] + p - xs[i - j]) % p;
            c[i] = (c[i] + p - c[i - 1]) % p * inv_mod(d, p) % p;
        }
    }
    let mut out = vec![0u64; n];
    for i in (0..n).rev() {
        // out = out·(t - xs[i]) + c[i]
        for k in (1..n).rev() {
            out[k] = (out[k - 1] + p - out[k] * xs[i] % p) % p;
        }
        out[0] = (p - out[0] * xs[i] % p + c[i]) % p;
    }
    out
}

/// Image of `Res_x(a, b)` in `F_p[t]`, or `None` when `p` kills a leading
/// coefficient.
fn image(a: &IntPoly2, b: &IntPoly2, bound: usize, p: u64) -> Option<Vec<u64>> {
    let red = |q: &IntPoly2| -> Vec<Vec<u64>> { q.iter().map(|c| trim(c.iter().map(|x| reduce_int(x, p)).collect())).collect() };
    let (ap, bp) = (red(a), red(b));
    let (la, lb) = (ap.last()?, bp.last()?);
    if la.is_empty() || lb.is_empty() {
        return None;
    }
    let mut xs = Vec::with_capacity(bound + 1);
    let mut ys = Vec::with_capacity(bound + 1);
    for t in 0..p {
        if xs.len() > bound {
            break;
        }
        if horner(la, t, p) == 0 || horner(lb, t, p) == 0 {
            continue;
        }
        let sa: Vec<u64> = ap.iter().map(|c| horner(c, t, p)).collect();
        let sb: Vec<u64> = bp.iter().map(|c| horner(c, t, p)).collect();
        xs.push(t);
        ys.push(res_mod(sa, sb, p));
    }
    (xs.len() > bound).then(|| interpolate_mod(&xs, &ys, p))
}

fn symmetric(x: &Integer, m: &Integer) -> Integer {
    let half: Integer = m >> 1;
    if x > &half {
        x - m
    } else {
        x.clone()
    }
}

/// `Res_x(a, b)` for integral `a, b`, as integer coefficients in `t`.
fn int_resultant(a: &IntPoly2, b: &IntPoly2, bound: usize) -> Result<Vec<Integer>> {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let need = n as u64 * norm1_bits(a) + m as u64 * norm1_bits(b) + 2;
    let mut modulus = Integer::one();
    let mut acc: Vec<Integer> = vec![Integer::zero(); bound + 1];
    let mut it = primes();
    while modulus.bits() <= need {
        let batch: Vec<u64> = it.by_ref().take(rayon::current_num_threads().max(4)).collect();
        if batch.is_empty() {
            return Err(Error::Budget("ran out of 31-bit primes".into()));
        }
        let images: Vec<(u64, Vec<u64>)> =
            batch.par_iter().filter_map(|&p| image(a, b, bound, p).map(|img| (p, img))).collect();
        for (p, img) in images {
            // x ≡ acc (mod M), x ≡ img (mod p)
            let pm = Integer::from(p);
            let minv = inv_mod(reduce_int(&modulus, p), p);
            for (c, &r) in acc.iter_mut().zip(&img) {
                let cur = reduce_int(c, p);
                let k = (r + p - cur) % p * minv % p;
                *c += &modulus * Integer::from(k);
            }
            modulus *= pm;
        }
    }
    Ok(acc.iter().map(|c| symmetric(c, &modulus)).collect())
}

fn to_qt(c: &[Integer]) -> QT {
    QT::new(c.iter().map(|a| Rational::from_integer(a.clone())).collect())
}

/// `Res_x(a, b)` in `Q[t]`.
pub fn qtx_resultant(a: &QTX, b: &QTX) -> Result<QT> {
    if a.is_zero() || b.is_zero() {
        return Ok(QT::zero());
    }
    let (m, n) = (a.deg() as u32, b.deg() as u32);
    let (ai, la) = integral(a);
    let (bi, lb) = integral(b);
    let r = to_qt(&int_resultant(&ai, &bi, resultant_degree_bound(a, b))?);
    let scale = Rational::new(Integer::one(), la.pow(n) * lb.pow(m));
    Ok(r.scale(&scale))
}

/// Discriminant in `x` as an element of `Q[t]`, with the sign convention of
/// [`crate::poly::UniPoly::discriminant`].
pub fn qtx_discriminant(f: &QTX) -> Result<QT> {
    if f.deg() < 1 {
        return Err(Error::Precondition("discriminant of a polynomial constant in x".into()));
    }
    let n = f.deg() as usize;
    let r = qtx_resultant(f, &f.derivative())?;
    let d = r.exact_div(&f.lc())?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { d.neg() } else { d })
}
