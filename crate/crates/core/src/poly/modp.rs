//! Dense polynomials over a prime field `F_p` with `p < 2³¹`.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::UniPoly;
use crate::arith::Rational;
use crate::error::{Error, Result};

pub type Fp = Vec<u64>;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes from 3 upward.
pub fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| is_prime(n))
}

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn reduce_int(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

/// Image of a rational polynomial, or `None` if `p` divides a denominator.
pub fn reduce(f: &UniPoly<Rational>, p: u64) -> Option<Fp> {
    let mut out = Vec::with_capacity(f.coeffs().len());
    for c in f.coeffs() {
        let d = reduce_int(c.denom(), p);
        if d == 0 {
            return None;
        }
        out.push(reduce_int(c.numer(), p) * inv_mod(d, p) % p);
    }
    Some(trim(out))
}

pub fn deg(a: &Fp) -> isize {
    a.len() as isize - 1
}

pub fn add(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p).collect())
}

pub fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect())
}

pub fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub fn scale(a: &Fp, c: u64, p: u64) -> Fp {
    trim(a.iter().map(|&x| x * c % p).collect())
}

pub fn monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        Some(&l) => scale(a, inv_mod(l, p), p),
        None => Vec::new(),
    }
}

pub fn div_rem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let inv = inv_mod(*b.last().unwrap(), p);
    let db = b.len() - 1;
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * inv % p;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * bj % p) % p;
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    div_rem(a, b, p).1
}

pub fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `(g, s, t)` with `s·a + t·b = g` monic.
pub fn ext_gcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = inv_mod(*r0.last().unwrap(), p);
    (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
}

pub fn derivative(a: &Fp, p: u64) -> Fp {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
}

pub fn eval(a: &Fp, x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// `base^e mod m`.
pub fn pow_rem(base: &Fp, mut e: u128, m: &Fp, p: u64) -> Fp {
    let mut acc = vec![1u64];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        e >>= 1;
        if e > 0 {
            b = rem(&mul(&b, &b, p), m, p);
        }
    }
    acc
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs `(d, product of all irreducible factors of degree d)`.
pub fn ddf(f: &Fp, p: u64) -> Vec<(usize, Fp)> {
    let mut out = Vec::new();
    let mut f = monic(f, p);
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 0usize;
    while deg(&f) >= 2 * (d as isize + 1) {
        d += 1;
        h = pow_rem(&h, p as u128, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        if deg(&g) > 0 {
            out.push((d, g.clone()));
            f = div_rem(&f, &g, p).0;
            h = rem(&h, &f, p);
        }
    }
    if deg(&f) > 0 {
        out.push((deg(&f) as usize, f));
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus) of a product of degree-`d`
/// irreducibles, `p` odd. Deterministic given the seed.
pub fn edf(f: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let n = deg(f) as usize;
    if n == d {
        return vec![monic(f, p)];
    }
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&a) < 1 {
            continue;
        }
        let g = gcd(&a, f, p);
        let split = if deg(&g) > 0 {
            g
        } else {
            // a^((p^d - 1)/2) = (a · a^p · … · a^(p^(d-1)))^((p-1)/2)
            let mut frob = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                frob = pow_rem(&frob, p as u128, f, p);
                norm = rem(&mul(&norm, &frob, p), f, p);
            }
            let b = pow_rem(&norm, ((p - 1) / 2) as u128, f, p);
            gcd(&sub(&b, &vec![1], p), f, p)
        };
        if deg(&split) > 0 && deg(&split) < n as isize {
            let other = div_rem(f, &split, p).0;
            let mut out = edf(&split, d, p, rng);
            out.extend(edf(&other, d, p, rng));
            return out;
        }
    }
}

/// Checks the preconditions of modular factorization and returns the monic image.
pub fn good_image(f: &UniPoly<Rational>, p: u64) -> Result<Fp> {
    if p < 3 || !is_prime(p) {
        return Err(Error::BadPrime(p, "not an odd prime".into()));
    }
    let img = reduce(f, p).ok_or_else(|| Error::BadPrime(p, "divides a denominator".into()))?;
    if deg(&img) != f.deg() {
        return Err(Error::BadPrime(p, "divides the leading coefficient".into()));
    }
    let img = monic(&img, p);
    if deg(&gcd(&img, &derivative(&img, p), p)) > 0 {
        return Err(Error::BadPrime(p, "image is not squarefree".into()));
    }
    Ok(img)
}

/// Monic irreducible factors of the image of `f` mod `p`.
pub fn factor_full(f: &UniPoly<Rational>, p: u64) -> Result<Vec<Fp>> {
    let img = good_image(f, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let mut out = Vec::new();
    for (d, g) in ddf(&img, p) {
        out.extend(edf(&g, d, p, &mut rng));
    }
    out.sort_by_key(|g| (g.len(), g.clone()));
    Ok(out)
}

/// Degree multiset of the factorization of `f` mod `p`, sorted ascending.
pub fn factor_mod_p(f: &UniPoly<Rational>, p: u64) -> Result<Vec<usize>> {
    let img = good_image(f, p)?;
    let mut degs = Vec::new();
    for (d, g) in ddf(&img, p) {
        for _ in 0..(deg(&g) as usize / d) {
            degs.push(d);
        }
    }
    degs.sort_unstable();
    Ok(degs)
}

/// Roots in `F_p` of a nonzero polynomial, ascending, without multiplicity.
pub fn roots(f: &Fp, p: u64) -> Vec<u64> {
    if f.is_empty() {
        return Vec::new();
    }
    let f = monic(f, p);
    let xp = pow_rem(&vec![0, 1], p as u128, &f, p);
    let g = gcd(&f, &sub(&xp, &vec![0, 1], p), p);
    if deg(&g) <= 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ 0x5eed);
    let mut out: Vec<u64> = if p == 2 {
        (0..2).filter(|&x| eval(&g, x, 2) == 0).collect()
    } else {
        edf(&g, 1, p, &mut rng).into_iter().map(|l| (p - l[0]) % p).collect()
    };
    out.sort_unstable();
    out
}

pub fn is_zero_poly(a: &Fp) -> bool {
    a.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> UniPoly<Rational> {
        UniPoly::from_i64s(c)
    }

    #[test]
    fn small_examples() {
        assert_eq!(factor_mod_p(&q(&[1, 0, 1]), 3).unwrap(), vec![2]);
        assert_eq!(factor_mod_p(&q(&[1, 0, 1]), 5).unwrap(), vec![1, 1]);
        assert!(matches!(factor_mod_p(&q(&[1, 0, 3]), 3), Err(Error::BadPrime(..))));
        assert!(matches!(factor_mod_p(&q(&[1, 2, 1]), 7), Err(Error::BadPrime(..))));
    }

    #[test]
    fn quartic_has_witness_prime_below_200() {
        let f = q(&[512, -320, 112, -16, 1]);
        let found = odd_primes()
            .take_while(|&p| p < 200)
            .any(|p| factor_mod_p(&f, p).map(|d| d == vec![4]).unwrap_or(false));
        assert!(found);
    }

    #[test]
    fn roots_match_brute_force() {
        let f = q(&[6, -47, 41, 175]);
        for p in odd_primes().take(25) {
            let Some(img) = reduce(&f, p) else { continue };
            if img.is_empty() {
                continue;
            }
            let brute: Vec<u64> = (0..p).filter(|&x| eval(&img, x, p) == 0).collect();
            assert_eq!(roots(&img, p), brute, "p = {p}");
        }
    }

    #[test]
    fn full_factorization_multiplies_back() {
        let f = q(&[43526, -5312, 3328, -1248, 259, -26, 1]);
        for p in odd_primes().take(30) {
            if let Ok(fs) = factor_full(&f, p) {
                let prod = fs.iter().fold(vec![1u64], |a, g| mul(&a, g, p));
                assert_eq!(prod, monic(&reduce(&f, p).unwrap(), p));
            }
        }
    }
}
