use std::collections::BTreeSet;

use num_integer::Integer as _;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::modp::{self, odd_primes, Fp};
use super::roots::{int_coeffs, inv_mod_int, symmetric};
use super::{rational_roots, UniPoly};
use crate::arith::{Integer, Rational};

type QX = UniPoly<Rational>;
type ZX = Vec<Integer>;

fn zx_trim(mut a: ZX) -> ZX {
    while a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
    a
}

fn zx_from_fp(a: &Fp) -> ZX {
    a.iter().map(|&x| Integer::from(x)).collect()
}

fn zx_mod(a: &[Integer], m: &Integer) -> ZX {
    zx_trim(a.iter().map(|x| x.mod_floor(m)).collect())
}

fn zx_mul(a: &[Integer], b: &[Integer]) -> ZX {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Integer::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zx_trim(out)
}

fn zx_to_fp(a: &[Integer], p: u64) -> Fp {
    let pb = Integer::from(p);
    let v: Fp = a.iter().map(|x| modp::reduce_int(&x.mod_floor(&pb), p)).collect();
    let mut v = v;
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Lifts `f ≡ g·h (mod p)` (g, h monic and coprime, f monic mod p^k) to a
/// factorization mod `p^k ≥ bound`, returning the lifted `g` and modulus.
fn hensel_lift(f: &[Integer], g: &Fp, h: &Fp, p: u64, bound: &Integer) -> (ZX, Integer) {
    let (_, s, t) = modp::ext_gcd(g, h, p);
    let pb = Integer::from(p);
    let mut modulus = pb.clone();
    while modulus <= *bound {
        modulus *= &pb;
    }
    let fm = zx_mod(f, &modulus);
    let mut gz = zx_from_fp(g);
    let mut hz = zx_from_fp(h);
    let mut pk = pb.clone();
    while pk < modulus {
        let next = &pk * &pb;
        let prod = zx_mul(&gz, &hz);
        let n = fm.len().max(prod.len());
        let e: ZX = (0..n)
            .map(|i| {
                let a = fm.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                ((a - b).mod_floor(&next) / &pk).mod_floor(&pb)
            })
            .collect();
        let e = zx_to_fp(&e, p);
        let dg = modp::rem(&modp::mul(&t, &e, p), g, p);
        let dh = modp::rem(&modp::mul(&s, &e, p), h, p);
        let add = |base: &ZX, d: &Fp| -> ZX {
            let n = base.len().max(d.len());
            zx_trim(
                (0..n)
                    .map(|i| {
                        let b = base.get(i).cloned().unwrap_or_default();
                        let x = Integer::from(d.get(i).copied().unwrap_or(0));
                        (b + x * &pk).mod_floor(&next)
                    })
                    .collect(),
            )
        };
        gz = add(&gz, &dg);
        hz = add(&hz, &dh);
        pk = next;
    }
    (gz, modulus)
}

/// Irreducible quadratic factors over Q (primitive integer, positive leading
/// coefficient) of a squarefree polynomial without rational roots.
///
/// Candidates are the irreducible quadratics mod a good prime and products of
/// two linear factors mod that prime; each is Hensel-lifted and trial-divided.
pub fn quadratic_factors(f: &QX) -> Vec<QX> {
    let mut f = f.primitive_integer();
    let mut found = Vec::new();
    if f.deg() < 2 {
        return found;
    }
    if f.deg() == 2 {
        return vec![f];
    }
    // prime minimizing the number of candidates
    let mut best: Option<(usize, u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in odd_primes().take(300) {
        let Ok(fs) = modp::factor_full(&f, p) else { continue };
        tried += 1;
        let lin = fs.iter().filter(|g| g.len() == 2).count();
        let quad = fs.iter().filter(|g| g.len() == 3).count();
        let cost = quad + lin * lin.saturating_sub(1) / 2;
        if best.as_ref().is_none_or(|b| cost < b.0) {
            best = Some((cost, p, fs));
        }
        if cost == 0 || tried >= 8 {
            break;
        }
    }
    let Some((_, p, fs)) = best else { return found };
    let mut cands: Vec<Fp> = fs.iter().filter(|g| g.len() == 3).cloned().collect();
    let lins: Vec<&Fp> = fs.iter().filter(|g| g.len() == 2).collect();
    for i in 0..lins.len() {
        for j in i + 1..lins.len() {
            cands.push(modp::mul(lins[i], lins[j], p));
        }
    }
    for g in cands {
        if f.deg() < 2 {
            break;
        }
        if f.deg() == 2 {
            found.push(f.clone());
            break;
        }
        let fc = int_coeffs(&f);
        let lc = fc.last().unwrap().clone();
        let Ok(img) = modp::good_image(&f, p) else { break };
        let (h, r) = modp::div_rem(&img, &g, p);
        if !r.is_empty() {
            continue;
        }
        // f/lc mod p^k, then lift
        let norm1: Integer = fc.iter().map(|x| x.abs()).sum();
        let bound: Integer = (norm1 * 4 + 1) * lc.abs() * 2;
        let mut modulus = Integer::from(p);
        while modulus <= bound {
            modulus *= Integer::from(p);
        }
        let inv = inv_mod_int(&lc, &modulus).expect("p does not divide lc");
        let fmon: ZX = fc.iter().map(|x| (x * &inv).mod_floor(&modulus)).collect();
        let (gl, m) = hensel_lift(&fmon, &g, &h, p, &bound);
        let cand: Vec<Rational> = gl.iter().map(|x| Rational::from_integer(symmetric(&(x * &lc), &m))).collect();
        let cand = QX::new(cand).primitive_integer();
        if cand.deg() != 2 {
            continue;
        }
        if let Ok(q) = f.exact_div(&cand) {
            found.push(cand);
            f = q.primitive_integer();
        }
    }
    found.sort_by(|a, b| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()));
    found
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Certification {
    /// Image mod `prime` is irreducible.
    Witness { prime: u64 },
    /// Degree patterns over these primes leave only the full degree as a
    /// possible factor degree.
    Patterns { primes: Vec<u64> },
    Inconclusive { patterns: Vec<(u64, Vec<usize>)> },
}

#[derive(Clone, Debug, Serialize)]
pub struct CertifiedFactor {
    #[serde(serialize_with = "ser_poly")]
    pub poly: QX,
    pub certification: Certification,
}

impl CertifiedFactor {
    pub fn irreducible(&self) -> bool {
        !matches!(self.certification, Certification::Inconclusive { .. })
    }

    pub fn witness_prime(&self) -> Option<u64> {
        match self.certification {
            Certification::Witness { prime } => Some(prime),
            _ => None,
        }
    }
}

fn ser_poly<S: serde::Serializer>(p: &QX, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// Factors found with their certificates; `unit · ∏ factors · cofactor`
/// equals the input.
#[derive(Clone, Debug, Serialize)]
pub struct FactorCertificate {
    pub factors: Vec<CertifiedFactor>,
    #[serde(serialize_with = "ser_poly")]
    pub cofactor: QX,
    #[serde(serialize_with = "ser_rational")]
    pub unit: Rational,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl FactorCertificate {
    pub fn all_certified(&self) -> bool {
        self.cofactor.deg() == 0 && self.factors.iter().all(|f| f.irreducible())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.factors.iter().map(|f| f.poly.deg() as usize).collect();
        d.sort_unstable();
        d
    }

    pub fn product(&self) -> QX {
        self.factors
            .iter()
            .fold(self.cofactor.scale(&self.unit), |acc, f| acc.mul(&f.poly))
    }
}

/// Subset sums of a degree multiset.
fn subset_sums(degs: &[usize]) -> BTreeSet<usize> {
    let mut s = BTreeSet::from([0usize]);
    for &d in degs {
        let next: Vec<usize> = s.iter().map(|x| x + d).collect();
        s.extend(next);
    }
    s
}

/// Tries to certify a single squarefree polynomial as irreducible.
pub fn certify(f: &QX) -> Certification {
    let n = f.deg() as usize;
    let mut patterns = Vec::new();
    let mut possible: BTreeSet<usize> = (0..=n).collect();
    let mut primes = Vec::new();
    for p in odd_primes().take(400) {
        let Ok(degs) = modp::factor_mod_p(f, p) else { continue };
        if degs.len() == 1 {
            return Certification::Witness { prime: p };
        }
        let sums = subset_sums(&degs);
        possible = possible.intersection(&sums).copied().collect();
        primes.push(p);
        patterns.push((p, degs));
        if primes.len() >= 10 && possible.len() == 2 {
            return Certification::Patterns { primes };
        }
        if primes.len() >= 60 {
            break;
        }
    }
    if possible.len() == 2 && primes.len() >= 10 {
        return Certification::Patterns { primes };
    }
    patterns.truncate(10);
    Certification::Inconclusive { patterns }
}

/// Splits off rational roots and quadratic factors, then certifies what
/// remains.
pub fn irreducibility_certificate(f: &QX) -> FactorCertificate {
    assert!(f.deg() >= 1, "certificate of a constant");
    let prim = f.primitive_integer();
    let unit = f.lc() / prim.lc();
    let mut rest = prim;
    let mut factors = Vec::new();
    let mut seen = Vec::new();
    for r in rational_roots(&rest) {
        if seen.contains(&r) {
            continue;
        }
        seen.push(r.clone());
        let lin = QX::new(vec![Rational::from_integer(-r.numer().clone()), Rational::from_integer(r.denom().clone())]);
        rest = rest.exact_div(&lin).expect("root divides").primitive_integer();
        factors.push(CertifiedFactor { certification: certify(&lin), poly: lin });
    }
    if rest.deg() >= 1 {
        let whole = certify(&rest);
        if matches!(whole, Certification::Inconclusive { .. }) {
            for q in quadratic_factors(&rest) {
                rest = rest.exact_div(&q).expect("quadratic divides").primitive_integer();
                factors.push(CertifiedFactor { certification: certify(&q), poly: q });
            }
            if rest.deg() >= 1 {
                let c = certify(&rest);
                factors.push(CertifiedFactor { poly: std::mem::replace(&mut rest, QX::one()), certification: c });
            }
        } else {
            factors.push(CertifiedFactor { poly: std::mem::replace(&mut rest, QX::one()), certification: whole });
        }
    }
    // leftover constant from primitive_integer bookkeeping
    let fprod = factors.iter().fold(QX::one(), |a, c| a.mul(&c.poly));
    let cof = f.exact_div(&fprod.scale(&unit)).unwrap_or(rest);
    FactorCertificate { factors, cofactor: cof, unit }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> QX {
        QX::from_i64s(c)
    }

    #[test]
    fn certificates() {
        let c = irreducibility_certificate(&q(&[3, 0, 1]));
        assert_eq!(c.factors.len(), 1);
        assert!(c.factors[0].witness_prime().is_some());
        let sext = q(&[43526, -5312, 3328, -1248, 259, -26, 1]);
        let c = irreducibility_certificate(&sext);
        assert_eq!(c.degrees(), vec![6]);
        let c = irreducibility_certificate(&q(&[-1, 1]).mul(&q(&[3, 0, 1])));
        assert_eq!(c.degrees(), vec![1, 2]);
        assert!(c.all_certified());
        assert_eq!(c.product(), q(&[-1, 1]).mul(&q(&[3, 0, 1])));
    }

    #[test]
    fn quadratic_extraction() {
        let a = q(&[3, 1, 1]);
        let b = q(&[-7, 0, 5]);
        let c = q(&[1, 1, 0, 0, 1]);
        let f = a.mul(&b).mul(&c);
        let found = quadratic_factors(&f);
        assert_eq!(found.len(), 2);
        assert!(found.contains(&a));
        assert!(found.contains(&b));
    }
}
