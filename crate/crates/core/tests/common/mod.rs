#![allow(dead_code)]

use critcycle::arith::{rat, Rational};
use critcycle::dynamics::{Mobius, RationalMap};
use critcycle::poly::{UniPoly, QX};
use proptest::prelude::*;
use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |q| *q != rat(0, 1))
}

pub fn small_poly(max_deg: usize) -> impl Strategy<Value = QX> {
    prop::collection::vec(small_rational(), 1..=max_deg + 1).prop_map(UniPoly::new)
}

/// Degree-2 map over Q with `deg q = 2`, so `∞` is not fixed.
pub fn quadratic_map() -> impl Strategy<Value = RationalMap<Rational>> {
    (prop::collection::vec(small_rational(), 3), prop::collection::vec(small_rational(), 2), nonzero_rational())
        .prop_filter_map("degenerate", |(p, q, lq)| {
            let den = UniPoly::new(vec![q[0].clone(), q[1].clone(), lq]);
            let m = RationalMap::new(UniPoly::new(p), den).ok()?;
            (m.degree() == 2 && m.den().deg() == 2).then_some(m)
        })
}

pub fn mobius() -> impl Strategy<Value = Mobius<Rational>> {
    (small_rational(), small_rational(), small_rational(), small_rational())
        .prop_filter_map("singular", |(a, b, c, d)| Mobius::new(a, b, c, d).ok())
}

pub fn random_rational(r: &mut ChaCha8Rng, h: i64) -> Rational {
    rat(r.gen_range(-h..=h), r.gen_range(1..=h))
}

/// Admissible parameters for a family, drawn uniformly by height.
pub fn admissible(r: &mut ChaCha8Rng, h: i64, ok: impl Fn(&Rational) -> bool) -> Rational {
    loop {
        let c = random_rational(r, h);
        if ok(&c) {
            return c;
        }
    }
}
