mod common;

use common::*;
use critcycle::arith::{rat, Rational};
use critcycle::curves::{build_dynatomic_curve, CurveFamily};
use critcycle::dynamics::{u_invariant_raw, OrbitStatus, Pt, RationalMap};
use critcycle::moduli::{family_map, FamilyId};
use critcycle::poly::{specialize, UniPoly, QX};
use critcycle::portraits::{portrait, FieldDesc, PortraitOptions};
use critcycle::ring::Ring;
use proptest::prelude::*;

fn mu(n: usize) -> i64 {
    let (mut n, mut k, mut out) = (n, 2, 1);
    while k * k <= n {
        if n % k == 0 {
            n /= k;
            if n % k == 0 {
                return 0;
            }
            out = -out;
        }
        k += 1;
    }
    if n > 1 {
        -out
    } else {
        out
    }
}

fn generic_degree(n: usize) -> i64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| mu(n / d) * ((1i64 << d) + 1)).sum()
}

fn same_up_to_scalar(a: &QX, b: &QX) -> bool {
    !a.is_zero() && !b.is_zero() && a.monic() == b.monic()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn dynatomic_product_is_the_fixed_point_polynomial(phi in quadratic_map(), n in 1usize..=4) {
        prop_assume!((1..=n).all(|d| !phi.infinity_has_period(d)));
        let mut prod = QX::one();
        for d in (1..=n).filter(|d| n % d == 0) {
            prod = prod.mul(&phi.dynatomic(d).unwrap().poly);
        }
        let it = phi.iterate(n);
        let fixed = UniPoly::x().mul(it.den()).sub(it.num());
        prop_assert!(same_up_to_scalar(&prod, &fixed));
    }

    #[test]
    fn u_invariant_is_a_conjugacy_invariant(phi in quadratic_map(), sigmas in prop::collection::vec(mobius(), 10), n in 1usize..=3) {
        let Ok(u) = phi.u_invariant(n) else { return Ok(()) };
        for s in &sigmas {
            let psi = phi.conjugate(s);
            if psi.degree() != 2 {
                continue;
            }
            if let Ok(v) = psi.u_invariant(n) {
                prop_assert_eq!(&v, &u);
            }
        }
        let phi_n = phi.dynatomic(n).unwrap().poly;
        let (dp, dq) = phi.derivative();
        for k in [rat(-3, 1), rat(7, 5)] {
            prop_assert_eq!(u_invariant_raw(&phi_n.scale(&k), &dp, &dq).unwrap(), u.clone());
        }
    }

    #[test]
    fn multiplier_is_the_derivative_of_the_iterate(seed in 0u64..1000) {
        let mut r = rng(seed);
        let c = admissible(&mut r, 30, |c| FamilyId::Period4.admits(c));
        let phi = family_map(FamilyId::Period4, &c).unwrap();
        let zero = Pt::Fin(rat(0, 1));
        let m = phi.multiplier(&zero, 4).unwrap();
        prop_assert_eq!(Some(m), phi.iterate(4).derivative_at(&rat(0, 1)));
        let one = Pt::Fin(rat(1, 1));
        prop_assert_eq!(phi.multiplier(&one, 4).unwrap(), phi.multiplier(&zero, 4).unwrap());
    }
}

#[test]
fn degree_formula_on_the_period4_family() {
    let mut r = rng(7);
    for _ in 0..3 {
        let c = admissible(&mut r, 20, |c| FamilyId::Period4.admits(c));
        let phi = family_map(FamilyId::Period4, &c).unwrap();
        for n in 1..=6 {
            assert_eq!(phi.dynatomic(n).unwrap().poly.deg() as i64, generic_degree(n), "n = {n}, c = {c}");
        }
    }
    let sym = FamilyId::Period4.symbolic();
    for n in 1..=3 {
        assert_eq!(sym.dynatomic(n).unwrap().poly.deg() as i64, generic_degree(n));
    }
}

#[test]
fn dynatomic_specialization_commutes() {
    let sym = FamilyId::Period4.symbolic();
    let fam = CurveFamily::from_family(FamilyId::Period4).unwrap();
    let mut r = rng(11);
    for n in 1..=3 {
        let generic = sym.dynatomic(n).unwrap().poly;
        let model = build_dynatomic_curve(&fam, n).unwrap();
        let mut tried = 0;
        while tried < 8 {
            let c = random_rational(&mut r, 40);
            if model.excludes(&c) {
                continue;
            }
            tried += 1;
            let lhs = specialize(&generic, &c).unwrap();
            let rhs = family_map(FamilyId::Period4, &c).unwrap().dynatomic(n).unwrap().poly;
            assert!(same_up_to_scalar(&lhs, &rhs), "n = {n}, c = {c}");
        }
    }
}

#[test]
fn periodic_vertices_are_dynatomic_roots() {
    let mut r = rng(3);
    for _ in 0..6 {
        let c = admissible(&mut r, 12, |c| FamilyId::Period4.admits(c));
        let phi: RationalMap<Rational> = family_map(FamilyId::Period4, &c).unwrap();
        let g = portrait(&phi, &FieldDesc::Rational, PortraitOptions::default()).unwrap();
        for v in &g.vertices {
            if let OrbitStatus::Periodic { n } = phi.orbit_type_default(v).status {
                if let Pt::Fin(x) = v {
                    assert!(phi.dynatomic(n).unwrap().poly.eval(x).is_zero(), "{v} at c = {c}");
                }
            }
        }
    }
}

#[test]
fn mobius_oracle() {
    let mus: Vec<i64> = (1..=10).map(mu).collect();
    assert_eq!(mus, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    assert_eq!(generic_degree(4), 12);
}
