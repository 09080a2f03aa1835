mod common;

use common::*;
use critcycle::arith::{rat, Rational};
use critcycle::dynamics::RationalMap;
use critcycle::moduli::{
    cn_parametrize, coordinates, curve_equation, family_map, fixed_point_multiplier_poly, symmetry_value,
    CurveEquation, FamilyId,
};
use critcycle::poly::UniPoly;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn golden_f4() -> CurveEquation {
    let v: serde_json::Value = serde_json::from_str(include_str!("../data/curve-F4.json")).unwrap();
    CurveEquation::from_json(&v).unwrap()
}

fn f64_of(q: &Rational) -> f64 {
    q.numer().to_f64().unwrap() / q.denom().to_f64().unwrap()
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

/// Roots by Durand-Kerner iteration.
fn complex_roots(c: &[Complex64]) -> Vec<Complex64> {
    let lc = *c.last().unwrap();
    let monic: Vec<Complex64> = c.iter().map(|a| a / lc).collect();
    let n = monic.len() - 1;
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..2000 {
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = horner(&monic, z[i]) / den;
            z[i] -= step;
        }
    }
    z
}

/// Elementary symmetric functions of the fixed-point multipliers, computed
/// in floating point from numerically located fixed points.
fn numeric_sigmas(phi: &RationalMap<Rational>) -> [Complex64; 3] {
    let cf = |p: &UniPoly<Rational>| -> Vec<Complex64> { p.coeffs().iter().map(|a| Complex64::new(f64_of(a), 0.0)).collect() };
    let (p, q) = (cf(phi.num()), cf(phi.den()));
    let dp: Vec<Complex64> = p.iter().enumerate().skip(1).map(|(i, a)| a * i as f64).collect();
    let dq: Vec<Complex64> = q.iter().enumerate().skip(1).map(|(i, a)| a * i as f64).collect();
    let fixed = cf(&UniPoly::x().mul(phi.den()).sub(phi.num()));
    let m: Vec<Complex64> = complex_roots(&fixed)
        .into_iter()
        .map(|z| {
            let (pz, qz) = (horner(&p, z), horner(&q, z));
            (horner(&dp, z) * qz - pz * horner(&dq, z)) / (qz * qz)
        })
        .collect();
    [m[0] + m[1] + m[2], m[0] * m[1] + m[0] * m[2] + m[1] * m[2], m[0] * m[1] * m[2]]
}

fn close(a: Complex64, b: &Rational) -> bool {
    let b = f64_of(b);
    (a.re - b).abs() <= 1e-6 * (1.0 + b.abs()) && a.im.abs() <= 1e-6 * (1.0 + b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn parametrizations_land_on_the_curves(v in small_rational()) {
        for (n, f) in [(2, curve_equation(2).unwrap()), (3, curve_equation(3).unwrap()), (4, golden_f4())] {
            if let Ok((r, s)) = cn_parametrize(n, &v) {
                prop_assert_eq!(f.eval(&r, &s), rat(0, 1));
            }
        }
    }

    #[test]
    fn sigma3_is_sigma1_minus_two(phi in quadratic_map()) {
        let chi = fixed_point_multiplier_poly(&phi).unwrap();
        let (s1, s2, s3) = (-chi.coeff(2), chi.coeff(1), -chi.coeff(0));
        let num = numeric_sigmas(&phi);
        prop_assert!(close(num[0], &s1) && close(num[1], &s2) && close(num[2], &s3), "{:?} vs {} {} {}", num, s1, s2, s3);
        prop_assert_eq!(s3, s1 - rat(2, 1));
    }

    #[test]
    fn coordinates_are_conjugacy_invariant(phi in quadratic_map(), s in mobius()) {
        let psi = phi.conjugate(&s);
        prop_assert_eq!(coordinates(&psi).unwrap(), coordinates(&phi).unwrap());
    }
}

#[test]
fn period4_members_lie_on_f4() {
    let f4 = golden_f4();
    let mut r = rng(4);
    for _ in 0..20 {
        let c = admissible(&mut r, 50, |c| FamilyId::Period4.admits(c));
        let (s1, s2) = coordinates(&family_map(FamilyId::Period4, &c).unwrap()).unwrap().pair();
        assert_eq!(f4.eval(&s1, &s2), rat(0, 1), "c = {c}");
    }
}

#[test]
fn symmetry_values_of_the_period2_families() {
    let mut r = rng(2);
    for _ in 0..20 {
        let c = admissible(&mut r, 60, |c| FamilyId::Period2Symmetric.admits(c));
        let (s1, s2) = coordinates(&family_map(FamilyId::Period2Symmetric, &c).unwrap()).unwrap().pair();
        assert_eq!(symmetry_value(&s1, &s2), rat(0, 1));
        let c = admissible(&mut r, 60, |c| FamilyId::Period2Trivial.admits(c));
        let (s1, s2) = coordinates(&family_map(FamilyId::Period2Trivial, &c).unwrap()).unwrap().pair();
        assert_eq!(symmetry_value(&s1, &s2), &c * &c);
    }
}

#[test]
fn numeric_oracle_on_a_known_map() {
    // 2/x² has three fixed points, each with multiplier -2
    let phi = RationalMap::new(UniPoly::from_i64s(&[2]), UniPoly::from_i64s(&[0, 0, 1])).unwrap();
    let s = numeric_sigmas(&phi);
    assert!(close(s[0], &rat(-6, 1)) && close(s[1], &rat(12, 1)) && close(s[2], &rat(-8, 1)));
}
