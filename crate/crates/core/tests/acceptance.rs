//! End-to-end acceptance checks, one test per criterion. Each prints a
//! single `criterion N: PASS|FAIL` line before asserting.

mod common;

use std::collections::BTreeSet;
use std::process::Command;

use common::*;
use critcycle::arith::{rat, squarefree_part, Integer, Rational};
use critcycle::cli::parse_expr;
use critcycle::curves::{build_named_curve, fiber_product, CurveFamily, PlaneCurveModel};
use critcycle::dynamics::{dynatomic_raw, gen_dynatomic_raw, root_image_product, Mobius, Pt, RationalMap};
use critcycle::moduli::{
    classify_psi_portrait, cn_parametrize, coordinates, curve_equation, family_map, fixed_point_multiplier_poly,
    intersect_symmetry, psi_engine_portrait, symmetry_value, FamilyId,
};
use critcycle::poly::bivariate::specialize_qtx;
use critcycle::poly::{factor_mod_p, rational_roots, specialize, UniPoly, QT, QX, QTX};
use critcycle::portraits::{census, census_parameters, classify, portrait, CensusOptions, FieldDesc, PortraitOptions};
use rand::Rng as _;
use rand_chacha::ChaCha8Rng;

fn verdict(n: usize, ok: bool, detail: &str) {
    println!("criterion {n}: {} - {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n}: {detail}");
}

fn zero() -> Rational {
    rat(0, 1)
}

fn cli(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_critcycle"))
        .args(args)
        .env_remove("CRITCYCLE_CACHE")
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn random_map(r: &mut ChaCha8Rng) -> RationalMap<Rational> {
    loop {
        let p = UniPoly::new((0..3).map(|_| random_rational(r, 9)).collect());
        let q = UniPoly::new(vec![random_rational(r, 9), random_rational(r, 9), admissible(r, 9, |c| *c != zero())]);
        if let Ok(m) = RationalMap::new(p, q) {
            if m.degree() == 2 && m.den().deg() == 2 {
                return m;
            }
        }
    }
}

fn random_mobius(r: &mut ChaCha8Rng) -> Mobius<Rational> {
    loop {
        let v: Vec<Rational> = (0..4).map(|_| random_rational(r, 7)).collect();
        if let Ok(s) = Mobius::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()) {
            return s;
        }
    }
}

fn same_up_to_scalar(a: &QX, b: &QX) -> bool {
    !a.is_zero() && !b.is_zero() && a.monic() == b.monic()
}

/// A polynomial in `x` printed by the library, read back over Q.
fn read_poly(s: &str) -> QX {
    let f = parse_expr(&s.replace('x', "t")).unwrap().to_ratfunc().unwrap();
    assert_eq!(f.den().deg(), 0);
    f.num().scale(&f.den().coeff(0).recip())
}

#[test]
fn criterion_01_curve_equations() {
    let mut bad = Vec::new();
    let expect = [
        ("1", "r - 2"),
        ("2", "2r + s"),
        ("3", "2r^3 + 5r^2s - r^2 + 4rs^2 - 2rs + 12r + s^3 + 28"),
    ];
    for (n, f) in expect {
        let got = cli(&["curve-eq", "-n", n]);
        if got != f {
            bad.push(format!("F{n} = {got}"));
        }
    }
    let f4 = cli(&["curve-eq", "-n", "4"]);
    if !(f4.starts_with("2r^5 + 4r^4s^2 - 3r^4s + ") && f4.ends_with(" + 60s^3 - 48s^2 + 96s + 304")) {
        bad.push(format!("F4 = {f4}"));
    }
    verdict(1, bad.is_empty(), &if bad.is_empty() { "F1..F3 exact, F4 extreme monomials exact".into() } else { bad.join("; ") });
}

#[test]
fn criterion_02_parametrization_identities() {
    let (f3, f4) = (curve_equation(3).unwrap(), curve_equation(4).unwrap());
    let mut r = rng(102);
    let mut bad = Vec::new();
    for _ in 0..50 {
        let v = admissible(&mut r, 40, |v| cn_parametrize(3, v).is_ok() && cn_parametrize(4, v).is_ok());
        let (e, rho) = cn_parametrize(3, &v).unwrap();
        let (eta, kappa) = cn_parametrize(4, &v).unwrap();
        if f3.eval(&e, &rho) != zero() || f4.eval(&eta, &kappa) != zero() {
            bad.push(v.to_string());
        }
    }
    verdict(2, bad.is_empty(), &format!("50 parameters, failures {bad:?}"));
}

#[test]
fn criterion_03_moduli_coordinates() {
    let x2 = UniPoly::from_i64s(&[0, 0, 1]);
    let inv_sq = RationalMap::new(UniPoly::from_i64s(&[1]), x2.clone()).unwrap();
    let mut ok = coordinates(&inv_sq).unwrap().pair() == (rat(-6, 1), rat(12, 1));
    let mut r = rng(103);
    for _ in 0..20 {
        let c = admissible(&mut r, 60, |c| *c != zero());
        let m = RationalMap::new(UniPoly::new(vec![-c.clone(), c.clone()]), x2.clone()).unwrap();
        let (s1, s2) = coordinates(&m).unwrap().pair();
        ok &= (s1.clone(), s2.clone()) == (&c - rat(6, 1), rat(12, 1) - &c * rat(2, 1));
        ok &= symmetry_value(&s1, &s2) == &c * &c;
        let c = admissible(&mut r, 60, |c| FamilyId::Period2Symmetric.admits(c));
        let psi = family_map(FamilyId::Period2Symmetric, &c).unwrap();
        ok &= coordinates(&psi).unwrap().pair() == (rat(-6, 1), rat(12, 1));
    }
    verdict(3, ok, "1/x^2, c(x-1)/x^2 and psi_c at 20 parameters each");
}

#[test]
fn criterion_04_symmetry_intersections() {
    let mut notes = Vec::new();
    let x2 = intersect_symmetry(2).unwrap();
    let ok2 = x2.point_count == 1 && x2.rational_points == vec![("-6".to_string(), "12".to_string())];
    notes.push(format!("X2 {}", if ok2 { "ok" } else { "wrong" }));

    let x3 = intersect_symmetry(3).unwrap();
    let ok3 = x3.point_count == 4
        && x3.certified
        && x3.components.len() == 1
        && x3.components[0].s_poly.as_deref().map(read_poly) == Some(UniPoly::from_i64s(&[512, -320, 112, -16, 1]));
    notes.push(format!("X3 {}", if ok3 { "ok" } else { "wrong" }));

    let x4 = intersect_symmetry(4).unwrap();
    let quad_ok = x4.components.iter().any(|c| {
        let r = read_poly(&c.r_poly);
        c.degree == 2 && c.points == 2 && {
            let d = r.discriminant();
            d.denom() == &Integer::from(1) && squarefree_part(d.numer()) == Integer::from(-3)
        }
    });
    let split_ok = x4.point_count == 8 && x4.certified && x4.degrees() == vec![2, 2, 6, 6, 6, 6, 6, 6] && quad_ok;
    notes.push(format!("X4 split 2 over Q(sqrt(-3)) + 6 sextic: {}", if split_ok { "ok" } else { "wrong" }));

    let quoted = UniPoly::from_i64s(&[43526, -5312, 3328, -1248, 259, -26, 1]);
    let sextic = x4.components.iter().find(|c| c.degree == 6).and_then(|c| c.s_poly.as_deref()).map(read_poly);
    let sextic_ok = match &sextic {
        None => {
            notes.push("no sextic component".into());
            false
        }
        Some(s) if *s == quoted => true,
        Some(s) => {
            // distinct splitting types at a prime good for both prove the
            // stem fields are not isomorphic
            let witness = (3u64..200)
                .filter(|&p| (2..p).all(|d| p % d != 0))
                .find_map(|p| match (factor_mod_p(s, p), factor_mod_p(&quoted, p)) {
                    (Ok(a), Ok(b)) if a != b => Some((p, a, b)),
                    _ => None,
                });
            match witness {
                Some((p, a, b)) => {
                    notes.push(format!("computed sextic {} differs from the quoted one; mod {p} degrees {a:?} vs {b:?}", s.fmt_var("x")));
                    false
                }
                None => {
                    notes.push("sextics differ but agree in splitting type below 200".into());
                    false
                }
            }
        }
    };
    let detail = notes.join("; ");
    verdict(4, ok2 && ok3 && split_ok && sextic_ok, &detail);
}

#[test]
fn criterion_05_portrait_census() {
    let report = census(&CensusOptions::new(FamilyId::Period4, 50)).unwrap();
    let allowed: BTreeSet<&str> = ["I1", "I2", "I3", "F1", "F2"].into();
    let classes: Vec<&String> = report.classes.keys().collect();
    let in_catalog = classes.iter().all(|c| allowed.contains(c.as_str()));
    let f1 = report.classes.get("F1").cloned().unwrap_or_default();
    let f2 = report.classes.get("F2").cloned().unwrap_or_default();
    let ok = in_catalog && report.failures.is_empty() && report.novel.is_empty() && f1 == ["1/6"] && f2 == ["5/2"];
    let counts: Vec<String> = report.classes.iter().map(|(k, v)| format!("{k}:{}", v.len())).collect();
    verdict(5, ok, &format!("{} parameters, {}, F1 at {f1:?}, F2 at {f2:?}", report.parameters, counts.join(" ")));
}

#[test]
fn criterion_06_period4_representatives() {
    let cases: [(&str, i64, i64, usize, &[usize]); 5] =
        [("2", 2, 1, 7, &[4]), ("-11/3", -11, 3, 9, &[4]), ("3/2", 3, 2, 11, &[4, 2]), ("1/6", 1, 6, 9, &[4, 1]), ("5/2", 5, 2, 13, &[4, 2])];
    let mut bad = Vec::new();
    for (name, a, b, verts, cycles) in cases {
        let phi = family_map(FamilyId::Period4, &rat(a, b)).unwrap();
        let g = portrait(&phi, &FieldDesc::Rational, PortraitOptions::default()).unwrap();
        let class = g.class();
        if class.vertices != verts || class.edges != verts || class.cycle_lengths != cycles {
            bad.push(format!("c = {name}: {} vertices, cycles {:?}", class.vertices, class.cycle_lengths));
        }
    }
    verdict(6, bad.is_empty(), &if bad.is_empty() { "all five representatives".into() } else { bad.join("; ") });
}

#[test]
fn criterion_07_orbit_structure() {
    let one = rat(1, 1);
    let mut r = rng(107);
    let mut ok = true;
    for _ in 0..20 {
        let c = admissible(&mut r, 50, |c| FamilyId::Period4.admits(c));
        let phi = family_map(FamilyId::Period4, &c).unwrap();
        let c2 = &c * &c;
        let c3 = &c2 * &c;
        // written out from the defining cycle 0 -> 1 -> c -> B -> 0
        let own = |x: &Rational| -> Pt<Rational> {
            let num = (&c + &c2 - &c3) * x - &c2;
            let den = (&c3 - &c2 - &c + &one) * x * x - (&c3 - &c2 - &c) * x - &c2;
            if den == zero() {
                Pt::Inf
            } else {
                Pt::Fin(num / den)
            }
        };
        let a = &one / (&one - &c);
        let b = -&c / (&c2 - &c - &one);
        let q = &c / (&one - &c2);
        let f = |x: &Rational| phi.eval(&Pt::Fin(x.clone()));
        ok &= f(&zero()) == Pt::Fin(one.clone())
            && f(&one) == Pt::Fin(c.clone())
            && f(&c) == Pt::Fin(b.clone())
            && f(&b) == Pt::Fin(zero());
        ok &= phi.eval(&Pt::Inf) == Pt::Fin(zero()) && f(&a) == Pt::Fin(b.clone()) && f(&q) == Pt::Fin(c.clone());
        for x in [rat(2, 7), rat(-5, 3), rat(11, 1)] {
            ok &= own(&x) == f(&x);
        }
    }
    verdict(7, ok, "0 -> 1 -> c -> B -> 0 and inf, A, Q -> 0, B, c at 20 parameters");
}

#[test]
fn criterion_08_psi_portraits() {
    let mut bad = Vec::new();
    for (c, class, verts) in [(rat(9, 2), "P1", 2), (rat(81, 8), "P2", 4), (rat(2, 1), "P3", 6), (rat(400, 343), "P4", 8)] {
        match classify_psi_portrait(&c) {
            Ok(rep) if rep.class == class && rep.vertices.len() == verts => {}
            Ok(rep) => bad.push(format!("c = {c}: {} with {} vertices", rep.class, rep.vertices.len())),
            Err(e) => bad.push(format!("c = {c}: {e}")),
        }
    }
    let params = census_parameters(FamilyId::Period2Symmetric, 30);
    for c in &params {
        let engine = psi_engine_portrait(c).unwrap();
        match classify_psi_portrait(c) {
            Ok(rep) if rep.engine_vertices == rep.vertices.len() && classify(&engine) == rep.class => {}
            Ok(rep) => bad.push(format!("c = {c}: {} vs engine {}", rep.class, classify(&engine))),
            Err(e) => bad.push(format!("c = {c}: {e}")),
        }
    }
    verdict(8, bad.is_empty(), &format!("representatives and {} parameters with H <= 30; {bad:?}", params.len()));
}

#[test]
fn criterion_09_property_suites() {
    let mut r = rng(109);
    let mut bad = Vec::new();

    for _ in 0..10 {
        let phi = random_map(&mut r);
        let sigmas: Vec<Mobius<Rational>> = (0..10).map(|_| random_mobius(&mut r)).collect();
        for n in 1..=3 {
            let Ok(u) = phi.u_invariant(n) else { continue };
            for s in &sigmas {
                if phi.conjugate(s).u_invariant(n).is_ok_and(|v| v != u) {
                    bad.push(format!("U_{n} of {phi}"));
                }
            }
        }
    }

    let mut maps = 0;
    while maps < 10 {
        let phi = random_map(&mut r);
        if (1..=4).any(|d| phi.infinity_has_period(d)) {
            continue;
        }
        maps += 1;
        for n in 1..=4 {
            let mut prod = QX::one();
            for d in (1..=n).filter(|d| n % d == 0) {
                prod = prod.mul(&phi.dynatomic(d).unwrap().poly);
            }
            let it = phi.iterate(n);
            if !same_up_to_scalar(&prod, &UniPoly::x().mul(it.den()).sub(it.num())) {
                bad.push(format!("product of Phi_d, n = {n}, {phi}"));
            }
        }
    }

    let sym = FamilyId::Period4.symbolic();
    let fam = CurveFamily::from_family(FamilyId::Period4).unwrap();
    let mut samples = 0;
    for n in 1..=3 {
        let generic = sym.dynatomic(n).unwrap().poly;
        let model = build_named_curve(&fam, &format!("Y1({n})")).unwrap();
        let mut k = 0;
        while k < 7 && samples < 20 {
            let c = random_rational(&mut r, 40);
            if model.bad.contains(&c) || model.exceptional.contains(&c) {
                continue;
            }
            k += 1;
            samples += 1;
            let lhs = specialize(&generic, &c).unwrap();
            let rhs = family_map(FamilyId::Period4, &c).unwrap().dynatomic(n).unwrap().poly;
            if !same_up_to_scalar(&lhs, &rhs) {
                bad.push(format!("specialization of Phi_{n} at {c}"));
            }
        }
    }

    let mut instances = 0;
    while instances < 10 {
        let roots: Vec<Rational> = (0..r.gen_range(2..=4)).map(|_| random_rational(&mut r, 6)).collect();
        let q = UniPoly::new((0..r.gen_range(1..=3)).map(|_| random_rational(&mut r, 6)).collect());
        let h = UniPoly::new((0..r.gen_range(1..=3)).map(|_| random_rational(&mut r, 6)).collect());
        if h.is_zero() || roots.iter().any(|b| h.eval(b) == zero()) {
            continue;
        }
        instances += 1;
        let lead = admissible(&mut r, 5, |c| *c != zero());
        let mut p = UniPoly::constant(lead);
        let mut direct = QX::one();
        for b in &roots {
            p = p.mul(&UniPoly::new(vec![-b.clone(), rat(1, 1)]));
            direct = direct.mul(&UniPoly::new(vec![-(q.eval(b) / h.eval(b)), rat(1, 1)]));
        }
        if root_image_product(&p, &q, &h).unwrap() != direct {
            bad.push(format!("product formula at roots {roots:?}"));
        }
    }

    for _ in 0..50 {
        let phi = random_map(&mut r);
        let chi = fixed_point_multiplier_poly(&phi).unwrap();
        if -chi.coeff(0) != -chi.coeff(2) - rat(2, 1) {
            bad.push(format!("sigma relation for {phi}"));
        }
    }
    verdict(9, bad.is_empty(), &format!("U_n, Phi_d product, {samples} specializations, product formula, sigma relation; {bad:?}"));
}

/// `f(t0, x0) = 0` for the function a curve is built from.
type Defining = Box<dyn Fn(&Rational, &Rational) -> bool>;

fn dynatomic_defining(fam: &CurveFamily, m: usize, n: usize) -> (QTX, Defining) {
    let pairs = fam.pairs(m.max(n));
    let phi_n = dynatomic_raw(&pairs, n).unwrap();
    let f = if m == 0 { phi_n } else { gen_dynatomic_raw(&phi_n, &pairs, m).unwrap() };
    let g = f.clone();
    (f, Box::new(move |t, x| specialize_qtx(&g, t).eval(x) == zero()))
}

fn preimage_defining(point: &'static str) -> Defining {
    Box::new(move |t, x| {
        let phi = family_map(FamilyId::Period4, t).unwrap();
        let one = rat(1, 1);
        let target = match point {
            "1" => Pt::Fin(one),
            "A" => Pt::Fin(&one / (&one - t)),
            "Q" => Pt::Fin(t / (&one - t * t)),
            _ => Pt::Inf,
        };
        phi.eval(&Pt::Fin(x.clone())) == target
    })
}

/// Samples `(t0, x0)` off `E(f)` and the bad set, with `x0` drawn from the
/// rational zeros of both sides and from random values.
fn zf_samples(c: &PlaneCurveModel, raw: Option<&QTX>, f: &Defining, r: &mut ChaCha8Rng) -> (usize, usize, Vec<String>) {
    let (mut total, mut hits, mut bad) = (0, 0, Vec::new());
    while total < 100 {
        let t0 = random_rational(r, 30);
        if c.exceptional.contains(&t0) || c.bad.contains(&t0) {
            continue;
        }
        let mut xs = c.rational_fiber(&t0);
        if let Some(g) = raw {
            let s = specialize_qtx(g, &t0);
            if s.deg() > 0 {
                xs.extend(rational_roots(&s));
            }
        }
        xs.push(random_rational(r, 20));
        xs.sort();
        xs.dedup();
        for x0 in xs.into_iter().take(100 - total) {
            total += 1;
            let lhs = f(&t0, &x0);
            hits += lhs as usize;
            if lhs != (c.eval(&t0, &x0) == zero()) {
                bad.push(format!("{} at ({t0}, {x0})", c.tag));
            }
        }
    }
    (total, hits, bad)
}

#[test]
fn criterion_10_modular_curve_semantics() {
    let fam = CurveFamily::from_family(FamilyId::Period4).unwrap();
    let mut r = rng(110);
    let mut bad = Vec::new();
    let mut summary = Vec::new();
    let specs: [(&str, usize, usize); 7] =
        [("Y1(1)", 0, 1), ("Y1(2)", 0, 2), ("Y1(3)", 0, 3), ("Y1(4)", 0, 4), ("Y1(1,4)", 1, 4), ("Y1(2,2)", 2, 2), ("Y1(2,4)", 2, 4)];
    for (name, m, n) in specs {
        let c = build_named_curve(&fam, name).unwrap();
        let (raw, f) = dynatomic_defining(&fam, m, n);
        let (total, hits, errs) = zf_samples(&c, Some(&raw), &f, &mut r);
        summary.push(format!("{name} {total}/{hits}"));
        bad.extend(errs);
    }
    for p in ["1", "A", "Q", "inf"] {
        let c = build_named_curve(&fam, &format!("Y(1,{p})")).unwrap();
        let f = preimage_defining(p);
        let (total, hits, errs) = zf_samples(&c, None, &f, &mut r);
        summary.push(format!("Y(1,{p}) {total}/{hits}"));
        bad.extend(errs);
    }

    let y11 = build_named_curve(&fam, "Y(1,1)").unwrap();
    let x = QTX::new(vec![QT::zero(), QT::one()]);
    if y11.poly != x {
        bad.push("phi = 1 does not give A = x".into());
    }

    let fp = fiber_product(&build_named_curve(&fam, "Y1(2)").unwrap(), &build_named_curve(&fam, "Y(1,inf)").unwrap()).unwrap();
    let hits: Vec<Rational> =
        census_parameters(FamilyId::Period4, 50).into_iter().filter(|t| fp.has_common_fiber(t)).collect();
    if !hits.contains(&rat(5, 2)) || hits.contains(&rat(2, 1)) {
        bad.push(format!("fiber product hits {hits:?}"));
    }
    summary.push(format!("fiber product hits {}", hits.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(",")));
    verdict(10, bad.is_empty(), &format!("samples/zeros {}; {bad:?}", summary.join(" ")));
}
