//! Milnor coordinates, the curves `C_n`, and the parametrized families.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_traits::Signed;
use once_cell::sync::Lazy;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{
    fmt_rational, quad_cube_root, rat_int, rational_cube_root, rational_sqrt, rational_squarefree_decomposition, Quad,
    Rational,
};
use crate::dynamics::{
    critical_points, dynatomic_degree, dynatomic_raw, iterate_pairs, root_image_product, newton_interpolate,
    sample_point, u_invariant_raw, CriticalPoints, Mobius, OrbitStatus, Pt, RationalMap,
};
use crate::error::{Error, Result};
use crate::fsutil::write_atomic;
use crate::portraits::{
    classify_class, lift_map, portrait, FieldDesc, Portrait, PortraitField, PortraitMeta, PortraitOptions,
};
use crate::poly::{irreducibility_certificate, Certification, MultiPoly, NfElem, RatFunc, UniPoly};
use crate::ring::Ring;

type MX = UniPoly<MultiPoly>;
type QX = UniPoly<Rational>;

const RS: [&str; 2] = ["r", "s"];

fn q(n: i64) -> Rational {
    rat_int(n)
}

fn cst(n: i64) -> MultiPoly {
    <MultiPoly as Ring>::from_i64(n)
}

/// `(σ₁, σ₂)` of the fixed-point multipliers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliCoordinates {
    pub sigma1: Rational,
    pub sigma2: Rational,
}

impl ModuliCoordinates {
    pub fn pair(&self) -> (Rational, Rational) {
        (self.sigma1.clone(), self.sigma2.clone())
    }

    pub fn to_json(&self) -> Value {
        json!({ "sigma1": fmt_rational(&self.sigma1), "sigma2": fmt_rational(&self.sigma2) })
    }
}

impl fmt::Display for ModuliCoordinates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_rational(&self.sigma1), fmt_rational(&self.sigma2))
    }
}

/// Left-hand side of the symmetry-locus equation as a polynomial in `r, s`.
pub fn symmetry_poly() -> MultiPoly {
    MultiPoly::from_i64_terms(&[
        (-2, &[3]),
        (-1, &[2, 1]),
        (1, &[2]),
        (8, &[1, 1]),
        (4, &[0, 2]),
        (-12, &[1]),
        (-12, &[0, 1]),
        (36, &[]),
    ])
}

pub fn symmetry_value(r: &Rational, s: &Rational) -> Rational {
    symmetry_poly().eval(&[r.clone(), s.clone()])
}

/// Numerator and denominator of the generic `φ_{r,s}` over `Q[r, s]`.
pub fn phi_rs_symbolic() -> (MX, MX) {
    let (r, s) = (MultiPoly::var(0), MultiPoly::var(1));
    let two_minus_r = cst(2).sub(&r);
    let num = UniPoly::new(vec![two_minus_r.clone(), two_minus_r.clone(), cst(2)]);
    let den = UniPoly::new(vec![two_minus_r.sub(&s), cst(2).add(&r), cst(-1)]);
    (num, den)
}

/// The normal form `φ_{r,s}` with Milnor coordinates `(r, s)`.
pub fn phi_rs(r: &Rational, s: &Rational) -> Result<RationalMap<Rational>> {
    let (num, den) = phi_rs_symbolic();
    let at = |p: &MX| p.map(|c| c.eval(&[r.clone(), s.clone()]));
    let m = RationalMap::new(at(&num), at(&den))?;
    if m.degree() != 2 {
        return Err(Error::DegenerateMap(format!(
            "({}, {}) lies on the symmetry locus",
            fmt_rational(r),
            fmt_rational(s)
        )));
    }
    Ok(m)
}

/// `∏(x - φ'(β))` over the fixed points `β`, a monic cubic.
pub fn fixed_point_multiplier_poly(phi: &RationalMap<Rational>) -> Result<QX> {
    if phi.degree() != 2 {
        return Err(Error::Precondition("coordinates need a degree-2 map".into()));
    }
    if phi.eval(&Pt::Inf) == Pt::Inf {
        let a = (0i64..).map(q).find(|a| phi.eval_finite(a) != Pt::Fin(a.clone())).expect("few fixed points");
        // x -> a + 1/x sends infinity to a
        let sigma = Mobius::new(a, q(1), q(1), q(0))?;
        return fixed_point_multiplier_poly(&phi.conjugate(&sigma));
    }
    let (dp, dq) = phi.derivative();
    root_image_product(&phi.fixed_point_poly(), &dp, &dq)
}

pub fn coordinates(phi: &RationalMap<Rational>) -> Result<ModuliCoordinates> {
    let chi = fixed_point_multiplier_poly(phi)?;
    Ok(ModuliCoordinates { sigma1: -chi.coeff(2), sigma2: chi.coeff(1) })
}

/// `F_n` with its index.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveEquation {
    pub n: usize,
    pub poly: MultiPoly,
}

impl CurveEquation {
    pub fn eval(&self, r: &Rational, s: &Rational) -> Rational {
        self.poly.eval(&[r.clone(), s.clone()])
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.poly.to_json(&RS);
        v["n"] = json!(self.n);
        v
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        let n = v.get("n")?.as_u64()? as usize;
        Some(CurveEquation { n, poly: MultiPoly::from_json(v)? })
    }

    /// Typeset like a TeX source, e.g. `2r + s`.
    pub fn display(&self) -> String {
        self.poly.fmt_latex(&RS)
    }
}

impl fmt::Display for CurveEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly.fmt_vars(&RS))
    }
}

fn grlex_leading(f: &MultiPoly) -> Option<(Vec<u32>, Rational)> {
    f.terms_desc()
        .max_by(|(a, _), (b, _)| {
            let ta: u32 = a.iter().sum();
            let tb: u32 = b.iter().sum();
            ta.cmp(&tb).then_with(|| a.cmp(b))
        })
        .map(|(m, c)| (m.clone(), c.clone()))
}

/// Primitive integer polynomial with positive graded-lex leading coefficient.
pub fn normalize_curve_poly(f: &MultiPoly) -> MultiPoly {
    let p = f.primitive_integer();
    match grlex_leading(&p) {
        Some((_, c)) if c.is_negative() => p.neg(),
        _ => p,
    }
}

/// `U_n(φ_{r,s})` over `Q[r, s]` by resultants. Slow for `n = 4`.
pub fn curve_equation_symbolic(n: usize) -> Result<CurveEquation> {
    check_curve_index(n)?;
    let (p, q) = phi_rs_symbolic();
    let pairs = iterate_pairs(&p, &q, n);
    let phi_n = dynatomic_raw(&pairs, n)?;
    let dp = p.derivative().mul(&q).sub(&p.mul(&q.derivative()));
    let dq = q.mul(&q);
    let u = u_invariant_raw(&phi_n, &dp, &dq)?;
    Ok(CurveEquation { n, poly: normalize_curve_poly(&u) })
}

fn check_curve_index(n: usize) -> Result<()> {
    if !(1..=4).contains(&n) {
        return Err(Error::Precondition(format!("curve equations are supported for n in 1..=4, got {n}")));
    }
    Ok(())
}

/// `U_n(φ_{r,s})` at a rational point, when the period-`n` points are all
/// finite and avoid the poles of `φ'`.
pub fn u_value(n: usize, r: &Rational, s: &Rational) -> Option<Rational> {
    let phi = phi_rs(r, s).ok()?;
    let pairs = iterate_pairs(phi.num(), phi.den(), n);
    let phi_n = dynatomic_raw(&pairs, n).ok()?;
    if phi_n.deg() != dynatomic_degree(2, n) as isize {
        return None;
    }
    let (dp, dq) = phi.derivative_raw();
    u_invariant_raw(&phi_n, &dp, &dq).ok()
}

/// Sylvester-matrix bound on the degree of `U_n(φ_{r,s})` in either
/// variable.
///
/// Coefficients of the `k`-th iterate have degree at most `2^k - 1`, which
/// bounds those of `Φ_n` and its leading coefficient; the derivative pair
/// has degrees 2 and 4 in `x` with coefficients of degree at most 2.
pub fn u_degree_bound(n: usize) -> usize {
    let a = (1usize << n) - 1;
    let m = dynatomic_degree(2, n) as usize;
    let (deg_dp, deg_dq, coeff_deg) = (2, 4, 2);
    deg_dp * a + m * coeff_deg + (deg_dq - deg_dp) * a
}

const ROW_SCAN: usize = 64;

/// Dense interpolation of a polynomial in two variables from its values.
///
/// The degree bound in each variable doubles until fresh points agree, and
/// stops at `max_deg`, where the grid alone determines the result.
pub fn interpolate_bivariate(
    f: impl Fn(&Rational, &Rational) -> Option<Rational> + Sync,
    max_deg: usize,
) -> Result<MultiPoly> {
    let mut b = 4.min(max_deg);
    loop {
        let need = b + 1;
        let rows: Vec<Option<(Rational, QX)>> = (0..need + 8)
            .into_par_iter()
            .map(|j| {
                let s = sample_point(j);
                let mut xs = Vec::with_capacity(need);
                let mut ys = Vec::with_capacity(need);
                for k in 0..need + ROW_SCAN {
                    if xs.len() == need {
                        break;
                    }
                    let r = sample_point(k);
                    if let Some(v) = f(&r, &s) {
                        xs.push(r);
                        ys.push(v);
                    }
                }
                (xs.len() == need).then(|| (s, newton_interpolate(&xs, &ys)))
            })
            .collect();
        let rows: Vec<(Rational, QX)> = rows.into_iter().flatten().take(need).collect();
        if rows.len() < need {
            return Err(Error::Budget(format!("too few usable sample rows at degree bound {b}")));
        }
        let ss: Vec<Rational> = rows.iter().map(|(s, _)| s.clone()).collect();
        let mut terms = Vec::new();
        for k in 0..need {
            let ys: Vec<Rational> = rows.iter().map(|(_, p)| p.coeff(k)).collect();
            let cs = newton_interpolate(&ss, &ys);
            for (j, c) in cs.coeffs().iter().enumerate() {
                terms.push((vec![k as u32, j as u32], c.clone()));
            }
        }
        let cand = MultiPoly::from_terms(terms);
        let checks: Vec<bool> = (0..6)
            .into_par_iter()
            .filter_map(|i| {
                let (r, s) = (sample_point(500 + 3 * i), sample_point(900 + 5 * i));
                f(&r, &s).map(|v| cand.eval(&[r, s]) == v)
            })
            .collect();
        if checks.len() >= 4 && checks.iter().all(|&ok| ok) {
            return Ok(cand);
        }
        if b >= max_deg {
            return Err(Error::Budget(format!(
                "interpolation did not stabilize at degree bound {b} ({} of {} checks agreed)",
                checks.iter().filter(|&&ok| ok).count(),
                checks.len()
            )));
        }
        b = (2 * b).min(max_deg);
    }
}

static CURVES: Lazy<Mutex<HashMap<usize, MultiPoly>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// `F_n`, cleared to a primitive integer polynomial, memoized in-process.
pub fn curve_equation(n: usize) -> Result<CurveEquation> {
    check_curve_index(n)?;
    if let Some(p) = CURVES.lock().unwrap().get(&n) {
        return Ok(CurveEquation { n, poly: p.clone() });
    }
    let u = interpolate_bivariate(|r, s| u_value(n, r, s), u_degree_bound(n))?;
    let poly = normalize_curve_poly(&u);
    CURVES.lock().unwrap().insert(n, poly.clone());
    Ok(CurveEquation { n, poly })
}

/// [`curve_equation`] backed by `dir/curve-F{n}.json`.
pub fn curve_equation_cached(n: usize, dir: Option<&Path>) -> Result<CurveEquation> {
    let Some(dir) = dir else { return curve_equation(n) };
    let path = dir.join(format!("curve-F{n}.json"));
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Some(c) = serde_json::from_str::<Value>(&text).ok().as_ref().and_then(CurveEquation::from_json) {
            if c.n == n {
                CURVES.lock().unwrap().insert(n, c.poly.clone());
                return Ok(c);
            }
        }
    }
    let c = curve_equation(n)?;
    write_atomic(&path, serde_json::to_string(&c.to_json())?.as_bytes())?;
    Ok(c)
}

/// `(ε, ρ)` and `(η, κ)` as rational functions of `t`.
pub fn cn_parametrization(n: usize) -> Result<(RatFunc, RatFunc)> {
    let f = RatFunc::from_i64s;
    match n {
        2 => Ok((RatFunc::t(), RatFunc::t().neg().add(&RatFunc::t().neg()))),
        3 => Ok((f(&[-1, -5, 1, -1], &[0, 1]), f(&[2, 7, -2, 1], &[0, 1]))),
        4 => {
            // t(t - 1)(t + 1)² and t(t² - 1)
            let eta_den = &[0, -1, -1, 1, 1];
            Ok((f(&[1, 5, 2, -3, -2, -1, -1], eta_den), f(&[-2, -5, 0, 3, 2, 1], &[0, -1, 0, 1])))
        }
        _ => Err(Error::Precondition(format!("no parametrization of C_{n} is provided"))),
    }
}

pub fn cn_excluded(n: usize) -> Vec<Rational> {
    match n {
        3 => vec![q(0)],
        4 => vec![q(-1), q(0), q(1)],
        _ => vec![],
    }
}

/// The point of `C_n(Q)` with parameter `v`.
pub fn cn_parametrize(n: usize, v: &Rational) -> Result<(Rational, Rational)> {
    let (a, b) = cn_parametrization(n)?;
    if cn_excluded(n).contains(v) {
        return Err(Error::ExcludedParameter(fmt_rational(v), format!("C_{n}")));
    }
    Ok((a.eval(v)?, b.eval(v)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyId {
    Period2Trivial,
    Period2Symmetric,
    Period3,
    Period4,
}

impl FamilyId {
    pub const ALL: [FamilyId; 4] =
        [FamilyId::Period2Trivial, FamilyId::Period2Symmetric, FamilyId::Period3, FamilyId::Period4];

    pub fn tag(self) -> &'static str {
        match self {
            FamilyId::Period2Trivial => "period2-trivial",
            FamilyId::Period2Symmetric => "period2-symmetric",
            FamilyId::Period3 => "period3",
            FamilyId::Period4 => "period4",
        }
    }

    /// Period of the marked critical cycle.
    pub fn period(self) -> usize {
        match self {
            FamilyId::Period2Trivial | FamilyId::Period2Symmetric => 2,
            FamilyId::Period3 => 3,
            FamilyId::Period4 => 4,
        }
    }

    /// Rational parameters outside the domain.
    pub fn excluded(self) -> Vec<Rational> {
        match self {
            FamilyId::Period2Trivial | FamilyId::Period3 => vec![q(0)],
            FamilyId::Period2Symmetric => vec![q(0), q(4)],
            FamilyId::Period4 => vec![q(-1), q(0), q(1)],
        }
    }

    pub fn admits(self, c: &Rational) -> bool {
        !self.excluded().contains(c)
    }

    /// The family as a single map over `Q(t)`.
    pub fn symbolic(self) -> RationalMap<RatFunc> {
        let f = RatFunc::from_i64s;
        let p = |cs: Vec<RatFunc>| UniPoly::new(cs);
        let z = RatFunc::zero;
        let (num, den) = match self {
            // c(x - 1) / x²
            FamilyId::Period2Trivial => (p(vec![f(&[0, -1], &[1]), RatFunc::t()]), p(vec![z(), z(), RatFunc::one()])),
            // (2x - 1) / (c x² - 1)
            FamilyId::Period2Symmetric => (p(vec![q_rf(-1), q_rf(2)]), p(vec![q_rf(-1), z(), RatFunc::t()])),
            // (x² - (c + 1)x + c) / x²
            FamilyId::Period3 => {
                (p(vec![RatFunc::t(), f(&[-1, -1], &[1]), RatFunc::one()]), p(vec![z(), z(), RatFunc::one()]))
            }
            FamilyId::Period4 => (
                p(vec![f(&[0, 0, -1], &[1]), f(&[0, 1, 1, -1], &[1])]),
                p(vec![f(&[0, 0, -1], &[1]), f(&[0, 1, 1, -1], &[1]), f(&[1, -1, -1, 1], &[1])]),
            ),
        };
        RationalMap::new(num, den).expect("family maps have degree two")
    }
}

fn q_rf(n: i64) -> RatFunc {
    RatFunc::from_i64s(&[n], &[1])
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::Other(format!("unknown family `{s}`")))
    }
}

pub fn family_map(id: FamilyId, c: &Rational) -> Result<RationalMap<Rational>> {
    if !id.admits(c) {
        return Err(Error::ExcludedParameter(fmt_rational(c), id.tag().into()));
    }
    id.symbolic().specialize(c)
}

/// The two critical points of `ψ_c`, `α` first.
#[derive(Clone, Debug, PartialEq)]
pub enum PsiAlpha {
    Rational(Rational, Rational),
    Quadratic(Quad, Quad),
}

impl PsiAlpha {
    /// Squarefree `d` with `α ∈ Q(√d)`, or `None` over Q.
    pub fn field(&self) -> Option<&crate::Integer> {
        match self {
            PsiAlpha::Rational(..) => None,
            PsiAlpha::Quadratic(a, _) => Some(a.d()),
        }
    }

    /// Both points as elements of `Q(√d)`, the rational case using the
    /// rational sentinel.
    pub fn as_quads(&self) -> (Quad, Quad) {
        match self {
            PsiAlpha::Rational(a, b) => (Quad::rational(a.clone()), Quad::rational(b.clone())),
            PsiAlpha::Quadratic(a, b) => (a.clone(), b.clone()),
        }
    }
}

/// `α = (c + √(c(c-4)))/(2c)` and `1 - α`.
pub fn psi_alpha(c: &Rational) -> Result<PsiAlpha> {
    if !FamilyId::Period2Symmetric.admits(c) {
        return Err(Error::ExcludedParameter(fmt_rational(c), "period2-symmetric".into()));
    }
    let disc = c * (c - q(4));
    let two_c = c * q(2);
    if let Some(root) = rational_sqrt(&disc) {
        let a = (c + &root) / &two_c;
        let b = q(1) - &a;
        return Ok(PsiAlpha::Rational(a, b));
    }
    let (d, w) = rational_squarefree_decomposition(&disc);
    let alpha = Quad::new(d, rat_half(), w / two_c)?;
    Ok(PsiAlpha::Quadratic(alpha.clone(), alpha.conj()))
}

fn rat_half() -> Rational {
    Rational::new(1.into(), 2.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Period2Source {
    FromQ,
    FromP,
}

impl FromStr for Period2Source {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "from-q" => Ok(Period2Source::FromQ),
            "from-p" => Ok(Period2Source::FromP),
            _ => Err(Error::Other(format!("unknown kind `{s}`, expected from-q or from-p"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Period2Parameter {
    pub c: Rational,
    /// For `from-p`: whether `(p + 1)(1 - 3p)` is a non-square, i.e.
    /// whether the converse direction of the construction applies.
    pub converse_applies: Option<bool>,
}

impl Period2Parameter {
    pub fn to_json(&self) -> Value {
        json!({ "c": fmt_rational(&self.c), "converse_applies": self.converse_applies })
    }
}

/// The `ψ_c` parameter realizing a rational cube root (`from-q`) or a
/// quadratic one (`from-p`).
pub fn period2_parameter(kind: Period2Source, value: &Rational) -> Result<Period2Parameter> {
    let x = value;
    let x3 = x * x * x;
    match kind {
        Period2Source::FromQ => {
            if [q(-1), q(0), q(1)].contains(x) {
                return Err(Error::ExcludedParameter(fmt_rational(x), "from-q".into()));
            }
            let a = &x3 + q(1);
            Ok(Period2Parameter { c: &a * &a / &x3, converse_applies: None })
        }
        Period2Source::FromP => {
            let third = Rational::new(1.into(), 3.into());
            if [q(-1), q(0), rat_half(), third].contains(x) {
                return Err(Error::ExcludedParameter(fmt_rational(x), "from-p".into()));
            }
            let c = (&x3 * q(4) - x * q(3) + q(1)) / &x3;
            let caveat = (x + q(1)) * (q(1) - x * q(3));
            Ok(Period2Parameter { c, converse_applies: Some(rational_sqrt(&caveat).is_none()) })
        }
    }
}

/// `ψ_c` over `Q(α)` through the generic portrait engine.
pub fn psi_engine_portrait(c: &Rational) -> Result<Portrait<Quad>> {
    let alpha = psi_alpha(c)?;
    let field = alpha.field().map_or(FieldDesc::Rational, |d| FieldDesc::Quadratic(d.clone()));
    let psi = lift_map(&family_map(FamilyId::Period2Symmetric, c)?, &field)?;
    // every periodic point of the twisted inverse square has period at most two
    let opts = PortraitOptions { n_max: 2, ..PortraitOptions::default() };
    Ok(portrait(&psi, &field, opts)?.with_source("period2-symmetric", &fmt_rational(c)))
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiPortraitReport {
    pub c: String,
    pub class: &'static str,
    pub field: String,
    pub alpha: String,
    /// `cα − 1`, the constant of the conjugate `(cα − 1)/x²`.
    pub twist: String,
    pub cube_root: Option<String>,
    pub roots_of_unity: Vec<String>,
    pub vertices: Vec<String>,
    pub engine_vertices: usize,
}

/// Names the portrait of `ψ_c` over the field of its critical points.
///
/// `ψ_c` is conjugate over `K = Q(α)` to `(cα − 1)/x²`. When `cα − 1` is
/// not a cube in `K` only `0, ∞` are preperiodic; otherwise the map is
/// conjugate to `1/x²`, whose preperiodic points are `0, ∞` and the roots of
/// unity in `K` (all of order dividing 12 in a field of degree at most 2).
pub fn classify_psi_portrait(c: &Rational) -> Result<PsiPortraitReport> {
    let alpha = psi_alpha(c)?;
    let (a, _) = alpha.as_quads();
    let field = alpha.field().map_or(FieldDesc::Rational, |d| FieldDesc::Quadratic(d.clone()));
    let d = alpha.field().cloned().unwrap_or_default();
    let twist = Quad::in_field(&d, c.clone()).mul(&a).sub(&Quad::one());
    let cube_root = match &field {
        FieldDesc::Rational => rational_cube_root(twist.u()).map(Quad::rational),
        FieldDesc::Quadratic(_) => quad_cube_root(&twist),
    };
    let x2 = UniPoly::monomial(Quad::one(), 2);
    let mut verts: BTreeSet<Pt<Quad>> = [Pt::Fin(Quad::zero()), Pt::Inf].into_iter().collect();
    let mut units = Vec::new();
    let model = match &cube_root {
        None => RationalMap::new(UniPoly::constant(twist.clone()), x2)?,
        Some(_) => {
            let x12_minus_1 = UniPoly::monomial(Quad::one(), 12).sub(&UniPoly::one());
            units = Quad::roots_in(&x12_minus_1, &field)?;
            verts.extend(units.iter().cloned().map(Pt::Fin));
            RationalMap::new(UniPoly::one(), x2)?
        }
    };
    let meta = PortraitMeta {
        family: Some("period2-symmetric".into()),
        parameter: Some(fmt_rational(c)),
        n_max: 2,
        vertex_cap: verts.len(),
        assumption: "none: the preperiodic points are determined exactly".into(),
    };
    let g = Portrait::from_vertices(field.clone(), verts, |p| model.eval(p), meta)?;
    let class = classify_class(&g.class())
        .filter(|e| e.name.starts_with('P'))
        .ok_or_else(|| Error::Verification(format!("portrait of psi_c at c = {} is not in the psi catalog", fmt_rational(c))))?;
    let engine = psi_engine_portrait(c)?;
    if engine.class().certificate != g.class().certificate {
        return Err(Error::Verification(format!(
            "generic engine disagrees at c = {}: {} vertices vs {}",
            fmt_rational(c),
            engine.vertices.len(),
            g.vertices.len()
        )));
    }
    Ok(PsiPortraitReport {
        c: fmt_rational(c),
        class: class.name,
        field: field.to_string(),
        alpha: a.to_string(),
        twist: twist.to_string(),
        cube_root: cube_root.map(|w| w.to_string()),
        roots_of_unity: units.iter().map(|u| u.to_string()).collect(),
        vertices: g.labels(),
        engine_vertices: engine.vertices.len(),
    })
}

/// Periodic status of one marked point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarkedPoint {
    pub point: String,
    pub critical: bool,
    pub exact_period: Option<usize>,
    pub status: Option<OrbitStatus>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CycleReport {
    pub family: FamilyId,
    pub c: String,
    pub map: String,
    pub critical_points: Vec<String>,
    pub marked: Vec<MarkedPoint>,
    pub companion: Option<MarkedPoint>,
}

fn rational_pt_status(phi: &RationalMap<Rational>, p: &Pt<Rational>, max: usize) -> MarkedPoint {
    MarkedPoint {
        point: p.to_string(),
        critical: true,
        exact_period: phi.exact_period(p, max),
        status: Some(phi.orbit_type_default(p).status),
    }
}

/// Recomputes the critical points of a family member and confirms the
/// marked critical cycle.
pub fn verify_critical_cycle(id: FamilyId, c: &Rational) -> Result<CycleReport> {
    let phi = family_map(id, c)?;
    let n = id.period();
    let crit = critical_points(&phi)?;
    let fail = |m: String| Err(Error::Verification(m));
    let mut report = CycleReport {
        family: id,
        c: fmt_rational(c),
        map: phi.to_string(),
        critical_points: vec![],
        marked: vec![],
        companion: None,
    };
    if id == FamilyId::Period2Symmetric {
        let alpha = psi_alpha(c)?;
        let (a, b) = alpha.as_quads();
        let d = alpha.field().cloned().unwrap_or_default();
        let lift = |x: &Rational| -> Result<Quad> { Ok(Quad::in_field(&d, x.clone())) };
        let psi = phi.try_map_coeffs(lift)?;
        let expected = match &crit {
            CriticalPoints::Rational([x, y]) => {
                let mut e = vec![Pt::Fin(a.u().clone()), Pt::Fin(b.u().clone())];
                e.sort();
                e == vec![x.clone(), y.clone()]
            }
            CriticalPoints::Conjugate([x, y]) => (x == &a && y == &b) || (x == &b && y == &a),
        };
        if !expected {
            return fail(format!("critical points of psi_c differ from alpha, 1 - alpha at c = {}", fmt_rational(c)));
        }
        let (pa, pb) = (Pt::Fin(a.clone()), Pt::Fin(b.clone()));
        if psi.eval(&pa) != pb || psi.eval(&pb) != pa {
            return fail("alpha and 1 - alpha do not form a 2-cycle".into());
        }
        for x in [&a, &b] {
            report.critical_points.push(x.to_string());
            report.marked.push(MarkedPoint {
                point: x.to_string(),
                critical: true,
                exact_period: psi.exact_period(&Pt::Fin(x.clone()), n),
                status: None,
            });
        }
        return Ok(report);
    }
    let CriticalPoints::Rational(pts) = crit else {
        return fail("critical points of this family are rational".into());
    };
    report.critical_points = pts.iter().map(|p| p.to_string()).collect();
    let zero = Pt::Fin(q(0));
    if !pts.contains(&zero) {
        return fail("0 is not critical".into());
    }
    let marked = rational_pt_status(&phi, &zero, n);
    if marked.exact_period != Some(n) {
        return fail(format!("0 does not have exact period {n}"));
    }
    report.marked.push(marked);
    let other = pts.iter().find(|p| **p != zero).cloned().unwrap_or(zero);
    let stated = companion(id, c);
    if other != stated {
        return fail(format!("companion critical point is {other}, expected {stated}"));
    }
    let comp = rational_pt_status(&phi, &other, n);
    match id {
        FamilyId::Period2Trivial | FamilyId::Period4 if comp.exact_period == Some(n) => {
            return fail(format!("companion {other} is also {n}-periodic"));
        }
        _ => {}
    }
    report.companion = Some(comp);
    Ok(report)
}

/// The critical point other than 0 in the families with a rational marked
/// critical point.
fn companion(id: FamilyId, c: &Rational) -> Pt<Rational> {
    let ratio = |a: Rational, b: Rational| if b == q(0) { Pt::Inf } else { Pt::Fin(a / b) };
    match id {
        FamilyId::Period2Trivial => Pt::Fin(q(2)),
        FamilyId::Period3 => ratio(c * q(2), c + q(1)),
        FamilyId::Period4 => ratio(-(c * q(2)), c * c - c - q(1)),
        FamilyId::Period2Symmetric => unreachable!("no rational marked point"),
    }
}

/// One irreducible component of `X_n` over Q.
#[derive(Clone, Debug, Serialize)]
pub struct ResidueComponent {
    /// Residue-field degree of each point in the component.
    pub degree: usize,
    pub points: usize,
    /// Defining polynomial of the `r`-coordinate.
    pub r_poly: String,
    /// Defining polynomial of the `s`-coordinate, of the same degree.
    pub s_poly: Option<String>,
    pub certification: Certification,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionReport {
    pub n: usize,
    pub eliminant_r: String,
    pub eliminant_s: String,
    pub point_count: usize,
    pub components: Vec<ResidueComponent>,
    /// Rational points, when any.
    pub rational_points: Vec<(String, String)>,
    pub certified: bool,
    pub warnings: Vec<String>,
}

impl IntersectionReport {
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.components.iter().flat_map(|c| vec![c.degree; c.points]).collect();
        d.sort_unstable();
        d
    }
}

fn eliminant(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<QX> {
    let keep = 1 - var;
    let res = f.to_uni(var).resultant(&g.to_uni(var));
    res.to_uni_rational(keep).ok_or_else(|| Error::Verification("eliminant is not univariate".into()))
}

fn nf_coeffs(f: &MultiPoly, modulus: &Arc<QX>) -> Result<UniPoly<NfElem>> {
    let u = f.to_uni(1);
    u.try_map(|c| {
        c.to_uni_rational(0)
            .map(|p| NfElem::new(modulus.clone(), &p))
            .ok_or_else(|| Error::Verification("coefficient is not a polynomial in r".into()))
    })
}

/// `X_n = {F_n = 0} ∩ S` by eliminants and a triangular decomposition.
pub fn intersect_symmetry(n: usize) -> Result<IntersectionReport> {
    if !(2..=4).contains(&n) {
        return Err(Error::Precondition(format!("intersections are reported for n in 2..=4, got {n}")));
    }
    let f = curve_equation(n)?.poly;
    let s = symmetry_poly();
    let er = eliminant(&f, &s, 1)?;
    let es = eliminant(&f, &s, 0)?;
    if er.is_zero() || es.is_zero() {
        return Err(Error::Verification(format!("F_{n} shares a component with the symmetry locus")));
    }
    let er_sq = er.squarefree_part().primitive_integer();
    let es_sq = es.squarefree_part().primitive_integer();
    let cert_r = irreducibility_certificate(&er_sq);
    let cert_s = irreducibility_certificate(&es_sq);
    let mut warnings = Vec::new();
    if cert_r.cofactor.deg() > 0 {
        warnings.push(format!("unfactored part of the r-eliminant: {}", cert_r.cofactor.fmt_var("r")));
    }
    let mut components = Vec::new();
    let mut rational_points = Vec::new();
    let mut count = 0;
    let mut certified = cert_r.all_certified();
    for fac in &cert_r.factors {
        let g = &fac.poly;
        let k = g.deg() as usize;
        let modulus = Arc::new(g.monic());
        let gcd = nf_coeffs(&f, &modulus)?.gcd(&nf_coeffs(&s, &modulus)?);
        let m = gcd.deg().max(0) as usize;
        count += k * m;
        if m == 0 {
            warnings.push(format!("no point above the root of {}", g.fmt_var("r")));
            continue;
        }
        if m > 1 {
            certified = false;
            warnings.push(format!("{m} points above each root of {}; residue degrees not separated", g.fmt_var("r")));
        }
        if k == 1 && m == 1 {
            let r0 = -g.coeff(0) / g.coeff(1);
            let lin = gcd.monic();
            let s0 = -lin.coeff(0).value().coeff(0);
            rational_points.push((fmt_rational(&r0), fmt_rational(&s0)));
        }
        let s_poly = cert_s.factors.iter().find(|h| {
            h.poly.deg() as usize == k && {
                // the s-factor vanishes at the points of this component
                let sval = gcd.monic().coeff(0).neg();
                h.poly.map(|c| NfElem::new(modulus.clone(), &QX::constant(c.clone()))).eval(&sval).is_zero()
            }
        });
        components.push(ResidueComponent {
            degree: k,
            points: k * m,
            r_poly: g.fmt_var("x"),
            s_poly: if m == 1 { s_poly.map(|h| h.poly.fmt_var("x")) } else { None },
            certification: fac.certification.clone(),
        });
    }
    if !certified {
        warnings.push("certification inconclusive".into());
    }
    Ok(IntersectionReport {
        n,
        eliminant_r: er_sq.fmt_var("r"),
        eliminant_s: es_sq.fmt_var("s"),
        point_count: count,
        components,
        rational_points,
        certified,
        warnings,
    })
}
