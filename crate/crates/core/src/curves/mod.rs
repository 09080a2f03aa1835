//! Dynamical modular curves attached to a one-parameter family of maps:
//! dynatomic, generalized dynatomic, trace and preimage curves, their
//! exceptional sets, and fiber products over the parameter line.

mod elim;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;
use serde_json::{json, Value};

pub use elim::{qtx_discriminant, qtx_resultant, resultant_degree_bound};

use crate::arith::{fmt_rational, Rational};
use crate::dynamics::{dynatomic_raw, gen_dynatomic_raw, interpolate_qtx, iterate_pairs, Pt, RationalMap};
use crate::error::{Error, Result};
use crate::moduli::FamilyId;
use crate::poly::bivariate::{kx_from_qtx, qtx_normalize, specialize_qtx};
use crate::poly::modp::{inv_mod, reduce_int};
use crate::poly::{content_split, rational_roots, MultiPoly, RatFunc, KX, QT, QTX, QX};
use crate::ring::{Field, Ring};

/// Which construction produced a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CurveTag {
    Dynatomic { n: usize },
    Generalized { m: usize, n: usize },
    Trace { n: usize },
    Preimage { m: usize, point: String },
    Custom { label: String },
}

impl fmt::Display for CurveTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveTag::Dynatomic { n } => write!(f, "Y1({n})"),
            CurveTag::Generalized { m, n } => write!(f, "Y1({m},{n})"),
            CurveTag::Trace { n } => write!(f, "Ytau({n})"),
            CurveTag::Preimage { m, point } => write!(f, "Y({m},{point})"),
            CurveTag::Custom { label } => write!(f, "Zf({label})"),
        }
    }
}

/// A finite set of parameters given by a squarefree polynomial in `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExceptionalSet {
    pub poly: QT,
    /// The distinct rational roots of `poly`, ascending.
    pub rationals: Vec<Rational>,
}

impl ExceptionalSet {
    pub fn empty() -> Self {
        ExceptionalSet { poly: QT::one(), rationals: Vec::new() }
    }

    /// The roots of the product of `factors`; zero factors are rejected.
    pub fn from_factors<'a>(factors: impl IntoIterator<Item = &'a QT>) -> Result<Self> {
        let mut poly = QT::one();
        for f in factors {
            if f.is_zero() {
                return Err(Error::ZeroInput);
            }
            if f.deg() > 0 {
                poly = poly.mul(&f.squarefree_part());
            }
        }
        let poly = poly.squarefree_part().normalized();
        let mut rationals = if poly.deg() > 0 { rational_roots(&poly) } else { Vec::new() };
        rationals.dedup();
        Ok(ExceptionalSet { poly, rationals })
    }

    pub fn contains(&self, t: &Rational) -> bool {
        self.poly.eval(t).is_zero()
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        Self::from_factors([&self.poly, &other.poly])
    }

    pub fn to_json(&self) -> Value {
        json!({
            "polynomial": self.poly.fmt_var("t"),
            "rationals": self.rationals.iter().map(fmt_rational).collect::<Vec<_>>(),
        })
    }
}

/// A further parameter locus to avoid, such as the zeros of a discriminant.
#[derive(Clone, Debug, PartialEq)]
pub struct Locus {
    pub name: String,
    pub poly: QT,
    /// Coefficients mod [`SCREEN_PRIME`], when all are integral there.
    residues: Option<Vec<u64>>,
}

const SCREEN_PRIME: u64 = 2_147_483_647;

fn reduce_rational(q: &Rational, p: u64) -> Option<u64> {
    let d = reduce_int(q.denom(), p);
    (d != 0).then(|| reduce_int(q.numer(), p) * inv_mod(d, p) % p)
}

impl Locus {
    pub fn new(name: impl Into<String>, poly: QT) -> Self {
        let residues = poly.coeffs().iter().map(|c| reduce_rational(c, SCREEN_PRIME)).collect();
        Locus { name: name.into(), poly, residues }
    }

    /// True when `t` is a zero of the locus polynomial. A nonzero value mod
    /// a prime settles most parameters without evaluating over Q.
    pub fn vanishes_at(&self, t: &Rational) -> bool {
        if let (Some(res), Some(tp)) = (&self.residues, reduce_rational(t, SCREEN_PRIME)) {
            if res.iter().rev().fold(0, |acc, &c| (acc * tp + c) % SCREEN_PRIME) != 0 {
                return false;
            }
        }
        self.poly.eval(t).is_zero()
    }
}

/// The affine curve `A(t, x) = 0` of a `Z_f` construction.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneCurveModel {
    pub tag: CurveTag,
    /// Name of the family map.
    pub source: String,
    /// Primitive in `Z[t][x]` with positive leading coefficient.
    pub poly: QTX,
    pub exceptional: ExceptionalSet,
    /// Bad set of the family map.
    pub bad: ExceptionalSet,
    pub loci: Vec<Locus>,
    pub note: String,
}

impl PlaneCurveModel {
    pub fn x_degree(&self) -> usize {
        self.poly.deg() as usize
    }

    pub fn eval(&self, t: &Rational, x: &Rational) -> Rational {
        self.specialize(t).eval(x)
    }

    pub fn specialize(&self, t: &Rational) -> QX {
        specialize_qtx(&self.poly, t)
    }

    /// Distinct rational `x` with `A(t, x) = 0`.
    pub fn rational_fiber(&self, t: &Rational) -> Vec<Rational> {
        let f = self.specialize(t);
        let mut r = if f.deg() > 0 { rational_roots(&f) } else { Vec::new() };
        r.dedup();
        r
    }

    pub fn locus(&self, name: &str) -> Option<&QT> {
        self.loci.iter().find(|l| l.name == name).map(|l| &l.poly)
    }

    pub fn discriminant(&self) -> Option<&QT> {
        self.locus("discriminant")
    }

    pub fn lambdas(&self) -> Vec<&QT> {
        self.loci.iter().filter(|l| l.name.starts_with("lambda_")).map(|l| &l.poly).collect()
    }

    /// True when `t` lies in the exceptional set, the bad set, or on any
    /// extra locus, so that membership says nothing about the dynamics.
    pub fn excludes(&self, t: &Rational) -> bool {
        self.exceptional.contains(t) || self.bad.contains(t) || self.loci.iter().any(|l| l.vanishes_at(t))
    }

    fn params(&self) -> Value {
        match &self.tag {
            CurveTag::Dynatomic { n } | CurveTag::Trace { n } => json!({ "n": n }),
            CurveTag::Generalized { m, n } => json!({ "m": m, "n": n }),
            CurveTag::Preimage { m, point } => json!({ "m": m, "point": point }),
            CurveTag::Custom { label } => json!({ "label": label }),
        }
    }

    pub fn to_json(&self) -> Value {
        let mp = qtx_to_multi(&self.poly);
        json!({
            "tag": self.tag.to_string(),
            "params": self.params(),
            "source": self.source,
            "polynomial": mp.fmt_vars(&["t", "x"]),
            "terms": mp.to_json(&["t", "x"]),
            "exceptional": self.exceptional.to_json(),
            "bad": self.bad.to_json(),
            "loci": self.loci.iter().map(|l| json!({ "name": l.name, "polynomial": l.poly.fmt_var("t") })).collect::<Vec<_>>(),
            "note": self.note,
        })
    }
}

/// `Σ a_ij tʲ xⁱ` as a polynomial in the variables `(t, x)`.
pub fn qtx_to_multi(p: &QTX) -> MultiPoly {
    MultiPoly::from_terms(
        p.coeffs()
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.coeffs().iter().enumerate().map(move |(j, a)| (vec![j as u32, i as u32], a.clone()))),
    )
}

/// The model `A₁(t, x) = 0, A₂(t, z) = 0` of a fiber product over the
/// parameter line.
#[derive(Clone, Debug)]
pub struct FiberProductModel {
    pub first: PlaneCurveModel,
    pub second: PlaneCurveModel,
}

impl FiberProductModel {
    /// Rational fibers of both factors over `t`.
    pub fn fibers(&self, t: &Rational) -> (Vec<Rational>, Vec<Rational>) {
        (self.first.rational_fiber(t), self.second.rational_fiber(t))
    }

    /// True when both factors have a rational point over `t`.
    pub fn has_common_fiber(&self, t: &Rational) -> bool {
        let (a, b) = self.fibers(t);
        !a.is_empty() && !b.is_empty()
    }

    pub fn excludes(&self, t: &Rational) -> bool {
        self.first.excludes(t) || self.second.excludes(t)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tag": format!("{} x {}", self.first.tag, self.second.tag),
            "equations": [
                qtx_to_multi(&self.first.poly).fmt_vars(&["t", "x"]),
                qtx_to_multi(&self.second.poly).fmt_vars(&["t", "z"]),
            ],
            "factors": [self.first.to_json(), self.second.to_json()],
        })
    }
}

/// The `Z_f` construction for `f = num/den`: the reduced curve `A = 0` and
/// `E(f)`.
///
/// `E(f)` is cut out by the content's numerator and denominator and the full
/// resultant `Res_x(A, B)`.
pub fn z_curve(num: &KX, den: &KX) -> Result<(QTX, ExceptionalSet)> {
    let split = content_split(num, den)?;
    if split.a.deg() < 1 {
        return Err(Error::ConstantCurve);
    }
    let a = reduced(&split.a)?;
    let res = qtx_resultant(&a, &split.b)?;
    let e = ExceptionalSet::from_factors([&split.p_num, &split.p_den, &res])?;
    Ok((a, e))
}

/// `A / gcd(A, ∂A/∂x)`, primitive.
fn reduced(a: &QTX) -> Result<QTX> {
    let g = crate::poly::bivariate::qtx_gcd(a, &a.derivative());
    if g.deg() < 1 {
        return Ok(a.clone());
    }
    Ok(primitive(&a.exact_div(&g)?))
}

fn z_curve_qtx(num: &QTX, den: &QTX) -> Result<(QTX, ExceptionalSet)> {
    z_curve(&kx_from_qtx(num), &kx_from_qtx(den))
}

/// A family map over `Q(t)` with its numerator and denominator cleared to
/// a jointly primitive pair in `Z[t][x]`.
#[derive(Clone, Debug)]
pub struct CurveFamily {
    pub name: String,
    pub phi: RationalMap<RatFunc>,
    p: QTX,
    q: QTX,
    bad: ExceptionalSet,
    discriminants: Arc<Mutex<BTreeMap<usize, Locus>>>,
}

impl CurveFamily {
    pub fn new(name: impl Into<String>, phi: RationalMap<RatFunc>) -> Result<Self> {
        let u = RatFunc::normalizer(&phi.num().coeffs().iter().chain(phi.den().coeffs()).cloned().collect::<Vec<_>>());
        let clear = |f: &KX| f.scale(&u).map(|c| c.num().clone());
        let (p, q) = (clear(phi.num()), clear(phi.den()));
        let bad = bad_set(&phi)?;
        Ok(CurveFamily { name: name.into(), phi, p, q, bad, discriminants: Default::default() })
    }

    pub fn from_family(id: FamilyId) -> Result<Self> {
        Self::new(id.tag(), id.symbolic())
    }

    pub fn bad(&self) -> &ExceptionalSet {
        &self.bad
    }

    /// `(p_k, q_k)` for `k ≤ n`.
    pub fn pairs(&self, n: usize) -> Vec<(QTX, QTX)> {
        iterate_pairs(&self.p, &self.q, n)
    }

    /// `Δ_n` of the primitive `Φ_n`, computed once per family.
    fn discriminant_locus(&self, phi_n: &QTX, n: usize) -> Result<Locus> {
        if let Some(l) = self.discriminants.lock().expect("discriminant cache").get(&n) {
            return Ok(l.clone());
        }
        let disc = qtx_discriminant(&primitive(phi_n))?;
        if disc.is_zero() {
            return Err(Error::Precondition(format!("the discriminant of Phi_{n} vanishes identically")));
        }
        let l = Locus::new("discriminant", disc.normalized());
        self.discriminants.lock().expect("discriminant cache").insert(n, l.clone());
        Ok(l)
    }

    fn model(&self, tag: CurveTag, (poly, exceptional): (QTX, ExceptionalSet), loci: Vec<Locus>) -> PlaneCurveModel {
        PlaneCurveModel {
            tag,
            source: self.name.clone(),
            poly,
            exceptional,
            bad: self.bad.clone(),
            loci,
            note: String::new(),
        }
    }

    /// Orbit of `start` as points over `Q(t)`; `n` points.
    pub fn orbit(&self, start: &Pt<RatFunc>, n: usize) -> Vec<Pt<RatFunc>> {
        let mut out = vec![start.clone()];
        while out.len() < n {
            let next = self.phi.eval(out.last().unwrap());
            out.push(next);
        }
        out
    }
}

/// `B(φ)`: zeros and poles of the content, roots of both leading
/// coefficients, and roots of `Res_x(A, B)`.
pub fn bad_set(phi: &RationalMap<RatFunc>) -> Result<ExceptionalSet> {
    let s = content_split(phi.num(), phi.den())?;
    let res = qtx_resultant(&s.a, &s.b)?;
    ExceptionalSet::from_factors([&s.p_num, &s.p_den, &s.a.lc(), &s.b.lc(), &res])
}

fn primitive(p: &QTX) -> QTX {
    qtx_normalize(p).0
}

/// `Y₁(n)`, with the discriminant `Δ_n` stored as a locus.
pub fn build_dynatomic_curve(fam: &CurveFamily, n: usize) -> Result<PlaneCurveModel> {
    if n == 0 {
        return Err(Error::Precondition("period must be positive".into()));
    }
    let pairs = fam.pairs(n);
    let phi_n = dynatomic_raw(&pairs, n)?;
    let disc = fam.discriminant_locus(&phi_n, n)?;
    let z = z_curve_qtx(&phi_n, &QTX::one())?;
    Ok(fam.model(CurveTag::Dynatomic { n }, z, vec![disc]))
}

/// `Y₁(m, n)` with `Δ_n` and `λᵢ = Res_x(Φ_{m,n}, Φ_{i,n})` for `1 ≤ i < m`.
pub fn build_gen_dynatomic_curve(fam: &CurveFamily, m: usize, n: usize) -> Result<PlaneCurveModel> {
    if m == 0 || n == 0 {
        return Err(Error::Precondition("m and n must be positive".into()));
    }
    let pairs = fam.pairs(m.max(n));
    let phi_n = dynatomic_raw(&pairs, n)?;
    let mut loci = vec![fam.discriminant_locus(&phi_n, n)?];
    let f = gen_dynatomic_raw(&phi_n, &pairs, m)?;
    for i in 1..m {
        let g = gen_dynatomic_raw(&phi_n, &pairs, i)?;
        let lambda = qtx_resultant(&primitive(&f), &primitive(&g))?;
        if lambda.is_zero() {
            return Err(Error::VanishingLambda(i));
        }
        loci.push(Locus::new(format!("lambda_{i}"), lambda.normalized()));
    }
    let z = z_curve_qtx(&f, &QTX::one())?;
    Ok(fam.model(CurveTag::Generalized { m, n }, z, loci))
}

/// Nonvanishing of `Res_x(a, b)`, proven by one good specialization when
/// possible.
fn resultant_nonzero(a: &QTX, b: &QTX) -> Result<bool> {
    let (la, lb) = (a.lc(), b.lc());
    for t in crate::poly::bivariate::sample_points().take(4) {
        if la.eval(&t).is_zero() || lb.eval(&t).is_zero() {
            continue;
        }
        if !specialize_qtx(a, &t).resultant(&specialize_qtx(b, &t)).is_zero() {
            return Ok(true);
        }
    }
    Ok(!qtx_resultant(a, b)?.is_zero())
}

/// `Y_τ(n)`, the `Z_f` model of the trace polynomial `T_n`.
///
/// `T_n` is recovered from the trace polynomials of specialized maps by
/// rational reconstruction of each coefficient and then checked at further
/// specializations.
pub fn build_trace_curve(fam: &CurveFamily, n: usize) -> Result<PlaneCurveModel> {
    if n == 0 {
        return Err(Error::Precondition("period must be positive".into()));
    }
    let pairs = fam.pairs(n);
    let phi_n = dynatomic_raw(&pairs, n)?;
    let disc = fam.discriminant_locus(&phi_n, n)?;
    if fam.phi.infinity_has_period(n) {
        return Err(Error::Precondition(format!("infinity is {n}-periodic")));
    }
    // the reduced denominator of τ divides the product of the q_i
    let prim = primitive(&phi_n);
    for (i, (_, q)) in pairs.iter().enumerate().take(n).skip(1) {
        if q.deg() > 0 && !resultant_nonzero(&prim, q)? {
            return Err(Error::Precondition(format!("Phi_{n} shares a root with the denominator of phi^{i}")));
        }
    }
    let deg = phi_n.deg() as usize;
    if !deg.is_multiple_of(n) {
        return Err(Error::Verification(format!("deg Phi_{n} = {deg} is not divisible by {n}")));
    }
    let phi = &fam.phi;
    let t_n = interpolate_qtx(|c| power_sum_trace(&phi.specialize(c).ok()?, n), deg / n, 1024)?;
    let z = z_curve(&t_n, &KX::one())?;
    Ok(fam.model(CurveTag::Trace { n }, z, vec![disc]))
}

/// `T_n` of a map over Q from the power sums of `τ` over the roots of `Φ_n`:
/// `Tr(τᵏ)` in `Q[y]/(Φ_n)` is `n` times the k-th power sum of the roots of
/// `T_n`. `None` when `Φ_n` is not squarefree, `∞` is `n`-periodic, or a
/// root of `Φ_n` is a pole of `τ`.
pub fn power_sum_trace(phi: &RationalMap<Rational>, n: usize) -> Option<QX> {
    if phi.infinity_has_period(n) {
        return None;
    }
    let f = phi.dynatomic(n).ok()?.poly.monic();
    let d = f.deg() as usize;
    if !d.is_multiple_of(n) || f.discriminant().is_zero() {
        return None;
    }
    let (q, h) = phi.cycle_trace(n);
    let r = divide_mod(&q, &h, &f)?;
    // power sums s_j of the roots of f, j < d
    let a = |i: usize| f.coeff(i);
    let mut ps: Vec<Rational> = vec![Rational::from_integer((d as i64).into())];
    for k in 1..d {
        let mut acc = a(d - k).mul(&Rational::from_integer((k as i64).into()));
        for i in 1..k {
            acc = acc.add(&a(d - i).mul(&ps[k - i]));
        }
        ps.push(acc.neg());
    }
    let m = d / n;
    let nq = Rational::from_integer((n as i64).into());
    let mut pk = Vec::with_capacity(m);
    let mut rk = QX::one();
    for _ in 0..m {
        rk = rk.mul(&r).rem(&f);
        let tr = rk.coeffs().iter().zip(&ps).fold(Rational::zero(), |acc, (c, s)| acc.add(&c.mul(s)));
        pk.push(tr.div(&nq));
    }
    // Newton's identities for the elementary symmetric functions
    let mut e = vec![Rational::one()];
    for k in 1..=m {
        let mut acc = Rational::zero();
        for i in 1..=k {
            let term = e[k - i].mul(&pk[i - 1]);
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        e.push(acc.div(&Rational::from_integer((k as i64).into())));
    }
    let coeffs: Vec<Rational> = (0..=m).map(|i| if (m - i).is_multiple_of(2) { e[m - i].clone() } else { e[m - i].neg() }).collect();
    Some(QX::new(coeffs))
}

/// `q/h` in `Q[y]/(f)` by solving the multiplication-by-`h` system, or
/// `None` when `h` is a zero divisor.
fn divide_mod(q: &QX, h: &QX, f: &QX) -> Option<QX> {
    let d = f.deg() as usize;
    let mut cols = Vec::with_capacity(d);
    let mut v = h.rem(f);
    for _ in 0..d {
        cols.push(v.clone());
        v = v.shift(1).rem(f);
    }
    // rows of [M_h | q]
    let mut m: Vec<Vec<Rational>> =
        (0..d).map(|i| cols.iter().map(|c| c.coeff(i)).chain([q.rem(f).coeff(i)]).collect()).collect();
    for col in 0..d {
        let piv = (col..d).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].inv();
        for x in m[col].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let k = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = x.sub(&k.mul(p));
                }
            }
        }
    }
    Some(QX::new(m.into_iter().map(|row| row[d].clone()).collect()))
}

/// `Y(m, P)`: the curve `φᵐ = P`, from `f = φᵐ - P`, or `1/φᵐ` at `P = ∞`.
pub fn build_preimage_curve(fam: &CurveFamily, m: usize, point: &Pt<RatFunc>) -> Result<PlaneCurveModel> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    let pairs = fam.pairs(m);
    let (pm, qm) = &pairs[m];
    let mut loci = Vec::new();
    let (num, den) = match point {
        Pt::Inf => (qm.clone(), pm.clone()),
        Pt::Fin(r) => {
            let (rn, rd) = (r.num(), r.den());
            if rd.deg() > 0 {
                loci.push(Locus::new("poles of P", rd.normalized()));
            }
            (pm.scale(rd).sub(&qm.scale(rn)), qm.scale(rd))
        }
    };
    if num.is_zero() {
        return Err(Error::ConstantCurve);
    }
    let z = z_curve_qtx(&num, &den)?;
    Ok(fam.model(CurveTag::Preimage { m, point: point.to_string() }, z, loci))
}

/// Same-family fiber product over the parameter line.
pub fn fiber_product(c1: &PlaneCurveModel, c2: &PlaneCurveModel) -> Result<FiberProductModel> {
    if c1.source != c2.source {
        return Err(Error::Precondition(format!("curves come from different maps: {} and {}", c1.source, c2.source)));
    }
    Ok(FiberProductModel { first: c1.clone(), second: c2.clone() })
}

/// The cofactor of a known factor `g`, made primitive.
pub fn divide_known_factor(c: &PlaneCurveModel, g: &QTX) -> Result<PlaneCurveModel> {
    let q = c.poly.exact_div(g).map_err(|_| {
        Error::InexactDivision(format!("{} by {}", c.tag, qtx_to_multi(g).fmt_vars(&["t", "x"])))
    })?;
    if q.deg() < 1 {
        return Err(Error::ConstantCurve);
    }
    let mut out = c.clone();
    out.poly = primitive(&q);
    let part = format!("cofactor of {}", qtx_to_multi(g).fmt_vars(&["t", "x"]));
    out.note = if c.note.is_empty() { part } else { format!("{}; {part}", c.note) };
    Ok(out)
}

/// `x - r` cleared of denominators.
pub fn linear_factor(r: &RatFunc) -> QTX {
    primitive(&QTX::new(vec![r.num().neg(), r.den().clone()]))
}

/// Product of the linear factors `x - x_i` over an orbit of finite points.
pub fn orbit_factors(fam: &CurveFamily, start: &Pt<RatFunc>, n: usize) -> Result<Vec<QTX>> {
    fam.orbit(start, n)
        .iter()
        .map(|p| match p {
            Pt::Fin(r) => Ok(linear_factor(r)),
            Pt::Inf => Err(Error::Precondition("orbit passes through infinity".into())),
        })
        .collect()
}

/// `x - Σ x_i` over an orbit of `n` finite points.
pub fn orbit_trace_factor(fam: &CurveFamily, start: &Pt<RatFunc>, n: usize) -> Result<QTX> {
    let mut s = RatFunc::zero();
    for p in fam.orbit(start, n) {
        match p {
            Pt::Fin(r) => s = s.add(&r),
            Pt::Inf => return Err(Error::Precondition("orbit passes through infinity".into())),
        }
    }
    Ok(linear_factor(&s))
}

/// Named points over `Q(t)` in the period-4 family: the cycle point `B` and
/// the tail points `A` and `Q`, which map to `B` and `t`.
pub fn period4_points() -> Vec<(&'static str, RatFunc)> {
    vec![
        ("B", RatFunc::from_i64s(&[0, -1], &[-1, -1, 1])),
        ("A", RatFunc::from_i64s(&[1], &[1, -1])),
        ("Q", RatFunc::from_i64s(&[0, 1], &[1, 0, -1])),
    ]
}

/// Parses a curve name such as `Y1(4)`, `Y1(2,2)`, `Ytau(4)` or `Y(2,inf)`;
/// preimage points are `inf`, a rational function of `t`, or (for the
/// period-4 family) one of `A`, `B`, `Q`.
pub fn build_named_curve(fam: &CurveFamily, name: &str) -> Result<PlaneCurveModel> {
    let bad = || Error::Other(format!("unknown curve name {name:?}"));
    let open = name.find('(').ok_or_else(bad)?;
    let args = name[open + 1..].strip_suffix(')').ok_or_else(bad)?;
    let parts: Vec<&str> = args.split(',').map(str::trim).collect();
    let int = |s: &str| s.parse::<usize>().map_err(|_| bad());
    match (&name[..open], parts.as_slice()) {
        ("Y1", [n]) => build_dynatomic_curve(fam, int(n)?),
        ("Y1", [m, n]) => build_gen_dynatomic_curve(fam, int(m)?, int(n)?),
        ("Ytau", [n]) => build_trace_curve(fam, int(n)?),
        ("Y", [m, p]) => {
            let point = named_point(fam, p)?;
            build_preimage_curve(fam, int(m)?, &point)
        }
        _ => Err(bad()),
    }
}

fn named_point(fam: &CurveFamily, p: &str) -> Result<Pt<RatFunc>> {
    if p == "inf" {
        return Ok(Pt::Inf);
    }
    if fam.name == FamilyId::Period4.tag() {
        if let Some((_, r)) = period4_points().into_iter().find(|(n, _)| *n == p) {
            return Ok(Pt::Fin(r));
        }
    }
    let e = crate::cli::parse_expr(p)?;
    Ok(Pt::Fin(e.to_ratfunc()?))
}

/// The standard set of models for a family.
pub const DEFAULT_DUMP: [&str; 9] = ["Y1(1)", "Y1(2)", "Y1(3)", "Y1(2,2)", "Ytau(2)", "Y(1,inf)", "Y(2,inf)", "Y(1,A)", "Y(1,Q)"];

/// All requested models of one family in a single JSON document; curves
/// whose construction fails are reported with their error.
pub fn curve_dump(fam: &CurveFamily, names: &[&str]) -> Value {
    let curves: Vec<Value> = names
        .iter()
        .map(|n| match build_named_curve(fam, n) {
            Ok(c) => c.to_json(),
            Err(e) => json!({ "tag": n, "error": e.to_string(), "kind": e.kind() }),
        })
        .collect();
    json!({
        "family": fam.name,
        "map": fam.phi.to_string(),
        "bad": fam.bad.to_json(),
        "curves": curves,
    })
}
