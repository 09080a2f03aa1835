//! Preperiodic portraits of quadratic maps over Q and Q(√d).

mod canon;
mod catalog;
pub mod census;
mod export;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::arith::{quad_sqrt, rational_sqrt, rational_squarefree_decomposition, Integer, Quad, Rational};
use crate::dynamics::{dynatomic_raw, iterate_pairs, PointField, Pt, RationalMap};
use crate::error::{Error, Result};
use crate::poly::{quadratic_factors, rational_roots, UniPoly};
use crate::ring::Ring;

pub use canon::{canonical_form, components, Component, PortraitClass};
pub use catalog::{catalog, classify, classify_class, CatalogEntry, NOVEL};
pub use census::{census, census_parameters, CensusOptions, CensusRecord, CensusReport};
pub use export::{to_dot, to_json};

type QX = UniPoly<Rational>;

pub const DEFAULT_N_MAX: usize = 4;
pub const DEFAULT_VERTEX_CAP: usize = 4096;

/// The field a portrait is computed over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldDesc {
    Rational,
    /// `Q(√d)` for squarefree `d ∉ {0, 1}`.
    Quadratic(Integer),
}

impl FieldDesc {
    pub fn quadratic_d(&self) -> Option<&Integer> {
        match self {
            FieldDesc::Rational => None,
            FieldDesc::Quadratic(d) => Some(d),
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rational => write!(f, "Q"),
            FieldDesc::Quadratic(d) => write!(f, "Q(sqrt({d}))"),
        }
    }
}

/// Coefficient fields the portrait engine can solve equations in.
pub trait PortraitField: PointField {
    fn sqrt_in(&self, field: &FieldDesc) -> Option<Self>;
    /// Distinct roots of `f` lying in `field`.
    fn roots_in(f: &UniPoly<Self>, field: &FieldDesc) -> Result<Vec<Self>>;
}

impl PortraitField for Rational {
    fn sqrt_in(&self, _: &FieldDesc) -> Option<Self> {
        rational_sqrt(self)
    }

    fn roots_in(f: &QX, _: &FieldDesc) -> Result<Vec<Self>> {
        let mut r = rational_roots(f);
        r.dedup();
        Ok(r)
    }
}

impl PortraitField for Quad {
    fn sqrt_in(&self, field: &FieldDesc) -> Option<Self> {
        match field.quadratic_d() {
            Some(d) if self.is_rational() => quad_sqrt(&Quad::in_field(d, self.u().clone())),
            _ => quad_sqrt(self),
        }
    }

    fn roots_in(f: &UniPoly<Quad>, field: &FieldDesc) -> Result<Vec<Self>> {
        let Some(d) = field.quadratic_d() else {
            let fq = to_rational_poly(f)?;
            return Ok(Rational::roots_in(&fq, field)?.into_iter().map(Quad::rational).collect());
        };
        // every root in K is a root of the norm f·f̄ ∈ Q[x] whose minimal
        // polynomial over Q has degree at most two
        let norm = to_rational_poly(&f.mul(&f.map(|c| c.conj())))?;
        let mut rest = norm.squarefree_part();
        let mut cands = Vec::new();
        for r in Rational::roots_in(&rest, field)? {
            rest = rest.exact_div(&QX::linear_root(&r))?;
            cands.push(Quad::in_field(d, r));
        }
        for g in quadratic_factors(&rest) {
            let (a, b, c) = (g.coeff(2), g.coeff(1), g.coeff(0));
            let disc = &b * &b - Rational::from_integer(4.into()) * &a * &c;
            let (dd, w) = rational_squarefree_decomposition(&disc);
            if &dd != d {
                continue;
            }
            let two_a = &a + &a;
            let u = -&b / &two_a;
            let v = w / &two_a;
            let root = Quad::new(d.clone(), u, v)?;
            cands.push(root.conj());
            cands.push(root);
        }
        cands.retain(|x| f.eval(x).is_zero());
        cands.sort();
        cands.dedup();
        Ok(cands)
    }
}

fn to_rational_poly(f: &UniPoly<Quad>) -> Result<QX> {
    f.try_map(|c| {
        if c.is_rational() {
            Ok(c.u().clone())
        } else {
            Err(Error::Precondition("polynomial over Q(sqrt(d)) used where Q was declared".into()))
        }
    })
}

/// Periodic points of period at most `n_max`, each with its exact period.
pub fn rational_periodic_points<F: PortraitField>(
    phi: &RationalMap<F>,
    field: &FieldDesc,
    n_max: usize,
) -> Result<Vec<(Pt<F>, usize)>> {
    if n_max == 0 {
        return Err(Error::Precondition("n_max must be at least 1".into()));
    }
    let pairs = iterate_pairs(phi.num(), phi.den(), n_max);
    let mut found = BTreeMap::new();
    for n in 1..=n_max {
        let phi_n = dynatomic_raw(&pairs, n)?.normalized();
        for x in F::roots_in(&phi_n, field)? {
            let p = Pt::Fin(x);
            if let Some(k) = phi.exact_period(&p, n) {
                found.insert(p, k);
            }
        }
    }
    if let Some(k) = phi.exact_period(&Pt::Inf, n_max) {
        found.insert(Pt::Inf, k);
    }
    Ok(found.into_iter().collect())
}

/// Roots of a polynomial of degree at most two by the quadratic formula.
fn small_roots<F: PortraitField>(g: &UniPoly<F>, field: &FieldDesc) -> Result<Vec<F>> {
    match g.deg() {
        d if d <= 0 => Ok(vec![]),
        1 => Ok(vec![g.coeff(0).neg().div(&g.coeff(1))]),
        2 => {
            let (a, b, c) = (g.coeff(2), g.coeff(1), g.coeff(0));
            let disc = b.mul(&b).sub(&F::from_i64(4).mul(&a).mul(&c));
            let Some(s) = disc.sqrt_in(field) else { return Ok(vec![]) };
            let two_a = a.add(&a);
            let mut r = vec![b.neg().add(&s).div(&two_a), b.neg().sub(&s).div(&two_a)];
            r.sort();
            r.dedup();
            Ok(r)
        }
        _ => F::roots_in(g, field),
    }
}

/// All solutions of `φ(x) = p` in the field, `∞` included.
pub fn rational_preimages<F: PortraitField>(phi: &RationalMap<F>, field: &FieldDesc, p: &Pt<F>) -> Result<Vec<Pt<F>>> {
    let g = match p {
        Pt::Inf => phi.den().clone(),
        Pt::Fin(y) => phi.num().sub(&phi.den().scale(y)),
    };
    let mut out: Vec<Pt<F>> = small_roots(&g, field)?.into_iter().map(Pt::Fin).collect();
    if (g.deg() as usize) < phi.degree() {
        out.push(Pt::Inf);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PortraitOptions {
    pub n_max: usize,
    pub vertex_cap: usize,
}

impl Default for PortraitOptions {
    fn default() -> Self {
        PortraitOptions { n_max: DEFAULT_N_MAX, vertex_cap: DEFAULT_VERTEX_CAP }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PortraitMeta {
    pub family: Option<String>,
    pub parameter: Option<String>,
    pub n_max: usize,
    pub vertex_cap: usize,
    pub assumption: String,
}

/// The preperiodic digraph: `succ[i]` is the index of `φ(vertices[i])`.
#[derive(Clone, Debug, PartialEq)]
pub struct Portrait<F> {
    pub field: FieldDesc,
    pub vertices: Vec<Pt<F>>,
    pub succ: Vec<usize>,
    pub meta: PortraitMeta,
}

impl<F: PointField> Portrait<F> {
    /// Builds a portrait from an explicit vertex set closed under `f`.
    pub fn from_vertices(
        field: FieldDesc,
        vertices: BTreeSet<Pt<F>>,
        f: impl Fn(&Pt<F>) -> Pt<F>,
        meta: PortraitMeta,
    ) -> Result<Self> {
        let vertices: Vec<Pt<F>> = vertices.into_iter().collect();
        let index: BTreeMap<&Pt<F>, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let succ = vertices
            .iter()
            .map(|v| {
                let w = f(v);
                index.get(&w).copied().ok_or_else(|| Error::Verification(format!("image of {v} is not a vertex")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Portrait { field, vertices, succ, meta })
    }

    pub fn labels(&self) -> Vec<String> {
        self.vertices.iter().map(|v| v.to_string()).collect()
    }

    pub fn class(&self) -> PortraitClass {
        canonical_form(&self.succ)
    }

    pub fn with_source(mut self, family: &str, parameter: &str) -> Self {
        self.meta.family = Some(family.into());
        self.meta.parameter = Some(parameter.into());
        self
    }
}

fn assumption(n_max: usize, field: &FieldDesc) -> String {
    format!("no {field}-rational periodic point of period greater than {n_max}")
}

/// Periodic points, then closure under preimages.
pub fn portrait<F: PortraitField>(phi: &RationalMap<F>, field: &FieldDesc, opts: PortraitOptions) -> Result<Portrait<F>> {
    if phi.degree() != 2 {
        return Err(Error::Precondition("portraits are computed for degree-2 maps".into()));
    }
    let mut seen: BTreeSet<Pt<F>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for (p, _) in rational_periodic_points(phi, field, opts.n_max)? {
        seen.insert(p.clone());
        queue.push_back(p);
    }
    while let Some(p) = queue.pop_front() {
        for x in rational_preimages(phi, field, &p)? {
            if seen.insert(x.clone()) {
                if seen.len() > opts.vertex_cap {
                    return Err(Error::Budget(format!("closure cap of {} vertices exceeded", opts.vertex_cap)));
                }
                queue.push_back(x);
            }
        }
    }
    let meta = PortraitMeta {
        family: None,
        parameter: None,
        n_max: opts.n_max,
        vertex_cap: opts.vertex_cap,
        assumption: assumption(opts.n_max, field),
    };
    Portrait::from_vertices(field.clone(), seen, |v| phi.eval(v), meta)
}

/// A map over Q read as a map over `field`.
pub fn lift_map(phi: &RationalMap<Rational>, field: &FieldDesc) -> Result<RationalMap<Quad>> {
    let d = field.quadratic_d().cloned().unwrap_or_default();
    phi.try_map_coeffs(|c| Ok(Quad::in_field(&d, c.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use crate::ring::Field;
    use crate::moduli::{family_map, FamilyId};

    fn phi(c: Rational) -> RationalMap<Rational> {
        family_map(FamilyId::Period4, &c).unwrap()
    }

    fn fin(x: Rational) -> Pt<Rational> {
        Pt::Fin(x)
    }

    #[test]
    fn periodic_points_of_phi2() {
        let pts = rational_periodic_points(&phi(rat_int(2)), &FieldDesc::Rational, 4).unwrap();
        let want: Vec<_> = [-2, 0, 1, 2].iter().map(|&n| (Pt::from_i64(n), 4)).collect();
        assert_eq!(pts, want);
    }

    #[test]
    fn fixed_point_at_one_sixth() {
        let pts = rational_periodic_points(&phi(rat(1, 6)), &FieldDesc::Rational, 1).unwrap();
        // roots of 175x³ + 41x² − 47x + 6
        let oracle = rational_roots(&QX::from_i64s(&[6, -47, 41, 175]));
        assert_eq!(oracle, vec![rat(2, 7)]);
        assert_eq!(pts, vec![(fin(rat(2, 7)), 1)]);
    }

    #[test]
    fn preimages_under_phi2() {
        let m = phi(rat_int(2));
        let pre = |p| rational_preimages(&m, &FieldDesc::Rational, &p).unwrap();
        assert_eq!(pre(Pt::from_i64(2)), vec![fin(rat(-2, 3)), Pt::from_i64(1)]);
        assert_eq!(pre(Pt::from_i64(1)), vec![Pt::from_i64(0)]);
        assert_eq!(pre(Pt::from_i64(-1)), vec![]);
        for v in [-2, 0, 1, 2] {
            for x in pre(Pt::from_i64(v)) {
                assert_eq!(m.eval(&x), Pt::from_i64(v));
            }
        }
    }

    #[test]
    fn inverse_square_twist_over_gaussian_field() {
        let d = FieldDesc::Quadratic((-1).into());
        let i = Quad::sqrt_of(-1);
        let m = RationalMap::new(UniPoly::constant(i.clone()), UniPoly::monomial(Quad::one(), 2)).unwrap();
        let pts = rational_periodic_points(&m, &d, 2).unwrap();
        let minus_i = i.neg();
        assert_eq!(pts, vec![(Pt::Fin(minus_i.clone()), 1), (Pt::Fin(Quad::zero()), 2), (Pt::Inf, 2)]);
        // direct iteration oracle: i/(-i)² = -i
        assert_eq!(i.div(&minus_i.mul(&minus_i)), minus_i);
    }

    #[test]
    fn phi2_portrait() {
        let g = portrait(&phi(rat_int(2)), &FieldDesc::Rational, PortraitOptions::default()).unwrap();
        assert_eq!(g.labels(), vec!["-2", "-1", "-2/3", "0", "1", "2", "inf"]);
        let c = g.class();
        assert_eq!((c.vertices, c.edges, c.cycle_lengths.clone()), (7, 7, vec![4]));
        assert!(g.meta.assumption.contains("greater than 4"));
    }

    #[test]
    fn f2_portrait() {
        let g = portrait(&phi(rat(5, 2)), &FieldDesc::Rational, PortraitOptions::default()).unwrap();
        assert_eq!(g.vertices.len(), 13);
        assert_eq!(g.class().cycle_lengths, vec![4, 2]);
    }

    #[test]
    fn closure_cap() {
        let opts = PortraitOptions { n_max: 4, vertex_cap: 5 };
        let r = portrait(&phi(rat_int(2)), &FieldDesc::Rational, opts);
        assert!(matches!(r, Err(Error::Budget(_))));
    }

    #[test]
    fn quadratic_roots_via_norm() {
        let d = FieldDesc::Quadratic((-3).into());
        // x² + x + 1 over Q(√-3)
        let f = UniPoly::new(vec![Quad::one(), Quad::one(), Quad::one()]);
        let r = Quad::roots_in(&f, &d).unwrap();
        assert_eq!(r.len(), 2);
        for x in &r {
            assert!(f.eval(x).is_zero());
        }
        let g = UniPoly::new(vec![Quad::one(), Quad::zero(), Quad::one()]);
        assert!(Quad::roots_in(&g, &d).unwrap().is_empty());
    }
}
