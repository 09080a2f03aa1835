use once_cell::sync::Lazy;
use serde::Serialize;

use super::{portrait, FieldDesc, Portrait, PortraitClass, PortraitOptions};
use crate::arith::{parse_rational, Rational};
use crate::dynamics::PointField;
use crate::moduli::{family_map, psi_engine_portrait, FamilyId};

pub const NOVEL: &str = "novel";

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    /// Map family the representative comes from.
    pub family: &'static str,
    pub representative: &'static str,
    pub field: String,
    pub class: PortraitClass,
}

const PERIOD4_REPS: [(&str, &str); 5] = [("I1", "2"), ("I2", "-11/3"), ("I3", "3/2"), ("F1", "1/6"), ("F2", "5/2")];
const PSI_REPS: [(&str, &str); 4] = [("P1", "9/2"), ("P2", "81/8"), ("P3", "2"), ("P4", "400/343")];

fn rep(c: &str) -> Rational {
    parse_rational(c).expect("catalog parameters parse")
}

static CATALOG: Lazy<Vec<CatalogEntry>> = Lazy::new(|| {
    let mut out = Vec::new();
    for (name, c) in PERIOD4_REPS {
        let phi = family_map(FamilyId::Period4, &rep(c)).expect("admissible representative");
        let g = portrait(&phi, &FieldDesc::Rational, PortraitOptions::default()).expect("representative portrait");
        out.push(CatalogEntry { name, family: "period4", representative: c, field: "Q".into(), class: g.class() });
    }
    for (name, c) in PSI_REPS {
        let g = psi_engine_portrait(&rep(c)).expect("representative portrait");
        out.push(CatalogEntry {
            name,
            family: "period2-symmetric",
            representative: c,
            field: g.field.to_string(),
            class: g.class(),
        });
    }
    out
});

/// Named portraits, built from their representative parameters on first use.
pub fn catalog() -> &'static [CatalogEntry] {
    &CATALOG
}

pub fn classify_class(class: &PortraitClass) -> Option<&'static CatalogEntry> {
    catalog().iter().find(|e| e.class.certificate == class.certificate)
}

/// Catalog name of the portrait, or `"novel"`.
pub fn classify<F: PointField>(g: &Portrait<F>) -> &'static str {
    classify_class(&g.class()).map_or(NOVEL, |e| e.name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::portraits::canonical_form;

    fn period4(c: &str) -> Portrait<Rational> {
        let phi = family_map(FamilyId::Period4, &rep(c)).unwrap();
        portrait(&phi, &FieldDesc::Rational, PortraitOptions::default()).unwrap()
    }

    #[test]
    fn catalog_entries_are_distinct() {
        let cat = catalog();
        assert_eq!(cat.len(), 9);
        for (i, a) in cat.iter().enumerate() {
            for b in &cat[i + 1..] {
                assert_ne!(a.class.certificate, b.class.certificate, "{} vs {}", a.name, b.name);
            }
        }
    }

    #[test]
    fn period4_catalog_counts() {
        let want = [("I1", 7, vec![4]), ("I2", 9, vec![4]), ("I3", 11, vec![4, 2]), ("F1", 9, vec![4, 1]), ("F2", 13, vec![4, 2])];
        for (name, n, cyc) in want {
            let e = catalog().iter().find(|e| e.name == name).unwrap();
            assert_eq!((e.class.vertices, e.class.edges, &e.class.cycle_lengths), (n, n, &cyc), "{name}");
        }
    }

    #[test]
    fn psi_catalog_counts() {
        for (name, n) in [("P1", 2), ("P2", 4), ("P3", 6), ("P4", 8)] {
            let e = catalog().iter().find(|e| e.name == name).unwrap();
            assert_eq!(e.class.vertices, n, "{name}");
        }
    }

    #[test]
    fn i1_isomorphism_between_parameters() {
        // the vertex t ↦ (0, 1, t, B, ∞, A, Q) matched across parameters
        let shape = |t: Rational| -> Vec<String> {
            let one = Rational::from_integer(1.into());
            let b = -&t / (&t * &t - &t - &one);
            let a = &one / (&one - &t);
            let q = &t / (&one - &t * &t);
            let mut v: Vec<String> = [Rational::from_integer(0.into()), one, t, b, a, q].iter().map(crate::arith::fmt_rational).collect();
            v.insert(4, "inf".into());
            v
        };
        let (g2, g3) = (period4("2"), period4("3"));
        let (s2, s3) = (shape(rep("2")), shape(rep("3")));
        let iso = |i: usize| -> usize {
            let k = s2.iter().position(|l| *l == g2.labels()[i]).unwrap();
            g3.labels().iter().position(|l| *l == s3[k]).unwrap()
        };
        assert_eq!(g2.vertices.len(), 7);
        assert_eq!(g3.vertices.len(), 7);
        for i in 0..7 {
            assert_eq!(iso(g2.succ[i]), g3.succ[iso(i)]);
        }
        assert_eq!(g2.class().certificate, g3.class().certificate);
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&period4("2")), "I1");
        assert_eq!(classify(&period4("3")), "I1");
        assert_eq!(classify(&period4("-11/3")), "I2");
        assert_eq!(classify(&period4("3/2")), "I3");
        assert_ne!(period4("2").class(), period4("3/2").class());
        let five = canonical_form(&[1, 2, 3, 4, 0]);
        assert!(classify_class(&five).is_none());
    }
}
