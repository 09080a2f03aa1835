use std::fmt::Write;

use serde_json::{json, Value};

use super::{classify_class, components, Portrait, NOVEL};
use crate::dynamics::PointField;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT digraph with one cluster subgraph per component, vertices labeled by
/// their exact values.
pub fn to_dot<F: PointField>(g: &Portrait<F>) -> String {
    let labels = g.labels();
    let mut out = String::new();
    let _ = writeln!(out, "digraph portrait {{");
    let _ = writeln!(out, "  label={};", quote(&format!("{} portrait, {} vertices", g.field, labels.len())));
    for (k, comp) in components(&g.succ).iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{k} {{");
        let _ = writeln!(out, "    label={};", quote(&format!("cycle length {}", comp.cycle.len())));
        for &v in &comp.members {
            let _ = writeln!(out, "    {};", quote(&labels[v]));
        }
        for &v in &comp.members {
            let _ = writeln!(out, "    {} -> {};", quote(&labels[v]), quote(&labels[g.succ[v]]));
        }
        let _ = writeln!(out, "  }}");
    }
    let _ = writeln!(out, "}}");
    out
}

pub fn to_json<F: PointField>(g: &Portrait<F>) -> Value {
    let labels = g.labels();
    let class = g.class();
    let comps: Vec<Value> = components(&g.succ)
        .iter()
        .map(|c| {
            json!({
                "cycle": c.cycle.iter().map(|&v| &labels[v]).collect::<Vec<_>>(),
                "vertices": c.members.iter().map(|&v| &labels[v]).collect::<Vec<_>>(),
                "certificate": c.code,
            })
        })
        .collect();
    json!({
        "field": g.field.to_string(),
        "vertices": labels,
        "edges": (0..g.succ.len()).map(|i| [&labels[i], &labels[g.succ[i]]]).collect::<Vec<_>>(),
        "classes": comps,
        "class": {
            "name": classify_class(&class).map_or(NOVEL, |e| e.name),
            "certificate": class.certificate,
            "cycle_lengths": class.cycle_lengths,
        },
        "meta": g.meta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;
    use crate::moduli::{family_map, FamilyId};
    use crate::portraits::{portrait, FieldDesc, PortraitOptions};

    #[test]
    fn exports() {
        let phi = family_map(FamilyId::Period4, &rat_int(2)).unwrap();
        let g = portrait(&phi, &FieldDesc::Rational, PortraitOptions::default()).unwrap();
        let dot = to_dot(&g);
        assert_eq!(dot.matches("digraph").count(), 1);
        assert_eq!(dot.matches("subgraph cluster_").count(), 1);
        assert!(dot.contains("\"-2/3\" -> \"2\";"));
        assert!(dot.contains("\"inf\" -> \"0\";"));
        let j = to_json(&g);
        assert_eq!(j["field"], "Q");
        assert_eq!(j["edges"].as_array().unwrap().len(), 7);
        assert_eq!(j["class"]["name"], "I1");
        assert_eq!(j["meta"]["n_max"], 4);
    }
}
