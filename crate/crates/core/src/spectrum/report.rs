use std::fmt::Write;

use serde_json::{json, Value};

use crate::error::Result;
use crate::ring::{Ideal, Ring};

fn gens_json(r: &Ring, i: &Ideal) -> Value {
    Value::Array(i.gens().iter().map(|g| r.literal(*g)).collect())
}

/// `{"spec":[…],"pspec":[{"primes":[…],"pure_ideal":[…]}],"boolean_ring_size":k}`.
///
/// Ideals are listed by generators; `pure_ideal_elements` adds the member list.
pub fn spectrum_json(r: &Ring) -> Result<Value> {
    let s = r.spectrum()?;
    let spec: Vec<Value> = s
        .points
        .iter()
        .map(|p| {
            json!({
                "generators": gens_json(r, &p.prime),
                "maximal": p.is_maximal,
                "minimal": p.is_minimal,
            })
        })
        .collect();
    let pspec: Vec<Value> = s
        .blocks
        .iter()
        .map(|b| {
            json!({
                "primes": b.primes.iter().map(|&i| gens_json(r, &s.points[i].prime)).collect::<Vec<_>>(),
                "pure_ideal": gens_json(r, &b.pure_ideal),
                "pure_ideal_elements": b.pure_ideal.elements().map(|e| r.literal(e)).collect::<Vec<_>>(),
                "idempotent": r.literal(b.idempotent),
            })
        })
        .collect();
    Ok(json!({
        "ring": r.name(),
        "spec": spec,
        "pspec": pspec,
        "boolean_ring_size": r.idempotents().len(),
    }))
}

/// Specialization poset in DOT: covering inclusions as edges, blocks as clusters.
pub fn dot(r: &Ring) -> Result<String> {
    let s = r.spectrum()?;
    let n = s.points.len();
    let label = |i: usize| {
        let g: Vec<String> = s.points[i].prime.gens().iter().map(|e| r.fmt_elem(*e)).collect();
        format!("({})", g.join(", ")).replace('"', "\\\"")
    };
    let mut out = String::new();
    writeln!(out, "digraph pspec {{").unwrap();
    writeln!(out, "  label=\"{}\";", r.name().replace('"', "\\\"")).unwrap();
    for (b, block) in s.blocks.iter().enumerate() {
        writeln!(out, "  subgraph cluster_{b} {{").unwrap();
        writeln!(out, "    label=\"x{b}\";").unwrap();
        for &i in &block.primes {
            writeln!(out, "    p{i} [label=\"{}\"];", label(i)).unwrap();
        }
        writeln!(out, "  }}").unwrap();
    }
    let lt = |i: usize, j: usize| i != j && s.points[i].prime.is_subset(&s.points[j].prime);
    for i in 0..n {
        for j in 0..n {
            if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                writeln!(out, "  p{i} -> p{j};").unwrap();
            }
        }
    }
    writeln!(out, "}}").unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_shape() {
        let r = Ring::zmod(6).unwrap();
        let v = spectrum_json(&r).unwrap();
        assert_eq!(v["spec"].as_array().unwrap().len(), 2);
        assert_eq!(v["pspec"][0]["pure_ideal_elements"], json!([0, 2, 4]));
        assert_eq!(v["boolean_ring_size"], json!(4));
        let d = dot(&r).unwrap();
        assert!(d.contains("cluster_0") && d.contains("cluster_1"));
    }
}
