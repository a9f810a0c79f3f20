//! DOT and JSON renderings of knitted quivers.

use std::fmt::Write;

use serde_json::{json, Value};

use super::ARQuiver;
use crate::error::Result;
use crate::literal::print_object;

pub fn to_dot(q: &ARQuiver) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph ar_quiver {{");
    let _ = writeln!(s, "  label=\"{} m={}\";", q.alg, q.m);
    let _ = writeln!(s, "  node [shape=box, fontname=\"monospace\"];");
    for x in &q.nodes {
        let mut attrs = format!("label=\"{}\"", x.dimvec);
        if x.flags.projective {
            attrs.push_str(", color=blue");
        } else if x.flags.injective {
            attrs.push_str(", color=red");
        }
        let _ = writeln!(s, "  n{} [{attrs}];", x.id);
    }
    for &(a, b) in &q.arrows {
        let _ = writeln!(s, "  n{a} -> n{b};");
    }
    for &(c, t) in &q.tau_pairs {
        let _ = writeln!(s, "  n{c} -> n{t} [style=dashed, constraint=false];");
    }
    s.push_str("}\n");
    s
}

pub fn to_value(q: &ARQuiver, closed: bool) -> Result<Value> {
    let mut nodes = Vec::with_capacity(q.nodes.len());
    for x in &q.nodes {
        let mut v = json!({
            "id": x.id,
            "dimvec": x.dimvec.rows(),
            "flags": x.flags,
        });
        if let Some(o) = &x.object {
            v["object"] = Value::String(print_object(o)?);
        }
        if let Some(l) = &x.label {
            v["label"] = Value::String(l.clone());
        }
        nodes.push(v);
    }
    Ok(json!({
        "algebra": q.alg,
        "m": q.m,
        "closed": closed,
        "nodes": nodes,
        "arrows": q.arrows,
        "tau_pairs": q.tau_pairs,
    }))
}

pub fn to_json(q: &ARQuiver, closed: bool) -> Result<String> {
    let v = to_value(q, closed)?;
    Ok(serde_json::to_string_pretty(&v).expect("JSON values always serialize"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraDesc;
    use crate::knitting::{knit_exact, Direction};

    #[test]
    fn renders_both_formats() {
        let a = AlgebraDesc::linear(3, 2).unwrap();
        let r = knit_exact(&a, 2, 100, Direction::Forward).unwrap();
        let dot = to_dot(&r.quiver);
        assert!(dot.contains("label=\"(1,0,0 | 0,0,0)\""));
        assert!(dot.contains("style=dashed"));
        assert_eq!(dot.matches(" -> ").count(), r.quiver.arrows.len() + r.quiver.tau_pairs.len());
        let v: Value = serde_json::from_str(&to_json(&r.quiver, r.closed).unwrap()).unwrap();
        assert_eq!(v["algebra"]["shape"], "linear");
        assert_eq!(v["nodes"].as_array().unwrap().len(), 11);
        assert_eq!(v["nodes"][0]["object"], "P0");
        assert!(v["nodes"].as_array().unwrap().iter().any(|x| x["object"] == "[P1->P2]"));
        assert_eq!(to_json(&r.quiver, true).unwrap(), to_json(&r.quiver, true).unwrap());
    }
}
