//! JSON encodings. Rationals are `"num/den"` strings throughout; key order
//! is fixed so identical invocations emit identical bytes.

use affchar_core::rat::{to_frac_string, Rat};
use affchar_core::series::{BiSeries, QSeries};
use affchar_core::structure::{LoewyDiagram, Shade, StaggeredDescriptor};
use affchar_core::weights::{KacCell, Level};
use num_traits::Zero;
use serde_json::{json, Map, Value};

fn frac(x: &Rat) -> Value {
    Value::String(to_frac_string(x))
}

/// `{q_shift, z_shift, q_max, z_min, z_max, rows: [[dq, [[dz, "num/den"]..]]..]}`
pub fn biseries(s: &BiSeries) -> Value {
    let mut rows: Vec<Value> = Vec::new();
    let mut current: Option<(i64, Vec<Value>)> = None;
    for (dq, dz, c) in s.terms() {
        if c.is_zero() {
            continue;
        }
        match &mut current {
            Some((q, entries)) if *q == dq => entries.push(json!([dz, to_frac_string(c)])),
            _ => {
                if let Some((q, entries)) = current.take() {
                    rows.push(json!([q, entries]));
                }
                current = Some((dq, vec![json!([dz, to_frac_string(c)])]));
            }
        }
    }
    if let Some((q, entries)) = current {
        rows.push(json!([q, entries]));
    }
    let mut obj = Map::new();
    obj.insert("q_shift".into(), frac(s.q_shift()));
    obj.insert("z_shift".into(), frac(s.z_shift()));
    obj.insert("q_max".into(), json!(s.q_max()));
    obj.insert("z_min".into(), json!(s.z_min()));
    obj.insert("z_max".into(), json!(s.z_max()));
    obj.insert("rows".into(), Value::Array(rows));
    Value::Object(obj)
}

/// `{q_shift, q_max, coeffs: [[d, "num/den"]..]}`
pub fn qseries(s: &QSeries) -> Value {
    let coeffs: Vec<Value> = s
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(d, c)| json!([d, to_frac_string(c)]))
        .collect();
    let mut obj = Map::new();
    obj.insert("q_shift".into(), frac(s.shift()));
    obj.insert("q_max".into(), json!(s.q_max()));
    obj.insert("coeffs".into(), Value::Array(coeffs));
    Value::Object(obj)
}

pub fn shade(s: Shade) -> &'static str {
    match s {
        Shade::White => "white",
        Shade::Grey => "grey",
        Shade::Black => "black",
    }
}

/// `{kind, truncated, nodes: [{r, s, j, h, charge, grade, shade}..], edges}`
pub fn loewy(d: &LoewyDiagram) -> Value {
    let nodes: Vec<Value> = d
        .nodes
        .iter()
        .map(|n| {
            json!({
                "r": n.label.r,
                "s": n.label.s,
                "j": to_frac_string(&n.j),
                "h": to_frac_string(&n.h),
                "charge": n.charge,
                "grade": n.grade,
                "shade": shade(n.shade),
            })
        })
        .collect();
    let edges: Vec<Value> = d.edges.iter().map(|(a, b)| json!([a, b])).collect();
    json!({
        "kind": format!("{:?}", d.kind),
        "truncated": d.truncated,
        "nodes": nodes,
        "edges": edges,
    })
}

pub fn kac_table(level: &Level, cells: &[KacCell]) -> Value {
    let rows: Vec<Value> = cells
        .iter()
        .map(|c| {
            json!({
                "r": c.label.r,
                "s": c.label.s,
                "j": to_frac_string(&c.weights.j),
                "h": to_frac_string(&c.weights.h),
                "irreducible": c.irreducible,
                "admissible": c.admissible,
            })
        })
        .collect();
    json!({
        "p": level.p(),
        "pp": level.pp(),
        "t": to_frac_string(&level.t()),
        "k": to_frac_string(&level.k()),
        "cells": rows,
    })
}

pub fn staggered(desc: &StaggeredDescriptor) -> Value {
    json!({
        "name": desc.name,
        "conjecture": desc.conjecture,
        "sign": desc.sign,
        "left": [desc.left.r, desc.left.s],
        "right": [desc.right.r, desc.right.s],
        "shape": format!("{:?}", desc.shape),
        "character_terms": desc.character_terms.iter()
            .map(|(l, m)| json!([l.r, l.s, m]))
            .collect::<Vec<_>>(),
    })
}
