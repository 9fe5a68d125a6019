//! JSON wire formats. Object keys are emitted in sorted order, so equal
//! values serialize to identical bytes.

use std::sync::Arc;

use num::{BigInt, ToPrimitive};
use serde_json::{json, Map, Value};

use crate::autgrp::{Automorphism, Kind};
use crate::contractions::{ContractionSystem, EpsilonAssignment, Monomial, Orbit, SolutionSet};
use crate::cyclo::{CycloNumber, Rational};
use crate::error::{Error, Result};
use crate::gradings::{AbelianGroup, Grading, Labeling};
use crate::liealg::LieAlgebra;
use crate::linalg::{Matrix, Subspace};
use crate::normalizers::Permutation;

fn bad(what: &str) -> Error {
    Error::Parse(format!("malformed {what} JSON"))
}

fn int_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad("integer")),
        Value::String(s) => s.parse().map_err(|_| bad("integer")),
        _ => Err(bad("integer")),
    }
}

/// `{"order":N,"terms":[[num,den,exp],...]}`.
pub fn cyclo_to_json(x: &CycloNumber) -> Value {
    let terms: Vec<Value> = x
        .terms()
        .map(|(q, e)| json!([int_to_json(q.numer()), int_to_json(q.denom()), e]))
        .collect();
    json!({"order": x.order(), "terms": terms})
}

pub fn cyclo_from_json(v: &Value) -> Result<CycloNumber> {
    let order = v
        .get("order")
        .and_then(Value::as_u64)
        .filter(|&o| o > 0 && o <= u32::MAX as u64)
        .ok_or_else(|| bad("scalar"))? as u32;
    let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("scalar"))?;
    let mut out = CycloNumber::zero(order);
    for t in terms {
        let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| bad("scalar term"))?;
        let num = int_from_json(&t[0])?;
        let den = int_from_json(&t[1])?;
        if den == BigInt::from(0) {
            return Err(Error::DivisionByZero);
        }
        let exp = t[2].as_i64().ok_or_else(|| bad("scalar term"))?;
        let term = CycloNumber::root_of_unity(order, exp).scale(&Rational::new(num, den));
        out += &term;
    }
    Ok(out)
}

pub fn vector_to_json(v: &[CycloNumber]) -> Value {
    Value::Array(v.iter().map(cyclo_to_json).collect())
}

pub fn vector_from_json(v: &Value) -> Result<Vec<CycloNumber>> {
    v.as_array()
        .ok_or_else(|| bad("vector"))?
        .iter()
        .map(cyclo_from_json)
        .collect()
}

/// `{"rows":r,"cols":c,"entries":[...]}`, row-major.
pub fn matrix_to_json(m: &Matrix) -> Value {
    json!({"rows": m.rows(), "cols": m.cols(), "entries": vector_to_json(m.entries())})
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix> {
    let rows = v.get("rows").and_then(Value::as_u64).ok_or_else(|| bad("matrix"))? as usize;
    let cols = v.get("cols").and_then(Value::as_u64).ok_or_else(|| bad("matrix"))? as usize;
    let entries = vector_from_json(v.get("entries").ok_or_else(|| bad("matrix"))?)?;
    Matrix::from_vec(rows, cols, entries)
}

/// `{"ambient_dim":d,"basis":[vector,...]}`.
pub fn subspace_to_json(s: &Subspace) -> Value {
    json!({
        "ambient_dim": s.ambient_dim(),
        "basis": s.basis().iter().map(|b| vector_to_json(b)).collect::<Vec<_>>(),
    })
}

pub fn subspace_from_json(v: &Value) -> Result<Subspace> {
    let dim = v.get("ambient_dim").and_then(Value::as_u64).ok_or_else(|| bad("subspace"))? as usize;
    let basis = v
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("subspace"))?
        .iter()
        .map(vector_from_json)
        .collect::<Result<Vec<_>>>()?;
    Subspace::span(dim, basis)
}

/// `{"kind":"inner"|"outer","rep":Matrix}`.
pub fn automorphism_to_json(a: &Automorphism) -> Value {
    json!({"kind": a.kind().as_str(), "rep": matrix_to_json(a.rep())})
}

pub fn automorphism_from_json(alg: &LieAlgebra, v: &Value) -> Result<Automorphism> {
    let kind = match v.get("kind").and_then(Value::as_str) {
        Some("inner") => Kind::Inner,
        Some("outer") => Kind::Outer,
        _ => return Err(bad("automorphism")),
    };
    let rep = matrix_from_json(v.get("rep").ok_or_else(|| bad("automorphism"))?)?;
    Automorphism::new(alg, kind, rep)
}

/// `{"n":3,"parts":[{"name":..,"subspace":..}],"group":[orders],"labels":[[..]]}`;
/// `group` and `labels` are present only for labeled gradings.
pub fn grading_to_json(g: &Grading) -> Value {
    let parts: Vec<Value> = g
        .names()
        .iter()
        .zip(g.parts())
        .map(|(n, p)| json!({"name": n, "subspace": subspace_to_json(p)}))
        .collect();
    let mut obj = Map::new();
    obj.insert("n".into(), json!(g.algebra().n()));
    obj.insert("parts".into(), Value::Array(parts));
    if let Some(l) = g.labeling() {
        obj.insert("group".into(), json!(l.group.orders()));
        obj.insert("labels".into(), json!(l.labels));
    }
    Value::Object(obj)
}

/// Parses a grading; the direct-sum condition is enforced, the grading
/// axiom and labeling additivity are left to the caller.
pub fn grading_from_json(v: &Value) -> Result<Grading> {
    let n = v.get("n").and_then(Value::as_u64).filter(|&n| n >= 2).ok_or_else(|| bad("grading"))? as usize;
    let alg = Arc::new(LieAlgebra::sl(n));
    let parts_json = v.get("parts").and_then(Value::as_array).ok_or_else(|| bad("grading"))?;
    let mut parts = Vec::new();
    let mut names = Vec::new();
    for (i, p) in parts_json.iter().enumerate() {
        names.push(
            p.get("name")
                .and_then(Value::as_str)
                .map_or_else(|| format!("L{i}"), str::to_string),
        );
        parts.push(subspace_from_json(p.get("subspace").ok_or_else(|| bad("grading part"))?)?);
    }
    let mut g = Grading::new(alg, parts)?.with_names(names);
    if let (Some(group), Some(labels)) = (v.get("group"), v.get("labels")) {
        let group: Vec<u32> = serde_json::from_value(group.clone()).map_err(|_| bad("group"))?;
        let labels: Vec<Vec<u32>> = serde_json::from_value(labels.clone()).map_err(|_| bad("labels"))?;
        g = g.with_labeling(Labeling {
            group: AbelianGroup::new(group)?,
            labels,
        })?;
    }
    Ok(g)
}

pub fn permutation_to_json(p: &Permutation) -> Value {
    json!({"mapping": p.mapping(), "cycles": p.cycle_notation()})
}

pub fn assignment_to_json(e: &EpsilonAssignment) -> Value {
    json!(e.to_map())
}

fn monomial_to_json(sys: &ContractionSystem, m: &Monomial) -> Value {
    let (a, b) = (sys.pairs.pair(m.0), sys.pairs.pair(m.1));
    json!([[a.0, a.1], [b.0, b.1]])
}

/// Relations `ε_ij ε_kl = ε_pq ε_rs` with the basis triples producing them.
pub fn equations_to_json(sys: &ContractionSystem) -> Value {
    let eqs: Vec<Value> = sys
        .relations
        .iter()
        .zip(&sys.provenance)
        .map(|(r, prov)| {
            json!({
                "lhs": monomial_to_json(sys, &r.lhs),
                "rhs": monomial_to_json(sys, &r.rhs),
                "provenance": prov.iter().map(|p| json!({
                    "triple": p.triple, "parts": p.parts, "rank": p.rank,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "variables": sys.pairs.pairs(),
        "free_variables": sys.free_variables().iter().map(|&v| sys.pairs.pair(v)).collect::<Vec<_>>(),
        "equations": eqs,
        "inert_triples": sys.inert_triples,
    })
}

pub fn solutions_to_json(sol: &SolutionSet, orbits: Option<&[Orbit]>) -> Value {
    let idx = crate::contractions::PairIndex::new(sol.parts);
    let mut obj = Map::new();
    obj.insert("total".into(), json!(sol.total().to_string()));
    obj.insert(
        "free_variables".into(),
        json!(sol.free.iter().map(|&v| idx.pair(v)).collect::<Vec<_>>()),
    );
    obj.insert(
        "core_solutions".into(),
        Value::Array(sol.core_assignments().map(|a| assignment_to_json(&a)).collect()),
    );
    if let Some(orbits) = orbits {
        obj.insert(
            "orbits".into(),
            Value::Array(
                orbits
                    .iter()
                    .map(|o| json!({"representative": assignment_to_json(&o.representative), "size": o.size}))
                    .collect(),
            ),
        );
    }
    Value::Object(obj)
}
