//! Reports: one JSON document per job, or the equivalent pretty text. Both
//! renderings are deterministic functions of the job and seed.

use std::collections::BTreeMap;

use homolog_core::complex::{ChainMap, FreeComplex, Homotopy};
use homolog_core::fpcomplex::{FpChainMap, FpComplex};
use homolog_core::fpmod::FpModule;
use homolog_core::matrix::Matrix;
use homolog_core::Degree;
use serde_json::{json, Value};

use crate::entry::JsonRing;

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub ring: String,
    pub result: Value,
    pub pretty_lines: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let doc = json!({
            "schema": crate::jobspec::SCHEMA_VERSION,
            "command": self.command,
            "ring": self.ring,
            "status": "ok",
            "result": self.result,
        });
        let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("ring: {}\n", self.ring));
        for line in &self.pretty_lines {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}

/// A matrix in the JSON generator convention (rows are generator images):
/// the transpose of the internal column convention, entries rendered
/// canonically.
pub fn matrix_to_value<R: JsonRing>(m: &Matrix<R>) -> Value {
    let t = m.transpose();
    let rows: Vec<Value> = (0..t.rows())
        .map(|i| {
            Value::Array(
                (0..t.cols())
                    .map(|j| Value::String(t.at(i, j).render_entry()))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

pub fn free_complex_to_value<R: JsonRing>(x: &FreeComplex<R>) -> Value {
    let terms: Vec<Value> = x
        .support()
        .map(|(degree, generators)| json!({"degree": degree, "generators": generators}))
        .collect();
    let mut differentials: Vec<Value> = Vec::new();
    for (i, _) in x.support() {
        if x.rank(i) > 0 && x.rank(i + 1) > 0 {
            differentials.push(json!({"degree": i, "matrix": matrix_to_value(&x.diff(i))}));
        }
    }
    json!({"terms": terms, "differentials": differentials})
}

pub fn fp_complex_to_value<R: JsonRing>(x: &FpComplex<R>) -> Value {
    let terms: Vec<Value> = x
        .support()
        .map(|degree| {
            let term = x.term(degree);
            let mut obj = json!({"degree": degree, "generators": term.gens()});
            if term.relations().cols() > 0 {
                obj["relations"] = matrix_to_value(term.relations());
            }
            obj
        })
        .collect();
    let mut differentials: Vec<Value> = Vec::new();
    for degree in x.support() {
        if x.term(degree).gens() > 0 && x.term(degree + 1).gens() > 0 {
            differentials
                .push(json!({"degree": degree, "matrix": matrix_to_value(&x.diff(degree))}));
        }
    }
    json!({"terms": terms, "differentials": differentials})
}

pub fn components_to_value<R: JsonRing>(comps: &BTreeMap<Degree, Matrix<R>>) -> Value {
    Value::Array(
        comps
            .iter()
            .map(|(&degree, m)| json!({"degree": degree, "matrix": matrix_to_value(m)}))
            .collect(),
    )
}

pub fn chain_map_to_value<R: JsonRing>(map: &ChainMap<R>) -> Value {
    components_to_value(map.components())
}

pub fn fp_chain_map_to_value<R: JsonRing>(map: &FpChainMap<R>) -> Value {
    let mut comps = BTreeMap::new();
    for i in map.source().support() {
        let c = map.comp(i);
        if c.rows() > 0 && c.cols() > 0 {
            comps.insert(i, c);
        }
    }
    components_to_value(&comps)
}

pub fn homotopy_to_value<R: JsonRing>(h: &Homotopy<R>) -> Value {
    components_to_value(h.components())
}

/// A cohomology table: JSON rows sorted by degree, pretty lines `H^i = ...`.
pub fn cohomology_table<R: JsonRing>(
    modules: &BTreeMap<Degree, FpModule<R>>,
) -> (Value, Vec<String>) {
    let rows: Vec<Value> = modules
        .iter()
        .map(|(&degree, m)| json!({"degree": degree, "module": m.normal_form().render()}))
        .collect();
    let lines = modules
        .iter()
        .map(|(&degree, m)| format!("H^{} = {}", degree, m.normal_form().render()))
        .collect();
    (Value::Array(rows), lines)
}
