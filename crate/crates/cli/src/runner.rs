//! Command dispatch: one typed run over the job's ring.

use std::collections::BTreeMap;

use homolog_core::complex::{hom_complex, tensor_complex, FreeComplex};
use homolog_core::derived;
use homolog_core::duality::{classify_dualizing, verify_dualizing, DualityError, Dualizer};
use homolog_core::fpcomplex::smart_truncate_ge;
use homolog_core::fpmod::FpModule;
use homolog_core::resolve::free_resolution;
use homolog_core::ring::{Integer, RatPoly, Rational};
use homolog_core::Degree;
use serde_json::{json, Value};

use crate::axioms;
use crate::entry::JsonRing;
use crate::error::CliError;
use crate::jobspec::{typed_job, JobSpec, TypedJob};
use crate::report::{
    chain_map_to_value, cohomology_table, fp_chain_map_to_value,
    fp_complex_to_value, free_complex_to_value, homotopy_to_value, Report,
};

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub witness: bool,
    pub seed: Option<u64>,
}

pub const COMMANDS: &[&str] = &[
    "cohomology",
    "cone",
    "truncate",
    "hom",
    "tensor",
    "resolve",
    "ext",
    "tor",
    "rhom",
    "dtensor",
    "dhom",
    "roof-eq",
    "dualize",
    "biduality",
    "classify",
    "verify-dualizing",
    "axioms-check",
];

pub fn run(job: &JobSpec, command: &str, opts: &RunOptions) -> Result<Report, CliError> {
    if !COMMANDS.contains(&command) {
        return Err(CliError::Malformed(format!("unknown command {command:?}")));
    }
    if let Some(declared) = &job.command {
        if declared != command {
            return Err(CliError::Malformed(format!(
                "command: job file declares {declared:?} but {command:?} was invoked"
            )));
        }
    }
    match job.ring.as_str() {
        "Z" => run_typed::<Integer>(job, command, opts),
        "Qt" => run_typed::<RatPoly>(job, command, opts),
        "Q" => run_typed::<Rational>(job, command, opts),
        other => Err(CliError::Malformed(format!("ring: unknown tag {other:?}"))),
    }
}

struct Params<'a>(&'a Value);

impl<'a> Params<'a> {
    fn str(&self, key: &str) -> Result<&'a str, CliError> {
        self.0
            .get(key)
            .and_then(Value::as_str)
            .ok_or_else(|| CliError::Malformed(format!("params.{key}: expected a string")))
    }

    fn degree_opt(&self, key: &str) -> Result<Option<Degree>, CliError> {
        match self.0.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => v
                .as_i64()
                .map(Some)
                .ok_or_else(|| CliError::Malformed(format!("params.{key}: expected an integer"))),
        }
    }

    fn degree(&self, key: &str) -> Result<Degree, CliError> {
        self.degree_opt(key)?
            .ok_or_else(|| CliError::Malformed(format!("params.{key}: missing integer")))
    }

    fn u64_opt(&self, key: &str) -> Result<Option<u64>, CliError> {
        match self.0.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => v
                .as_u64()
                .map(Some)
                .ok_or_else(|| {
                    CliError::Malformed(format!("params.{key}: expected a nonnegative integer"))
                }),
        }
    }
}

fn fetch<'a, T>(map: &'a BTreeMap<String, T>, name: &str, kind: &str) -> Result<&'a T, CliError> {
    map.get(name)
        .ok_or_else(|| CliError::Malformed(format!("{kind} {name:?} is not defined by the job")))
}

fn fetch_free<'a, R: JsonRing>(
    typed: &'a TypedJob<R>,
    name: &str,
) -> Result<&'a FreeComplex<R>, CliError> {
    typed.free_complexes.get(name).ok_or_else(|| {
        if typed.complexes.contains_key(name) {
            CliError::Domain(format!(
                "object {name:?} has relations; this command requires a free complex"
            ))
        } else {
            CliError::Malformed(format!("object {name:?} is not defined by the job"))
        }
    })
}

fn all_cohomology<R: JsonRing>(x: &FreeComplex<R>) -> BTreeMap<Degree, FpModule<R>> {
    x.cohomology_all()
}

fn run_typed<R: JsonRing>(
    job: &JobSpec,
    command: &str,
    opts: &RunOptions,
) -> Result<Report, CliError> {
    let typed = typed_job::<R>(job)?;
    let params = Params(&job.params);
    let (result, pretty_lines) = match command {
        "cohomology" => {
            let obj = fetch(&typed.complexes, params.str("object")?, "object")?;
            let modules: BTreeMap<Degree, FpModule<R>> = match params.degree_opt("degree")? {
                Some(i) => BTreeMap::from([(i, obj.cohomology(i))]),
                None => obj.cohomology_all(),
            };
            let (value, lines) = cohomology_table(&modules);
            (json!({ "cohomology": value }), lines)
        }
        "cone" => {
            let map = fetch(&typed.maps, params.str("map")?, "map")?;
            let cone = map.cone();
            let (h, mut lines) = cohomology_table(&all_cohomology(&cone.complex));
            let mut result = json!({
                "complex": free_complex_to_value(&cone.complex),
                "cohomology": h,
            });
            if opts.witness {
                result["inclusion"] = chain_map_to_value(&cone.incl);
                result["projection"] = chain_map_to_value(&cone.proj);
            }
            lines.insert(0, format!("cone ranks: {}", ranks_line(&cone.complex)));
            (result, lines)
        }
        "truncate" => {
            let x = fetch_free(&typed, params.str("object")?)?;
            let mode = params.str("mode")?;
            match mode {
                "smart-le" => {
                    let i = params.degree("degree")?;
                    let (t, incl) = x.smart_truncate_le(i);
                    let (h, mut lines) = cohomology_table(&all_cohomology(&t));
                    let mut result = json!({
                        "complex": free_complex_to_value(&t),
                        "cohomology": h,
                    });
                    if opts.witness {
                        result["comparison"] = chain_map_to_value(&incl);
                    }
                    lines.insert(0, format!("smt<={} ranks: {}", i, ranks_line(&t)));
                    (result, lines)
                }
                "smart-ge" => {
                    let i = params.degree("degree")?;
                    let (t, proj) = smart_truncate_ge(x, i);
                    let modules = t.cohomology_all();
                    let (h, mut lines) = cohomology_table(&modules);
                    let mut result = json!({
                        "complex": fp_complex_to_value(&t),
                        "cohomology": h,
                    });
                    if opts.witness {
                        result["comparison"] = fp_chain_map_to_value(&proj);
                    }
                    lines.insert(0, format!("smt>={} computed", i));
                    (result, lines)
                }
                "stupid" => {
                    let window = job
                        .params
                        .get("window")
                        .and_then(Value::as_array)
                        .filter(|w| w.len() == 2)
                        .ok_or_else(|| {
                            CliError::Malformed("params.window: expected [lo, hi]".into())
                        })?;
                    let lo = window[0].as_i64().ok_or_else(|| {
                        CliError::Malformed("params.window[0]: expected an integer".into())
                    })?;
                    let hi = window[1].as_i64().ok_or_else(|| {
                        CliError::Malformed("params.window[1]: expected an integer".into())
                    })?;
                    let t = x.stupid_truncate(lo, hi);
                    (
                        json!({ "complex": free_complex_to_value(&t) }),
                        vec![format!("stt[{},{}] ranks: {}", lo, hi, ranks_line(&t))],
                    )
                }
                other => {
                    return Err(CliError::Malformed(format!(
                        "params.mode: unknown truncation {other:?}"
                    )))
                }
            }
        }
        "hom" | "tensor" => {
            let lhs = fetch_free(&typed, params.str("lhs")?)?;
            let rhs = fetch_free(&typed, params.str("rhs")?)?;
            let total = if command == "hom" {
                hom_complex(lhs, rhs)
            } else {
                tensor_complex(lhs, rhs)
            };
            let (h, mut lines) = cohomology_table(&all_cohomology(&total));
            lines.insert(0, format!("ranks: {}", ranks_line(&total)));
            (
                json!({
                    "complex": free_complex_to_value(&total),
                    "cohomology": h,
                }),
                lines,
            )
        }
        "resolve" => {
            let obj = fetch(&typed.complexes, params.str("object")?, "object")?;
            let res = free_resolution(obj);
            let (h, mut lines) = cohomology_table(&all_cohomology(&res.complex));
            let mut result = json!({
                "complex": free_complex_to_value(&res.complex),
                "cohomology": h,
            });
            if opts.witness {
                result["augmentation"] = fp_chain_map_to_value(&res.augmentation);
            }
            lines.insert(0, format!("resolution ranks: {}", ranks_line(&res.complex)));
            (result, lines)
        }
        "ext" | "tor" => {
            let lhs = fetch(&typed.complexes, params.str("lhs")?, "object")?;
            let rhs = fetch(&typed.complexes, params.str("rhs")?, "object")?;
            let total = if command == "ext" {
                derived::rhom(lhs, rhs)
            } else {
                derived::derived_tensor(lhs, rhs)
            };
            let to_index = |complex_degree: Degree| -> Degree {
                if command == "ext" {
                    complex_degree
                } else {
                    -complex_degree
                }
            };
            let mut modules: Vec<(Degree, FpModule<R>)> = Vec::new();
            match params.degree_opt("degree")? {
                Some(i) => {
                    let inner = if command == "ext" { i } else { -i };
                    modules.push((i, total.cohomology(inner)));
                }
                None => {
                    if let (Some(lo), Some(hi)) = (total.min_degree(), total.max_degree()) {
                        for d in lo..=hi {
                            modules.push((to_index(d), total.cohomology(d)));
                        }
                        modules.sort_by_key(|&(i, _)| i);
                    }
                }
            }
            let label = if command == "ext" { "Ext^" } else { "Tor_" };
            let rows: Vec<Value> = modules
                .iter()
                .map(|(i, m)| json!({"degree": i, "module": m.normal_form().render()}))
                .collect();
            let lines = modules
                .iter()
                .map(|(i, m)| format!("{label}{i} = {}", m.normal_form().render()))
                .collect();
            (json!({ "modules": Value::Array(rows) }), lines)
        }
        "rhom" | "dtensor" => {
            let lhs = fetch(&typed.complexes, params.str("lhs")?, "object")?;
            let rhs = fetch(&typed.complexes, params.str("rhs")?, "object")?;
            let total = if command == "rhom" {
                derived::rhom(lhs, rhs)
            } else {
                derived::derived_tensor(lhs, rhs)
            };
            let (h, mut lines) = cohomology_table(&all_cohomology(&total));
            lines.insert(0, format!("ranks: {}", ranks_line(&total)));
            (
                json!({
                    "complex": free_complex_to_value(&total),
                    "cohomology": h,
                }),
                lines,
            )
        }
        "dhom" => {
            let lhs = fetch(&typed.complexes, params.str("lhs")?, "object")?;
            let rhs = fetch(&typed.complexes, params.str("rhs")?, "object")?;
            let i = params.degree("degree")?;
            let m = derived::derived_hom_group(lhs, rhs, i);
            let rendered = m.normal_form().render();
            (
                json!({ "module": rendered }),
                vec![format!("Hom_D(lhs, rhs[{i}]) = {rendered}")],
            )
        }
        "roof-eq" => {
            let roof_of = |key: &str| -> Result<derived::Roof<R>, CliError> {
                let spec = job.params.get(key).ok_or_else(|| {
                    CliError::Malformed(format!("params.{key}: missing roof"))
                })?;
                let p = Params(spec);
                let s = fetch(&typed.maps, p.str("denominator")?, "map")?;
                let a = fetch(&typed.maps, p.str("numerator")?, "map")?;
                derived::Roof::new(s.clone(), a.clone())
                    .map_err(|e| CliError::Domain(format!("params.{key}: {e}")))
            };
            let first = roof_of("first")?;
            let second = roof_of("second")?;
            let equal = first
                .equals(&second)
                .map_err(|e| CliError::Domain(format!("roof comparison: {e}")))?;
            let mut result = json!({ "equal": equal });
            let mut lines = vec![format!("equal: {equal}")];
            if opts.witness {
                let n1 = first.normalized_numerator().map_err(to_internal)?;
                let n2 = second.normalized_numerator().map_err(to_internal)?;
                result["first_normalized"] = chain_map_to_value(&n1);
                result["second_normalized"] = chain_map_to_value(&n2);
                if equal {
                    let h = n1
                        .sub(&n2)
                        .null_homotopy()
                        .ok_or_else(|| CliError::Internal("missing witness homotopy".into()))?;
                    result["homotopy"] = homotopy_to_value(&h);
                    lines.push("homotopy witness attached".into());
                }
            }
            (result, lines)
        }
        "dualize" => {
            let obj = fetch(&typed.complexes, params.str("object")?, "object")?;
            let r = fetch(&typed.complexes, params.str("dualizer")?, "object")?;
            let dualizer = Dualizer::new(r).map_err(domain_from_duality)?;
            let dual = dualizer.dual(obj);
            let (h, mut lines) = cohomology_table(&all_cohomology(&dual));
            lines.insert(0, format!("dual ranks: {}", ranks_line(&dual)));
            (
                json!({
                    "complex": free_complex_to_value(&dual),
                    "cohomology": h,
                }),
                lines,
            )
        }
        "biduality" => {
            let obj = fetch(&typed.complexes, params.str("object")?, "object")?;
            let r = fetch(&typed.complexes, params.str("dualizer")?, "object")?;
            let dualizer = Dualizer::new(r).map_err(domain_from_duality)?;
            let b = dualizer.biduality(obj);
            let (dual_h, _) = cohomology_table(&all_cohomology(&b.dual));
            let (dd_h, _) = cohomology_table(&all_cohomology(&b.double_dual));
            let mut result = json!({
                "is_quasi_iso": b.is_quasi_iso,
                "is_chain_iso": b.is_chain_iso,
                "dual_cohomology": dual_h,
                "double_dual_cohomology": dd_h,
            });
            if opts.witness {
                result["theta"] = chain_map_to_value(&b.theta);
            }
            let lines = vec![
                format!("quasi-isomorphism: {}", b.is_quasi_iso),
                format!("chain isomorphism: {}", b.is_chain_iso),
            ];
            (result, lines)
        }
        "classify" => {
            let r1 = fetch(&typed.complexes, params.str("first")?, "object")?;
            let r2 = fetch(&typed.complexes, params.str("second")?, "object")?;
            let shift = classify_dualizing(r1, r2).map_err(domain_from_duality)?;
            (
                json!({ "shift": shift }),
                vec![format!("shift: {shift}")],
            )
        }
        "verify-dualizing" => {
            let r = fetch(&typed.complexes, params.str("object")?, "object")?;
            let report = verify_dualizing(r);
            let endo: Vec<Value> = report
                .endo_cohomology
                .iter()
                .map(|(&d, f)| json!({"degree": d, "module": f.render()}))
                .collect();
            (
                json!({
                    "is_dualizing": report.is_dualizing,
                    "identity_class_generates": report.identity_class_generates,
                    "endo_cohomology": endo,
                }),
                vec![format!("is_dualizing: {}", report.is_dualizing)],
            )
        }
        "axioms-check" => {
            let seed = opts
                .seed
                .or(params.u64_opt("seed")?)
                .unwrap_or(42);
            let trials = params.u64_opt("trials")?.unwrap_or(100) as u32;
            let outcome = axioms::run_suites::<R>(seed, trials);
            if !outcome.all_passed {
                return Err(CliError::Internal(format!(
                    "axioms-check failed: {}",
                    outcome.summary()
                )));
            }
            (outcome.to_value(), outcome.pretty_lines())
        }
        _ => unreachable!("command list is closed"),
    };
    Ok(Report {
        command: command.to_string(),
        ring: job.ring.clone(),
        result,
        pretty_lines,
    })
}

fn ranks_line<R: JsonRing>(x: &FreeComplex<R>) -> String {
    if x.is_zero_complex() {
        return "0".into();
    }
    x.support()
        .map(|(d, r)| format!("{d}:{r}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn to_internal<R: JsonRing>(e: derived::RoofError<R>) -> CliError {
    CliError::Internal(format!("{e}"))
}

fn domain_from_duality<R: JsonRing>(e: DualityError<R>) -> CliError {
    match &e {
        DualityError::NotDualizing(report) | DualityError::SecondNotDualizing(report) => {
            let endo: Vec<String> = report
                .endo_cohomology
                .iter()
                .map(|(d, f)| format!("H^{d} = {}", f.render()))
                .collect();
            CliError::Domain(format!("{e}; endomorphism cohomology: {}", endo.join(", ")))
        }
        DualityError::NotConcentrated => CliError::Domain(format!("{e}")),
    }
}

/// Helper for tests and the repro bundle: run a job given only its file text.
pub fn run_text(text: &str, command: &str, opts: &RunOptions) -> Result<Report, CliError> {
    let job = crate::jobspec::parse_jobspec(text)?;
    run(&job, command, opts)
}
