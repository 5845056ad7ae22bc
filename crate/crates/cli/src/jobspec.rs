//! The job file schema and its validation into typed objects.
//!
//! A job is JSON with a `schema` version, a `ring` tag, named complexes, and
//! optional named chain maps, plus a command and command parameters. Matrices
//! are written in generator convention: row `g` of a differential or map
//! component is the image of generator `g` of the source, expressed in the
//! generators of the target; each relation row is one relation among the
//! generators. Integer entries may be decimal strings of any size;
//! polynomial entries are strings in `t` or coefficient arrays listed low
//! degree first.

use std::collections::BTreeMap;

use homolog_core::complex::{ChainMap, FreeComplex};
use homolog_core::fpcomplex::FpComplex;
use homolog_core::fpmod::FpModule;
use homolog_core::matrix::Matrix;
use homolog_core::Degree;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::entry::JsonRing;
use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub schema: u32,
    pub ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub objects: BTreeMap<String, ObjectSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, MapSpec>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub params: Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectSpec {
    pub terms: Vec<TermSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub differentials: Vec<MatrixAtDegree>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub degree: Degree,
    pub generators: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Vec<Value>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixAtDegree {
    pub degree: Degree,
    pub matrix: Vec<Vec<Value>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub source: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<MatrixAtDegree>,
}

/// Parse the raw text of a job file.
pub fn parse_jobspec(text: &str) -> Result<JobSpec, CliError> {
    let job: JobSpec = serde_json::from_str(text)
        .map_err(|e| CliError::Malformed(format!("job file: {e}")))?;
    if job.schema != SCHEMA_VERSION {
        return Err(CliError::Malformed(format!(
            "schema: unsupported version {} (expected {})",
            job.schema, SCHEMA_VERSION
        )));
    }
    if !matches!(job.ring.as_str(), "Z" | "Qt" | "Q") {
        return Err(CliError::Malformed(format!(
            "ring: unknown tag {:?} (expected \"Z\", \"Qt\" or \"Q\")",
            job.ring
        )));
    }
    Ok(job)
}

/// The job with all matrices parsed, validated, and typed over `R`.
pub struct TypedJob<R: JsonRing> {
    pub complexes: BTreeMap<String, FpComplex<R>>,
    /// The subset of objects presented without relations, as free complexes.
    pub free_complexes: BTreeMap<String, FreeComplex<R>>,
    pub maps: BTreeMap<String, ChainMap<R>>,
}

fn parse_matrix<R: JsonRing>(
    rows: &[Vec<Value>],
    want_rows: usize,
    want_cols: usize,
    path: &str,
) -> Result<Matrix<R>, CliError> {
    if rows.len() != want_rows {
        return Err(CliError::Malformed(format!(
            "{path}: expected {want_rows} rows, found {}",
            rows.len()
        )));
    }
    let mut out = Matrix::zero(want_rows, want_cols);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != want_cols {
            return Err(CliError::Malformed(format!(
                "{path}[{i}]: expected {want_cols} entries, found {}",
                row.len()
            )));
        }
        for (j, v) in row.iter().enumerate() {
            let entry = R::parse_entry(v)
                .map_err(|e| CliError::Malformed(format!("{path}[{i}][{j}]: {e}")))?;
            out.set(i, j, entry);
        }
    }
    Ok(out)
}

/// Hard limits keeping jobs at desk scale: loops over degree ranges and
/// dense matrix shapes are bounded by the input.
pub const MAX_DEGREE_MAGNITUDE: Degree = 100_000;
pub const MAX_DEGREE_SPAN: Degree = 512;
pub const MAX_GENERATORS: usize = 512;
pub const MAX_RELATIONS: usize = 4096;

/// Validate one object into a complex of finitely presented modules; the
/// JSON generator convention is transposed into the internal column
/// convention here.
fn build_complex<R: JsonRing>(
    name: &str,
    spec: &ObjectSpec,
) -> Result<(FpComplex<R>, Option<FreeComplex<R>>), CliError> {
    let mut terms: BTreeMap<Degree, FpModule<R>> = BTreeMap::new();
    let mut gens: BTreeMap<Degree, usize> = BTreeMap::new();
    let mut free = true;
    for (idx, term) in spec.terms.iter().enumerate() {
        let path = format!("objects.{name}.terms[{idx}]");
        if term.degree.abs() > MAX_DEGREE_MAGNITUDE {
            return Err(CliError::Malformed(format!(
                "{path}.degree: magnitude exceeds the limit of {MAX_DEGREE_MAGNITUDE}"
            )));
        }
        if term.generators > MAX_GENERATORS {
            return Err(CliError::Malformed(format!(
                "{path}.generators: exceeds the limit of {MAX_GENERATORS}"
            )));
        }
        if term.relations.len() > MAX_RELATIONS {
            return Err(CliError::Malformed(format!(
                "{path}.relations: more than {MAX_RELATIONS} relations"
            )));
        }
        if gens.insert(term.degree, term.generators).is_some() {
            return Err(CliError::Malformed(format!(
                "{path}: duplicate degree {}",
                term.degree
            )));
        }
        let relation_rows = parse_matrix::<R>(
            &term.relations,
            term.relations.len(),
            term.generators,
            &format!("{path}.relations"),
        )?;
        if relation_rows.rows() > 0 {
            free = false;
        }
        terms.insert(
            term.degree,
            FpModule::from_relation_rows(term.generators, relation_rows),
        );
    }
    if let (Some(lo), Some(hi)) = (gens.keys().next(), gens.keys().next_back()) {
        if hi - lo > MAX_DEGREE_SPAN {
            return Err(CliError::Malformed(format!(
                "objects.{name}: degree span {} exceeds the limit of {MAX_DEGREE_SPAN}",
                hi - lo
            )));
        }
    }
    let mut diffs: BTreeMap<Degree, Matrix<R>> = BTreeMap::new();
    for (idx, d) in spec.differentials.iter().enumerate() {
        let path = format!("objects.{name}.differentials[{idx}]");
        let src = gens.get(&d.degree).copied().unwrap_or(0);
        let tgt = gens.get(&(d.degree + 1)).copied().unwrap_or(0);
        let m = parse_matrix::<R>(&d.matrix, src, tgt, &format!("{path}.matrix"))?;
        if diffs.insert(d.degree, m.transpose()).is_some() {
            return Err(CliError::Malformed(format!(
                "{path}: duplicate degree {}",
                d.degree
            )));
        }
    }
    let complex = FpComplex::try_new(terms, diffs.clone()).map_err(|e| match e {
        homolog_core::fpcomplex::FpComplexError::CompositeNonzero { degree } => {
            let d0 = diffs
                .get(&degree)
                .cloned()
                .unwrap_or_else(|| Matrix::zero(0, 0));
            let d1 = diffs
                .get(&(degree + 1))
                .cloned()
                .unwrap_or_else(|| Matrix::zero(0, d0.rows()));
            let product = if d1.cols() == d0.rows() {
                format!("{:?}", (&d1 * &d0).transpose())
            } else {
                String::from("(shape mismatch)")
            };
            CliError::Malformed(format!(
                "objects.{name}: d∘d ≠ 0 at degree {degree}; product {product}"
            ))
        }
        other => CliError::Malformed(format!("objects.{name}: {other}")),
    })?;
    let free_version = if free {
        let ranks: BTreeMap<Degree, usize> = gens.clone();
        Some(
            FreeComplex::try_new(ranks, diffs)
                .map_err(|e| CliError::Malformed(format!("objects.{name}: {e}")))?,
        )
    } else {
        None
    };
    Ok((complex, free_version))
}

/// Validate the whole job over a concrete ring.
pub fn typed_job<R: JsonRing>(job: &JobSpec) -> Result<TypedJob<R>, CliError> {
    if job.ring != R::TAG {
        return Err(CliError::Malformed(format!(
            "ring: job is over {:?}, not {:?}",
            job.ring,
            R::TAG
        )));
    }
    let mut complexes = BTreeMap::new();
    let mut free_complexes = BTreeMap::new();
    for (name, spec) in &job.objects {
        let (fp, free) = build_complex::<R>(name, spec)?;
        complexes.insert(name.clone(), fp);
        if let Some(f) = free {
            free_complexes.insert(name.clone(), f);
        }
    }
    let mut maps = BTreeMap::new();
    for (name, spec) in &job.maps {
        let path = format!("maps.{name}");
        let source = free_complexes.get(&spec.source).ok_or_else(|| {
            CliError::Malformed(format!(
                "{path}.source: {:?} is not a free object of the job",
                spec.source
            ))
        })?;
        let target = free_complexes.get(&spec.target).ok_or_else(|| {
            CliError::Malformed(format!(
                "{path}.target: {:?} is not a free object of the job",
                spec.target
            ))
        })?;
        let mut comps: BTreeMap<Degree, Matrix<R>> = BTreeMap::new();
        for (idx, c) in spec.components.iter().enumerate() {
            let mpath = format!("{path}.components[{idx}].matrix");
            let m = parse_matrix::<R>(&c.matrix, source.rank(c.degree), target.rank(c.degree), &mpath)?;
            comps.insert(c.degree, m.transpose());
        }
        let map = ChainMap::try_new(source.clone(), target.clone(), comps)
            .map_err(|e| CliError::Malformed(format!("{path}: {e}")))?;
        maps.insert(name.clone(), map);
    }
    Ok(TypedJob {
        complexes,
        free_complexes,
        maps,
    })
}

/// Canonical serialization: all entries re-rendered as canonical strings,
/// objects in name order, terms and matrices in degree order. Serializing a
/// parsed job is idempotent.
pub fn canonical_jobspec(job: &JobSpec) -> Result<String, CliError> {
    let canon = match job.ring.as_str() {
        "Z" => canonicalize_entries::<homolog_core::ring::Integer>(job),
        "Qt" => canonicalize_entries::<homolog_core::ring::RatPoly>(job),
        "Q" => canonicalize_entries::<homolog_core::ring::Rational>(job),
        other => Err(CliError::Malformed(format!("ring: unknown tag {other:?}"))),
    }?;
    serde_json::to_string_pretty(&canon)
        .map_err(|e| CliError::Internal(format!("serializing job: {e}")))
}

fn canonicalize_entries<R: JsonRing>(job: &JobSpec) -> Result<JobSpec, CliError> {
    let mut out = job.clone();
    let canon_matrix = |rows: &mut Vec<Vec<Value>>, path: &str| -> Result<(), CliError> {
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                let entry = R::parse_entry(v)
                    .map_err(|e| CliError::Malformed(format!("{path}[{i}][{j}]: {e}")))?;
                *v = Value::String(entry.render_entry());
            }
        }
        Ok(())
    };
    for (name, obj) in out.objects.iter_mut() {
        obj.terms.sort_by_key(|t| t.degree);
        obj.differentials.sort_by_key(|d| d.degree);
        for (idx, t) in obj.terms.iter_mut().enumerate() {
            canon_matrix(
                &mut t.relations,
                &format!("objects.{name}.terms[{idx}].relations"),
            )?;
        }
        for (idx, d) in obj.differentials.iter_mut().enumerate() {
            canon_matrix(
                &mut d.matrix,
                &format!("objects.{name}.differentials[{idx}].matrix"),
            )?;
        }
    }
    for (name, m) in out.maps.iter_mut() {
        m.components.sort_by_key(|c| c.degree);
        for (idx, c) in m.components.iter_mut().enumerate() {
            canon_matrix(
                &mut c.matrix,
                &format!("maps.{name}.components[{idx}].matrix"),
            )?;
        }
    }
    Ok(out)
}
