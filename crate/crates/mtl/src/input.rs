//! Resolution of command-line operands: catalog keys, inline JSON or files.

use std::path::Path;

use serde_json::Value;
use tensorlab::catalog::{self, CatalogKey};
use tensorlab::field::FieldSpec;
use tensorlab::inequalities::{self, LinearRankInequality};
use tensorlab::json;
use tensorlab::polymatroid::PolymatroidFn;
use tensorlab::representation::{fano_matrix, u23_matrix, MatrixRep};
use tensorlab::{Error, Matroid, Result, SetWord};

/// Inline JSON if the operand starts with `{` or `[`, else the file it names.
fn json_operand(s: &str) -> Result<Option<Value>> {
    let t = s.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return json::parse(t).map(Some);
    }
    if Path::new(s).is_file() {
        let text = std::fs::read_to_string(s).map_err(|e| Error::Input(format!("cannot read {s}: {e}")))?;
        return json::parse(&text).map(Some);
    }
    Ok(None)
}

pub fn matroid(s: &str) -> Result<Matroid> {
    match json_operand(s)? {
        Some(v) => json::matroid_from_json(&v),
        None => catalog::build(s.parse::<CatalogKey>()?),
    }
}

/// A catalog key, Matroid JSON (taken as its rank function) or Polymatroid JSON.
pub fn polymatroid(s: &str) -> Result<PolymatroidFn> {
    match json_operand(s)? {
        Some(v) if v.get("values").is_some() => json::polymatroid_from_json(&v),
        Some(v) => from_matroid(&json::matroid_from_json(&v)?),
        None => from_matroid(&catalog::build(s.parse::<CatalogKey>()?)?),
    }
}

fn from_matroid(m: &Matroid) -> Result<PolymatroidFn> {
    let phi = PolymatroidFn::from_matroid(m)?;
    match m.ground().labels() {
        Some(l) => phi.with_labels(l.to_vec()),
        None => Ok(phi),
    }
}

/// Matrix JSON, or `fano:<field>` / `u23:<field>` for the built-in matrices.
pub fn matrix(s: &str) -> Result<MatrixRep> {
    if let Some(v) = json_operand(s)? {
        return json::matrix_from_json(&v);
    }
    let (name, f) = s.split_once(':').ok_or_else(|| Error::Input(format!("unknown matrix {s}")))?;
    let field: FieldSpec = f.parse()?;
    match name {
        "fano" => fano_matrix(field),
        "u23" => u23_matrix(field),
        _ => Err(Error::Input(format!("unknown matrix {name}"))),
    }
}

pub fn inequality(s: &str) -> Result<LinearRankInequality> {
    match json_operand(s)? {
        Some(v) => json::inequality_from_json(&v),
        None => inequalities::by_name(s),
    }
}

pub fn set(s: &str, n: usize) -> Result<SetWord> {
    json::parse_set(&json::parse(s)?, n, "set")
}

pub fn sets(s: &str, n: usize) -> Result<Vec<SetWord>> {
    match json::parse(s)? {
        Value::Array(items) => items.iter().map(|v| json::parse_set(v, n, "set")).collect(),
        _ => Err(Error::Input("expected a list of sets".into())),
    }
}

/// Each variable goes to the singleton whose label is the variable name,
/// compared case-insensitively.
pub fn by_labels(names: &[String], labels: Option<&[String]>) -> Result<Vec<SetWord>> {
    let labels = labels.ok_or_else(|| Error::Input("the ground set has no labels".into()))?;
    names
        .iter()
        .map(|v| {
            labels
                .iter()
                .position(|l| l.eq_ignore_ascii_case(v))
                .map(tensorlab::bitset::singleton)
                .ok_or_else(|| Error::Input(format!("no element is labelled {v}")))
        })
        .collect()
}
