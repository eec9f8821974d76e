//! JSON interchange formats. Sets are sorted 0-based index lists, rationals
//! are `"p/q"` strings (integers without a denominator) and object keys come
//! out sorted, so equal values always serialize to equal bytes.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::bitset::{self, SetWord};
use crate::error::{input, Error, Result};
use crate::field::{fmt_rational, parse_rational, FieldSpec};
use crate::inequalities::{describe_assignment, LinearRankInequality, ScanOutcome, Sense, Sides};
use crate::matroid::{GroundSet, Matroid};
use crate::modular::{ExtensionWitness, KModularResult, KModularVerdict, WitnessNode};
use crate::polymatroid::{LpOutcome, PolymatroidFn};
use crate::representation::{ColumnMap, MatrixRep};
use crate::tensor::{ChainLevel, CompatCertificate, Enumeration, Verdict};

pub fn set(x: SetWord) -> Value {
    Value::from(bitset::to_indices(x))
}

pub fn rational(q: &BigRational) -> Value {
    Value::from(fmt_rational(q))
}

fn bad(what: &str) -> Error {
    Error::Input(format!("malformed {what} JSON"))
}

fn field<'a>(v: &'a Value, key: &str, what: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Input(format!("{what} JSON lacks \"{key}\"")))
}

fn uint(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(what))
}

pub fn parse_set(v: &Value, n: usize, what: &str) -> Result<SetWord> {
    let items = v.as_array().ok_or_else(|| bad(what))?;
    let mut idx = Vec::with_capacity(items.len());
    for it in items {
        let i = uint(it, what)?;
        if i >= n {
            return input(format!("{what} names element {i} outside a ground of size {n}"));
        }
        idx.push(i);
    }
    Ok(bitset::from_indices(idx))
}

fn parse_rational_value(v: &Value, what: &str) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(bad(what)),
    }
}

fn strings(v: &Value, what: &str) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| bad(what))?
        .iter()
        .map(|s| s.as_str().map(str::to_string).ok_or_else(|| bad(what)))
        .collect()
}

pub fn matroid_to_json(m: &Matroid) -> Value {
    let mut o = Map::new();
    if let Some(name) = m.name() {
        o.insert("name".into(), name.into());
    }
    if let Some(labels) = m.ground().labels() {
        o.insert("labels".into(), labels.into());
    }
    o.insert("n".into(), m.n().into());
    o.insert("rank".into(), m.full_rank().into());
    o.insert("bases".into(), m.bases().iter().map(|&b| set(b)).collect());
    Value::Object(o)
}

/// Parses Matroid JSON and checks the basis exchange axiom.
pub fn matroid_from_json(v: &Value) -> Result<Matroid> {
    let n = uint(field(v, "n", "matroid")?, "matroid")?;
    let rank = uint(field(v, "rank", "matroid")?, "matroid")?;
    if n > bitset::MAX_GROUND {
        return Err(Error::SizeOverflow(n));
    }
    let ground = match v.get("labels") {
        Some(l) => {
            let labels = strings(l, "matroid labels")?;
            if labels.len() != n {
                return input("matroid labels do not match n");
            }
            GroundSet::labelled(labels)?
        }
        None => GroundSet::new(n)?,
    };
    let bases = field(v, "bases", "matroid")?
        .as_array()
        .ok_or_else(|| bad("matroid"))?
        .iter()
        .map(|b| parse_set(b, n, "basis"))
        .collect::<Result<Vec<_>>>()?;
    let m = Matroid::from_bases(ground, rank, bases)?;
    Ok(match v.get("name").and_then(Value::as_str) {
        Some(name) => m.with_name(name),
        None => m,
    })
}

pub fn matrix_to_json(a: &MatrixRep) -> Value {
    let map = match a.column_map() {
        ColumnMap::Elements(e) => Value::from(e.clone()),
        ColumnMap::Partition(blocks) => Value::from(blocks.clone()),
    };
    json!({
        "field": a.field().to_string(),
        "rows": a.rows(),
        "cols": a.cols(),
        "entries": a.entry_strings(),
        "column_map": map,
    })
}

/// A `column_map` of integers maps columns to matroid elements; a list of
/// lists partitions the columns into polymatroid elements.
pub fn matrix_from_json(v: &Value) -> Result<MatrixRep> {
    let spec: FieldSpec = field(v, "field", "matrix")?.as_str().ok_or_else(|| bad("matrix"))?.parse()?;
    let rows = uint(field(v, "rows", "matrix")?, "matrix")?;
    let cols = uint(field(v, "cols", "matrix")?, "matrix")?;
    let entries = field(v, "entries", "matrix")?
        .as_array()
        .ok_or_else(|| bad("matrix"))?
        .iter()
        .map(|r| {
            r.as_array().ok_or_else(|| bad("matrix row"))?.iter().map(|e| parse_rational_value(e, "matrix entry")).collect()
        })
        .collect::<Result<Vec<Vec<BigRational>>>>()?;
    if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
        return input("matrix entries do not match rows and cols");
    }
    let map = match v.get("column_map") {
        None | Some(Value::Null) => None,
        Some(Value::Array(items)) if items.iter().all(Value::is_array) && !items.is_empty() => Some(ColumnMap::Partition(
            items
                .iter()
                .map(|b| b.as_array().unwrap().iter().map(|c| uint(c, "column map")).collect())
                .collect::<Result<_>>()?,
        )),
        Some(Value::Array(items)) => {
            Some(ColumnMap::Elements(items.iter().map(|c| uint(c, "column map")).collect::<Result<_>>()?))
        }
        Some(_) => return Err(bad("column map")),
    };
    if rows == 0 && cols > 0 {
        return input("a matrix with columns needs at least one row");
    }
    MatrixRep::new(spec, entries, map)
}

fn set_key(x: SetWord) -> String {
    let idx: Vec<String> = bitset::to_indices(x).iter().map(usize::to_string).collect();
    format!("[{}]", idx.join(","))
}

fn parse_set_key(k: &str, n: usize) -> Result<SetWord> {
    let v: Value = serde_json::from_str(k).map_err(|_| Error::Input(format!("malformed set key {k:?}")))?;
    parse_set(&v, n, "set key")
}

pub fn polymatroid_to_json(phi: &PolymatroidFn) -> Value {
    let values: Map<String, Value> =
        (0..=bitset::full(phi.n())).map(|x| (set_key(x), rational(phi.value(x)))).collect();
    let mut o = Map::new();
    if let Some(labels) = phi.labels() {
        o.insert("labels".into(), labels.into());
    }
    o.insert("n".into(), phi.n().into());
    o.insert("values".into(), Value::Object(values));
    Value::Object(o)
}

/// Parses Polymatroid JSON; every subset must be present exactly once.
pub fn polymatroid_from_json(v: &Value) -> Result<PolymatroidFn> {
    let n = uint(field(v, "n", "polymatroid")?, "polymatroid")?;
    if n > crate::polymatroid::MAX_POLY_GROUND {
        return Err(Error::SizeOverflow(n));
    }
    let obj = field(v, "values", "polymatroid")?.as_object().ok_or_else(|| bad("polymatroid"))?;
    let mut values: Vec<Option<BigRational>> = vec![None; 1 << n];
    for (k, val) in obj {
        let x = parse_set_key(k, n)? as usize;
        if values[x].replace(parse_rational_value(val, "polymatroid value")?).is_some() {
            return input(format!("subset {k} listed twice"));
        }
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(x, q)| q.ok_or_else(|| Error::Input(format!("polymatroid JSON lacks subset {}", set_key(x as SetWord)))))
        .collect::<Result<Vec<_>>>()?;
    let phi = PolymatroidFn::new(n, values)?;
    match v.get("labels") {
        Some(l) => phi.with_labels(strings(l, "polymatroid labels")?),
        None => Ok(phi),
    }
}

fn level_key(level: usize, x: SetWord) -> String {
    if level == 1 {
        set_key(x)
    } else {
        format!("{level}:{}", set_key(x))
    }
}

pub fn lp_outcome_to_json(o: &LpOutcome) -> Value {
    let mut out = Map::new();
    out.insert("feasible".into(), o.feasible.into());
    if let Some(model) = &o.model {
        let m: Map<String, Value> = model.iter().map(|(&(l, x), q)| (level_key(l, x), rational(q))).collect();
        out.insert("model".into(), Value::Object(m));
    }
    if let Some(rows) = &o.farkas {
        let rows: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "kind": serde_json::to_value(r.kind).expect("row kind serializes"),
                    "level": r.level,
                    "sets": r.sets.iter().map(|&s| set(s)).collect::<Vec<_>>(),
                    "multiplier": rational(&r.multiplier),
                })
            })
            .collect();
        let contradiction = o.contradiction.as_ref().map(rational).unwrap_or(Value::Null);
        out.insert("farkas".into(), json!({ "rows": rows, "contradiction": contradiction }));
    }
    out.insert("rounds".into(), o.rounds.into());
    out.insert("active_rows".into(), o.active_rows.into());
    Value::Object(out)
}

pub fn inequality_to_json(ineq: &LinearRankInequality) -> Value {
    let terms: Vec<Value> = ineq
        .terms()
        .iter()
        .map(|t| {
            let union: Vec<&str> = t.expr.vars().iter().map(|&v| ineq.variables()[v].as_str()).collect();
            json!({ "coeff": rational(&t.coeff), "union": union })
        })
        .collect();
    let sense = match ineq.sense() {
        Sense::GreaterEq => "ge",
        Sense::LessEq => "le",
    };
    json!({ "name": ineq.name(), "variables": ineq.variables(), "terms": terms, "sense": sense })
}

/// Parses Inequality JSON; `sense` is optional and only picks which side is
/// reported first, the inequality always reads `Σ coeff·r(union) ≥ 0`.
pub fn inequality_from_json(v: &Value) -> Result<LinearRankInequality> {
    let name = field(v, "name", "inequality")?.as_str().ok_or_else(|| bad("inequality"))?;
    let variables = strings(field(v, "variables", "inequality")?, "inequality variables")?;
    let terms = field(v, "terms", "inequality")?
        .as_array()
        .ok_or_else(|| bad("inequality"))?
        .iter()
        .map(|t| {
            let c = parse_rational_value(field(t, "coeff", "term")?, "term")?;
            Ok((c, strings(field(t, "union", "term")?, "term union")?))
        })
        .collect::<Result<Vec<_>>>()?;
    let sense = match v.get("sense").and_then(Value::as_str) {
        None | Some("ge") => Sense::GreaterEq,
        Some("le") => Sense::LessEq,
        Some(s) => return input(format!("unknown sense {s}")),
    };
    LinearRankInequality::new(name, variables, terms, sense)
}

pub fn sides_to_json(s: &Sides) -> Value {
    json!({ "lhs": rational(&s.lhs), "rhs": rational(&s.rhs), "slack": rational(&s.slack) })
}

pub fn scan_to_json(ineq: &LinearRankInequality, m: &Matroid, o: &ScanOutcome) -> Value {
    let witness = o.witness.as_ref().map_or(Value::Null, |w| {
        let named: Map<String, Value> =
            describe_assignment(ineq, m, &w.assignment).into_iter().map(|(k, v)| (k, Value::from(v))).collect();
        json!({
            "assignment": w.assignment.iter().map(|&x| set(x)).collect::<Vec<_>>(),
            "named": named,
            "sides": sides_to_json(&w.sides),
        })
    });
    json!({
        "inequality": ineq.name(),
        "violated": o.witness.is_some(),
        "witness": witness,
        "complete": o.complete,
        "examined": o.examined,
    })
}

pub fn witness_to_json(w: &ExtensionWitness) -> Value {
    json!({
        "base": matroid_to_json(&w.base),
        "extended": matroid_to_json(&w.extended),
        "z": set(w.z),
        "pair": [set(w.pair.0), set(w.pair.1)],
    })
}

pub fn witness_from_json(v: &Value) -> Result<ExtensionWitness> {
    let base = matroid_from_json(field(v, "base", "witness")?)?;
    let extended = matroid_from_json(field(v, "extended", "witness")?)?;
    let z = parse_set(field(v, "z", "witness")?, extended.n(), "z")?;
    let pair = field(v, "pair", "witness")?.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("witness pair"))?;
    let a = parse_set(&pair[0], base.n(), "pair")?;
    let b = parse_set(&pair[1], base.n(), "pair")?;
    Ok(ExtensionWitness { base, extended, z, pair: (a, b) })
}

fn node_to_json(n: &WitnessNode) -> Value {
    json!({
        "pair": [set(n.pair.0), set(n.pair.1)],
        "witness": witness_to_json(&n.witness),
        "children": n.children.iter().map(node_to_json).collect::<Vec<_>>(),
    })
}

pub fn k_modular_to_json(k: usize, r: &KModularResult) -> Value {
    let (verdict, extra) = match &r.verdict {
        KModularVerdict::Yes(nodes) => ("yes", json!({ "witnesses": nodes.iter().map(node_to_json).collect::<Vec<_>>() })),
        KModularVerdict::No { pair, level } => ("no", json!({ "pair": [set(pair.0), set(pair.1)], "level": level })),
        KModularVerdict::Inconclusive => ("inconclusive", json!({})),
    };
    let mut o = extra.as_object().cloned().unwrap_or_default();
    o.insert("k".into(), k.into());
    o.insert("verdict".into(), verdict.into());
    o.insert("nodes".into(), r.nodes.into());
    Value::Object(o)
}

pub fn verdict_to_json(v: &Verdict) -> Value {
    match v {
        Verdict::Product => json!({ "product": true }),
        Verdict::Violated(x) => json!({
            "product": false,
            "violation": {
                "kind": format!("{:?}", x.kind).to_lowercase(),
                "left": set(x.left),
                "right": set(x.right),
                "expected": rational(&x.expected),
                "actual": rational(&x.actual),
            }
        }),
    }
}

pub fn enumeration_to_json(e: &Enumeration, budget_nodes: u64) -> Value {
    json!({
        "count": e.products.len(),
        "products": e.products.iter().map(matroid_to_json).collect::<Vec<_>>(),
        "complete": e.complete,
        "stop": serde_json::to_value(e.stop).expect("stop reason serializes"),
        "candidates": e.candidates,
        "budget": { "nodes": budget_nodes, "used": e.nodes },
    })
}

fn level_to_json(l: &ChainLevel) -> Value {
    match l {
        ChainLevel::Matroid(m) => matroid_to_json(m),
        ChainLevel::Matrix(a) => json!({ "n": a.element_count(), "rank": a.full_rank(), "matrix": matrix_to_json(a) }),
    }
}

pub fn certificate_to_json(c: &CompatCertificate) -> Value {
    let mut o = Map::new();
    o.insert("kind".into(), serde_json::to_value(c.kind).expect("kind serializes"));
    o.insert("method".into(), serde_json::to_value(c.method).expect("method serializes"));
    o.insert("levels".into(), c.levels.iter().map(level_to_json).collect());
    if let Some(r) = c.refuted_at {
        o.insert("refuted_at".into(), r.into());
    }
    if let Some(r) = &c.inequality {
        o.insert(
            "inequality".into(),
            json!({
                "inequality": inequality_to_json(&r.inequality),
                "minor": r.minor,
                "violated": serde_json::to_value(r.violated).expect("factor serializes"),
                "assignment": r.witness.assignment.iter().map(|&x| set(x)).collect::<Vec<_>>(),
                "sides": sides_to_json(&r.witness.sides),
            }),
        );
    }
    o.insert("budget".into(), json!({ "nodes": c.node_budget, "used": c.nodes }));
    o.insert("classes".into(), c.classes.clone().into());
    o.insert("sampled_checks".into(), c.sampled_checks.into());
    Value::Object(o)
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("invalid JSON: {e}")))
}

/// Named sets for `ineq eval`: `{"A": [0, 1], ...}`.
pub fn named_sets(v: &Value, n: usize) -> Result<BTreeMap<String, SetWord>> {
    v.as_object()
        .ok_or_else(|| bad("assignment"))?
        .iter()
        .map(|(k, s)| Ok((k.clone(), parse_set(s, n, "assignment")?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, CatalogKey};
    use crate::inequalities::builtin;
    use crate::representation::fano_matrix;

    #[test]
    fn matroid_round_trip_keeps_labels() {
        let m = build(CatalogKey::Vamos).unwrap();
        let v = matroid_to_json(&m);
        let back = matroid_from_json(&parse(&to_string(&v)).unwrap()).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.ground().labels(), m.ground().labels());
        assert_eq!(to_string(&matroid_to_json(&back)), to_string(&v));
    }

    #[test]
    fn non_matroid_is_rejected() {
        let v = json!({"n": 4, "rank": 2, "bases": [[0, 1], [2, 3]]});
        assert!(matches!(matroid_from_json(&v), Err(Error::Exchange { .. })));
        assert!(matroid_from_json(&json!({"n": 2, "rank": 1, "bases": [[5]]})).is_err());
    }

    #[test]
    fn matrix_and_polymatroid_round_trip() {
        let a = fano_matrix(FieldSpec::Gf(2)).unwrap();
        assert_eq!(matrix_from_json(&matrix_to_json(&a)).unwrap(), a);
        let phi = PolymatroidFn::from_integers(2, &[0, 2, 1, 2]).unwrap();
        let v = polymatroid_to_json(&phi);
        assert_eq!(v["values"]["[0,1]"], "2");
        assert_eq!(polymatroid_from_json(&v).unwrap(), phi);
    }

    #[test]
    fn inequalities_round_trip() {
        for ineq in builtin() {
            assert_eq!(inequality_from_json(&inequality_to_json(&ineq)).unwrap(), ineq);
        }
    }
}
