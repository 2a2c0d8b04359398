//! JSON encodings shared by the library and the command line.
//!
//! Cells are keyed by comma-joined coordinates (`"1,2"`), generators by
//! `"upper>lower"`, poset maps by `"p>q"` with `q` one step above `p`.
//! Objects are emitted with sorted keys, so equal values serialize to equal
//! bytes.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exact_linalg::{format_rational, parse_rational, Field, Matrix};
use crate::grid_space::{join, parse_tuple, Cell, CellSet, StratifiedGrid};
use crate::homology_ingest::BifilteredComplex;
use crate::module_rep::{ModuleMorphism, PersistenceModule, PosetRep};

fn parse_err(what: impl Into<String>) -> Error {
    Error::Parse(what.into())
}

fn rational_json(r: &BigRational) -> Value {
    if r.is_integer() {
        match i64::try_from(r.numer()) {
            Ok(n) => Value::from(n),
            Err(_) => Value::String(format_rational(r)),
        }
    } else {
        Value::String(format_rational(r))
    }
}

fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        _ => Err(parse_err(format!("expected a rational, got {v}"))),
    }
}

fn field_of(v: &Value) -> Result<Field> {
    v.get("field")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err("missing \"field\""))?
        .parse()
}

fn object<'a>(v: &'a Value, key: &str) -> Result<&'a Map<String, Value>> {
    v.get(key)
        .and_then(Value::as_object)
        .ok_or_else(|| parse_err(format!("missing object {key:?}")))
}

fn usize_of(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| parse_err(format!("{what} must be a non-negative integer")))
}

fn usize_list(v: &Value, what: &str) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("{what} must be an array")))?
        .iter()
        .map(|x| usize_of(x, what))
        .collect()
}

pub fn grid_to_json(grid: &StratifiedGrid) -> Value {
    Value::Array(
        grid.axes()
            .iter()
            .map(|a| Value::Array(a.values().iter().map(rational_json).collect()))
            .collect(),
    )
}

pub fn grid_from_json(v: &Value) -> Result<StratifiedGrid> {
    let axes = v
        .as_array()
        .ok_or_else(|| parse_err("\"axes\" must be an array of arrays"))?
        .iter()
        .map(|axis| {
            axis.as_array()
                .ok_or_else(|| parse_err("each axis must be an array"))?
                .iter()
                .map(rational_from_json)
                .collect()
        })
        .collect::<Result<Vec<Vec<BigRational>>>>()?;
    StratifiedGrid::new(axes)
}

/// `{"axes": [[...]], "cells": [[...]]}`.
pub fn cellset_to_json(set: &CellSet) -> Value {
    json!({ "axes": grid_to_json(set.grid()), "cells": set.to_json_cells() })
}

pub fn cellset_from_json(v: &Value) -> Result<CellSet> {
    let grid = Arc::new(grid_from_json(v.get("axes").ok_or_else(|| parse_err("missing \"axes\""))?)?);
    cells_on(&grid, v)
}

fn cells_on(grid: &Arc<StratifiedGrid>, v: &Value) -> Result<CellSet> {
    let cells = match v.get("cells") {
        None => return Ok(CellSet::hull(grid.clone())),
        Some(list) => list
            .as_array()
            .ok_or_else(|| parse_err("\"cells\" must be an array"))?
            .iter()
            .map(|c| Ok(Cell::new(usize_list(c, "cell coordinate")?)))
            .collect::<Result<Vec<_>>>()?,
    };
    CellSet::new(grid.clone(), cells)
}

fn gen_key(upper: &Cell, lower: &Cell) -> String {
    format!("{}>{}", upper.key(), lower.key())
}

fn parse_pair(key: &str) -> Result<(Vec<usize>, Vec<usize>)> {
    let (a, b) = key
        .split_once('>')
        .ok_or_else(|| parse_err(format!("key {key:?} must look like \"a>b\"")))?;
    Ok((parse_tuple(a)?, parse_tuple(b)?))
}

pub fn module_to_json(m: &PersistenceModule) -> Value {
    let dims: Map<String, Value> = m.dims().iter().map(|(c, d)| (c.key(), Value::from(*d))).collect();
    let gens: Map<String, Value> = m.gens().iter().map(|((u, l), g)| (gen_key(u, l), g.to_json())).collect();
    json!({
        "axes": grid_to_json(m.grid()),
        "cells": m.space().to_json_cells(),
        "field": m.field().to_string(),
        "dims": dims,
        "gens": gens,
    })
}

/// Reads a module without checking it, so that its violations can be listed.
/// Cells must still lie on the grid. Omitting `"cells"` means the full hull.
pub fn module_from_json_unchecked(v: &Value) -> Result<PersistenceModule> {
    let space = cellset_from_json(v)?;
    let field = field_of(v)?;
    let mut dims = BTreeMap::new();
    for (k, d) in object(v, "dims")? {
        dims.insert(Cell::parse_key(k)?, usize_of(d, "dimension")?);
    }
    let mut gens = BTreeMap::new();
    for (k, g) in object(v, "gens")? {
        let (u, l) = parse_pair(k)?;
        gens.insert((Cell::new(u), Cell::new(l)), Matrix::from_json(field, g)?);
    }
    Ok(PersistenceModule::from_parts(space, field, dims, gens))
}

pub fn module_from_json(v: &Value) -> Result<PersistenceModule> {
    let m = module_from_json_unchecked(v)?;
    if let Some(first) = m.validate().into_iter().next() {
        return Err(Error::InvalidModule(first.to_string()));
    }
    Ok(m)
}

pub fn rep_to_json(rep: &PosetRep) -> Value {
    let dims: Map<String, Value> = rep.dims().iter().map(|(p, d)| (join(p), Value::from(*d))).collect();
    let maps: Map<String, Value> = rep
        .maps()
        .iter()
        .map(|((p, k), m)| {
            let mut q = p.clone();
            q[*k] += 1;
            (format!("{}>{}", join(p), join(&q)), m.to_json())
        })
        .collect();
    json!({ "shape": rep.shape(), "field": rep.field().to_string(), "dims": dims, "maps": maps })
}

pub fn rep_from_json(v: &Value) -> Result<PosetRep> {
    let shape = usize_list(v.get("shape").ok_or_else(|| parse_err("missing \"shape\""))?, "shape")?;
    let field = field_of(v)?;
    let mut dims = BTreeMap::new();
    for (k, d) in object(v, "dims")? {
        dims.insert(parse_tuple(k)?, usize_of(d, "dimension")?);
    }
    let mut maps = BTreeMap::new();
    for (k, m) in object(v, "maps")? {
        let (p, q) = parse_pair(k)?;
        let moved: Vec<usize> = (0..p.len().min(q.len())).filter(|&i| p[i] != q[i]).collect();
        let adjacent = p.len() == q.len() && moved.len() == 1 && q[moved[0]] == p[moved[0]] + 1;
        if !adjacent {
            return Err(parse_err(format!("map key {k:?} is not an axis-adjacent pair")));
        }
        maps.insert((p, moved[0]), Matrix::from_json(field, m)?);
    }
    PosetRep::new(shape, field, dims, maps)
}

/// `{"module": <module>, "comps": {"cell": <matrix>}}` for an endomorphism.
pub fn endomorphism_to_json(phi: &ModuleMorphism) -> Value {
    let comps: Map<String, Value> = phi.comps().iter().map(|(c, m)| (c.key(), m.to_json())).collect();
    json!({ "module": module_to_json(phi.source()), "comps": comps })
}

pub fn endomorphism_from_json(v: &Value) -> Result<ModuleMorphism> {
    let module = module_from_json(v.get("module").ok_or_else(|| parse_err("missing \"module\""))?)?;
    let mut comps = BTreeMap::new();
    for (k, m) in object(v, "comps")? {
        comps.insert(Cell::parse_key(k)?, Matrix::from_json(module.field(), m)?);
    }
    ModuleMorphism::new(module.clone(), module, comps)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BifiltrationFile {
    shape: Vec<usize>,
    simplices: Vec<SimplexEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimplexEntry {
    verts: Vec<usize>,
    grade: Vec<usize>,
}

pub fn complex_to_json(k: &BifilteredComplex) -> Value {
    let file = BifiltrationFile {
        shape: k.shape().to_vec(),
        simplices: k
            .simplices()
            .iter()
            .map(|s| SimplexEntry { verts: s.verts.clone(), grade: s.grade.clone() })
            .collect(),
    };
    serde_json::to_value(file).expect("plain data serializes")
}

pub fn complex_from_json(v: &Value) -> Result<BifilteredComplex> {
    let file: BifiltrationFile = serde_json::from_value(v.clone()).map_err(|e| parse_err(e.to_string()))?;
    BifilteredComplex::new(file.shape, file.simplices.into_iter().map(|s| (s.verts, s.grade)).collect())
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
}

/// Pretty JSON with a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module_rep::{interval_module, monotone_import};

    fn grid(points: &[usize]) -> Arc<StratifiedGrid> {
        Arc::new(StratifiedGrid::integer(points).unwrap())
    }

    #[test]
    fn module_round_trip() {
        let x = CellSet::hull(grid(&[3, 2]));
        let s = x.filter(|c| c.coords()[0] <= 2);
        let m = interval_module(&x, &s, Field::Q).unwrap();
        let v = module_to_json(&m);
        assert_eq!(module_from_json(&v).unwrap(), m);
        assert_eq!(render_json(&v), render_json(&module_to_json(&module_from_json(&v).unwrap())));
    }

    #[test]
    fn rational_axes_round_trip() {
        let axes = vec![vec![parse_rational("-1/2").unwrap(), parse_rational("3").unwrap()]];
        let set = CellSet::hull(Arc::new(StratifiedGrid::new(axes).unwrap()));
        let v = cellset_to_json(&set);
        assert_eq!(v["axes"], json!([["-1/2", 3]]));
        assert_eq!(cellset_from_json(&v).unwrap(), set);
    }

    #[test]
    fn rep_round_trip() {
        let f = Field::F5;
        let rep = PosetRep::from_chain(f, &[1, 2], &[Matrix::from_i64(f, &[&[1], &[3]])]).unwrap();
        let v = rep_to_json(&rep);
        assert!(v["maps"].get("0>1").is_some());
        assert_eq!(rep_from_json(&v).unwrap(), rep);
        let module = monotone_import(&rep).unwrap();
        assert_eq!(module_from_json(&module_to_json(&module)).unwrap(), module);
    }

    #[test]
    fn complex_round_trip() {
        let v = json!({"shape": [1, 1], "simplices": [
            {"verts": [0], "grade": [0, 0]}, {"verts": [1], "grade": [0, 1]}, {"verts": [0, 1], "grade": [1, 1]}
        ]});
        let k = complex_from_json(&v).unwrap();
        assert_eq!(complex_from_json(&complex_to_json(&k)).unwrap(), k);
        assert!(complex_from_json(&json!({"shape": [1], "simplices": [{"verts": [0], "grade": [0], "x": 1}]})).is_err());
    }

    #[test]
    fn bad_inputs() {
        assert!(module_from_json(&json!({"axes": [[0, 1]], "cells": [[5]], "field": "F2", "dims": {}, "gens": {}})).is_err());
        let missing = json!({"axes": [[0, 1]], "field": "F2", "dims": {"0": 1, "1": 1, "2": 1}, "gens": {}});
        assert!(!module_from_json_unchecked(&missing).unwrap().is_valid());
        assert!(rep_from_json(&json!({"shape": [2], "field": "F2", "dims": {}, "maps": {"0>2": {}}})).is_err());
    }
}
