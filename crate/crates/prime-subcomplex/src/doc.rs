//! JSON document I/O for complexes, subcomplexes and Čech specifications.
//!
//! Schema:
//!
//! ```json
//! {
//!   "ring": {"u": 1},
//!   "lo": 0,
//!   "hi": 1,
//!   "modules": [{"invariants": [4], "free": 1}, ...],
//!   "diffs": [[["2/1", "0/1"], ...], ...],
//!   "parts": [{"gens": [["2/1", "0/1"], ...]}, ...]
//! }
//! ```
//!
//! `modules[k]` lives at degree `lo + k`; `diffs[k]` is the row-major matrix
//! of the map from degree `lo + k + 1` into degree `lo + k`; ring elements
//! are exact `"num/den"` strings (a bare integer is accepted on input).
//! `parts` is optional and lists one submodule per degree, each generator a
//! coordinate vector in the canonical coordinates of its component.
//!
//! A Čech specification instead reads
//! `{"cech": {"elements": [3,5,7]}, "parts": [{"gens": [2,1,1]}, ...]}` with
//! integer generators, one per summand per degree.
//!
//! Schema violations carry the path to the offending value; semantic
//! violations (`d∘d ≠ 0`, closure failures) carry the degree.

use crate::cech::IdealSubcomplexPart;
use crate::complex::{Complex, ComplexError, Subcomplex};
use crate::matrix::Mat;
use crate::module::{FgModule, ModuleMap, Submodule};
use crate::ring::{RingCtx, RingElem};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocError {
    #[error("schema error at {path}: {reason}")]
    Schema { path: String, reason: String },
    #[error("validation error at degree {index}: {reason}")]
    Validation { index: i64, reason: String },
}

fn schema(path: &str, reason: impl Into<String>) -> DocError {
    DocError::Schema {
        path: path.to_string(),
        reason: reason.into(),
    }
}

/// A parsed complex document with its optional subcomplex.
#[derive(Debug, Clone)]
pub struct ParsedComplex {
    pub complex: Complex,
    pub subcomplex: Option<Subcomplex>,
}

/// A parsed Čech specification: elements plus optional diagonal parts.
#[derive(Debug, Clone)]
pub struct ParsedCech {
    pub elements: Vec<u64>,
    pub parts: Option<Vec<IdealSubcomplexPart>>,
}

#[derive(Debug, Clone)]
pub enum Document {
    Complex(ParsedComplex),
    Cech(ParsedCech),
}

pub fn parse_document(text: &str) -> Result<Document, DocError> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| schema("$", format!("invalid JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| schema("$", "expected an object"))?;
    if obj.contains_key("cech") {
        parse_cech_doc(&v).map(Document::Cech)
    } else if obj.contains_key("ring") {
        parse_complex_doc(&v).map(Document::Complex)
    } else {
        Err(schema("$", "expected a \"ring\" (complex) or \"cech\" key"))
    }
}

fn get<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value, DocError> {
    v.get(key)
        .ok_or_else(|| schema(path, format!("missing key \"{key}\"")))
}

fn as_i64(v: &Value, path: &str) -> Result<i64, DocError> {
    v.as_i64().ok_or_else(|| schema(path, "expected an integer"))
}

fn as_u64(v: &Value, path: &str) -> Result<u64, DocError> {
    v.as_u64()
        .ok_or_else(|| schema(path, "expected a non-negative integer"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, DocError> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

/// Parses `"num/den"` (or a bare JSON integer / integer string) into an
/// exact ring element of `R_u`.
pub fn parse_elem(v: &Value, ctx: &RingCtx, path: &str) -> Result<RingElem, DocError> {
    if let Some(n) = v.as_i64() {
        return Ok(RingElem::from_int(n));
    }
    let s = v
        .as_str()
        .ok_or_else(|| schema(path, "expected a \"num/den\" string or integer"))?;
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num.trim())
        .map_err(|_| schema(path, format!("bad numerator in {s:?}")))?;
    let den = BigInt::from_str(den.trim())
        .map_err(|_| schema(path, format!("bad denominator in {s:?}")))?;
    RingElem::canonicalize(num, den, ctx).map_err(|e| schema(path, e.to_string()))
}

pub fn elem_string(e: &RingElem) -> String {
    format!("{}/{}", e.num(), e.den())
}

fn parse_module(v: &Value, ctx: &RingCtx, path: &str) -> Result<FgModule, DocError> {
    let invs = as_array(get(v, "invariants", path)?, &format!("{path}.invariants"))?;
    let invariants: Vec<BigInt> = invs
        .iter()
        .enumerate()
        .map(|(i, x)| {
            as_u64(x, &format!("{path}.invariants[{i}]")).map(BigInt::from)
        })
        .collect::<Result<_, _>>()?;
    if invariants.iter().any(|d| *d <= BigInt::one()) {
        return Err(schema(
            &format!("{path}.invariants"),
            "invariants must be > 1",
        ));
    }
    let free = as_u64(get(v, "free", path)?, &format!("{path}.free"))? as usize;
    FgModule::from_invariants(ctx.clone(), invariants, free)
        .map_err(|e| schema(&format!("{path}.invariants"), e.to_string()))
}

fn parse_matrix(
    v: &Value,
    ctx: &RingCtx,
    rows: usize,
    cols: usize,
    path: &str,
) -> Result<Mat, DocError> {
    let arr = as_array(v, path)?;
    if arr.len() != rows {
        return Err(schema(path, format!("expected {rows} rows, got {}", arr.len())));
    }
    let mut m = Mat::zeros(rows, cols);
    for (i, row) in arr.iter().enumerate() {
        let rpath = format!("{path}[{i}]");
        let row = as_array(row, &rpath)?;
        if row.len() != cols {
            return Err(schema(&rpath, format!("expected {cols} columns, got {}", row.len())));
        }
        for (j, x) in row.iter().enumerate() {
            m.set(i, j, parse_elem(x, ctx, &format!("{rpath}[{j}]"))?);
        }
    }
    Ok(m)
}

fn parse_complex_doc(v: &Value) -> Result<ParsedComplex, DocError> {
    let u = as_u64(get(get(v, "ring", "$")?, "u", "$.ring")?, "$.ring.u")?;
    let ctx = RingCtx::new(u).map_err(|e| schema("$.ring.u", e.to_string()))?;
    let lo = as_i64(get(v, "lo", "$")?, "$.lo")?;
    let mods = as_array(get(v, "modules", "$")?, "$.modules")?;
    if mods.is_empty() {
        return Err(schema("$.modules", "a complex needs at least one component"));
    }
    if let Some(hi) = v.get("hi") {
        let hi = as_i64(hi, "$.hi")?;
        if hi != lo + mods.len() as i64 - 1 {
            return Err(schema(
                "$.hi",
                format!("window mismatch: lo {lo} plus {} modules needs hi {}", mods.len(), lo + mods.len() as i64 - 1),
            ));
        }
    }
    let components: Vec<FgModule> = mods
        .iter()
        .enumerate()
        .map(|(k, m)| parse_module(m, &ctx, &format!("$.modules[{k}]")))
        .collect::<Result<_, _>>()?;
    let dv = as_array(get(v, "diffs", "$")?, "$.diffs")?;
    if dv.len() + 1 != components.len() {
        return Err(schema(
            "$.diffs",
            format!("expected {} differentials for {} components", components.len() - 1, components.len()),
        ));
    }
    let mut diffs = Vec::new();
    for (k, d) in dv.iter().enumerate() {
        let path = format!("$.diffs[{k}]");
        let m = parse_matrix(d, &ctx, components[k].rank(), components[k + 1].rank(), &path)?;
        diffs.push(
            ModuleMap::new(components[k + 1].clone(), components[k].clone(), m).map_err(|e| {
                DocError::Validation {
                    index: lo + k as i64 + 1,
                    reason: e.to_string(),
                }
            })?,
        );
    }
    let complex = Complex::new(ctx.clone(), lo, components, diffs).map_err(|e| {
        DocError::Validation {
            index: lo,
            reason: e.to_string(),
        }
    })?;
    complex.validate().map_err(|e| DocError::Validation {
        index: match e {
            ComplexError::DSquared(i) => i,
            _ => lo,
        },
        reason: e.to_string(),
    })?;

    let subcomplex = match v.get("parts") {
        None => None,
        Some(pv) => Some(parse_parts(pv, &complex)?),
    };
    Ok(ParsedComplex { complex, subcomplex })
}

/// Parses a `"parts"` array (one submodule per degree) against a complex.
pub fn parse_parts(pv: &Value, complex: &Complex) -> Result<Subcomplex, DocError> {
    let ctx = complex.ctx();
    let arr = as_array(pv, "$.parts")?;
    if arr.len() != complex.components().len() {
        return Err(schema(
            "$.parts",
            format!("expected {} parts, got {}", complex.components().len(), arr.len()),
        ));
    }
    let mut parts = Vec::new();
    for (k, p) in arr.iter().enumerate() {
        let path = format!("$.parts[{k}]");
        let m = &complex.components()[k];
        let gens = as_array(get(p, "gens", &path)?, &format!("{path}.gens"))?;
        let mut raw = Mat::zeros(m.rank(), gens.len());
        for (g, gen) in gens.iter().enumerate() {
            let gpath = format!("{path}.gens[{g}]");
            let gen = as_array(gen, &gpath)?;
            if gen.len() != m.rank() {
                return Err(schema(
                    &gpath,
                    format!("generator has {} coordinates, component rank is {}", gen.len(), m.rank()),
                ));
            }
            for (i, x) in gen.iter().enumerate() {
                raw.set(i, g, parse_elem(x, ctx, &format!("{gpath}[{i}]"))?);
            }
        }
        parts.push(Submodule::new(m.clone(), &raw));
    }
    Subcomplex::new(complex.clone(), parts).map_err(|e| DocError::Validation {
        index: match e {
            ComplexError::NotClosed(i) | ComplexError::PartMismatch(i) => i,
            _ => complex.lo(),
        },
        reason: e.to_string(),
    })
}

fn parse_cech_doc(v: &Value) -> Result<ParsedCech, DocError> {
    let spec = get(v, "cech", "$")?;
    let elems = as_array(get(spec, "elements", "$.cech")?, "$.cech.elements")?;
    let elements: Vec<u64> = elems
        .iter()
        .enumerate()
        .map(|(i, x)| as_u64(x, &format!("$.cech.elements[{i}]")))
        .collect::<Result<_, _>>()?;
    let parts = match v.get("parts") {
        None => None,
        Some(pv) => {
            let arr = as_array(pv, "$.parts")?;
            let mut out = Vec::new();
            for (k, p) in arr.iter().enumerate() {
                let path = format!("$.parts[{k}]");
                let gens = as_array(get(p, "gens", &path)?, &format!("{path}.gens"))?;
                let gens: Vec<BigInt> = gens
                    .iter()
                    .enumerate()
                    .map(|(i, x)| {
                        as_u64(x, &format!("{path}.gens[{i}]")).map(BigInt::from)
                    })
                    .collect::<Result<_, _>>()?;
                out.push(IdealSubcomplexPart { gens });
            }
            Some(out)
        }
    };
    Ok(ParsedCech { elements, parts })
}

pub fn module_to_json(m: &FgModule) -> Value {
    json!({
        "invariants": m.invariants().iter().map(|d| {
            json!(d.to_u64().expect("desk-scale invariant"))
        }).collect::<Vec<_>>(),
        "free": m.free_rank(),
    })
}

pub fn matrix_to_json(m: &Mat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| Value::String(elem_string(m.get(i, j))))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn complex_to_json(c: &Complex) -> Value {
    json!({
        "ring": {"u": c.ctx().u()},
        "lo": c.lo(),
        "hi": c.hi(),
        "modules": c.components().iter().map(module_to_json).collect::<Vec<_>>(),
        "diffs": c.diffs().iter().map(|d| matrix_to_json(d.matrix())).collect::<Vec<_>>(),
    })
}

pub fn subcomplex_parts_to_json(s: &Subcomplex) -> Value {
    Value::Array(
        s.parts()
            .iter()
            .map(|p| {
                let m = p.gen_matrix();
                json!({
                    "gens": (0..m.cols()).map(|j| {
                        Value::Array((0..m.rows()).map(|i| Value::String(elem_string(m.get(i, j)))).collect())
                    }).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

/// Serializes a complex (optionally with a subcomplex) to its document form.
pub fn document_to_json(c: &Complex, s: Option<&Subcomplex>) -> Value {
    let mut v = complex_to_json(c);
    if let Some(s) = s {
        v["parts"] = subcomplex_parts_to_json(s);
    }
    v
}
