//! JSON schemas for diagrams, morphisms, and fiber data.
//!
//! Diagram: `{"domain": m, "codomain": n, "pairs": [["s1","s2"],["t1","t2"]]}`
//! with 1-based labels `s<i>` / `t<j>`.
//!
//! Morphism: `{"context": "generic" | {"bar": "a"} | {"tilde": "a"},
//! "domain": m, "codomain": n, "terms": [{"coeff": "...", "diagram": {...}}]}`.
//! Rationals are `p/q` strings; generic coefficients are canonical sparse
//! Laurent strings with ascending exponents, e.g. `3/2*q^-1 + 1`.
//!
//! Fiber datum: `{"b": [["0","1"],["0","0"]], "t": [[...]]}`.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::diagram::{Diagram, Point};
use crate::fiber::BilinearForm;
use crate::functor::CrystalMatrix;
use crate::morphism::{Morphism, ParamContext};
use crate::scalar::parse_rat;
use crate::crystal::TensorElement;
use crate::{QMat, Rat, Scalar};

use num::traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsonError {
    #[error("expected {expected} at {at}")]
    Shape { expected: &'static str, at: String },
    #[error("bad point label {0:?}")]
    BadLabel(String),
    #[error("bad scalar string {0:?}")]
    BadScalar(String),
    #[error("bad context {0}")]
    BadContext(String),
    #[error("invalid diagram: {0}")]
    Diagram(String),
    #[error("invalid morphism: {0}")]
    Morphism(String),
}

fn label(p: Point) -> String {
    p.to_string()
}

fn parse_label(s: &str) -> Result<Point, JsonError> {
    let err = || JsonError::BadLabel(s.to_string());
    let (kind, idx) = s.split_at(1);
    let i: usize = idx.parse().map_err(|_| err())?;
    if i == 0 {
        return Err(err());
    }
    match kind {
        "s" => Ok(Point::Src(i)),
        "t" => Ok(Point::Tgt(i)),
        _ => Err(err()),
    }
}

pub fn diagram_to_json(d: &Diagram) -> Value {
    let pairs: Vec<Value> = d
        .pairs()
        .iter()
        .map(|&(a, b)| json!([label(a), label(b)]))
        .collect();
    json!({
        "domain": d.dom(),
        "codomain": d.cod(),
        "pairs": pairs,
    })
}

fn get_usize(v: &Value, key: &str) -> Result<usize, JsonError> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|n| n as usize)
        .ok_or(JsonError::Shape {
            expected: "nonnegative integer",
            at: key.to_string(),
        })
}

pub fn diagram_from_json(v: &Value) -> Result<Diagram, JsonError> {
    let m = get_usize(v, "domain")?;
    let n = get_usize(v, "codomain")?;
    let pairs_v = v
        .get("pairs")
        .and_then(Value::as_array)
        .ok_or(JsonError::Shape {
            expected: "array",
            at: "pairs".into(),
        })?;
    let mut pairs = Vec::with_capacity(pairs_v.len());
    for p in pairs_v {
        let arr = p.as_array().filter(|a| a.len() == 2).ok_or(JsonError::Shape {
            expected: "two-element array",
            at: "pairs[i]".into(),
        })?;
        let a = arr[0].as_str().ok_or(JsonError::Shape {
            expected: "string label",
            at: "pairs[i][0]".into(),
        })?;
        let b = arr[1].as_str().ok_or(JsonError::Shape {
            expected: "string label",
            at: "pairs[i][1]".into(),
        })?;
        pairs.push((parse_label(a)?, parse_label(b)?));
    }
    Diagram::new(m, n, &pairs).map_err(|e| JsonError::Diagram(e.to_string()))
}

pub fn context_to_json(ctx: &ParamContext) -> Value {
    match ctx {
        ParamContext::Generic => json!("generic"),
        ParamContext::BarAt(a) => json!({ "bar": a.to_string() }),
        ParamContext::TildeAt(a) => json!({ "tilde": a.to_string() }),
    }
}

pub fn context_from_json(v: &Value) -> Result<ParamContext, JsonError> {
    if v.as_str() == Some("generic") {
        return Ok(ParamContext::Generic);
    }
    let obj = v.as_object().ok_or(JsonError::BadContext(v.to_string()))?;
    if let Some(a) = obj.get("bar").and_then(Value::as_str) {
        let a = parse_rat(a).map_err(|e| JsonError::BadScalar(e.to_string()))?;
        return Ok(ParamContext::BarAt(a));
    }
    if let Some(a) = obj.get("tilde").and_then(Value::as_str) {
        let a = parse_rat(a).map_err(|e| JsonError::BadScalar(e.to_string()))?;
        return ParamContext::tilde_at(a).map_err(|e| JsonError::BadContext(e.to_string()));
    }
    Err(JsonError::BadContext(v.to_string()))
}

fn coeff_to_string(ctx: &ParamContext, c: &Scalar) -> String {
    match ctx {
        ParamContext::Generic => c.to_string(),
        _ => c.constant_term().to_string(),
    }
}

pub fn morphism_to_json(f: &Morphism) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .map(|(d, c)| {
            json!({
                "coeff": coeff_to_string(f.context(), c),
                "diagram": diagram_to_json(d),
            })
        })
        .collect();
    json!({
        "context": context_to_json(f.context()),
        "domain": f.dom(),
        "codomain": f.cod(),
        "terms": terms,
    })
}

pub fn morphism_from_json(v: &Value) -> Result<Morphism, JsonError> {
    let ctx = context_from_json(v.get("context").unwrap_or(&Value::Null))?;
    let m = get_usize(v, "domain")?;
    let n = get_usize(v, "codomain")?;
    let terms_v = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or(JsonError::Shape {
            expected: "array",
            at: "terms".into(),
        })?;
    let mut terms = Vec::with_capacity(terms_v.len());
    for t in terms_v {
        let coeff_s = t
            .get("coeff")
            .and_then(Value::as_str)
            .ok_or(JsonError::Shape {
                expected: "string",
                at: "terms[i].coeff".into(),
            })?;
        let coeff =
            Scalar::parse(coeff_s).map_err(|e| JsonError::BadScalar(e.to_string()))?;
        let d = diagram_from_json(t.get("diagram").unwrap_or(&Value::Null))?;
        terms.push((d, coeff));
    }
    Morphism::from_terms(m, n, ctx, terms).map_err(|e| JsonError::Morphism(e.to_string()))
}

pub fn rational_matrix_to_json(m: &QMat) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array(
                (0..m.cols())
                    .map(|j| Value::String(m.get(i, j).to_string()))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

pub fn rational_matrix_from_json(v: &Value) -> Result<QMat, JsonError> {
    let rows = v.as_array().ok_or(JsonError::Shape {
        expected: "array of rows",
        at: "matrix".into(),
    })?;
    let mut data: Vec<Vec<Rat>> = Vec::with_capacity(rows.len());
    for row in rows {
        let cells = row.as_array().ok_or(JsonError::Shape {
            expected: "array of strings",
            at: "matrix row".into(),
        })?;
        let mut out = Vec::with_capacity(cells.len());
        for c in cells {
            let s = c.as_str().ok_or(JsonError::Shape {
                expected: "rational string",
                at: "matrix entry".into(),
            })?;
            out.push(parse_rat(s).map_err(|e| JsonError::BadScalar(e.to_string()))?);
        }
        data.push(out);
    }
    if data.is_empty() {
        return Ok(QMat::zero(0, 0));
    }
    let w = data[0].len();
    if data.iter().any(|r| r.len() != w) {
        return Err(JsonError::Shape {
            expected: "rectangular matrix",
            at: "matrix".into(),
        });
    }
    Ok(QMat::from_rows(data))
}

/// Parse a fiber datum `{"b": [[..]], "t": [[..]]}` into the raw pair.
pub fn fiber_pair_from_json(v: &Value) -> Result<(BilinearForm, QMat), JsonError> {
    let b = rational_matrix_from_json(v.get("b").unwrap_or(&Value::Null))?;
    if b.rows() != b.cols() {
        return Err(JsonError::Shape {
            expected: "square matrix",
            at: "b".into(),
        });
    }
    let t = rational_matrix_from_json(v.get("t").unwrap_or(&Value::Null))?;
    Ok((BilinearForm::new(b), t))
}

pub fn fiber_pair_to_json(b: &BilinearForm, t: &QMat) -> Value {
    json!({
        "b": rational_matrix_to_json(b.matrix()),
        "t": rational_matrix_to_json(t),
    })
}

/// Sparse triplet dump of a functor matrix with bitstring row/column labels.
pub fn crystal_matrix_to_json(m: &CrystalMatrix) -> Value {
    let mut entries: Vec<Value> = Vec::new();
    for i in 0..m.mat.rows() {
        for j in 0..m.mat.cols() {
            let v = m.mat.get(i, j);
            if !v.is_zero() {
                entries.push(json!([i, j, v.to_string()]));
            }
        }
    }
    let row_labels: Vec<String> = (0..1u32 << m.cod)
        .map(|b| TensorElement::new(m.cod, b).to_string())
        .collect();
    let col_labels: Vec<String> = (0..1u32 << m.dom)
        .map(|b| TensorElement::new(m.dom, b).to_string())
        .collect();
    let mut obj = Map::new();
    obj.insert("rows".into(), json!(m.mat.rows()));
    obj.insert("cols".into(), json!(m.mat.cols()));
    obj.insert("entries".into(), Value::Array(entries));
    obj.insert("row_labels".into(), json!(row_labels));
    obj.insert("col_labels".into(), json!(col_labels));
    Value::Object(obj)
}
