//! JSON encodings of fields, scalars, matrices and the complex types.
//!
//! ```text
//! field     {"field":"Q"} | {"field":"Fp","p":101}
//! scalar    "num/den" or "num" over Q, an integer over F_p
//! matrix    array of rows
//! complex   {<field>, "dims":[..], "diff":[D_1, ..., D_k]}
//! binary    {<field>, "dims":[..], "top":[D_1, ..], "bot":[D'_1, ..]}
//! ladder    {"source":<binary>, "target":<binary>, "sigma":[..], "tau":[..]}
//! ses       {"sub":<binary>, "total":<binary>, "quot":<binary>, "incl":[..], "proj":[..]}
//! nenashev  {"m":<binary>, "n":<binary>, "p":<binary>,
//!            "mn_top":[..], "np_top":[..], "mn_bot":[..], "np_bot":[..]}
//! ```
//!
//! The field keys are written inline into complexes. The shape of each matrix
//! is fixed by `dims`, so empty matrices round-trip.

use bincx_core::constructions::NenashevDiagram;
use bincx_core::{BinaryComplex, BinaryLadder, BinarySes, ChainComplex, FieldDesc, Matrix, Scalar};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid document: {0}")]
    Schema(String),
    #[error(transparent)]
    Core(#[from] bincx_core::Error),
}

pub type Result<T> = std::result::Result<T, JsonError>;

fn schema<T>(msg: impl Into<String>) -> Result<T> {
    Err(JsonError::Schema(msg.into()))
}

/// Any of the documents this crate reads.
#[derive(Clone, Debug)]
pub enum Document {
    Complex(ChainComplex),
    Binary(BinaryComplex),
    Ladder(BinaryLadder),
    Ses(BinarySes),
    Nenashev(NenashevDiagram),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Complex(_) => "complex",
            Document::Binary(_) => "binary",
            Document::Ladder(_) => "ladder",
            Document::Ses(_) => "ses",
            Document::Nenashev(_) => "nenashev",
        }
    }
}

pub fn parse_document(text: &str) -> Result<Document> {
    let v: Value = serde_json::from_str(text)?;
    document_from_value(&v)
}

pub fn document_from_value(v: &Value) -> Result<Document> {
    let o = object(v)?;
    if o.contains_key("source") {
        Ok(Document::Ladder(ladder_from_value(v)?))
    } else if o.contains_key("sub") {
        Ok(Document::Ses(ses_from_value(v)?))
    } else if o.contains_key("mn_top") {
        Ok(Document::Nenashev(nenashev_from_value(v)?))
    } else if o.contains_key("top") {
        Ok(Document::Binary(binary_from_value(v)?))
    } else if o.contains_key("diff") {
        Ok(Document::Complex(complex_from_value(v)?))
    } else {
        schema("unrecognised document")
    }
}

pub fn document_to_value(d: &Document) -> Value {
    match d {
        Document::Complex(c) => complex_to_value(c),
        Document::Binary(b) => binary_to_value(b),
        Document::Ladder(l) => ladder_to_value(l),
        Document::Ses(s) => ses_to_value(s),
        Document::Nenashev(n) => nenashev_to_value(n),
    }
}

fn object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object().ok_or_else(|| JsonError::Schema("expected an object".into()))
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    object(v)?
        .get(key)
        .ok_or_else(|| JsonError::Schema(format!("missing key {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| JsonError::Schema(format!("{what} must be an array")))
}

pub fn field_to_value(f: FieldDesc) -> Value {
    match f {
        FieldDesc::Rationals => json!({"field": "Q"}),
        FieldDesc::Prime(p) => json!({"field": "Fp", "p": p}),
    }
}

pub fn field_from_value(v: &Value) -> Result<FieldDesc> {
    match get(v, "field")?.as_str() {
        Some("Q") => Ok(FieldDesc::Rationals),
        Some("Fp") => {
            let p = get(v, "p")?
                .as_u64()
                .ok_or_else(|| JsonError::Schema("p must be a positive integer".into()))?;
            Ok(FieldDesc::prime(p)?)
        }
        _ => schema("field must be \"Q\" or \"Fp\""),
    }
}

pub fn scalar_to_value(s: &Scalar) -> Value {
    match s {
        Scalar::Rational(_) => Value::String(s.to_string()),
        Scalar::Modular { value, .. } => json!(value),
    }
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| JsonError::Schema(format!("not an integer: {s:?}")))
}

pub fn scalar_from_value(f: FieldDesc, v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(f.from_i64(i))
            } else if let Some(u) = n.as_u64() {
                Ok(f.from_bigint(&BigInt::from(u)))
            } else {
                schema(format!("scalar {n} is not an integer"))
            }
        }
        Value::String(s) => {
            let (num, den) = match s.split_once('/') {
                Some((a, b)) => (parse_bigint(a)?, parse_bigint(b)?),
                None => (parse_bigint(s)?, BigInt::from(1)),
            };
            f.from_ratio(&num, &den)
                .ok_or_else(|| JsonError::Schema(format!("denominator of {s:?} vanishes")))
        }
        _ => schema("scalars are integers or strings"),
    }
}

pub fn matrix_to_value(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(scalar_to_value).collect())).collect())
}

pub fn matrix_from_value(f: FieldDesc, v: &Value, rows: usize, cols: usize) -> Result<Matrix> {
    let rs = array(v, "matrix")?;
    if rs.len() != rows {
        return schema(format!("expected {rows} rows, found {}", rs.len()));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for r in rs {
        let entries = array(r, "matrix row")?;
        if entries.len() != cols {
            return schema(format!("expected {cols} columns, found {}", entries.len()));
        }
        for e in entries {
            data.push(scalar_from_value(f, e)?);
        }
    }
    Ok(Matrix::new(f, rows, cols, data)?)
}

fn matrices_to_value(ms: &[Matrix]) -> Value {
    Value::Array(ms.iter().map(matrix_to_value).collect())
}

fn dims_from_value(v: &Value) -> Result<Vec<usize>> {
    array(get(v, "dims")?, "dims")?
        .iter()
        .map(|d| {
            d.as_u64()
                .map(|d| d as usize)
                .ok_or_else(|| JsonError::Schema("dims must be non-negative integers".into()))
        })
        .collect()
}

fn diffs_from_value(f: FieldDesc, v: &Value, dims: &[usize]) -> Result<Vec<Matrix>> {
    let ds = array(v, "differentials")?;
    let k = dims.len().saturating_sub(1);
    if ds.len() != k {
        return schema(format!("expected {k} differentials, found {}", ds.len()));
    }
    ds.iter()
        .enumerate()
        .map(|(i, d)| matrix_from_value(f, d, dims[i], dims[i + 1]))
        .collect()
}

/// Degreewise square maps between objects of the given dims.
fn maps_from_value(f: FieldDesc, v: &Value, src: &[usize], dst: &[usize]) -> Result<Vec<Matrix>> {
    let ms = array(v, "map list")?;
    if ms.len() != src.len() || src.len() != dst.len() {
        return schema(format!("expected {} maps, found {}", src.len(), ms.len()));
    }
    ms.iter()
        .enumerate()
        .map(|(i, m)| matrix_from_value(f, m, dst[i], src[i]))
        .collect()
}

fn with_field(f: FieldDesc, mut rest: Map<String, Value>) -> Value {
    if let Value::Object(fo) = field_to_value(f) {
        let mut out = fo;
        out.append(&mut rest);
        Value::Object(out)
    } else {
        unreachable!()
    }
}

pub fn complex_to_value(c: &ChainComplex) -> Value {
    let mut m = Map::new();
    m.insert("dims".into(), json!(c.dims()));
    m.insert("diff".into(), matrices_to_value(c.differentials()));
    with_field(c.field(), m)
}

pub fn complex_from_value(v: &Value) -> Result<ChainComplex> {
    let f = field_from_value(v)?;
    let dims = dims_from_value(v)?;
    let diffs = diffs_from_value(f, get(v, "diff")?, &dims)?;
    Ok(ChainComplex::new(f, dims, diffs)?)
}

pub fn binary_to_value(b: &BinaryComplex) -> Value {
    let mut m = Map::new();
    m.insert("dims".into(), json!(b.dims()));
    m.insert("top".into(), matrices_to_value(b.top().differentials()));
    m.insert("bot".into(), matrices_to_value(b.bot().differentials()));
    with_field(b.field(), m)
}

pub fn binary_from_value(v: &Value) -> Result<BinaryComplex> {
    let f = field_from_value(v)?;
    let dims = dims_from_value(v)?;
    let top = diffs_from_value(f, get(v, "top")?, &dims)?;
    let bot = diffs_from_value(f, get(v, "bot")?, &dims)?;
    Ok(BinaryComplex::from_diffs(f, dims, top, bot)?)
}

pub fn ladder_to_value(l: &BinaryLadder) -> Value {
    json!({
        "source": binary_to_value(&l.source),
        "target": binary_to_value(&l.target),
        "sigma": matrices_to_value(&l.sigma),
        "tau": matrices_to_value(&l.tau),
    })
}

pub fn ladder_from_value(v: &Value) -> Result<BinaryLadder> {
    let source = binary_from_value(get(v, "source")?)?;
    let target = binary_from_value(get(v, "target")?)?;
    let f = source.field();
    let sigma = maps_from_value(f, get(v, "sigma")?, source.dims(), target.dims())?;
    let tau = maps_from_value(f, get(v, "tau")?, source.dims(), target.dims())?;
    Ok(BinaryLadder::new(source, target, sigma, tau)?)
}

pub fn ses_to_value(s: &BinarySes) -> Value {
    json!({
        "sub": binary_to_value(&s.sub),
        "total": binary_to_value(&s.total),
        "quot": binary_to_value(&s.quot),
        "incl": matrices_to_value(&s.incl),
        "proj": matrices_to_value(&s.proj),
    })
}

pub fn ses_from_value(v: &Value) -> Result<BinarySes> {
    let sub = binary_from_value(get(v, "sub")?)?;
    let total = binary_from_value(get(v, "total")?)?;
    let quot = binary_from_value(get(v, "quot")?)?;
    let f = total.field();
    let incl = maps_from_value(f, get(v, "incl")?, sub.dims(), total.dims())?;
    let proj = maps_from_value(f, get(v, "proj")?, total.dims(), quot.dims())?;
    let s = BinarySes { sub, total, quot, incl, proj };
    s.validate()?;
    Ok(s)
}

pub fn nenashev_to_value(d: &NenashevDiagram) -> Value {
    json!({
        "m": binary_to_value(&d.m),
        "n": binary_to_value(&d.n),
        "p": binary_to_value(&d.p),
        "mn_top": matrices_to_value(&d.mn_top),
        "np_top": matrices_to_value(&d.np_top),
        "mn_bot": matrices_to_value(&d.mn_bot),
        "np_bot": matrices_to_value(&d.np_bot),
    })
}

pub fn nenashev_from_value(v: &Value) -> Result<NenashevDiagram> {
    let m = binary_from_value(get(v, "m")?)?;
    let n = binary_from_value(get(v, "n")?)?;
    let p = binary_from_value(get(v, "p")?)?;
    let f = n.field();
    if m.top_degree() != 2 || n.top_degree() != 2 || p.top_degree() != 2 {
        return schema("diagram rows must be supported on [0,2]");
    }
    let d = NenashevDiagram {
        mn_top: maps_from_value(f, get(v, "mn_top")?, m.dims(), n.dims())?,
        np_top: maps_from_value(f, get(v, "np_top")?, n.dims(), p.dims())?,
        mn_bot: maps_from_value(f, get(v, "mn_bot")?, m.dims(), n.dims())?,
        np_bot: maps_from_value(f, get(v, "np_bot")?, n.dims(), p.dims())?,
        m,
        n,
        p,
    };
    d.validate()?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bincx_core::randgen::{GenConfig, Generator};

    #[test]
    fn scalars() {
        let q = FieldDesc::Rationals;
        let s = scalar_from_value(q, &json!("-6/4")).unwrap();
        assert_eq!(scalar_to_value(&s), json!("-3/2"));
        assert_eq!(scalar_to_value(&q.from_i64(5)), json!("5"));
        let f = FieldDesc::Prime(7);
        assert_eq!(scalar_to_value(&scalar_from_value(f, &json!(-1)).unwrap()), json!(6));
        assert_eq!(scalar_to_value(&scalar_from_value(f, &json!("1/2")).unwrap()), json!(4));
        assert!(scalar_from_value(f, &json!("1/7")).is_err());
        assert!(scalar_from_value(q, &json!(1.5)).is_err());
    }

    #[test]
    fn fields() {
        assert_eq!(field_from_value(&json!({"field": "Q"})).unwrap(), FieldDesc::Rationals);
        assert_eq!(field_from_value(&json!({"field": "Fp", "p": 101})).unwrap(), FieldDesc::Prime(101));
        assert!(field_from_value(&json!({"field": "Fp", "p": 4})).is_err());
    }

    #[test]
    fn round_trips() {
        for f in [FieldDesc::Rationals, FieldDesc::Prime(101)] {
            let mut g = Generator::new(GenConfig::new(5, f).with_length(3));
            let docs = [
                Document::Complex(g.gen_acyclic()),
                Document::Binary(g.gen_binary()),
                Document::Ladder(g.gen_ladder()),
                Document::Ses(g.gen_ses(false)),
                Document::Nenashev(g.gen_nenashev()),
            ];
            for d in docs {
                let text = document_to_value(&d).to_string();
                let back = parse_document(&text).unwrap();
                assert_eq!(back.kind(), d.kind());
                assert_eq!(document_to_value(&back), document_to_value(&d));
            }
        }
    }

    #[test]
    fn empty_matrices_keep_their_shape() {
        let b = BinaryComplex::zero(FieldDesc::Rationals, 2);
        let v = binary_to_value(&b);
        assert_eq!(binary_from_value(&v).unwrap(), b);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(parse_document("{"), Err(JsonError::Syntax(_))));
        assert!(parse_document(r#"{"field":"Q","dims":[1,1],"top":[[["1"]]],"bot":[[["0"]]]}"#).is_err());
        assert!(parse_document(r#"{"field":"Q","dims":[1,1],"top":[[["1","2"]]],"bot":[[["1"]]]}"#).is_err());
        assert!(parse_document(r#"[1,2]"#).is_err());
    }
}
