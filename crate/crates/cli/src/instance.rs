//! JSON instance documents.
//!
//! ```json
//! {"kind": "vcategory", "tensor": "lukasiewicz", "grid": 2,
//!  "hom": [["1", "1/2"], ["0", "1"]]}
//! ```
//!
//! Values are `"p/q"` strings or the integers `0` and `1`. `tensor` defaults
//! to `lukasiewicz`; `grid` defaults to `2` when that grid is closed under
//! the tensor and is otherwise absent.

use std::fmt;

use serde_json::Value as Json;
use thiserror::Error;

use qcat_core::poset::{FinPoset, PosetError};
use qcat_core::quantale::{Segment, TNormParseError};
use qcat_core::value::ValueError;
use qcat_core::vcat::{CategoryViolation, Matrix};
use qcat_core::vrel::is_distributor;
use qcat_core::{Quantale, TNorm, VCategory, VRelation, Value};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum ErrorCode {
    Syntax,
    Schema,
    MalformedRational,
    OutOfRange,
    NotPoset,
    NotCategory,
    NotDistributor,
    GridNotClosed,
    UnknownTensor,
    NotInSpace,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::Syntax => "syntax",
            ErrorCode::Schema => "schema",
            ErrorCode::MalformedRational => "malformed-rational",
            ErrorCode::OutOfRange => "out-of-range",
            ErrorCode::NotPoset => "not-poset",
            ErrorCode::NotCategory => "not-category",
            ErrorCode::NotDistributor => "not-distributor",
            ErrorCode::GridNotClosed => "grid-not-closed",
            ErrorCode::UnknownTensor => "unknown-tensor",
            ErrorCode::NotInSpace => "not-in-space",
        }
    }
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("error[{code}] at {path}: {message}")]
pub struct InstanceError {
    pub code: ErrorCode,
    pub path: String,
    pub message: String,
}

impl InstanceError {
    fn new(code: ErrorCode, path: &str, message: impl Into<String>) -> InstanceError {
        InstanceError {
            code,
            path: path.to_string(),
            message: message.into(),
        }
    }
}

type Parsed<T> = Result<T, InstanceError>;

#[derive(Clone, Debug)]
pub enum InstanceKind {
    Poset(FinPoset),
    VCategory(VCategory),
    Distributor {
        source: VCategory,
        target: VCategory,
        relation: VRelation,
    },
    Generators {
        poset: FinPoset,
        functions: Vec<Vec<Value>>,
    },
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub quantale: Quantale,
    pub grid: Option<u32>,
    pub kind: InstanceKind,
}

impl Instance {
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            InstanceKind::Poset(_) => "poset",
            InstanceKind::VCategory(_) => "vcategory",
            InstanceKind::Distributor { .. } => "distributor",
            InstanceKind::Generators { .. } => "generators",
        }
    }

    /// The carrier as an order, when there is one.
    pub fn poset(&self) -> Option<FinPoset> {
        match &self.kind {
            InstanceKind::Poset(p) | InstanceKind::Generators { poset: p, .. } => Some(p.clone()),
            InstanceKind::VCategory(x) if x.is_crisp() => x.natural_poset().ok(),
            _ => None,
        }
    }

    /// The carrier as a category over `q`.
    pub fn category(&self, q: &Quantale) -> Option<VCategory> {
        match &self.kind {
            InstanceKind::VCategory(x) => Some(VCategory::new(q.clone(), x.matrix().clone()).ok()?),
            _ => self.poset().map(|p| VCategory::from_poset(q.clone(), &p)),
        }
    }
}

fn field<'a>(obj: &'a serde_json::Map<String, Json>, key: &str, path: &str) -> Parsed<&'a Json> {
    obj.get(key)
        .ok_or_else(|| InstanceError::new(ErrorCode::Schema, path, format!("missing field `{key}`")))
}

pub fn parse_value(j: &Json, path: &str) -> Parsed<Value> {
    match j {
        Json::String(s) => s.parse::<Value>().map_err(|e| {
            let code = match e {
                ValueError::OutOfRange(..) => ErrorCode::OutOfRange,
                _ => ErrorCode::MalformedRational,
            };
            InstanceError::new(code, path, e.to_string())
        }),
        Json::Number(n) => match n.as_u64() {
            Some(k @ (0 | 1)) => Ok(Value::new(k, 1).expect("0 and 1 are values")),
            Some(k) => Err(InstanceError::new(ErrorCode::OutOfRange, path, format!("{k} is outside [0,1]"))),
            None => Err(InstanceError::new(
                ErrorCode::MalformedRational,
                path,
                format!("{n} is not exact; write values as \"p/q\" strings"),
            )),
        },
        _ => Err(InstanceError::new(ErrorCode::Schema, path, "expected a \"p/q\" string or 0/1")),
    }
}

fn parse_matrix(j: &Json, path: &str) -> Parsed<Vec<Vec<Value>>> {
    let rows = j
        .as_array()
        .ok_or_else(|| InstanceError::new(ErrorCode::Schema, path, "expected an array of rows"))?;
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let rpath = format!("{path}[{i}]");
            let cells = row
                .as_array()
                .ok_or_else(|| InstanceError::new(ErrorCode::Schema, &rpath, "expected an array"))?;
            cells
                .iter()
                .enumerate()
                .map(|(k, c)| parse_value(c, &format!("{rpath}[{k}]")))
                .collect()
        })
        .collect()
}

fn square(rows: &[Vec<Value>], path: &str) -> Parsed<()> {
    let n = rows.len();
    match rows.iter().position(|r| r.len() != n) {
        Some(i) => Err(InstanceError::new(
            ErrorCode::Schema,
            &format!("{path}[{i}]"),
            format!("row has {} entries, expected {n}", rows[i].len()),
        )),
        None => Ok(()),
    }
}

fn parse_poset(j: &Json, path: &str) -> Parsed<FinPoset> {
    let rows = parse_matrix(j, path)?;
    square(&rows, path)?;
    let mut leq = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (k, v) in row.iter().enumerate() {
            if !(v.is_zero() || v.is_one()) {
                return Err(InstanceError::new(
                    ErrorCode::NotPoset,
                    &format!("{path}[{i}][{k}]"),
                    format!("order entries are 0 or 1, found {v}"),
                ));
            }
            out.push(v.is_one());
        }
        leq.push(out);
    }
    FinPoset::from_leq(&leq).map_err(|e| {
        let at = match e {
            PosetError::NotReflexive(x) => format!("{path}[{x}][{x}]"),
            PosetError::NotAntisymmetric(x, y) => format!("{path}[{x}][{y}]"),
            PosetError::NotTransitive(x, _, z) => format!("{path}[{x}][{z}]"),
            _ => path.to_string(),
        };
        InstanceError::new(ErrorCode::NotPoset, &at, e.to_string())
    })
}

fn parse_category(j: &Json, q: &Quantale, path: &str) -> Parsed<VCategory> {
    let obj = j
        .as_object()
        .ok_or_else(|| InstanceError::new(ErrorCode::Schema, path, "expected an object with `leq` or `hom`"))?;
    if let Some(leq) = obj.get("leq") {
        let p = parse_poset(leq, &format!("{path}.leq"))?;
        return Ok(VCategory::from_poset(q.clone(), &p));
    }
    let hpath = format!("{path}.hom");
    let rows = parse_matrix(field(obj, "hom", path)?, &hpath)?;
    square(&rows, &hpath)?;
    let m = Matrix::from_rows(rows).map_err(|e| InstanceError::new(ErrorCode::Schema, &hpath, e.to_string()))?;
    let x = VCategory::new(q.clone(), m).map_err(|e| InstanceError::new(ErrorCode::Schema, &hpath, e.to_string()))?;
    x.validate().map_err(|e| {
        let at = match e {
            CategoryViolation::Reflexivity { x, .. } => format!("{hpath}[{x}][{x}]"),
            CategoryViolation::Transitivity { x, z, .. } => format!("{hpath}[{x}][{z}]"),
        };
        InstanceError::new(ErrorCode::NotCategory, &at, e.to_string())
    })?;
    Ok(x)
}

fn parse_tensor(j: Option<&Json>) -> Parsed<Quantale> {
    let path = "$.tensor";
    let tensor_err = |e: TNormParseError| {
        let code = match e {
            TNormParseError::Value(ValueError::OutOfRange(..)) => ErrorCode::OutOfRange,
            TNormParseError::Value(_) => ErrorCode::MalformedRational,
            _ => ErrorCode::UnknownTensor,
        };
        InstanceError::new(code, path, e.to_string())
    };
    let tnorm = match j {
        None => TNorm::Lukasiewicz,
        Some(Json::String(s)) => s.parse::<TNorm>().map_err(tensor_err)?,
        Some(Json::Object(obj)) => {
            let spath = format!("{path}.ordinal");
            let segs = field(obj, "ordinal", path)?
                .as_array()
                .ok_or_else(|| InstanceError::new(ErrorCode::Schema, &spath, "expected an array of segments"))?;
            let mut out = Vec::with_capacity(segs.len());
            for (i, seg) in segs.iter().enumerate() {
                let p = format!("{spath}[{i}]");
                let o = seg
                    .as_object()
                    .ok_or_else(|| InstanceError::new(ErrorCode::Schema, &p, "expected {lo, hi, inner}"))?;
                let lo = parse_value(field(o, "lo", &p)?, &format!("{p}.lo"))?;
                let hi = parse_value(field(o, "hi", &p)?, &format!("{p}.hi"))?;
                let inner = field(o, "inner", &p)?
                    .as_str()
                    .ok_or_else(|| InstanceError::new(ErrorCode::Schema, &format!("{p}.inner"), "expected a string"))?
                    .parse::<TNorm>()
                    .map_err(|e| InstanceError::new(ErrorCode::UnknownTensor, &format!("{p}.inner"), e.to_string()))?;
                out.push(
                    Segment::new(lo, hi, inner)
                        .map_err(|e| InstanceError::new(ErrorCode::UnknownTensor, &p, e.to_string()))?,
                );
            }
            TNorm::ordinal_sum(out).map_err(|e| InstanceError::new(ErrorCode::UnknownTensor, &spath, e.to_string()))?
        }
        Some(_) => {
            return Err(InstanceError::new(ErrorCode::Schema, path, "expected a string or {\"ordinal\": [...]}"));
        }
    };
    Ok(Quantale::new(tnorm))
}

/// Checks that `Q_n` is a sub-quantale; the error names the first escape.
pub fn require_grid(q: &Quantale, n: u32, path: &str) -> Parsed<()> {
    q.grid_algebra(n)
        .map(|_| ())
        .map_err(|e| InstanceError::new(ErrorCode::GridNotClosed, path, e.to_string()))
}

fn parse_grid(j: Option<&Json>, q: &Quantale) -> Parsed<Option<u32>> {
    let path = "$.grid";
    match j {
        None => Ok(q.grid_closed(2).then_some(2)),
        Some(g) => {
            let n = g
                .as_u64()
                .filter(|&n| (1..=254).contains(&n))
                .ok_or_else(|| InstanceError::new(ErrorCode::Schema, path, "grid must be an integer in 1..=254"))?
                as u32;
            require_grid(q, n, path)?;
            Ok(Some(n))
        }
    }
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Parsed<Instance> {
    let doc: Json = serde_json::from_str(text).map_err(|e| {
        InstanceError::new(
            ErrorCode::Syntax,
            &format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let obj = doc
        .as_object()
        .ok_or_else(|| InstanceError::new(ErrorCode::Schema, "$", "expected an object"))?;
    let kind = field(obj, "kind", "$")?
        .as_str()
        .ok_or_else(|| InstanceError::new(ErrorCode::Schema, "$.kind", "expected a string"))?;
    let quantale = parse_tensor(obj.get("tensor"))?;
    let grid = parse_grid(obj.get("grid"), &quantale)?;
    let kind = match kind {
        "poset" => InstanceKind::Poset(parse_poset(field(obj, "leq", "$")?, "$.leq")?),
        "vcategory" => InstanceKind::VCategory(parse_category(&doc, &quantale, "$")?),
        "distributor" => {
            let source = parse_category(field(obj, "source", "$")?, &quantale, "$.source")?;
            let target = parse_category(field(obj, "target", "$")?, &quantale, "$.target")?;
            let rows = parse_matrix(field(obj, "relation", "$")?, "$.relation")?;
            let shape_ok = rows.len() == source.size() && rows.iter().all(|r| r.len() == target.size());
            if !shape_ok {
                return Err(InstanceError::new(
                    ErrorCode::Schema,
                    "$.relation",
                    format!("expected a {}x{} matrix", source.size(), target.size()),
                ));
            }
            let relation = VRelation::from_fn(source.size(), target.size(), |i, k| rows[i][k]);
            if !is_distributor(&relation, &source, &target) {
                return Err(InstanceError::new(
                    ErrorCode::NotDistributor,
                    "$.relation",
                    "relation is not compatible with the source and target structures",
                ));
            }
            InstanceKind::Distributor {
                source,
                target,
                relation,
            }
        }
        "generators" => {
            let poset = parse_poset(field(obj, "leq", "$")?, "$.leq")?;
            let list = field(obj, "functions", "$")?
                .as_array()
                .ok_or_else(|| InstanceError::new(ErrorCode::Schema, "$.functions", "expected an array"))?;
            let mut functions = Vec::with_capacity(list.len());
            for (i, f) in list.iter().enumerate() {
                let p = format!("$.functions[{i}]");
                let vals = f
                    .as_array()
                    .ok_or_else(|| InstanceError::new(ErrorCode::Schema, &p, "expected an array"))?
                    .iter()
                    .enumerate()
                    .map(|(k, v)| parse_value(v, &format!("{p}[{k}]")))
                    .collect::<Parsed<Vec<Value>>>()?;
                let antitone = vals.len() == poset.size()
                    && (0..vals.len()).all(|x| (0..vals.len()).all(|y| !poset.leq(x, y) || vals[x] >= vals[y]));
                if !antitone {
                    return Err(InstanceError::new(
                        ErrorCode::NotInSpace,
                        &p,
                        "functions must have one value per point and be antitone",
                    ));
                }
                functions.push(vals);
            }
            InstanceKind::Generators { poset, functions }
        }
        other => {
            return Err(InstanceError::new(
                ErrorCode::Schema,
                "$.kind",
                format!("unknown kind `{other}`, expected poset, vcategory, distributor or generators"),
            ));
        }
    };
    Ok(Instance { quantale, grid, kind })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(text: &str) -> ErrorCode {
        parse_instance(text).unwrap_err().code
    }

    #[test]
    fn minimal_poset() {
        let inst = parse_instance(r#"{"kind": "poset", "leq": [[1,1],[0,1]]}"#).unwrap();
        let p = inst.poset().unwrap();
        assert_eq!(p, FinPoset::chain(2));
        assert_eq!(inst.grid, Some(2));
        assert_eq!(inst.quantale, Quantale::lukasiewicz());
    }

    #[test]
    fn value_errors_are_distinct() {
        let doc = |v: &str| format!(r#"{{"kind": "vcategory", "hom": [["1", "{v}"], ["0", "1"]]}}"#);
        let e = parse_instance(&doc("5/4")).unwrap_err();
        assert_eq!((e.code, e.path.as_str()), (ErrorCode::OutOfRange, "$.hom[0][1]"));
        assert_eq!(code(&doc("3/0")), ErrorCode::MalformedRational);
        assert_eq!(code(&doc("x")), ErrorCode::MalformedRational);
        assert_eq!(code(r#"{"kind": "vcategory", "hom": [[1, 0.5], [0, 1]]}"#), ErrorCode::MalformedRational);
        assert_eq!(code(r#"{"kind": "poset", "leq": [[1,1],[1,1]]}"#), ErrorCode::NotPoset);
        assert_eq!(code(r#"{"kind": "poset", "tensor": "product", "grid": 2, "leq": [[1]]}"#), ErrorCode::GridNotClosed);
        assert_eq!(code(r#"{"kind": "poset", "tensor": "foo", "leq": [[1]]}"#), ErrorCode::UnknownTensor);
        assert_eq!(code(r#"{"kind": "poset", "leq": [[1]"#), ErrorCode::Syntax);
        assert_eq!(code(r#"{"kind": "graph"}"#), ErrorCode::Schema);
        assert_eq!(code(r#"{"kind": "vcategory", "hom": [["1/2"]]}"#), ErrorCode::NotCategory);
        assert_eq!(
            code(r#"{"kind": "generators", "leq": [[1,1],[0,1]], "functions": [["0","1"]]}"#),
            ErrorCode::NotInSpace
        );
        assert_eq!(
            code(r#"{"kind": "distributor", "source": {"leq": [[1,1],[0,1]]}, "target": {"leq": [[1]]}, "relation": [[0],[1]]}"#),
            ErrorCode::NotDistributor
        );
    }

    #[test]
    fn product_without_grid_is_ad_hoc() {
        let inst = parse_instance(r#"{"kind": "poset", "tensor": "product", "leq": [[1]]}"#).unwrap();
        assert_eq!(inst.grid, None);
    }

    #[test]
    fn ordinal_forms_agree() {
        let a = parse_instance(r#"{"kind": "poset", "tensor": "ordinal:0..1/2=lukasiewicz", "grid": 4, "leq": [[1]]}"#).unwrap();
        let b = parse_instance(
            r#"{"kind": "poset", "tensor": {"ordinal": [{"lo": "0", "hi": "1/2", "inner": "lukasiewicz"}]}, "grid": 4, "leq": [[1]]}"#,
        )
        .unwrap();
        assert_eq!(a.quantale, b.quantale);
    }

    #[test]
    fn enriched_category_and_distributor() {
        let x = parse_instance(r#"{"kind": "vcategory", "hom": [["1", "1/2"], ["0", "1"]]}"#).unwrap();
        assert!(x.poset().is_none());
        let d = parse_instance(
            r#"{"kind": "distributor", "source": {"leq": [[1,1],[0,1]]}, "target": {"leq": [[1]]}, "relation": [[1],[0]]}"#,
        )
        .unwrap();
        assert_eq!(d.kind_name(), "distributor");
    }
}
