//! JSON input formats.
//!
//! Scalars are JSON integers or strings holding an integer or a `p/q`
//! fraction; floats are rejected. Every schema error names the offending
//! location as a path such as `mul[3][2]`.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use ncalc_core::braiding::{BraidingDirection, FreeModuleBraiding};
use ncalc_core::duality::Side;
use ncalc_core::{Algebra, Bimodule, Builtin, CartanPair, Field, Fodc, Matrix, Scalar};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub source: String,
    pub location: String,
    pub message: String,
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.location.is_empty() {
            write!(f, "{}: {}", self.source, self.message)
        } else {
            write!(f, "{}: at {}: {}", self.source, self.location, self.message)
        }
    }
}

impl std::error::Error for InputError {}

/// A JSON document with its name, for error messages.
pub struct Document {
    name: String,
    root: Value,
}

impl Document {
    pub fn read(path: &Path) -> Result<Document, InputError> {
        let name = path.display().to_string();
        let text = fs::read_to_string(path).map_err(|e| InputError {
            source: name.clone(),
            location: String::new(),
            message: format!("cannot read file: {e}"),
        })?;
        Document::parse(&name, &text)
    }

    pub fn parse(name: &str, text: &str) -> Result<Document, InputError> {
        let root = serde_json::from_str(text).map_err(|e| InputError {
            source: name.to_string(),
            location: format!("line {}, column {}", e.line(), e.column()),
            message: format!("malformed JSON: {e}"),
        })?;
        Ok(Document {
            name: name.to_string(),
            root,
        })
    }

    fn cursor(&self) -> Cursor<'_> {
        Cursor {
            doc: &self.name,
            path: String::new(),
            value: &self.root,
        }
    }
}

#[derive(Clone)]
struct Cursor<'a> {
    doc: &'a str,
    path: String,
    value: &'a Value,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> InputError {
        InputError {
            source: self.doc.to_string(),
            location: if self.path.is_empty() { "top level".into() } else { self.path.clone() },
            message: message.into(),
        }
    }

    fn object(&self) -> Result<&'a Map<String, Value>, InputError> {
        self.value.as_object().ok_or_else(|| self.err("expected an object"))
    }

    fn get(&self, key: &str) -> Result<Option<Cursor<'a>>, InputError> {
        let obj = self.object()?;
        Ok(obj.get(key).map(|v| Cursor {
            doc: self.doc,
            path: if self.path.is_empty() { key.to_string() } else { format!("{}.{key}", self.path) },
            value: v,
        }))
    }

    fn field(&self, key: &str) -> Result<Cursor<'a>, InputError> {
        self.get(key)?
            .ok_or_else(|| self.err(format!("missing field `{key}`")))
    }

    fn items(&self) -> Result<Vec<Cursor<'a>>, InputError> {
        let arr = self.value.as_array().ok_or_else(|| self.err("expected an array"))?;
        Ok(arr
            .iter()
            .enumerate()
            .map(|(i, v)| Cursor {
                doc: self.doc,
                path: format!("{}[{i}]", self.path),
                value: v,
            })
            .collect())
    }

    fn usize(&self) -> Result<usize, InputError> {
        self.value
            .as_u64()
            .map(|v| v as usize)
            .ok_or_else(|| self.err("expected a non-negative integer"))
    }

    fn str(&self) -> Result<&'a str, InputError> {
        self.value.as_str().ok_or_else(|| self.err("expected a string"))
    }

    fn scalar(&self, field: Field) -> Result<Scalar, InputError> {
        let text = match self.value {
            Value::String(s) => s.clone(),
            Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
            Value::Number(_) => return Err(self.err("floats are not exact; write \"p/q\"")),
            _ => return Err(self.err("expected an integer or a \"p/q\" string")),
        };
        field
            .parse(&text)
            .map_err(|e| self.err(format!("invalid scalar: {e}")))
    }

    fn vector(&self, field: Field, len: usize) -> Result<Vec<Scalar>, InputError> {
        let items = self.items()?;
        if items.len() != len {
            return Err(self.err(format!("expected {len} entries, found {}", items.len())));
        }
        items.iter().map(|c| c.scalar(field)).collect()
    }

    fn matrix(&self, field: Field, rows: usize, cols: usize) -> Result<Matrix, InputError> {
        let items = self.items()?;
        if items.len() != rows {
            return Err(self.err(format!("expected {rows} rows, found {}", items.len())));
        }
        let rows = items
            .iter()
            .map(|r| r.vector(field, cols))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_rows(field, cols, rows))
    }
}

/// Resolves the working field from the file and the command line. A file
/// that names a field different from `--field` is rejected.
fn resolve_field(c: &Cursor<'_>, flag: Option<Field>) -> Result<Field, InputError> {
    let declared = match c.get("field")? {
        Some(fc) => Some(
            fc.str()?
                .parse::<Field>()
                .map_err(|e| fc.err(e.to_string()))?,
        ),
        None => None,
    };
    match (declared, flag) {
        (Some(d), Some(f)) if d != f => Err(c.err(format!("file declares field {d} but --field is {f}"))),
        (Some(d), _) => Ok(d),
        (None, Some(f)) => Ok(f),
        (None, None) => Ok(Field::Rational),
    }
}

pub fn parse_algebra(doc: &Document, flag: Option<Field>) -> Result<Algebra, InputError> {
    let c = doc.cursor();
    let field = resolve_field(&c, flag)?;
    if let Some(b) = c.get("builtin")? {
        let kind = parse_builtin(&c, &b, field)?;
        return Algebra::builtin(field, &kind).map_err(|e| b.err(e.to_string()));
    }
    let dim = c.field("dim")?.usize()?;
    if dim == 0 {
        return Err(c.field("dim")?.err("dimension must be positive"));
    }
    let labels = match c.get("basis")? {
        Some(bc) => {
            let items = bc.items()?;
            if items.len() != dim {
                return Err(bc.err(format!("expected {dim} labels, found {}", items.len())));
            }
            items
                .iter()
                .map(|i| i.str().map(str::to_string))
                .collect::<Result<Vec<_>, _>>()?
        }
        None => (0..dim).map(|i| format!("e{i}")).collect(),
    };
    let unit = c.field("unit")?.vector(field, dim)?;
    let mut triples = Vec::new();
    let mc = c.field("mul")?;
    for t in mc.items()? {
        let parts = t.items()?;
        if parts.len() != 4 {
            return Err(t.err("expected [i, j, k, coefficient]"));
        }
        let mut idx = [0usize; 3];
        for (slot, p) in idx.iter_mut().zip(&parts) {
            *slot = p.usize()?;
            if *slot >= dim {
                return Err(p.err(format!("basis index {slot} out of range for dimension {dim}")));
            }
        }
        triples.push((idx[0], idx[1], idx[2], parts[3].scalar(field)?));
    }
    Algebra::from_sparse(field, labels, unit, &triples).map_err(|e| mc.err(e.to_string()))
}

fn parse_builtin(c: &Cursor<'_>, b: &Cursor<'_>, field: Field) -> Result<Builtin, InputError> {
    let param = |key: &str| -> Result<usize, InputError> { c.field(key)?.usize() };
    match b.str()? {
        "truncated_polynomial" => Ok(Builtin::TruncatedPolynomial { m: param("m")? }),
        "matrix_algebra" => Ok(Builtin::MatrixAlgebra { k: param("k")? }),
        "cyclic_group_algebra" | "cyclic_group" => Ok(Builtin::CyclicGroup { m: param("m")? }),
        "quantum_plane" => Ok(Builtin::QuantumPlane {
            q: c.field("q")?.scalar(field)?,
            n: param("N")?,
        }),
        other => Err(b.err(format!("unknown builtin `{other}`"))),
    }
}

/// The inverse of [`parse_algebra`] for explicit structure constants.
pub fn algebra_to_json(a: &Algebra) -> Value {
    let mul: Vec<Value> = a
        .sparse_constants()
        .into_iter()
        .map(|(i, j, k, c)| json!([i, j, k, c.to_string()]))
        .collect();
    json!({
        "field": a.field().to_string(),
        "dim": a.dim(),
        "basis": a.labels(),
        "unit": a.unit().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "mul": mul,
    })
}

/// Generators of a subbimodule of `ker mu`, in `R⊗R` coordinates.
pub fn parse_generators(doc: &Document, a: &Algebra) -> Result<Vec<Vec<Scalar>>, InputError> {
    let c = doc.cursor();
    let amb = c.field("ambient")?;
    if amb.str()? != "ker_mu" {
        return Err(amb.err("only the ambient \"ker_mu\" is supported"));
    }
    let n = a.dim();
    c.field("gens")?
        .items()?
        .iter()
        .map(|g| g.vector(a.field(), n * n))
        .collect()
}

fn bimodule_at(c: &Cursor<'_>, a: &Arc<Algebra>) -> Result<Bimodule, InputError> {
    let dim = c.field("dim")?.usize()?;
    let f = a.field();
    let actions = |key: &str| -> Result<Vec<Matrix>, InputError> {
        let ac = c.field(key)?;
        let items = ac.items()?;
        if items.len() != a.dim() {
            return Err(ac.err(format!("expected {} matrices, one per basis element", a.dim())));
        }
        items.iter().map(|m| m.matrix(f, dim, dim)).collect()
    };
    Bimodule::new(a.clone(), dim, actions("left")?, actions("right")?).map_err(|e| c.err(e.to_string()))
}

pub fn parse_bimodule(doc: &Document, a: &Arc<Algebra>) -> Result<Bimodule, InputError> {
    bimodule_at(&doc.cursor(), a)
}

/// `{"omega": <bimodule>, "d": [d(e_0), ..., d(e_{n-1})]}`.
pub fn parse_fodc(doc: &Document, a: &Arc<Algebra>) -> Result<Fodc, InputError> {
    let c = doc.cursor();
    let omega = bimodule_at(&c.field("omega")?, a)?;
    let dc = c.field("d")?;
    let items = dc.items()?;
    if items.len() != a.dim() {
        return Err(dc.err(format!("expected {} differentials, one per basis element", a.dim())));
    }
    let cols = items
        .iter()
        .map(|v| v.vector(a.field(), omega.dim()))
        .collect::<Result<Vec<_>, _>>()?;
    let d = Matrix::from_columns(a.field(), omega.dim(), &cols);
    Fodc::new(omega, d).map_err(|e| dc.err(e.to_string()))
}

/// `{"generators": k, "direction": "left"|"right", "matrix": [[...]]}`;
/// `left` is `R⊗V -> V⊗R`.
pub fn parse_braiding(doc: &Document, a: &Algebra) -> Result<FreeModuleBraiding, InputError> {
    let c = doc.cursor();
    let k = c.field("generators")?.usize()?;
    let dc = c.field("direction")?;
    let direction = match dc.str()? {
        "left" => BraidingDirection::LeftOverFree,
        "right" => BraidingDirection::RightOverFree,
        other => return Err(dc.err(format!("unknown direction `{other}`; use \"left\" or \"right\""))),
    };
    let size = a.dim() * k;
    let mc = c.field("matrix")?;
    let m = mc.matrix(a.field(), size, size)?;
    FreeModuleBraiding::new(a, k, direction, m).map_err(|e| mc.err(e.to_string()))
}

/// `{"side": "right"|"left", "module": <bimodule>, "action": [[n² entries] per basis element]}`.
pub fn parse_cartan(doc: &Document, a: &Arc<Algebra>) -> Result<CartanPair, InputError> {
    let c = doc.cursor();
    let side = match c.get("side")? {
        Some(sc) => sc.str()?.parse::<Side>().map_err(|e| sc.err(e.to_string()))?,
        None => Side::Right,
    };
    let module = bimodule_at(&c.field("module")?, a)?;
    let n = a.dim();
    let ac = c.field("action")?;
    let items = ac.items()?;
    if items.len() != module.dim() {
        return Err(ac.err(format!("expected {} endomorphisms, one per module basis element", module.dim())));
    }
    let cols = items
        .iter()
        .map(|v| v.vector(a.field(), n * n))
        .collect::<Result<Vec<_>, _>>()?;
    let action = Matrix::from_columns(a.field(), n * n, &cols);
    CartanPair::new(side, module, action).map_err(|e| ac.err(e.to_string()))
}
