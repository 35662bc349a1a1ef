//! Text documents holding component tensors and raw cochain tables.
//!
//! ```text
//! name = "union-jack"
//! m = 1
//! degree = 3
//! entries = [
//!   [0, 0, 0],
//! ]
//! ```

use std::fmt::Write as _;

use cocycle_core::cohomology::{Cochain, Form, MultilinearForm};
use cocycle_core::gf2::{BitMatrix, BitTensor3, BitVector, BooleanFunction};
use toml::{Table, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{field}: {message}")]
pub struct ParseError {
    pub field: String,
    pub message: String,
}

fn err(field: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorDocument {
    pub name: Option<String>,
    pub seed: Option<u64>,
    /// Side lengths per argument; length equals the degree.
    pub dims: Vec<usize>,
    /// Sorted, unique index tuples of the nonzero components.
    pub entries: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainDocument {
    pub name: Option<String>,
    pub m: usize,
    pub degree: usize,
    pub form: Form,
    /// Exponent at each packed argument tuple, first argument in the low bits.
    pub exponents: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Tensor(TensorDocument),
    Cochain(CochainDocument),
}

const TENSOR_KEYS: &[&str] = &["name", "kind", "m", "degree", "seed", "entries"];
const COCHAIN_KEYS: &[&str] = &["name", "kind", "m", "degree", "form", "exponents"];

fn count(table: &Table, key: &str) -> Result<usize, ParseError> {
    match table.get(key) {
        Some(Value::Integer(v)) if *v >= 0 => Ok(*v as usize),
        Some(_) => Err(err(key, "expected a non-negative integer")),
        None => Err(err(key, "missing")),
    }
}

fn optional_string(table: &Table, key: &str) -> Result<Option<String>, ParseError> {
    match table.get(key) {
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(_) => Err(err(key, "expected a string")),
        None => Ok(None),
    }
}

fn check_keys(table: &Table, allowed: &[&str]) -> Result<(), ParseError> {
    match table.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(err(k.clone(), "unknown field")),
        None => Ok(()),
    }
}

impl Document {
    pub fn parse(text: &str) -> Result<Document, ParseError> {
        let table: Table = text.parse().map_err(|e: toml::de::Error| {
            let line = e
                .span()
                .map(|s| text[..s.start].lines().count().max(1))
                .unwrap_or(0);
            err(format!("line {line}"), e.message().to_string())
        })?;
        match optional_string(&table, "kind")?.as_deref() {
            None | Some("tensor") => TensorDocument::from_table(&table).map(Document::Tensor),
            Some("cochain") => CochainDocument::from_table(&table).map(Document::Cochain),
            Some(other) => Err(err("kind", format!("unknown kind {other:?}"))),
        }
    }

    pub fn to_canonical(&self) -> String {
        match self {
            Document::Tensor(t) => t.to_canonical(),
            Document::Cochain(c) => c.to_canonical(),
        }
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            Document::Tensor(t) => t.name.as_deref(),
            Document::Cochain(c) => c.name.as_deref(),
        }
    }
}

impl TensorDocument {
    fn from_table(table: &Table) -> Result<Self, ParseError> {
        check_keys(table, TENSOR_KEYS)?;
        let degree = count(table, "degree")?;
        if !(1..=3).contains(&degree) {
            return Err(err("degree", format!("{degree} is not 1, 2 or 3")));
        }
        let dims = match table.get("m") {
            Some(Value::Array(items)) => {
                if items.len() != degree {
                    return Err(err("m", format!("expected {degree} side lengths")));
                }
                items
                    .iter()
                    .enumerate()
                    .map(|(i, v)| match v {
                        Value::Integer(x) if *x >= 1 => Ok(*x as usize),
                        _ => Err(err(format!("m[{i}]"), "expected a positive integer")),
                    })
                    .collect::<Result<Vec<_>, _>>()?
            }
            _ => {
                let m = count(table, "m")?;
                if m == 0 {
                    return Err(err("m", "must be positive"));
                }
                vec![m; degree]
            }
        };
        if degree == 2 && dims[0] != dims[1] {
            return Err(err("m", "matrices must be square"));
        }
        let seed = match table.get("seed") {
            Some(Value::Integer(s)) if *s >= 0 => Some(*s as u64),
            Some(_) => return Err(err("seed", "expected a non-negative integer")),
            None => None,
        };
        let raw = match table.get("entries") {
            Some(Value::Array(items)) => items,
            Some(_) => return Err(err("entries", "expected a list of index lists")),
            None => return Err(err("entries", "missing")),
        };
        let mut entries = Vec::with_capacity(raw.len());
        for (n, item) in raw.iter().enumerate() {
            let field = format!("entries[{n}]");
            let Value::Array(idx) = item else {
                return Err(err(field, "expected a list of indices"));
            };
            if idx.len() != degree {
                return Err(err(field, format!("expected {degree} indices, found {}", idx.len())));
            }
            let mut entry = Vec::with_capacity(degree);
            for (axis, v) in idx.iter().enumerate() {
                match v {
                    Value::Integer(x) if *x >= 0 && (*x as usize) < dims[axis] => {
                        entry.push(*x as usize)
                    }
                    Value::Integer(x) => {
                        return Err(err(
                            field,
                            format!("index {x} out of range for m={}", dims[axis]),
                        ))
                    }
                    _ => return Err(err(field, "indices must be integers")),
                }
            }
            entries.push(entry);
        }
        let mut sorted = entries.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            let n = entries.iter().rposition(|e| *e == w[0]).unwrap_or(0);
            return Err(err(format!("entries[{n}]"), "duplicate entry"));
        }
        Ok(Self {
            name: optional_string(table, "name")?,
            seed,
            dims,
            entries: sorted,
        })
    }

    pub fn degree(&self) -> usize {
        self.dims.len()
    }

    /// Side length when all arguments share it.
    pub fn m(&self) -> Option<usize> {
        self.dims.iter().all(|&d| d == self.dims[0]).then_some(self.dims[0])
    }

    pub fn from_tensor(name: Option<String>, t: &BitTensor3) -> Self {
        let (a, b, c) = t.dims();
        Self {
            name,
            seed: None,
            dims: vec![a, b, c],
            entries: t.cells().into_iter().map(|(i, j, k)| vec![i, j, k]).collect(),
        }
    }

    pub fn tensor(&self) -> Option<BitTensor3> {
        if self.degree() != 3 {
            return None;
        }
        let cells: Vec<_> = self.entries.iter().map(|e| (e[0], e[1], e[2])).collect();
        BitTensor3::from_cells((self.dims[0], self.dims[1], self.dims[2]), &cells).ok()
    }

    pub fn matrix(&self) -> Option<BitMatrix> {
        if self.degree() != 2 {
            return None;
        }
        let mut a = BitMatrix::zeros(self.dims[0], self.dims[1]);
        for e in &self.entries {
            a.set(e[0], e[1], true);
        }
        Some(a)
    }

    /// The document as a multilinear form, when all sides agree.
    pub fn form(&self) -> Option<MultilinearForm> {
        self.m()?;
        match self.degree() {
            1 => {
                let mut v = BitVector::zeros(self.dims[0]);
                for e in &self.entries {
                    v.set(e[0], true);
                }
                Some(MultilinearForm::Linear(v))
            }
            2 => self.matrix().map(MultilinearForm::Bilinear),
            _ => self.tensor().map(MultilinearForm::Trilinear),
        }
    }

    pub fn to_canonical(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            writeln!(out, "name = {}", Value::String(name.clone())).unwrap();
        }
        match self.m() {
            Some(m) => writeln!(out, "m = {m}").unwrap(),
            None => writeln!(out, "m = {:?}", self.dims).unwrap(),
        }
        writeln!(out, "degree = {}", self.degree()).unwrap();
        if let Some(seed) = self.seed {
            writeln!(out, "seed = {seed}").unwrap();
        }
        if self.entries.is_empty() {
            out.push_str("entries = []\n");
        } else {
            out.push_str("entries = [\n");
            for e in &self.entries {
                writeln!(out, "  {e:?},").unwrap();
            }
            out.push_str("]\n");
        }
        out
    }
}

impl CochainDocument {
    fn from_table(table: &Table) -> Result<Self, ParseError> {
        check_keys(table, COCHAIN_KEYS)?;
        let m = count(table, "m")?;
        let degree = count(table, "degree")?;
        if m == 0 || m * degree > cocycle_core::cohomology::MAX_TABLE_BITS {
            return Err(err("m", format!("table of m={m}, degree={degree} is out of range")));
        }
        let form = match optional_string(table, "form")?.as_deref() {
            None | Some("inhomogeneous") => Form::Inhomogeneous,
            Some("homogeneous") => Form::Homogeneous,
            Some(other) => return Err(err("form", format!("unknown form {other:?}"))),
        };
        let bits = match table.get("exponents") {
            Some(Value::String(s)) => s.clone(),
            Some(_) => return Err(err("exponents", "expected a string of 0 and 1")),
            None => return Err(err("exponents", "missing")),
        };
        let expected = 1usize << (m * degree);
        if bits.len() != expected {
            return Err(err(
                "exponents",
                format!("expected {expected} digits, found {}", bits.len()),
            ));
        }
        let exponents = bits
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(err("exponents", format!("digit {i} is {c:?}"))),
            })
            .collect::<Result<_, _>>()?;
        Ok(Self {
            name: optional_string(table, "name")?,
            m,
            degree,
            form,
            exponents,
        })
    }

    pub fn cochain(&self) -> Cochain {
        let table = BooleanFunction::from_fn(self.m * self.degree, |x| self.exponents[x as usize]);
        Cochain::from_table(self.m, self.degree, self.form, table).expect("size checked on parse")
    }

    pub fn to_canonical(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            writeln!(out, "name = {}", Value::String(name.clone())).unwrap();
        }
        out.push_str("kind = \"cochain\"\n");
        writeln!(out, "m = {}", self.m).unwrap();
        writeln!(out, "degree = {}", self.degree).unwrap();
        let form = match self.form {
            Form::Inhomogeneous => "inhomogeneous",
            Form::Homogeneous => "homogeneous",
        };
        writeln!(out, "form = \"{form}\"").unwrap();
        let bits: String = self.exponents.iter().map(|&b| if b { '1' } else { '0' }).collect();
        writeln!(out, "exponents = \"{bits}\"").unwrap();
        out
    }
}
