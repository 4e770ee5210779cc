//! JSON file formats for forms and operator dumps.
//!
//! Rationals are written as `"numerator/denominator"` strings so that no
//! value ever passes through a float.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exterior::{Form, MultiIndex, SparseOp, MAX_DIM};
use crate::scalar::{format_rational, parse_rational, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub indices: Vec<usize>,
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormFile {
    pub dim: usize,
    pub terms: Vec<TermFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColumnFile {
    pub from: Vec<usize>,
    pub image: Vec<TermFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub columns: Vec<ColumnFile>,
}

fn term_files(f: &Form) -> Vec<TermFile> {
    f.terms()
        .iter()
        .map(|(m, c)| TermFile { indices: m.indices(), re: format_rational(&c.re), im: format_rational(&c.im) })
        .collect()
}

fn form_from_terms(dim: usize, terms: &[TermFile]) -> Result<Form> {
    if dim > MAX_DIM {
        return Err(Error::Schema(format!("dimension {dim} exceeds {MAX_DIM}")));
    }
    let mut f = Form::zero(dim);
    let mut seen = std::collections::BTreeSet::new();
    for t in terms {
        let m = MultiIndex::new(&t.indices, dim)?;
        if !seen.insert(m) {
            return Err(Error::Schema(format!("duplicate term {m}")));
        }
        f.add_term(m, Scalar::new(parse_rational(&t.re)?, parse_rational(&t.im)?));
    }
    Ok(f)
}

impl From<&Form> for FormFile {
    fn from(f: &Form) -> Self {
        FormFile { dim: f.dim(), terms: term_files(f) }
    }
}

impl TryFrom<&FormFile> for Form {
    type Error = Error;
    fn try_from(file: &FormFile) -> Result<Form> {
        form_from_terms(file.dim, &file.terms)
    }
}

impl OpFile {
    pub fn from_op(name: Option<&str>, op: &SparseOp) -> Self {
        OpFile {
            name: name.map(str::to_string),
            dim: op.dim(),
            // every basis monomial gets a column, empty images included
            columns: MultiIndex::all(op.dim())
                .into_iter()
                .map(|m| ColumnFile { from: m.indices(), image: term_files(&op.column(m)) })
                .collect(),
        }
    }

    pub fn to_op(&self) -> Result<SparseOp> {
        let mut cols = Vec::with_capacity(self.columns.len());
        for c in &self.columns {
            let m = MultiIndex::new(&c.from, self.dim)?;
            cols.push((m, form_from_terms(self.dim, &c.image)?));
        }
        SparseOp::from_columns(self.dim, cols)
    }
}

pub fn form_to_json(f: &Form) -> String {
    serde_json::to_string_pretty(&FormFile::from(f)).expect("form serializes")
}

pub fn form_from_json(s: &str) -> Result<Form> {
    let file: FormFile = serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))?;
    Form::try_from(&file)
}

pub fn op_to_json(name: Option<&str>, op: &SparseOp) -> String {
    serde_json::to_string_pretty(&OpFile::from_op(name, op)).expect("operator serializes")
}

pub fn op_from_json(s: &str) -> Result<SparseOp> {
    let file: OpFile = serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))?;
    file.to_op()
}

pub fn write_form(path: &Path, f: &Form) -> Result<()> {
    fs::write(path, form_to_json(f))?;
    Ok(())
}

pub fn load_form(path: &Path) -> Result<Form> {
    form_from_json(&fs::read_to_string(path)?)
}

/// Reads either a single form object or an array of them.
pub fn load_forms(path: &Path) -> Result<Vec<Form>> {
    let text = fs::read_to_string(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Schema(e.to_string()))?;
    match v {
        Value::Array(items) => items
            .into_iter()
            .map(|item| {
                let file: FormFile = serde_json::from_value(item).map_err(|e| Error::Schema(e.to_string()))?;
                Form::try_from(&file)
            })
            .collect(),
        other => {
            let file: FormFile = serde_json::from_value(other).map_err(|e| Error::Schema(e.to_string()))?;
            Ok(vec![Form::try_from(&file)?])
        }
    }
}

pub fn dump_op(path: &Path, name: &str, op: &SparseOp) -> Result<()> {
    fs::write(path, op_to_json(Some(name), op))?;
    Ok(())
}

pub fn load_op(path: &Path) -> Result<SparseOp> {
    op_from_json(&fs::read_to_string(path)?)
}

/// Report-friendly rendering of a scalar: `{"re": "p/q", "im": "p/q"}`.
pub fn scalar_json(c: &Scalar) -> Value {
    serde_json::json!({ "re": format_rational(&c.re), "im": format_rational(&c.im) })
}

/// Report-friendly rendering of a form as its term list.
pub fn form_json(f: &Form) -> Value {
    serde_json::to_value(term_files(f)).expect("terms serialize")
}
