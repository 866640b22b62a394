//! Renderings of `A_p`: aligned text, a LaTeX array, and a structured JSON
//! document that parses back to the same matrix.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::ExactInteger;
use crate::modeq::{params_for, verify_symmetry, ModularMatrix};

/// Bumped whenever the structured layout changes; part of the cache key.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
    Typeset,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Self::Text),
            "structured" => Ok(Self::Structured),
            "typeset" => Ok(Self::Typeset),
            other => Err(Error::InvalidArgument(format!(
                "unknown format {other:?} (expected text, structured or typeset)"
            ))),
        }
    }
}

/// Right-aligned grid, one row per line.
pub fn to_text(a: &ModularMatrix) -> String {
    let cells: Vec<Vec<String>> = a
        .entries()
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// A LaTeX `array` block in the layout used for the printed tables.
pub fn to_typeset(a: &ModularMatrix) -> String {
    let params = a.params();
    let size = a.m() + 1;
    let mut out = format!(
        "A_{{{}}} =\n\\left(\\begin{{array}}{{{}}}\n",
        params.p,
        "c".repeat(size)
    );
    for (i, row) in a.entries().iter().enumerate() {
        let line: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&line.join(" & "));
        if i + 1 < size {
            out.push_str(" \\\\");
        }
        out.push('\n');
    }
    out.push_str(&format!(
        "\\end{{array}}\\right) \\qquad n = {} \\ m = {}\n",
        params.n, params.m
    ));
    out
}

/// The structured document. Matrix entries are JSON integers of any size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub schema_version: u32,
    pub p: u64,
    pub m: u32,
    pub n: u32,
    pub matrix: Vec<Vec<serde_json::Number>>,
    pub verification: BTreeMap<String, bool>,
}

impl MatrixDocument {
    pub fn new(a: &ModularMatrix, verification: BTreeMap<String, bool>) -> Self {
        let params = a.params();
        let matrix = a
            .entries()
            .iter()
            .map(|row| row.iter().map(big_to_number).collect())
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            p: params.p,
            m: params.m,
            n: params.n,
            matrix,
            verification,
        }
    }

    /// Rebuild the matrix, checking the header against the prime.
    pub fn to_matrix(&self) -> Result<ModularMatrix> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "schema_version {} (this build reads {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let p = i64::try_from(self.p)
            .map_err(|_| Error::Parse(format!("p = {} out of range", self.p)))?;
        let params = params_for(p)?;
        if (params.m, params.n) != (self.m, self.n) {
            return Err(Error::Parse(format!(
                "p = {} has (m, n) = ({}, {}), document says ({}, {})",
                self.p, params.m, params.n, self.m, self.n
            )));
        }
        let entries = self
            .matrix
            .iter()
            .map(|row| row.iter().map(number_to_big).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        ModularMatrix::new(params, entries)
    }
}

fn big_to_number(x: &ExactInteger) -> serde_json::Number {
    serde_json::Number::from_str(&x.to_string()).expect("integers are valid JSON numbers")
}

fn number_to_big(x: &serde_json::Number) -> Result<ExactInteger> {
    x.to_string()
        .parse()
        .map_err(|_| Error::Parse(format!("matrix entry {x} is not an integer")))
}

/// The symmetry checks of `A_p` under short keys, for the document's
/// `verification` field.
pub fn verification_flags(a: &ModularMatrix) -> BTreeMap<String, bool> {
    let report = verify_symmetry(a);
    SYMMETRY_KEYS
        .iter()
        .map(|(key, name)| (key.to_string(), report.get(name).is_some_and(|c| c.passed)))
        .collect()
}

const SYMMETRY_KEYS: [(&str, &str); 4] = [
    ("leading_one", "a[0][0] = 1"),
    ("symmetric", "a[i][h] = a[h][i]"),
    ("horizontal_symmetry", "a[i][h] = (-1)^(m(i-1)) a[i][m-i-h]"),
    ("zero_triangle", "a[i][h] = 0 for i + h > m"),
];

/// Pretty-printed JSON, newline terminated.
pub fn to_structured(a: &ModularMatrix) -> String {
    let doc = MatrixDocument::new(a, verification_flags(a));
    let mut s = serde_json::to_string_pretty(&doc).expect("document serializes");
    s.push('\n');
    s
}

pub fn parse_structured(s: &str) -> Result<MatrixDocument> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn render(a: &ModularMatrix, format: Format) -> String {
    match format {
        Format::Text => to_text(a),
        Format::Structured => to_structured(a),
        Format::Typeset => to_typeset(a),
    }
}
