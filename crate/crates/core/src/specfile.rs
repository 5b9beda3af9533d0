//! JSON group-spec files.
//!
//! ```json
//! {
//!   "name": "i",
//!   "conductor": 4,
//!   "generators": [
//!     [[["0", "1"], ["0", "0"]],
//!      [["0", "0"], ["0", "-1"]]]
//!   ]
//! }
//! ```
//!
//! Each matrix entry is the list of φ(conductor) reduced power-basis
//! coefficients as rational strings. An optional `"diag"` shorthand adds a
//! diagonal generator. Corpus files may also carry `"line"` (a coordinate
//! axis, 0-based) and `"extension"` (one more matrix in the same format).

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::{DiagSpec, GroupSpec};
use crate::linalg::{rational_string, CyclotomicField, CyclotomicScalar, FieldMatrix, Rational};

pub const SPEC_FILE_KEYS: [&str; 6] = ["name", "conductor", "generators", "diag", "line", "extension"];

/// Parsed spec file.
#[derive(Clone, Debug)]
pub struct GroupSpecFile {
    pub spec: GroupSpec,
    pub line: Option<usize>,
    pub extension: Option<FieldMatrix>,
}

fn perr(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

fn parse_matrix(v: &Value, m: u64, loc: &str) -> Result<FieldMatrix> {
    let degree = CyclotomicField::get(m).degree();
    let rows = v.as_array().ok_or_else(|| perr(loc, "expected an array of rows"))?;
    if rows.is_empty() {
        return Err(perr(loc, "matrix has no rows"));
    }
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let rloc = format!("{loc}[{i}]");
        let row = row.as_array().ok_or_else(|| perr(&rloc, "expected an array of entries"))?;
        if row.len() != rows.len() {
            return Err(perr(&rloc, format!("row has {} entries, expected {}", row.len(), rows.len())));
        }
        let mut entries = Vec::with_capacity(row.len());
        for (j, e) in row.iter().enumerate() {
            let eloc = format!("{rloc}[{j}]");
            let coeffs = e.as_array().ok_or_else(|| perr(&eloc, "expected an array of rational strings"))?;
            if coeffs.len() != degree {
                return Err(perr(
                    &eloc,
                    format!("conductor {m} needs {degree} coefficients, got {}", coeffs.len()),
                ));
            }
            let mut q = Vec::with_capacity(degree);
            for (k, c) in coeffs.iter().enumerate() {
                let cloc = format!("{eloc}[{k}]");
                let s = c.as_str().ok_or_else(|| perr(&cloc, "expected a string like \"p/q\""))?;
                let r: Rational = s
                    .trim()
                    .parse()
                    .map_err(|_| perr(&cloc, format!("bad rational '{s}'")))?;
                q.push(r);
            }
            entries.push(CyclotomicScalar::from_coeffs(m, q)?);
        }
        out.push(entries);
    }
    FieldMatrix::from_rows(out)
}

impl GroupSpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| perr(format!("line {}", e.line()), e.to_string()))?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| perr("document", "expected a JSON object"))?;
        if let Some(k) = obj.keys().find(|k| !SPEC_FILE_KEYS.contains(&k.as_str())) {
            return Err(perr(k.as_str(), "unknown key"));
        }
        let name = match obj.get("name") {
            Some(Value::String(s)) => s.clone(),
            Some(_) => return Err(perr("name", "expected a string")),
            None => return Err(perr("name", "missing key")),
        };
        let conductor = match obj.get("conductor") {
            Some(c) => {
                let m = c.as_u64().ok_or_else(|| perr("conductor", "expected a positive integer"))?;
                if m == 0 {
                    return Err(perr("conductor", "expected a positive integer"));
                }
                Some(m)
            }
            None => None,
        };
        let mut gens = Vec::new();
        if let Some(g) = obj.get("generators") {
            let m = conductor.ok_or_else(|| perr("conductor", "missing key (required with generators)"))?;
            let list = g.as_array().ok_or_else(|| perr("generators", "expected an array of matrices"))?;
            for (i, x) in list.iter().enumerate() {
                gens.push(parse_matrix(x, m, &format!("generators[{i}]"))?);
            }
        }
        if let Some(d) = obj.get("diag") {
            let s = d.as_str().ok_or_else(|| perr("diag", "expected a string like \"1/d(a1,...,an)\""))?;
            let diag: DiagSpec = s.parse()?;
            gens.push(diag.matrix());
        }
        if gens.is_empty() {
            return Err(perr("generators", "missing key (give \"generators\" or \"diag\")"));
        }
        let spec = GroupSpec::new(name, gens).map_err(|e| perr("generators", e.to_string()))?;
        let line = match obj.get("line") {
            Some(l) => {
                let k = l.as_u64().ok_or_else(|| perr("line", "expected a coordinate index"))? as usize;
                if k >= spec.dim() {
                    return Err(perr("line", format!("axis {k} out of range for dimension {}", spec.dim())));
                }
                Some(k)
            }
            None => None,
        };
        let extension = match obj.get("extension") {
            Some(x) => {
                let m = conductor.ok_or_else(|| perr("conductor", "missing key (required with extension)"))?;
                Some(parse_matrix(x, m, "extension")?)
            }
            None => None,
        };
        Ok(GroupSpecFile { spec, line, extension })
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            name: &'a str,
            conductor: u64,
            generators: Vec<Vec<Vec<Vec<String>>>>,
            #[serde(skip_serializing_if = "Option::is_none")]
            line: Option<usize>,
            #[serde(skip_serializing_if = "Option::is_none")]
            extension: Option<Vec<Vec<Vec<String>>>>,
        }
        let m = self
            .extension
            .iter()
            .fold(self.spec.conductor, |a, x| num_integer::lcm(a, x.conductor()));
        let out = Out {
            name: &self.spec.name,
            conductor: m,
            generators: self.spec.generators.iter().map(|g| matrix_strings(g, m)).collect(),
            line: self.line,
            extension: self.extension.as_ref().map(|x| matrix_strings(x, m)),
        };
        let mut s = serde_json::to_string_pretty(&out).expect("serializable");
        s.push('\n');
        s
    }
}

fn matrix_strings(x: &FieldMatrix, m: u64) -> Vec<Vec<Vec<String>>> {
    let x = x.promote(m);
    (0..x.rows())
        .map(|i| {
            x.row(i)
                .iter()
                .map(|e| e.coeffs().iter().map(rational_string).collect())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named::{q8, r3};

    #[test]
    fn round_trip() {
        let f = GroupSpecFile {
            spec: q8(),
            line: None,
            extension: None,
        };
        let back = GroupSpecFile::parse(&f.to_json()).unwrap();
        assert_eq!(back.spec.generators, q8().generators);
        assert_eq!(back.spec.name, "Q8");
        let f = GroupSpecFile {
            spec: crate::group::named::f21(),
            line: Some(0),
            extension: Some(r3()),
        };
        let back = GroupSpecFile::parse(&f.to_json()).unwrap();
        assert_eq!(back.extension.unwrap().promote(7), r3().promote(7));
        assert_eq!(back.line, Some(0));
    }

    #[test]
    fn diag_only() {
        let f = GroupSpecFile::parse(r#"{"name": "x", "diag": "1/3(1,1,1)"}"#).unwrap();
        assert_eq!(f.spec.conductor, 3);
    }

    fn loc(text: &str) -> String {
        match GroupSpecFile::parse(text) {
            Err(Error::Parse { location, .. }) => location,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn diagnostics_name_the_position() {
        assert_eq!(loc(r#"{"name": "x", "conductor": 4, "generators": [[[["1","0"]]]], "bogus": 1}"#), "bogus");
        assert_eq!(loc(r#"{"name": "x", "conductor": 4, "generators": [[[["1"]]]]}"#), "generators[0][0][0]");
        assert_eq!(loc(r#"{"name": "x", "conductor": 4, "generators": [[[["1","a"]]]]}"#), "generators[0][0][0][1]");
        assert_eq!(loc(r#"{"conductor": 1, "generators": []}"#), "name");
        assert_eq!(loc(r#"{"name": "x", "generators": [[[["1"]]]]}"#), "conductor");
        assert_eq!(loc(r#"{"name": "x", "diag": "1/3(1,1"}"#), "diag, position 6");
        assert_eq!(loc(r#"{"name": "x", "conductor": 1, "generators": [[[["1"],["0"]],[["0"]]]]}"#), "generators[0][1]");
    }
}
