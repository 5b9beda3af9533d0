//! Structured outcome of a single verification.

use std::fmt;

use num_traits::One;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use serde_json::Value;

use crate::linalg::{rational_string, Rational};

/// One side of a checked identity: a number or a tuple of numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Scalar(Rational),
    Tuple(Vec<Rational>),
}

impl Side {
    pub fn int(v: impl Into<num_bigint::BigInt>) -> Side {
        Side::Scalar(Rational::from_integer(v.into()))
    }

    pub fn ints<T: Into<num_bigint::BigInt>>(v: impl IntoIterator<Item = T>) -> Side {
        Side::Tuple(v.into_iter().map(|x| Rational::from_integer(x.into())).collect())
    }
}

fn write_number<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    if q.denom().is_one() {
        match i64::try_from(q.numer()) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&q.numer().to_string()),
        }
    } else {
        s.serialize_str(&rational_string(q))
    }
}

struct Number<'a>(&'a Rational);

impl Serialize for Number<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        write_number(self.0, s)
    }
}

impl Serialize for Side {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Side::Scalar(q) => write_number(q, s),
            Side::Tuple(v) => {
                let mut seq = s.serialize_seq(Some(v.len()))?;
                for q in v {
                    seq.serialize_element(&Number(q))?;
                }
                seq.end()
            }
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Scalar(q) => f.write_str(&rational_string(q)),
            Side::Tuple(v) => {
                let s: Vec<String> = v.iter().map(rational_string).collect();
                write!(f, "({})", s.join(","))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub input: String,
    pub lhs: Side,
    pub rhs: Side,
    pub verdict: Verdict,
    pub certificate: Value,
}

impl CheckResult {
    /// The verdict is derived from exact equality of the two sides.
    pub fn new(name: &str, input: impl Into<String>, lhs: Side, rhs: Side, certificate: Value) -> Self {
        let verdict = if lhs == rhs { Verdict::Pass } else { Verdict::Fail };
        CheckResult {
            name: name.to_string(),
            input: input.into(),
            lhs,
            rhs,
            verdict,
            certificate,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// `name [input]: lhs = rhs pass`
    pub fn summary(&self) -> String {
        let rel = if self.passed() { "=" } else { "!=" };
        let v = if self.passed() { "pass" } else { "FAIL" };
        format!("{} [{}]: {} {rel} {} {v}", self.name, self.input, self.lhs, self.rhs)
    }
}
