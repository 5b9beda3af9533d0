//! Group specifications: explicit generator matrices and the diagonal
//! shorthand `1/d(a1,…,an)` for diag(ζ_d^{a1}, …, ζ_d^{an}).

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::linalg::FieldMatrix;

/// Parsed `1/d(a1,…,an)` with exponents reduced into `[0, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagSpec {
    pub d: u64,
    pub exponents: Vec<u64>,
}

impl DiagSpec {
    pub fn new(d: i64, exponents: &[i64]) -> Result<Self> {
        if d <= 0 {
            return Err(Error::input(format!("denominator must be positive, got {d}")));
        }
        if exponents.is_empty() {
            return Err(Error::input("diagonal spec needs at least one exponent"));
        }
        Ok(DiagSpec {
            d: d as u64,
            exponents: exponents.iter().map(|a| a.rem_euclid(d) as u64).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    /// Σ aᵢ ≡ 0 (mod d).
    pub fn is_special_linear(&self) -> bool {
        self.exponents.iter().sum::<u64>() % self.d == 0
    }

    /// gcd of d with all exponents; the generator has order d / gcd.
    pub fn degeneracy(&self) -> u64 {
        self.exponents.iter().fold(self.d, |g, a| g.gcd(a))
    }

    pub fn matrix(&self) -> FieldMatrix {
        let e: Vec<i64> = self.exponents.iter().map(|&a| a as i64).collect();
        FieldMatrix::diag_roots(self.d, &e)
    }
}

impl fmt::Display for DiagSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(u64::to_string).collect();
        write!(f, "1/{}({})", self.d, parts.join(","))
    }
}

impl FromStr for DiagSpec {
    type Err = Error;

    /// Grammar: `1 / d ( a1 , … , an )` with optional whitespace; integers
    /// may be negative and are reduced mod d.
    fn from_str(s: &str) -> Result<Self> {
        let err = |pos: usize, msg: &str| Error::Parse {
            location: format!("diag, position {pos}"),
            message: msg.to_string(),
        };
        let mut p = Cursor { s: s.as_bytes(), pos: 0 };
        p.skip_ws();
        if p.int().map_err(|e| err(e, "expected leading 1"))? != 1 {
            return Err(err(0, "shorthand must start with 1/"));
        }
        p.skip_ws();
        p.expect(b'/').map_err(|e| err(e, "expected '/'"))?;
        p.skip_ws();
        let d_pos = p.pos;
        let d = p.int().map_err(|e| err(e, "expected denominator"))?;
        if d <= 0 {
            return Err(err(d_pos, "denominator must be positive"));
        }
        p.skip_ws();
        p.expect(b'(').map_err(|e| err(e, "expected '('"))?;
        let mut exps = Vec::new();
        loop {
            p.skip_ws();
            exps.push(p.int().map_err(|e| err(e, "expected integer exponent"))?);
            p.skip_ws();
            match p.next() {
                Some(b',') => continue,
                Some(b')') => break,
                _ => return Err(err(p.pos.saturating_sub(1), "expected ',' or ')'")),
            }
        }
        p.skip_ws();
        if p.pos != s.len() {
            return Err(err(p.pos, "trailing characters"));
        }
        DiagSpec::new(d, &exps)
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next(&mut self) -> Option<u8> {
        let c = self.s.get(self.pos).copied();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: u8) -> std::result::Result<(), usize> {
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.pos)
        }
    }

    fn int(&mut self) -> std::result::Result<i64, usize> {
        let start = self.pos;
        if matches!(self.s.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(start);
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or(start)
    }
}

/// A finite matrix group given by generators.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub name: String,
    pub conductor: u64,
    pub generators: Vec<FieldMatrix>,
}

impl GroupSpec {
    /// Generators are promoted to a common conductor; all must be square of one size.
    pub fn new(name: impl Into<String>, generators: Vec<FieldMatrix>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::input("group spec has no generators"));
        };
        let n = first.rows();
        for (i, g) in generators.iter().enumerate() {
            if !g.is_square() || g.rows() != n {
                return Err(Error::shape(format!(
                    "generator {i} is {}x{}, expected {n}x{n}",
                    g.rows(),
                    g.cols()
                )));
            }
        }
        let conductor = generators.iter().fold(1u64, |acc, g| acc.lcm(&g.conductor()));
        Ok(GroupSpec {
            name: name.into(),
            conductor,
            generators: generators.iter().map(|g| g.promote(conductor)).collect(),
        })
    }

    pub fn from_diag(diag: &DiagSpec) -> Self {
        GroupSpec::new(diag.to_string(), vec![diag.matrix()]).expect("diagonal generator")
    }

    pub fn parse_diag(s: &str) -> Result<Self> {
        Ok(Self::from_diag(&s.parse()?))
    }

    pub fn dim(&self) -> usize {
        self.generators[0].rows()
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_generator(mut self, g: FieldMatrix) -> Result<Self> {
        self.generators.push(g);
        GroupSpec::new(self.name, self.generators)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_shorthand_with_whitespace_and_negatives() {
        let d: DiagSpec = " 1 / 7 ( 1 , 2,-3 ) ".parse().unwrap();
        assert_eq!(d.d, 7);
        assert_eq!(d.exponents, vec![1, 2, 4]);
        assert!(d.is_special_linear());
        assert_eq!(d.to_string(), "1/7(1,2,4)");
    }

    #[test]
    fn rejects_malformed_shorthand() {
        for bad in ["", "1/0(1)", "2/3(1,2)", "1/3(1,2", "1/3()", "1/3(1,,2)", "1/3(1,2)x", "1/-3(1)"] {
            let e = bad.parse::<DiagSpec>();
            assert!(matches!(e, Err(Error::Parse { .. })), "{bad:?} gave {e:?}");
        }
    }

    #[test]
    fn degeneracy_detects_kernel() {
        let d: DiagSpec = "1/6(2,2,2)".parse().unwrap();
        assert_eq!(d.degeneracy(), 2);
        let d: DiagSpec = "1/6(1,2,3)".parse().unwrap();
        assert_eq!(d.degeneracy(), 1);
    }

    #[test]
    fn generators_must_agree_in_size() {
        let a = FieldMatrix::identity(2, 1);
        let b = FieldMatrix::identity(3, 1);
        assert!(GroupSpec::new("bad", vec![a, b]).is_err());
        assert!(GroupSpec::new("empty", vec![]).is_err());
    }
}
