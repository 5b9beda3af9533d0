//! Simplicial fans and their text format.
//!
//! ```text
//! # format_version: 1
//! lattice n=3
//! ray 0: 1 0 0
//! ray 1: 0 1 0
//! cone: 0 1
//! ```

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use super::cone::SimplicialCone;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

pub const FAN_FORMAT_VERSION: u32 = 1;

/// Rays are integer vectors in the N-basis; cones are sorted ray-index lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan {
    pub dim: usize,
    pub rays: Vec<Vec<BigInt>>,
    pub cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn new(dim: usize, rays: Vec<Vec<BigInt>>, cones: Vec<Vec<usize>>) -> Result<Self> {
        if rays.iter().any(|r| r.len() != dim) {
            return Err(Error::shape(format!("ray length differs from lattice dimension {dim}")));
        }
        for c in &cones {
            if c.iter().any(|&i| i >= rays.len()) {
                return Err(Error::input("cone refers to a missing ray"));
            }
        }
        Ok(Fan { dim, rays, cones })
    }

    /// Fan of a single full-dimensional cone.
    pub fn from_cone(cone: &SimplicialCone) -> Self {
        let n = cone.dim();
        Fan {
            dim: n,
            rays: cone.rays.row_vecs(),
            cones: vec![(0..n).collect()],
        }
    }

    /// Sort rays lexicographically, renumber, then sort each cone and the cone list.
    pub fn canonicalize(&mut self) {
        let mut order: Vec<usize> = (0..self.rays.len()).collect();
        order.sort_by(|&a, &b| self.rays[a].cmp(&self.rays[b]));
        let mut new_index = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        self.rays = order.iter().map(|&i| self.rays[i].clone()).collect();
        for c in self.cones.iter_mut() {
            for i in c.iter_mut() {
                *i = new_index[*i];
            }
            c.sort_unstable();
        }
        self.cones.sort();
        self.cones.dedup();
    }

    pub fn canonical(mut self) -> Self {
        self.canonicalize();
        self
    }

    pub fn cone_matrix(&self, k: usize) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = self.cones[k].iter().map(|&i| self.rays[i].clone()).collect();
        IntMatrix::from_rows(&rows).expect("rays share the lattice dimension")
    }

    /// The k-th cone as a simplicial cone; errors if it is not full-dimensional simplicial.
    pub fn simplicial(&self, k: usize) -> Result<SimplicialCone> {
        SimplicialCone::new(self.cone_matrix(k))
            .map_err(|_| Error::input(format!("cone {k} is not a full-dimensional simplicial cone")))
    }

    /// Multiplicity of every cone, in cone order.
    pub fn multiplicities(&self) -> Result<Vec<BigInt>> {
        (0..self.cones.len()).map(|k| Ok(self.simplicial(k)?.multiplicity())).collect()
    }

    /// Rays not used by any cone.
    pub fn unused_rays(&self) -> Vec<usize> {
        (0..self.rays.len())
            .filter(|i| !self.cones.iter().any(|c| c.contains(i)))
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "# format_version: {FAN_FORMAT_VERSION}").unwrap();
        writeln!(s, "lattice n={}", self.dim).unwrap();
        for (i, r) in self.rays.iter().enumerate() {
            let v: Vec<String> = r.iter().map(BigInt::to_string).collect();
            writeln!(s, "ray {i}: {}", v.join(" ")).unwrap();
        }
        for c in &self.cones {
            let v: Vec<String> = c.iter().map(usize::to_string).collect();
            writeln!(s, "cone: {}", v.join(" ")).unwrap();
        }
        s
    }

    pub fn parse(text: &str) -> Result<Fan> {
        let err = |line: usize, msg: String| Error::Parse {
            location: format!("fan line {line}"),
            message: msg,
        };
        let mut dim: Option<usize> = None;
        let mut rays: Vec<Vec<BigInt>> = Vec::new();
        let mut cones = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let lineno = k + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("lattice") {
                let v = rest.trim().strip_prefix("n=").ok_or_else(|| err(lineno, "expected 'lattice n=<n>'".into()))?;
                dim = Some(v.trim().parse().map_err(|_| err(lineno, format!("bad dimension '{v}'")))?);
                continue;
            }
            let n = dim.ok_or_else(|| err(lineno, "lattice header must come first".into()))?;
            if let Some(rest) = line.strip_prefix("ray") {
                let (idx, coords) = rest.split_once(':').ok_or_else(|| err(lineno, "expected ':' after ray index".into()))?;
                let idx: usize = idx.trim().parse().map_err(|_| err(lineno, format!("bad ray index '{}'", idx.trim())))?;
                if idx != rays.len() {
                    return Err(err(lineno, format!("ray index {idx} out of sequence, expected {}", rays.len())));
                }
                let v: Vec<BigInt> = coords
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| err(lineno, format!("bad integer '{t}'"))))
                    .collect::<Result<_>>()?;
                if v.len() != n {
                    return Err(err(lineno, format!("ray has {} coordinates, expected {n}", v.len())));
                }
                rays.push(v);
            } else if let Some(rest) = line.strip_prefix("cone:") {
                let c: Vec<usize> = rest
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| err(lineno, format!("bad ray index '{t}'"))))
                    .collect::<Result<_>>()?;
                if let Some(bad) = c.iter().find(|&&i| i >= rays.len()) {
                    return Err(err(lineno, format!("cone refers to undefined ray {bad}")));
                }
                cones.push(c);
            } else {
                return Err(err(lineno, format!("unrecognized line '{line}'")));
            }
        }
        let dim = dim.ok_or_else(|| err(0, "missing lattice header".into()))?;
        Fan::new(dim, rays, cones)
    }
}

/// Orbifold Euler number of a simplicial fan: the sum of cone multiplicities.
pub fn fan_orbifold_euler(fan: &Fan) -> Result<BigInt> {
    Ok(fan.multiplicities()?.into_iter().fold(BigInt::zero(), |a, b| a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn text_round_trip() {
        let f = Fan::new(2, vec![b(&[1, 0]), b(&[1, 2]), b(&[0, 1])], vec![vec![0, 1], vec![1, 2]]).unwrap();
        let t = f.to_text();
        assert!(t.starts_with("# format_version: 1\nlattice n=2\n"));
        assert_eq!(Fan::parse(&t).unwrap(), f);
    }

    #[test]
    fn euler_sums_multiplicities() {
        let f = Fan::new(2, vec![b(&[1, 0]), b(&[1, 2]), b(&[0, 1])], vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(fan_orbifold_euler(&f).unwrap(), BigInt::from(3));
    }

    #[test]
    fn degenerate_cone_rejected() {
        let f = Fan::new(2, vec![b(&[1, 0]), b(&[2, 0])], vec![vec![0, 1]]).unwrap();
        assert!(matches!(fan_orbifold_euler(&f), Err(Error::Input(_))));
    }

    #[test]
    fn parse_errors_name_the_line() {
        let e = Fan::parse("lattice n=2\nray 0: 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { ref location, .. } if location == "fan line 2"));
        assert!(Fan::parse("ray 0: 1 0\n").is_err());
        assert!(Fan::parse("lattice n=2\ncone: 0\n").is_err());
    }

    #[test]
    fn canonical_order() {
        let f = Fan::new(2, vec![b(&[0, 1]), b(&[1, 0])], vec![vec![1, 0]]).unwrap().canonical();
        assert_eq!(f.rays, vec![b(&[0, 1]), b(&[1, 0])]);
        assert_eq!(f.cones, vec![vec![0, 1]]);
    }
}
