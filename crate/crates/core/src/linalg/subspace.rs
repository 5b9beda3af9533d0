//! Linear subspaces of Q(ζ_m)^n held in a canonical reduced-echelon basis.

use num_integer::Integer;

use super::cyclotomic::CyclotomicScalar;
use super::field_matrix::FieldMatrix;
use crate::error::{Error, Result};

/// A subspace of K^n. The basis rows are the nonzero rows of a reduced
/// row echelon form, so two equal subspaces have identical bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    conductor: u64,
    basis: Vec<Vec<CyclotomicScalar>>,
}

impl Subspace {
    pub fn zero(ambient: usize, conductor: u64) -> Self {
        Subspace {
            ambient,
            conductor,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize, conductor: u64) -> Self {
        let id = FieldMatrix::identity(ambient, conductor);
        Subspace {
            ambient,
            conductor,
            basis: (0..ambient).map(|i| id.row(i).to_vec()).collect(),
        }
    }

    /// Span of arbitrary vectors of length `ambient`.
    pub fn span(ambient: usize, conductor: u64, vectors: &[Vec<CyclotomicScalar>]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::shape("vector length differs from ambient dimension"));
        }
        let conductor = vectors
            .iter()
            .flatten()
            .fold(conductor, |acc, x| acc.lcm(&x.conductor()));
        if vectors.is_empty() {
            return Ok(Self::zero(ambient, conductor));
        }
        let rows: Vec<Vec<CyclotomicScalar>> = vectors
            .iter()
            .map(|v| v.iter().map(|x| x.promote(conductor)).collect())
            .collect();
        let (r, pivots) = FieldMatrix::from_rows(rows)?.promote(conductor).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Subspace {
            ambient,
            conductor,
            basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn basis(&self) -> &[Vec<CyclotomicScalar>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::shape(format!(
                "subspaces of K^{} and K^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, self.conductor.lcm(&other.conductor), &all)
    }

    /// Exact basis of `self ∩ other`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let conductor = self.conductor.lcm(&other.conductor);
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient, conductor));
        }
        // columns a_1..a_p, -b_1..-b_q; kernel vectors (x, y) give Σ x_i a_i ∈ A ∩ B.
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|b| b.iter().map(|x| -x).collect()));
        let m = FieldMatrix::from_columns(&cols)?.promote(conductor);
        let vectors: Vec<Vec<CyclotomicScalar>> = m
            .kernel()
            .iter()
            .map(|k| {
                let mut v = vec![CyclotomicScalar::zero(conductor); self.ambient];
                for (i, a) in self.basis.iter().enumerate() {
                    if k[i].is_zero() {
                        continue;
                    }
                    for (vj, aj) in v.iter_mut().zip(a) {
                        *vj = &*vj + &(&k[i] * aj);
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.ambient, conductor, &vectors)
    }

    pub fn contains(&self, v: &[CyclotomicScalar]) -> bool {
        if v.iter().all(CyclotomicScalar::is_zero) {
            return true;
        }
        let mut all = self.basis.clone();
        all.push(v.to_vec());
        Subspace::span(self.ambient, self.conductor, &all)
            .map(|s| s.dim() == self.dim())
            .unwrap_or(false)
    }

    /// Image under a square matrix acting on column vectors.
    pub fn image(&self, g: &FieldMatrix) -> Result<Subspace> {
        if g.cols() != self.ambient {
            return Err(Error::shape("matrix does not act on this space"));
        }
        let imgs: Vec<Vec<CyclotomicScalar>> = self
            .basis
            .iter()
            .map(|b| {
                let l = g.conductor().lcm(&self.conductor);
                let b: Vec<CyclotomicScalar> = b.iter().map(|x| x.promote(l)).collect();
                g.promote(l).apply(&b)
            })
            .collect();
        Subspace::span(self.ambient, self.conductor.lcm(&g.conductor()), &imgs)
    }

    /// Eigenspace `ker(g - λI)`.
    pub fn eigenspace(g: &FieldMatrix, lambda: &CyclotomicScalar) -> Result<Subspace> {
        let n = g.rows();
        let shifted = g.sub(&FieldMatrix::scalar(n, lambda))?;
        Subspace::span(n, shifted.conductor(), &shifted.kernel())
    }
}

/// Exact basis of `a ∩ b`.
pub fn subspace_intersection(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersection(b)
}
