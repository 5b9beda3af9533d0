//! Euler numbers of fixed loci on projective space.

use super::age::eigen_profile;
use super::matrix_group::MatrixGroup;
use crate::error::{Error, Result};
use crate::linalg::{CyclotomicScalar, FieldMatrix, Subspace};

/// Split the full space into the joint eigenspaces of commuting matrices.
pub fn joint_eigenspaces(gens: &[FieldMatrix], max_order: u64) -> Result<Vec<Subspace>> {
    let Some(first) = gens.first() else {
        return Err(Error::input("no matrices given"));
    };
    let n = first.rows();
    for (i, a) in gens.iter().enumerate() {
        if !a.is_square() || a.rows() != n {
            return Err(Error::shape("matrices of different sizes"));
        }
        for b in &gens[i + 1..] {
            if a.mul(b)? != b.mul(a)? {
                return Err(Error::input("subgroup is not abelian"));
            }
        }
    }
    let mut pieces = vec![Subspace::full(n, first.conductor())];
    for g in gens {
        let prof = eigen_profile(g, max_order)?;
        let eigen: Vec<Subspace> = prof
            .eigenvalues()
            .into_iter()
            .map(|(a, _)| Subspace::eigenspace(g, &CyclotomicScalar::zeta_pow(prof.order, a as i64)))
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for p in &pieces {
            for e in &eigen {
                let x = p.intersection(e)?;
                if !x.is_zero() {
                    next.push(x);
                }
            }
        }
        pieces = next;
    }
    Ok(pieces)
}

/// χ of the fixed locus in P(V) of the group generated by commuting
/// matrices: each joint eigenspace of dimension d contributes P^{d−1}, so d.
pub fn projective_fixed_euler_of(gens: &[FieldMatrix], max_order: u64) -> Result<usize> {
    Ok(joint_eigenspaces(gens, max_order)?.iter().map(Subspace::dim).sum())
}

/// χ((P^{n−1})^H) for the subgroup H of G given by element indices.
pub fn projective_fixed_euler(g: &MatrixGroup, members: &[usize]) -> Result<usize> {
    let gens = super::line::generating_set(g, members)?;
    if gens.is_empty() {
        return Ok(g.dim());
    }
    let mats: Vec<FieldMatrix> = gens.iter().map(|&i| g.element(i).clone()).collect();
    projective_fixed_euler_of(&mats, g.order() as u64)
}
