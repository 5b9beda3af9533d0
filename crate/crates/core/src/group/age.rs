//! Eigenvalue exponents and ages, from the character multiplicity formula.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix_group::MatrixGroup;
use crate::error::{Error, Result};
use crate::linalg::{CyclotomicScalar, FieldMatrix, Rational};

/// Eigenvalues of an element of order `order`, written as exponents of
/// exp(2πi/order) and sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EigenProfile {
    pub order: u64,
    pub exponents: Vec<u64>,
}

/// Alias matching the per-class record name used in reports.
pub type AgeProfile = EigenProfile;

impl EigenProfile {
    /// Σ aᵢ / r.
    pub fn age(&self) -> Rational {
        let s: u64 = self.exponents.iter().sum();
        Rational::new(s.into(), self.order.into())
    }

    pub fn fixed_dim(&self) -> usize {
        self.exponents.iter().filter(|&&a| a == 0).count()
    }

    /// Profile of the k-th power: exponents k·aᵢ reduced to the new order.
    pub fn power(&self, k: u64) -> EigenProfile {
        let r = self.order;
        let g = (k % r).gcd(&r);
        let new_order = r / g;
        let mut exponents: Vec<u64> = self
            .exponents
            .iter()
            .map(|&a| (a * (k % r)) % r / g)
            .collect();
        exponents.sort_unstable();
        EigenProfile {
            order: new_order,
            exponents,
        }
    }

    /// Multiplicity of the eigenvalue exp(2πi j/order).
    pub fn multiplicity(&self, j: u64) -> usize {
        self.exponents.iter().filter(|&&a| a == j % self.order).count()
    }

    /// Distinct exponents with multiplicities, ascending.
    pub fn eigenvalues(&self) -> Vec<(u64, usize)> {
        let mut out: Vec<(u64, usize)> = Vec::new();
        for &a in &self.exponents {
            match out.last_mut() {
                Some((b, c)) if *b == a => *c += 1,
                _ => out.push((a, 1)),
            }
        }
        out
    }

    /// Pseudo-reflection: not the identity, fixing a hyperplane.
    pub fn is_pseudo_reflection(&self) -> bool {
        self.order > 1 && self.fixed_dim() + 1 == self.exponents.len()
    }
}

/// Eigenvalue exponents from the traces tr(g^k), k = 0..r−1, of an element
/// of order r acting on an n-dimensional space.
pub fn profile_from_traces(traces: &[CyclotomicScalar], n: usize) -> Result<EigenProfile> {
    let r = traces.len() as u64;
    if r == 0 {
        return Err(Error::Internal("empty trace list".into()));
    }
    let m = traces.iter().fold(1u64, |acc, t| acc.lcm(&t.conductor()));
    let big = m.lcm(&r);
    let step = big / r;
    let lifted: Vec<CyclotomicScalar> = traces.iter().map(|t| t.promote(big)).collect();
    let mut exponents = Vec::with_capacity(n);
    for j in 0..r {
        let mut acc = vec![Rational::zero(); big as usize];
        for (k, t) in lifted.iter().enumerate() {
            let shift = (j * k as u64 % r) * step;
            for (s, c) in t.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc[((s as u64 + big - shift) % big) as usize] += c;
                }
            }
        }
        let total = CyclotomicScalar::from_power_sum(big, &acc);
        let mult = total
            .as_rational()
            .map(|q| q / Rational::from_integer(r.into()))
            .filter(|q| q.is_integer() && !q.is_negative())
            .and_then(|q| q.to_integer().to_usize())
            .ok_or_else(|| {
                Error::Internal(format!("eigenvalue multiplicity for exponent {j}/{r} is not a non-negative integer"))
            })?;
        exponents.extend(std::iter::repeat(j).take(mult));
    }
    if exponents.len() != n {
        return Err(Error::Internal(format!(
            "eigenvalue multiplicities sum to {}, expected {n}",
            exponents.len()
        )));
    }
    Ok(EigenProfile { order: r, exponents })
}

/// Eigenvalue profile of a single matrix of finite order.
pub fn eigen_profile(g: &FieldMatrix, max_order: u64) -> Result<EigenProfile> {
    if !g.is_square() {
        return Err(Error::shape("eigenvalues of a non-square matrix"));
    }
    let n = g.rows();
    let mut traces = vec![CyclotomicScalar::from_int(g.conductor(), n as i64)];
    let mut p = g.clone();
    while !p.is_identity() {
        if traces.len() as u64 >= max_order {
            return Err(Error::input(format!("matrix order exceeds {max_order}")));
        }
        traces.push(p.trace());
        p = p.mul_sq(g);
    }
    profile_from_traces(&traces, n)
}

/// Age of a single finite-order matrix.
pub fn element_age(g: &FieldMatrix) -> Result<EigenProfile> {
    eigen_profile(g, crate::group::DEFAULT_MAX_ORDER as u64)
}

/// Profiles for all classes: computed on one representative and pushed to
/// the classes of its powers.
pub(super) fn class_profiles(group: &MatrixGroup) -> Result<Vec<EigenProfile>> {
    let n = group.dim();
    let mut out: Vec<Option<EigenProfile>> = vec![None; group.class_count()];
    let traces: Vec<CyclotomicScalar> = group.elements().iter().map(FieldMatrix::trace).collect();
    for c in 0..group.class_count() {
        if out[c].is_some() {
            continue;
        }
        let rep = group.classes()[c][0];
        let chain = group.power_chain(rep);
        // chain = [g, g², …, 1]; traces are needed for k = 0..r−1
        let mut t = Vec::with_capacity(chain.len());
        t.push(traces[group.identity()].clone());
        t.extend(chain[..chain.len() - 1].iter().map(|&i| traces[i].clone()));
        let prof = profile_from_traces(&t, n)?;
        for (k, &p) in chain.iter().enumerate() {
            let pc = group.class_of(p);
            if out[pc].is_none() {
                out[pc] = Some(prof.power(k as u64 + 1));
            }
        }
    }
    Ok(out.into_iter().map(|p| p.expect("every class profiled")).collect())
}

impl EigenProfile {
    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    pub fn age_is_one(&self) -> bool {
        self.age().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minus_identity_in_dimension_four() {
        let g = FieldMatrix::diag_roots(2, &[1, 1, 1, 1]);
        let p = element_age(&g).unwrap();
        assert_eq!(p.order, 2);
        assert_eq!(p.exponents, vec![1, 1, 1, 1]);
        assert_eq!(p.age(), Rational::from_integer(2.into()));
    }

    #[test]
    fn diagonal_one_sixth() {
        let p = element_age(&FieldMatrix::diag_roots(6, &[1, 2, 3])).unwrap();
        assert_eq!(p.exponents, vec![1, 2, 3]);
        assert!(p.age_is_one());
    }

    #[test]
    fn identity_has_age_zero() {
        let p = element_age(&FieldMatrix::identity(3, 1)).unwrap();
        assert!(p.age().is_zero());
        assert_eq!(p.fixed_dim(), 3);
    }

    #[test]
    fn permutation_matrix_eigenvalues() {
        let t = FieldMatrix::from_i64(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]], 1);
        let p = element_age(&t).unwrap();
        assert_eq!(p.order, 3);
        assert_eq!(p.exponents, vec![0, 1, 2]);
    }

    #[test]
    fn power_profile() {
        let p = EigenProfile {
            order: 6,
            exponents: vec![1, 2, 3],
        };
        let q = p.power(2);
        assert_eq!(q.order, 3);
        assert_eq!(q.exponents, vec![0, 1, 2]);
        assert_eq!(p.power(6).order, 1);
    }
}
