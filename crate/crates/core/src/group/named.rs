//! Frequently used generators and small groups.

use super::spec::GroupSpec;
use crate::linalg::{CyclotomicScalar, FieldMatrix};

/// Cyclic permutation matrix sending e₂ ↦ e₁, e₃ ↦ e₂, e₁ ↦ e₃.
pub fn t3() -> FieldMatrix {
    FieldMatrix::from_i64(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]], 1)
}

/// The odd monomial matrix −(e₁e₁ᵀ + e₂e₃ᵀ + e₃e₂ᵀ), of determinant 1.
pub fn r3() -> FieldMatrix {
    FieldMatrix::from_i64(&[vec![-1, 0, 0], vec![0, 0, -1], vec![0, -1, 0]], 1)
}

/// ζ_k · I_n.
pub fn scalar_root(n: usize, k: u64) -> FieldMatrix {
    FieldMatrix::scalar(n, &CyclotomicScalar::zeta_pow(k, 1))
}

/// Pad a square matrix with an identity block of size `extra`.
pub fn pad(g: &FieldMatrix, extra: usize) -> FieldMatrix {
    g.direct_sum(&FieldMatrix::identity(extra, g.conductor()))
}

/// Quaternion group in SL(2), generated by diag(i, −i) and [[0,1],[−1,0]].
pub fn q8() -> GroupSpec {
    let i = FieldMatrix::diag_roots(4, &[1, 3]);
    let j = FieldMatrix::from_i64(&[vec![0, 1], vec![-1, 0]], 1);
    GroupSpec::new("Q8", vec![i, j]).expect("well-formed generators")
}

/// Order-21 group ⟨1/7(1,2,4), T⟩ ⊂ SL(3).
pub fn f21() -> GroupSpec {
    GroupSpec::new("F21", vec![FieldMatrix::diag_roots(7, &[1, 2, 4]), t3()])
        .expect("well-formed generators")
}

/// ⟨F21 ⊕ 1, ζ₄·I₄⟩ ⊂ SL(4).
pub fn f21_with_center() -> GroupSpec {
    let gens: Vec<FieldMatrix> = f21().generators.iter().map(|g| pad(g, 1)).collect();
    GroupSpec::new("F21+1 with i*I", gens)
        .and_then(|s| s.with_generator(scalar_root(4, 4)))
        .expect("well-formed generators")
}
