//! Monomial matrices and their permutation parts.

use std::fmt;

use super::matrix_group::MatrixGroup;
use crate::linalg::FieldMatrix;

/// Permutation of {0..n−1}; `images[i]` is the image of i.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    pub images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Disjoint cycles of length ≥ 2, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut j = self.images[start];
            while j != start {
                seen[j] = true;
                cyc.push(j);
                j = self.images[j];
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation on 1-based points; the identity prints as "()".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

/// σ with σ(i) = the column holding the single nonzero entry of row i, or
/// `None` when g does not permute the coordinate lines.
pub fn monomial_permutation_part(g: &FieldMatrix) -> Option<Permutation> {
    if !g.is_square() {
        return None;
    }
    let n = g.rows();
    let mut images = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for i in 0..n {
        let nz: Vec<usize> = (0..n).filter(|&j| !g[(i, j)].is_zero()).collect();
        if nz.len() != 1 || used[nz[0]] {
            return None;
        }
        used[nz[0]] = true;
        images.push(nz[0]);
    }
    Some(Permutation { images })
}

pub fn is_monomial_group(g: &MatrixGroup) -> bool {
    g.generators()
        .iter()
        .all(|&s| monomial_permutation_part(g.element(s)).is_some())
}

/// Diagonal elements of the group (a normal subgroup when G is monomial).
pub fn diagonal_part(g: &MatrixGroup) -> Vec<usize> {
    (0..g.order()).filter(|&i| g.element(i).is_diagonal()).collect()
}

/// Whether some element has an odd permutation part.
pub fn has_odd_permutation(g: &MatrixGroup) -> bool {
    g.elements()
        .iter()
        .any(|x| monomial_permutation_part(x).is_some_and(|p| !p.is_even()))
}
