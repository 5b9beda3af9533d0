//! Dense matrices over a cyclotomic field.
//!
//! All entries of a matrix share one conductor. Binary operations on
//! matrices with different conductors promote both to the lcm first.

use std::fmt;

use num_integer::Integer;

use super::cyclotomic::{CyclotomicScalar, Rational, RootOfUnity};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    conductor: u64,
    data: Vec<CyclotomicScalar>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize, conductor: u64) -> Self {
        FieldMatrix {
            rows,
            cols,
            conductor,
            data: vec![CyclotomicScalar::zero(conductor); rows * cols],
        }
    }

    pub fn identity(n: usize, conductor: u64) -> Self {
        Self::scalar(n, &CyclotomicScalar::one(conductor))
    }

    pub fn scalar(n: usize, s: &CyclotomicScalar) -> Self {
        let mut m = Self::zeros(n, n, s.conductor());
        for i in 0..n {
            m.data[i * n + i] = s.clone();
        }
        m
    }

    pub fn diagonal(entries: &[CyclotomicScalar]) -> Result<Self> {
        let conductor = common_conductor(entries.iter())?;
        let n = entries.len();
        let mut m = Self::zeros(n, n, conductor);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.promote(conductor);
        }
        Ok(m)
    }

    /// diag(ζ_d^{a_1}, …, ζ_d^{a_n}).
    pub fn diag_roots(d: u64, exponents: &[i64]) -> Self {
        let entries: Vec<CyclotomicScalar> = exponents
            .iter()
            .map(|&a| CyclotomicScalar::zeta_pow(d, a))
            .collect();
        Self::diagonal(&entries).expect("uniform conductor")
    }

    pub fn from_rows(rows: Vec<Vec<CyclotomicScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::shape("empty matrix"));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::shape("ragged matrix"));
        }
        let conductor = common_conductor(rows.iter().flatten())?;
        Ok(FieldMatrix {
            rows: r,
            cols: c,
            conductor,
            data: rows.into_iter().flatten().map(|x| x.promote(conductor)).collect(),
        })
    }

    /// Integer matrix literal over the given conductor.
    pub fn from_i64(rows: &[Vec<i64>], conductor: u64) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| CyclotomicScalar::from_int(conductor, x)).collect())
            .collect();
        Self::from_rows(rows).expect("literal matrix")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<CyclotomicScalar>]) -> Result<Self> {
        if cols.is_empty() {
            return Err(Error::shape("no columns"));
        }
        let n = cols[0].len();
        let rows = (0..n)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        Self::from_rows(rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[CyclotomicScalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[CyclotomicScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<CyclotomicScalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn promote(&self, conductor: u64) -> Self {
        if conductor == self.conductor {
            return self.clone();
        }
        FieldMatrix {
            rows: self.rows,
            cols: self.cols,
            conductor,
            data: self.data.iter().map(|x| x.promote(conductor)).collect(),
        }
    }

    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        let l = a.conductor.lcm(&b.conductor);
        (a.promote(l), b.promote(l))
    }

    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.conductor != other.conductor {
            let (a, b) = Self::unify(self, other);
            return a.mul(&b);
        }
        let mut out = Self::zeros(self.rows, other.cols, self.conductor);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Product of two square matrices of the same size; panics on shape mismatch.
    pub fn mul_sq(&self, other: &FieldMatrix) -> FieldMatrix {
        self.mul(other).expect("square matrices of equal size")
    }

    pub fn sub(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn add(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    fn zip_with(
        &self,
        other: &FieldMatrix,
        f: impl Fn(&CyclotomicScalar, &CyclotomicScalar) -> CyclotomicScalar,
    ) -> Result<FieldMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::shape("elementwise operation on different shapes"));
        }
        if self.conductor != other.conductor {
            let (a, b) = Self::unify(self, other);
            return a.zip_with(&b, f);
        }
        Ok(FieldMatrix {
            rows: self.rows,
            cols: self.cols,
            conductor: self.conductor,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, s: &CyclotomicScalar) -> FieldMatrix {
        let l = self.conductor.lcm(&s.conductor());
        let s = s.promote(l);
        let base = self.promote(l);
        FieldMatrix {
            data: base.data.iter().map(|x| x * &s).collect(),
            ..base
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> FieldMatrix {
        FieldMatrix {
            data: self.data.iter().map(|x| x.scale(q)).collect(),
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = Self::zeros(self.cols, self.rows, self.conductor);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> CyclotomicScalar {
        let mut acc = CyclotomicScalar::zero(self.conductor);
        for i in 0..self.rows.min(self.cols) {
            acc = &acc + &self[(i, i)];
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CyclotomicScalar::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// `Some(λ)` if the matrix is λ·I.
    pub fn as_scalar(&self) -> Option<CyclotomicScalar> {
        if !self.is_square() || !self.is_diagonal() {
            return None;
        }
        let first = self[(0, 0)].clone();
        (1..self.rows).all(|i| self[(i, i)] == first).then_some(first)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> FieldMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self[(i, j)].clone());
            }
        }
        FieldMatrix {
            rows: rows.len(),
            cols: cols.len(),
            conductor: self.conductor,
            data,
        }
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &FieldMatrix) -> FieldMatrix {
        let l = self.conductor.lcm(&other.conductor);
        let (a, b) = (self.promote(l), other.promote(l));
        let (r, c) = (a.rows + b.rows, a.cols + b.cols);
        let mut out = Self::zeros(r, c, l);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out.data[i * c + j] = a[(i, j)].clone();
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                out.data[(a.rows + i) * c + a.cols + j] = b[(i, j)].clone();
            }
        }
        out
    }

    pub fn apply(&self, v: &[CyclotomicScalar]) -> Vec<CyclotomicScalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = CyclotomicScalar::zero(self.conductor);
                for (j, x) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if a.is_zero() || x.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * x);
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form; returns the form and its pivot columns.
    /// Pivoting is leftmost nonzero column, first nonzero row.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let inv = a[(r, c)].inv().expect("nonzero pivot");
            for j in c..a.cols {
                let v = &a[(r, j)] * &inv;
                a.data[r * a.cols + j] = v;
            }
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..a.cols {
                    if a[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &a[(i, j)] - &(&f * &a[(r, j)]);
                    a.data[i * a.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space `{v : M v = 0}`, one vector per free column,
    /// read off the reduced echelon form.
    pub fn kernel(&self) -> Vec<Vec<CyclotomicScalar>> {
        let (r, pivots) = self.rref();
        let m = self.conductor;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![CyclotomicScalar::zero(m); self.cols];
                v[f] = CyclotomicScalar::one(m);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&r[(row, f)];
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Result<CyclotomicScalar> {
        if !self.is_square() {
            return Err(Error::shape(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = CyclotomicScalar::one(self.conductor);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
                return Ok(CyclotomicScalar::zero(self.conductor));
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a[(c, c)].clone();
            det = &det * &piv;
            let mut inv = None;
            for i in c + 1..n {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let inv = inv.get_or_insert_with(|| piv.inv().expect("nonzero pivot"));
                let f = &a[(i, c)] * &*inv;
                for j in c..n {
                    if a[(c, j)].is_zero() {
                        continue;
                    }
                    let v = &a[(i, j)] - &(&f * &a[(c, j)]);
                    a.data[i * n + j] = v;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<FieldMatrix> {
        if !self.is_square() {
            return Err(Error::shape("inverse of non-square matrix"));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n, self.conductor);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self[(i, j)].clone();
            }
            aug.data[i * 2 * n + n + i] = CyclotomicScalar::one(self.conductor);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::input("matrix is singular"));
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(r.submatrix(&rows, &cols))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> FieldMatrix {
        let mut t = self.transpose();
        for x in t.data.iter_mut() {
            *x = x.conj();
        }
        t
    }

    /// Root-of-unity determinant, if the determinant is one.
    pub fn det_root(&self) -> Option<RootOfUnity> {
        self.det().ok()?.as_root_of_unity()
    }
}

fn common_conductor<'a>(it: impl Iterator<Item = &'a CyclotomicScalar>) -> Result<u64> {
    Ok(it.fold(1u64, |acc, x| acc.lcm(&x.conductor())))
}

impl std::ops::Index<(usize, usize)> for FieldMatrix {
    type Output = CyclotomicScalar;
    fn index(&self, (i, j): (usize, usize)) -> &CyclotomicScalar {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cyclotomic::int;

    #[test]
    fn det_of_diagonal_and_identity() {
        assert!(FieldMatrix::identity(3, 5).det().unwrap().is_one());
        let d = FieldMatrix::from_i64(&[vec![2, 0], vec![0, 3]], 1);
        assert_eq!(d.det().unwrap(), CyclotomicScalar::from_int(1, 6));
        let g = FieldMatrix::diag_roots(6, &[1, 2, 3]);
        assert!(g.det().unwrap().is_one());
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert!(FieldMatrix::identity(3, 1).kernel().is_empty());
        let k = FieldMatrix::zeros(2, 2, 1).kernel();
        assert_eq!(k.len(), 2);
        assert!(k[0][0].is_one() && k[0][1].is_zero());
        assert!(k[1][0].is_zero() && k[1][1].is_one());
    }

    #[test]
    fn eigenspace_of_diagonal_element() {
        // g = diag(ζ3, ζ3, 1), λ = ζ3: direct substitution gives e1, e2.
        let g = FieldMatrix::diag_roots(3, &[1, 1, 0]);
        let lam = FieldMatrix::scalar(3, &CyclotomicScalar::zeta_pow(3, 1));
        let k = g.sub(&lam).unwrap().kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(g.sub(&lam).unwrap().apply(v).iter().all(CyclotomicScalar::is_zero));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let t = FieldMatrix::from_i64(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]], 7);
        let h = FieldMatrix::diag_roots(7, &[1, 2, 4]);
        let g = t.mul_sq(&h);
        let gi = g.inverse().unwrap();
        assert!(g.mul_sq(&gi).is_identity());
        let singular = FieldMatrix::from_i64(&[vec![1, 2], vec![2, 4]], 1);
        assert!(singular.inverse().is_err());
    }

    #[test]
    fn mixed_conductors_promote() {
        let a = FieldMatrix::diag_roots(3, &[1, 2]);
        let b = FieldMatrix::diag_roots(4, &[1, 3]);
        let p = a.mul_sq(&b);
        assert_eq!(p.conductor(), 12);
        assert_eq!(p, FieldMatrix::diag_roots(12, &[7, 5]));
        let s = a.scale_rational(&int(2));
        assert_eq!(s[(0, 0)], CyclotomicScalar::zeta_pow(3, 1).scale(&int(2)));
    }
}
