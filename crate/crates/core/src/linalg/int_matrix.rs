//! Dense matrices over Z with exact determinant and Hermite/Smith normal forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Result of [`IntMatrix::smith_normal_form`]: `diag = left · M · right`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diag: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Nonzero invariant factors d1 | d2 | …
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.diag.rows.min(self.diag.cols);
        (0..k)
            .map(|i| self.diag[(i, i)].clone())
            .filter(|d| !d.is_zero())
            .collect()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::shape("ragged integer matrix"));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let big: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(&big).expect("ragged literal matrix")
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .fold(BigInt::zero(), |acc, (i, x)| acc + x * &self[(i, j)])
            })
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::shape(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        if let Some(d) = self.det_small() {
            return Ok(BigInt::from(d));
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    /// Bareiss over i128 for matrices with machine-size entries; `None` on overflow.
    fn det_small(&self) -> Option<i128> {
        let n = self.rows;
        let mut a: Vec<i128> = self.data.iter().map(|x| x.to_i64().map(i128::from)).collect::<Option<_>>()?;
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k * n + k] == 0 {
                let i = (k + 1..n).find(|&i| a[i * n + k] != 0)?;
                for j in 0..n {
                    a.swap(k * n + j, i * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i * n + j]
                        .checked_mul(a[k * n + k])?
                        .checked_sub(a[i * n + k].checked_mul(a[k * n + j])?)?;
                    a[i * n + j] = v / prev;
                }
            }
            prev = a[k * n + k];
        }
        Some(sign * a[n * n - 1])
    }

    /// Classical adjugate, so that `M · adj(M) = det(M) · I`.
    pub fn adjugate(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::shape("adjugate of non-square matrix"));
        }
        let n = self.rows;
        let mut adj = Self::zeros(n, n);
        if n == 1 {
            adj[(0, 0)] = BigInt::one();
            return Ok(adj);
        }
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j);
                let d = minor.det()?;
                adj[(j, i)] = if (i + j) % 2 == 0 { d } else { -d };
            }
        }
        Ok(adj)
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> IntMatrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            for j in (0..self.cols).filter(|&j| j != skip_col) {
                data.push(self[(i, j)].clone());
            }
        }
        IntMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_a ← x·row_a + y·row_b ; row_b ← z·row_a + w·row_b (simultaneously).
    fn combine_rows(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, z: &BigInt, w: &BigInt) {
        for j in 0..self.cols {
            let ra = self[(a, j)].clone();
            let rb = self[(b, j)].clone();
            self[(a, j)] = x * &ra + y * &rb;
            self[(b, j)] = z * &ra + w * &rb;
        }
    }

    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Reverse both row and column order.
    fn reversed(&self) -> IntMatrix {
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(self.rows - 1 - i, self.cols - 1 - j)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Upper row-style HNF: `(H, U)` with `H = U·M`.
    fn upper_hnf(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = Self::identity(self.rows);
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            for i in r + 1..self.rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let a = h[(r, c)].clone();
                let b = h[(i, c)].clone();
                let eg = a.extended_gcd(&b);
                let (g, x, y) = (eg.gcd, eg.x, eg.y);
                let z = -(&b / &g);
                let w = &a / &g;
                h.combine_rows(r, i, &x, &y, &z, &w);
                u.combine_rows(r, i, &x, &y, &z, &w);
            }
            if h[(r, c)].is_zero() {
                continue;
            }
            if h[(r, c)].is_negative() {
                h.negate_row(r);
                u.negate_row(r);
            }
            let p = h[(r, c)].clone();
            for i in 0..r {
                let q = h[(i, c)].div_floor(&p);
                if !q.is_zero() {
                    let k = -q;
                    h.add_row_multiple(i, r, &k);
                    u.add_row_multiple(i, r, &k);
                }
            }
            r += 1;
        }
        (h, u)
    }

    /// Lower-triangular Hermite normal form `(H, U)` with `H = U·M`, `U`
    /// unimodular, pivots positive and entries below each pivot reduced
    /// into `[0, pivot)`. Zero rows collect at the top.
    pub fn hermite_normal_form(&self) -> (IntMatrix, IntMatrix) {
        let (h, u) = self.reversed().upper_hnf();
        (h.reversed(), u.reversed())
    }

    /// Smith normal form with unimodular transforms. Each step moves the
    /// entry of least absolute value to the pivot and reduces by division,
    /// so the pivot shrinks strictly until it divides its row, column and
    /// the remaining block.
    pub fn smith_normal_form(&self) -> SmithForm {
        let (m, n) = (self.rows, self.cols);
        let mut d = self.clone();
        let mut left = Self::identity(m);
        let mut right = Self::identity(n);
        for t in 0..m.min(n) {
            loop {
                // least |entry|; ties go to the leftmost column, then first row
                let mut best: Option<(usize, usize)> = None;
                for j in t..n {
                    for i in t..m {
                        let v = &d[(i, j)];
                        if v.is_zero() {
                            continue;
                        }
                        if best.map_or(true, |(bi, bj)| v.abs() < d[(bi, bj)].abs()) {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else {
                    return SmithForm { diag: d, left, right };
                };
                d.swap_rows(t, pi);
                left.swap_rows(t, pi);
                d.swap_cols(t, pj);
                right.swap_cols(t, pj);
                let p = d[(t, t)].clone();
                let mut clean = true;
                for i in t + 1..m {
                    let q = d[(i, t)].div_floor(&p);
                    if !q.is_zero() {
                        let k = -q;
                        d.add_row_multiple(i, t, &k);
                        left.add_row_multiple(i, t, &k);
                    }
                    clean &= d[(i, t)].is_zero();
                }
                for j in t + 1..n {
                    let q = d[(t, j)].div_floor(&p);
                    if !q.is_zero() {
                        let k = -q;
                        d.add_col_multiple(j, t, &k);
                        right.add_col_multiple(j, t, &k);
                    }
                    clean &= d[(t, j)].is_zero();
                }
                if !clean {
                    continue;
                }
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&d[(i, j)] % &p).is_zero()));
                match bad {
                    Some(i) => {
                        let one = BigInt::one();
                        d.add_row_multiple(t, i, &one);
                        left.add_row_multiple(t, i, &one);
                    }
                    None => break,
                }
            }
            if d[(t, t)].is_negative() {
                d.negate_row(t);
                left.negate_row(t);
            }
        }
        SmithForm {
            diag: d,
            left,
            right,
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().map(|d| d.abs().is_one()).unwrap_or(false)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn determinant_basics() {
        assert_eq!(IntMatrix::identity(3).det().unwrap(), BigInt::from(1));
        assert_eq!(m(&[&[2, 0], &[0, 3]]).det().unwrap(), BigInt::from(6));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det().unwrap(), BigInt::from(-1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det().unwrap(), BigInt::from(0));
        assert!(matches!(m(&[&[1, 2, 3]]).det(), Err(Error::Shape(_))));
    }

    #[test]
    fn hnf_identity_and_swap() {
        let (h, u) = IntMatrix::identity(3).hermite_normal_form();
        assert_eq!(h, IntMatrix::identity(3));
        assert_eq!(u, IntMatrix::identity(3));

        let p = m(&[&[0, 1], &[1, 0]]);
        let (h, u) = p.hermite_normal_form();
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u, p);
    }

    #[test]
    fn hnf_is_lower_and_reduced() {
        let a = m(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        let (h, u) = a.hermite_normal_form();
        assert_eq!(u.mul(&a).unwrap(), h);
        assert!(u.is_unimodular());
        for i in 0..3 {
            assert!(h[(i, i)].is_positive());
            for j in i + 1..3 {
                assert!(h[(i, j)].is_zero());
            }
            for r in i + 1..3 {
                assert!(!h[(r, i)].is_negative() && h[(r, i)] < h[(i, i)]);
            }
        }
    }

    #[test]
    fn smith_examples() {
        let s = m(&[&[2, 4], &[6, 8]]).smith_normal_form();
        assert_eq!(s.diag, m(&[&[2, 0], &[0, 4]]));
        let z = IntMatrix::zeros(2, 3).smith_normal_form();
        assert_eq!(z.diag, IntMatrix::zeros(2, 3));
        assert_eq!(IntMatrix::identity(3).smith_normal_form().diag, IntMatrix::identity(3));
    }

    #[test]
    fn adjugate_inverts() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let adj = a.adjugate().unwrap();
        let det = a.det().unwrap();
        let prod = a.mul(&adj).unwrap();
        assert_eq!(prod, IntMatrix::diagonal(&[det.clone(), det.clone(), det]));
    }
}
