//! Exact arithmetic in the cyclotomic fields Q(ζ_m).
//!
//! An element is stored by its coefficients in the power basis
//! `1, ζ, …, ζ^{φ(m)-1}` after reduction modulo the m-th cyclotomic
//! polynomial. That form is unique, so equality, ordering and hashing are
//! plain component-wise operations on the coefficient vector.
//!
//! The embedding is fixed once and for all: ζ_m = exp(2πi/m). Promoting an
//! element from conductor m to a multiple M sends ζ_m to ζ_M^{M/m}.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = BigRational;

/// Reduced fraction `numer/denom` standing for the root of unity
/// exp(2πi·numer/denom). `numer < denom`, `gcd(numer, denom) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    pub numer: u64,
    pub denom: u64,
}

impl RootOfUnity {
    pub fn new(numer: i64, denom: u64) -> Self {
        assert!(denom > 0, "root of unity with zero denominator");
        let d = denom as i64;
        let n = numer.rem_euclid(d) as u64;
        let g = n.gcd(&denom);
        RootOfUnity {
            numer: n / g,
            denom: denom / g,
        }
    }

    pub fn one() -> Self {
        RootOfUnity { numer: 0, denom: 1 }
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.denom
    }

    pub fn inverse(&self) -> Self {
        RootOfUnity::new(-(self.numer as i64), self.denom)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let l = self.denom.lcm(&other.denom);
        let a = self.numer * (l / self.denom) + other.numer * (l / other.denom);
        RootOfUnity::new(a as i64, l)
    }

    pub fn pow(&self, k: i64) -> Self {
        let n = (self.numer as i128 * k as i128).rem_euclid(self.denom as i128);
        RootOfUnity::new(n as i64, self.denom)
    }

    /// Exponent of this root with respect to exp(2πi/r), provided its order divides r.
    pub fn exponent_mod(&self, r: u64) -> Option<u64> {
        if r % self.denom != 0 {
            return None;
        }
        Some(self.numer * (r / self.denom))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e(2πi·{}/{})", self.numer, self.denom)
    }
}

/// Reduction tables for one conductor.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u64,
    degree: usize,
    /// `powers[k]` = ζ^k reduced, as sparse (basis index, integer coefficient), for k < m.
    powers: Vec<Vec<(usize, i64)>>,
    /// Dense integer coefficient vectors of ±ζ^k, keyed to k as an exponent of ζ_{lcm(2,m)}.
    roots: OnceLock<HashMap<Vec<i64>, u64>>,
}

fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Coefficients (low degree first) of the m-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let div = cyclotomic_polynomial(d);
            num = divide_monic(&num, &div);
        }
    }
    cache.write().unwrap().insert(m, num.clone());
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qlen = rem.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dc) in den.iter().enumerate() {
                rem[i + j] = rem[i + j]
                    .checked_sub(c.checked_mul(dc).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

impl CyclotomicField {
    fn build(m: u64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let phi = cyclotomic_polynomial(m);
        let degree = phi.len() - 1;
        debug_assert_eq!(degree as u64, euler_phi(m));
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..m {
            powers.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (i, c))
                    .collect::<Vec<_>>(),
            );
            // multiply by x, then fold x^degree back using Φ_m.
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    cur[i] = cur[i]
                        .checked_sub(top.checked_mul(phi[i]).expect("reduction overflow"))
                        .expect("reduction overflow");
                }
            }
        }
        CyclotomicField {
            conductor: m,
            degree,
            powers,
            roots: OnceLock::new(),
        }
    }

    /// Shared tables for conductor `m`.
    pub fn get(m: u64) -> Arc<CyclotomicField> {
        static FIELDS: OnceLock<RwLock<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
        let fields = FIELDS.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(f) = fields.read().unwrap().get(&m) {
            return f.clone();
        }
        let built = Arc::new(CyclotomicField::build(m));
        fields
            .write()
            .unwrap()
            .entry(m)
            .or_insert(built)
            .clone()
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of roots of unity contained in the field.
    pub fn root_count(&self) -> u64 {
        if self.conductor % 2 == 0 {
            self.conductor
        } else {
            2 * self.conductor
        }
    }

    fn power(&self, k: u64) -> &[(usize, i64)] {
        &self.powers[(k % self.conductor) as usize]
    }

    fn root_table(&self) -> &HashMap<Vec<i64>, u64> {
        self.roots.get_or_init(|| {
            let mut table = HashMap::new();
            let m = self.conductor;
            let w = self.root_count();
            for k in 0..m {
                let mut dense = vec![0i64; self.degree];
                for &(i, c) in self.power(k) {
                    dense[i] = c;
                }
                // ζ_m^k = ζ_w^{k·w/m}
                table.insert(dense.clone(), k * (w / m));
                if w != m {
                    // odd m: -ζ_m^k = ζ_{2m}^{2k+m}
                    let neg: Vec<i64> = dense.iter().map(|c| -c).collect();
                    table.insert(neg, (2 * k + m) % w);
                }
            }
            table
        })
    }
}

/// Exact element of Q(ζ_m).
#[derive(Clone)]
pub struct CyclotomicScalar {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl CyclotomicScalar {
    pub fn zero(m: u64) -> Self {
        let field = CyclotomicField::get(m);
        let coeffs = vec![Rational::zero(); field.degree];
        CyclotomicScalar { field, coeffs }
    }

    pub fn one(m: u64) -> Self {
        Self::from_rational(m, Rational::one())
    }

    pub fn from_rational(m: u64, q: Rational) -> Self {
        let mut s = Self::zero(m);
        s.coeffs[0] = q;
        s
    }

    pub fn from_int(m: u64, n: i64) -> Self {
        Self::from_rational(m, Rational::from_integer(BigInt::from(n)))
    }

    /// Build from reduced power-basis coefficients; length must be φ(m).
    pub fn from_coeffs(m: u64, coeffs: Vec<Rational>) -> Result<Self> {
        let field = CyclotomicField::get(m);
        if coeffs.len() != field.degree {
            return Err(Error::Shape(format!(
                "conductor {m} needs {} coefficients, got {}",
                field.degree,
                coeffs.len()
            )));
        }
        Ok(CyclotomicScalar { field, coeffs })
    }

    /// Σ_s sums[s]·ζ_m^s for an unreduced coefficient list of length m.
    pub fn from_power_sum(m: u64, sums: &[Rational]) -> Self {
        assert_eq!(sums.len() as u64, m, "power sum needs m coefficients");
        let field = CyclotomicField::get(m);
        let mut coeffs = vec![Rational::zero(); field.degree];
        for (s, c) in sums.iter().enumerate() {
            if !c.is_zero() {
                accumulate(&mut coeffs, c, field.power(s as u64));
            }
        }
        CyclotomicScalar { field, coeffs }
    }

    /// ζ_m^k.
    pub fn zeta_pow(m: u64, k: i64) -> Self {
        let field = CyclotomicField::get(m);
        let k = k.rem_euclid(m as i64) as u64;
        let mut coeffs = vec![Rational::zero(); field.degree];
        for &(i, c) in field.power(k) {
            coeffs[i] = Rational::from_integer(BigInt::from(c));
        }
        CyclotomicScalar { field, coeffs }
    }

    /// The root of unity `r` as an element of Q(ζ_m), if the field contains it.
    pub fn root_of_unity(m: u64, r: RootOfUnity) -> Option<Self> {
        if m % r.denom == 0 {
            return Some(Self::zeta_pow(m, (r.numer * (m / r.denom)) as i64));
        }
        if m % 2 == 1 && (2 * m) % r.denom == 0 {
            // exp(πi t/m) with t odd equals -ζ_m^{(t+m)/2}
            let t = r.numer * (2 * m / r.denom);
            return Some(-Self::zeta_pow(m, ((t + m) / 2) as i64));
        }
        None
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Identify the value as a root of unity.
    pub fn as_root_of_unity(&self) -> Option<RootOfUnity> {
        let mut dense = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.is_integer() {
                return None;
            }
            dense.push(c.numer().to_i64()?);
        }
        let k = *self.field.root_table().get(&dense)?;
        Some(RootOfUnity::new(k as i64, self.field.root_count()))
    }

    /// Re-express in Q(ζ_big); `big` must be a multiple of the conductor.
    pub fn promote(&self, big: u64) -> Self {
        let m = self.conductor();
        if big == m {
            return self.clone();
        }
        assert!(big % m == 0, "cannot promote conductor {m} to {big}");
        let step = big / m;
        let field = CyclotomicField::get(big);
        let mut coeffs = vec![Rational::zero(); field.degree];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            accumulate(&mut coeffs, c, field.power(i as u64 * step));
        }
        CyclotomicScalar { field, coeffs }
    }

    /// Lift both operands to a common conductor.
    pub fn unify(a: &Self, b: &Self) -> (Self, Self) {
        let l = a.conductor().lcm(&b.conductor());
        (a.promote(l), b.promote(l))
    }

    /// Complex conjugate: ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        let m = self.conductor();
        let mut coeffs = vec![Rational::zero(); self.field.degree];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            accumulate(&mut coeffs, c, self.field.power((m - i as u64) % m));
        }
        CyclotomicScalar {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Multiply by ζ_m^k.
    pub fn mul_zeta(&self, k: i64) -> Self {
        let m = self.conductor();
        let k = k.rem_euclid(m as i64) as u64;
        let mut coeffs = vec![Rational::zero(); self.field.degree];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            accumulate(&mut coeffs, c, self.field.power(i as u64 + k));
        }
        CyclotomicScalar {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CyclotomicScalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    fn mul_same(&self, other: &Self) -> Self {
        if let Some(out) = self.mul_small(other) {
            return out;
        }
        let field = &self.field;
        let mut coeffs = vec![Rational::zero(); field.degree];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                accumulate(&mut coeffs, &ab, field.power((i + j) as u64));
            }
        }
        CyclotomicScalar {
            field: field.clone(),
            coeffs,
        }
    }

    /// Product over i128 when both sides have small integer coefficients.
    fn mul_small(&self, other: &Self) -> Option<Self> {
        fn small(v: &[Rational]) -> Option<Vec<i64>> {
            v.iter()
                .map(|c| {
                    if c.is_integer() {
                        c.numer().to_i64().filter(|x| x.unsigned_abs() < 1 << 30)
                    } else {
                        None
                    }
                })
                .collect()
        }
        let a = small(&self.coeffs)?;
        let b = small(&other.coeffs)?;
        let field = &self.field;
        let mut acc = vec![0i128; field.degree];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let xy = x as i128 * y as i128;
                for &(idx, k) in field.power((i + j) as u64) {
                    acc[idx] = acc[idx].checked_add(xy.checked_mul(k as i128)?)?;
                }
            }
        }
        Some(CyclotomicScalar {
            field: field.clone(),
            coeffs: acc
                .into_iter()
                .map(|c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        })
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let nonzero: Vec<usize> = (0..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .collect();
        if nonzero.len() == 1 {
            let i = nonzero[0];
            let m = self.conductor() as i64;
            let c = self.coeffs[i].recip();
            return Some(Self::zeta_pow(m as u64, -(i as i64)).scale(&c));
        }
        if self.as_root_of_unity().is_some() {
            return Some(self.conj());
        }
        // Solve (multiplication-by-self) · y = 1 over Q.
        let d = self.field.degree;
        let mut cols = Vec::with_capacity(d);
        for j in 0..d {
            cols.push(self.mul_zeta(j as i64).coeffs);
        }
        // augmented rows: row r = [cols[0][r], ..., cols[d-1][r] | rhs_r]
        let mut rows: Vec<Vec<Rational>> = (0..d)
            .map(|r| {
                let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
                row.push(if r == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d).find(|&r| !rows[r][col].is_zero())?;
            rows.swap(col, piv);
            let p = rows[col][col].clone();
            for v in rows[col].iter_mut() {
                *v = &*v / &p;
            }
            for r in 0..d {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    let (src, dst) = if r < col {
                        let (a, b) = rows.split_at_mut(col);
                        (&b[0], &mut a[r])
                    } else {
                        let (a, b) = rows.split_at_mut(r);
                        (&a[col], &mut b[0])
                    };
                    for (x, y) in dst.iter_mut().zip(src.iter()) {
                        *x = &*x - &f * y;
                    }
                }
            }
        }
        let coeffs = rows.into_iter().map(|mut r| r.pop().unwrap()).collect();
        Some(CyclotomicScalar {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn accumulate(dst: &mut [Rational], c: &Rational, pattern: &[(usize, i64)]) {
    for &(idx, k) in pattern {
        match k {
            1 => dst[idx] += c,
            -1 => dst[idx] -= c,
            _ => dst[idx] += c * Rational::from_integer(BigInt::from(k)),
        }
    }
}

impl PartialEq for CyclotomicScalar {
    /// Structural equality: same conductor and same reduced coefficients.
    /// Use [`CyclotomicScalar::value_eq`] to compare across conductors.
    fn eq(&self, other: &Self) -> bool {
        self.conductor() == other.conductor() && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicScalar {}

impl CyclotomicScalar {
    /// Equality of the underlying complex numbers, promoting conductors first.
    pub fn value_eq(&self, other: &Self) -> bool {
        if self.conductor() == other.conductor() {
            return self == other;
        }
        let (a, b) = Self::unify(self, other);
        a == b
    }
}

impl Hash for CyclotomicScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.conductor().hash(state);
        // low digits of each coefficient; equal values hash equally
        for c in &self.coeffs {
            let low = |x: &BigInt| x.iter_u64_digits().next().unwrap_or(0) ^ (x.is_negative() as u64);
            state.write_u64(low(c.numer()).wrapping_mul(31).wrapping_add(low(c.denom())));
        }
    }
}

impl PartialOrd for CyclotomicScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CyclotomicScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.conductor()
            .cmp(&other.conductor())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl<'a> Add<&'a CyclotomicScalar> for &'a CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn add(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        if self.conductor() != rhs.conductor() {
            let (a, b) = CyclotomicScalar::unify(self, rhs);
            return &a + &b;
        }
        CyclotomicScalar {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a CyclotomicScalar> for &'a CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn sub(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        if self.conductor() != rhs.conductor() {
            let (a, b) = CyclotomicScalar::unify(self, rhs);
            return &a - &b;
        }
        CyclotomicScalar {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a CyclotomicScalar> for &'a CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn mul(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        if self.conductor() != rhs.conductor() {
            let (a, b) = CyclotomicScalar::unify(self, rhs);
            return a.mul_same(&b);
        }
        self.mul_same(rhs)
    }
}

impl Neg for CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(mut self) -> CyclotomicScalar {
        for c in self.coeffs.iter_mut() {
            *c = -&*c;
        }
        self
    }
}

impl Neg for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        -(self.clone())
    }
}

impl fmt::Debug for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (i, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => write!(f, "z{}^{}", self.conductor(), i)?,
                (_, false) => write!(f, "{abs}*z{}^{}", self.conductor(), i)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Format a rational as `p` or `p/q`.
pub fn rational_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
