//! Classification, class counts and module type of an enumerated group.

use std::fmt;

use num_traits::One;
use serde::Serialize;

use super::matrix_group::MatrixGroup;
use super::named::scalar_root;
use crate::error::{Error, Result};
use crate::linalg::{CyclotomicScalar, FieldMatrix, Rational, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Smooth,
    Terminal,
    CanonicalNotTerminal,
    NotCanonical,
    NotGorenstein,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Smooth => "smooth",
            Classification::Terminal => "terminal",
            Classification::CanonicalNotTerminal => "canonical_not_terminal",
            Classification::NotCanonical => "not_canonical",
            Classification::NotGorenstein => "not_gorenstein",
        }
    }

    /// Smooth and terminal both count as terminal.
    pub fn is_terminal(&self) -> bool {
        matches!(self, Classification::Smooth | Classification::Terminal)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReidTai {
    pub classification: Classification,
    /// Smallness violations: classes containing pseudo-reflections.
    pub warnings: Vec<String>,
}

pub fn reid_tai_classify(g: &MatrixGroup) -> ReidTai {
    let mut warnings = Vec::new();
    for (c, p) in g.profiles().iter().enumerate() {
        if p.is_pseudo_reflection() {
            warnings.push(format!(
                "pseudo-reflection: class {c} (representative {}) fixes a hyperplane",
                g.classes()[c][0]
            ));
        }
    }
    if !g.is_special_linear() {
        return ReidTai {
            classification: Classification::NotGorenstein,
            warnings,
        };
    }
    let one = Rational::one();
    let mut min_age: Option<Rational> = None;
    for p in g.profiles().iter().filter(|p| !p.is_identity()) {
        let a = p.age();
        if min_age.as_ref().map_or(true, |m| a < *m) {
            min_age = Some(a);
        }
    }
    let classification = match min_age {
        None => Classification::Terminal,
        Some(a) if a > one => Classification::Terminal,
        Some(a) if a == one => Classification::CanonicalNotTerminal,
        Some(_) => Classification::NotCanonical,
    };
    debug_assert!(classification != Classification::NotCanonical);
    ReidTai {
        classification,
        warnings,
    }
}

/// Number of conjugacy classes of age exactly one.
pub fn weight_one_class_count(g: &MatrixGroup) -> usize {
    g.profiles().iter().filter(|p| p.age_is_one()).count()
}

/// Whether ζ_n·I belongs to the group.
pub fn contains_center(g: &MatrixGroup, n: usize) -> bool {
    n == g.dim() && g.contains(&scalar_root(n, n as u64))
}

/// Centralizer of a matrix that must be a group element.
pub fn centralizer(g: &MatrixGroup, x: &FieldMatrix) -> Result<Vec<usize>> {
    let i = g
        .index_of(x)
        .ok_or_else(|| Error::input("element is not in the group"))?;
    Ok(g.centralizer(i))
}

/// Linear orbifold Euler number with its certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearEuler {
    pub value: usize,
    /// dim V^g per class; every fixed space is linear, hence contractible.
    pub fixed_dims: Vec<usize>,
    /// Σ_g |C(g)|, which equals |G|·|Cl(G)|.
    pub commuting_pairs: usize,
    pub burnside_ok: bool,
}

pub fn dhvw_euler_linear(g: &MatrixGroup) -> LinearEuler {
    let fixed_dims = g.profiles().iter().map(|p| p.fixed_dim()).collect();
    let commuting_pairs: usize = g
        .classes()
        .iter()
        .zip(g.class_centralizers())
        .map(|(c, z)| c.len() * z.len())
        .sum();
    LinearEuler {
        value: g.class_count(),
        fixed_dims,
        commuting_pairs,
        burnside_ok: commuting_pairs == g.order() * g.class_count(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleType {
    /// Dimensions of the irreducible summands, descending.
    Dims(Vec<usize>),
    Undetermined,
}

impl fmt::Display for ModuleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleType::Dims(d) => {
                let s: Vec<String> = d.iter().map(usize::to_string).collect();
                write!(f, "({})", s.join(","))
            }
            ModuleType::Undetermined => f.write_str("undetermined"),
        }
    }
}

impl ModuleType {
    pub fn dims(&self) -> Option<&[usize]> {
        match self {
            ModuleType::Dims(d) => Some(d),
            ModuleType::Undetermined => None,
        }
    }

    pub fn is_irreducible(&self) -> bool {
        matches!(self, ModuleType::Dims(d) if d.len() == 1)
    }
}

/// Decomposition of the defining representation into irreducible summands.
pub fn module_type(g: &MatrixGroup) -> ModuleType {
    match invariant_decomposition(g) {
        Some(parts) => {
            let mut dims: Vec<usize> = parts.iter().map(Subspace::dim).collect();
            dims.sort_unstable_by(|a, b| b.cmp(a));
            ModuleType::Dims(dims)
        }
        None => ModuleType::Undetermined,
    }
}

/// Irreducible invariant summands whose direct sum is the whole space.
pub fn invariant_decomposition(g: &MatrixGroup) -> Option<Vec<Subspace>> {
    let full = Subspace::full(g.dim(), g.conductor());
    let mut out = Vec::new();
    decompose(g, full, &mut out).then_some(out)
}

fn decompose(g: &MatrixGroup, w: Subspace, out: &mut Vec<Subspace>) -> bool {
    if w.dim() <= 1 || character_norm(g, &w).is_one() {
        out.push(w);
        return true;
    }
    let Some(u) = find_invariant(g, &w) else {
        return false;
    };
    let Some(comp) = invariant_complement(g, &w, &u) else {
        return false;
    };
    decompose(g, u, out) && decompose(g, comp, out)
}

/// Trace of g restricted to the invariant subspace w.
fn restricted_trace(x: &FieldMatrix, w: &Subspace) -> CyclotomicScalar {
    let l = num_integer::lcm(x.conductor(), w.conductor());
    let x = x.promote(l);
    let mut acc = CyclotomicScalar::zero(l);
    for b in w.basis() {
        let p = b.iter().position(|c| !c.is_zero()).expect("nonzero basis row");
        let b: Vec<CyclotomicScalar> = b.iter().map(|c| c.promote(l)).collect();
        // basis rows are reduced: the coordinate along b is the entry at b's pivot.
        acc = &acc + &x.apply(&b)[p];
    }
    acc
}

/// (1/|G|) Σ_g |χ_W(g)|², summed by classes.
pub fn character_norm(g: &MatrixGroup, w: &Subspace) -> Rational {
    let mut total = CyclotomicScalar::zero(1);
    for c in g.classes() {
        let chi = restricted_trace(g.element(c[0]), w);
        let term = (&chi * &chi.conj()).scale(&Rational::from_integer(c.len().into()));
        total = &total + &term;
    }
    let q = total
        .as_rational()
        .cloned()
        .expect("character norm is rational");
    q / Rational::from_integer(g.order().into())
}

/// Smallest invariant subspace containing `s`.
fn invariant_span(g: &MatrixGroup, s: &Subspace) -> Subspace {
    let mut cur = s.clone();
    loop {
        let mut next = cur.clone();
        for &h in g.generators() {
            next = next.sum(&cur.image(g.element(h)).expect("same ambient")).expect("same ambient");
        }
        if next.dim() == cur.dim() {
            return cur;
        }
        cur = next;
    }
}

fn find_invariant(g: &MatrixGroup, w: &Subspace) -> Option<Subspace> {
    let proper = |s: &Subspace| s.dim() > 0 && s.dim() < w.dim();
    // eigenspaces of class representatives, ascending exponent, met with w
    let mut level1: Vec<Subspace> = Vec::new();
    for (c, prof) in g.classes().iter().zip(g.profiles()) {
        let x = g.element(c[0]);
        for (a, _) in prof.eigenvalues() {
            let lambda = CyclotomicScalar::zeta_pow(prof.order, a as i64);
            let e = Subspace::eigenspace(x, &lambda).ok()?.intersection(w).ok()?;
            if e.is_zero() || level1.contains(&e) {
                continue;
            }
            let span = invariant_span(g, &e);
            if proper(&span) {
                return Some(span);
            }
            level1.push(e);
        }
    }
    let mut frontier = level1.clone();
    for _ in 1..g.dim() {
        let mut next: Vec<Subspace> = Vec::new();
        for a in &frontier {
            for b in &level1 {
                let e = a.intersection(b).ok()?;
                if e.is_zero() || e == *a || next.contains(&e) {
                    continue;
                }
                let span = invariant_span(g, &e);
                if proper(&span) {
                    return Some(span);
                }
                next.push(e);
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    commutant_image(g, w)
}

/// Images of averaged rank-one maps b·e_jᵀ with b in w: they commute with
/// G and map w into itself, so their images are invariant subspaces of w.
/// Needed for isotypic summands with several copies.
fn commutant_image(g: &MatrixGroup, w: &Subspace) -> Option<Subspace> {
    let n = g.dim();
    let m = num_integer::lcm(g.conductor(), w.conductor());
    for b in w.basis() {
        for j in 0..n {
            let mut rows = vec![vec![CyclotomicScalar::zero(m); n]; n];
            for (i, row) in rows.iter_mut().enumerate() {
                row[j] = b[i].promote(m);
            }
            let a = average(g, &FieldMatrix::from_rows(rows).ok()?);
            let img = w.image(&a).ok()?;
            if img.dim() > 0 && img.dim() < w.dim() {
                return Some(img);
            }
        }
    }
    None
}

/// (1/|G|) Σ_g g·x·g⁻¹.
fn average(g: &MatrixGroup, x: &FieldMatrix) -> FieldMatrix {
    let mut acc = FieldMatrix::zeros(x.rows(), x.cols(), num_integer::lcm(g.conductor(), x.conductor()));
    for i in 0..g.order() {
        let t = g.element(i).mul_sq(x).mul_sq(g.element(g.inverse(i)));
        acc = acc.add(&t).expect("same shape");
    }
    acc.scale_rational(&Rational::new(1.into(), g.order().into()))
}

/// Invariant complement of u inside w, via an averaged projector.
fn invariant_complement(g: &MatrixGroup, w: &Subspace, u: &Subspace) -> Option<Subspace> {
    let n = g.dim();
    let m = num_integer::lcm(g.conductor(), num_integer::lcm(u.conductor(), w.conductor()));
    // basis: u's rows, then standard vectors off u's pivot columns
    let pivots: Vec<usize> = u
        .basis()
        .iter()
        .map(|b| b.iter().position(|c| !c.is_zero()).expect("nonzero row"))
        .collect();
    let mut cols: Vec<Vec<CyclotomicScalar>> =
        u.basis().iter().map(|b| b.iter().map(|c| c.promote(m)).collect()).collect();
    for j in (0..n).filter(|j| !pivots.contains(j)) {
        cols.push((0..n).map(|i| CyclotomicScalar::from_int(m, (i == j) as i64)).collect());
    }
    let b = FieldMatrix::from_columns(&cols).ok()?.promote(m);
    let mut d = vec![CyclotomicScalar::zero(m); n];
    for x in d.iter_mut().take(u.dim()) {
        *x = CyclotomicScalar::one(m);
    }
    let p0 = b.mul_sq(&FieldMatrix::diagonal(&d).ok()?).mul_sq(&b.inverse().ok()?);
    let p = average(g, &p0);
    let ker = Subspace::span(n, m, &p.kernel()).ok()?;
    let comp = ker.intersection(w).ok()?;
    (comp.dim() + u.dim() == w.dim()).then_some(comp)
}
