//! Euler bookkeeping for blowing up the origin of V/G when G contains the
//! scalar subgroup Z_n: the exceptional divisor is P(V)/Ḡ with Ḡ = G/Z_n.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::json;

use super::check::{CheckResult, Side};
use crate::error::{Error, Result};
use crate::group::named::scalar_root;
use crate::group::{contains_center, dhvw_euler_linear, eigen_profile, MatrixGroup};
use crate::linalg::{rational_string, CyclotomicScalar, IntMatrix, Rational, Subspace};

/// G/Z_n, with each coset named by its least element.
#[derive(Clone, Debug)]
pub struct CenterQuotient {
    /// Least element of each coset, ascending.
    pub representatives: Vec<usize>,
    /// Coset number of every element of G.
    pub coset_of: Vec<usize>,
    /// Conjugacy classes of the quotient, as coset numbers.
    pub classes: Vec<Vec<usize>>,
}

pub fn center_quotient(g: &MatrixGroup) -> Result<CenterQuotient> {
    let n = g.dim();
    if !contains_center(g, n) {
        return Err(Error::input(format!("{} does not contain the scalar group Z_{n}", g.name())));
    }
    let z = g.index_of(&scalar_root(n, n as u64)).expect("checked above");
    let center = g.power_chain(z);
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut representatives = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        for &c in &center {
            coset_of[g.mul(x, c)] = representatives.len();
        }
        representatives.push(x);
    }
    let mut class_of = vec![usize::MAX; representatives.len()];
    let mut classes = Vec::new();
    for start in 0..representatives.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let cid = classes.len();
        class_of[start] = cid;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for &s in g.generators() {
                let y = coset_of[g.conjugate(s, representatives[c])];
                if class_of[y] == usize::MAX {
                    class_of[y] = cid;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    Ok(CenterQuotient {
        representatives,
        coset_of,
        classes,
    })
}

/// Eigenspaces of a group element.
fn eigenspaces(g: &MatrixGroup, x: usize) -> Result<Vec<Subspace>> {
    let m = g.element(x);
    if m.is_diagonal() {
        let n = m.rows();
        let c = g.conductor();
        let mut blocks: Vec<(&CyclotomicScalar, Vec<Vec<CyclotomicScalar>>)> = Vec::new();
        for i in 0..n {
            let unit: Vec<CyclotomicScalar> = (0..n).map(|j| CyclotomicScalar::from_int(c, (i == j) as i64)).collect();
            match blocks.iter_mut().find(|(e, _)| **e == m[(i, i)]) {
                Some((_, vs)) => vs.push(unit),
                None => blocks.push((&m[(i, i)], vec![unit])),
            }
        }
        return blocks.iter().map(|(_, vs)| Subspace::span(n, c, vs)).collect();
    }
    let prof = eigen_profile(m, g.element_order(x))?;
    prof.eigenvalues()
        .into_iter()
        .map(|(a, _)| Subspace::eigenspace(m, &CyclotomicScalar::zeta_pow(prof.order, a as i64)))
        .collect()
}

/// Eigenspaces shared between elements are stored once and referred to by id.
#[derive(Default)]
struct SpaceTable {
    spaces: Vec<Subspace>,
    ids: HashMap<Subspace, usize>,
    meets: HashMap<(usize, usize), usize>,
}

impl SpaceTable {
    fn intern(&mut self, s: Subspace) -> usize {
        if let Some(&i) = self.ids.get(&s) {
            return i;
        }
        self.spaces.push(s.clone());
        self.ids.insert(s, self.spaces.len() - 1);
        self.spaces.len() - 1
    }

    fn meet_dim(&mut self, a: usize, b: usize) -> Result<usize> {
        let key = (a.min(b), a.max(b));
        if let Some(&d) = self.meets.get(&key) {
            return Ok(d);
        }
        let d = self.spaces[a].intersection(&self.spaces[b])?.dim();
        self.meets.insert(key, d);
        Ok(d)
    }

    /// χ of the common fixed locus in P(V) of two elements: the fixed
    /// locus of each is the disjoint union of its projectivized
    /// eigenspaces, so the intersection contributes Σ dim(E_λ(x) ∩ E_μ(y)).
    fn joint_fixed_euler(&mut self, a: &[usize], b: &[usize]) -> Result<usize> {
        let mut total = 0;
        for &e in a {
            for &f in b {
                total += self.meet_dim(e, f)?;
            }
        }
        Ok(total)
    }
}

/// Σ over classes of Ḡ of χ(P(V)^ḡ / C_Ḡ(ḡ)), each term a Burnside average,
/// against |Cl(G)|.
pub fn blowup_euler_check(g: &MatrixGroup) -> Result<CheckResult> {
    let q = center_quotient(g)?;
    let reps = &q.representatives;
    let mut table = SpaceTable::default();
    let mut spaces = Vec::with_capacity(reps.len());
    for &r in reps {
        let ids: Vec<usize> = eigenspaces(g, r)?.into_iter().map(|s| table.intern(s)).collect();
        spaces.push(ids);
    }
    let mut terms = Vec::with_capacity(q.classes.len());
    for class in &q.classes {
        let c = class[0];
        let x = reps[c];
        // centralizer of the coset: h with h x h⁻¹ ∈ x Z
        let centralizer: Vec<usize> = (0..reps.len())
            .filter(|&h| q.coset_of[g.conjugate(reps[h], x)] == c)
            .collect();
        let mut sum = 0usize;
        for &h in &centralizer {
            sum += table.joint_fixed_euler(&spaces[c], &spaces[h])?;
        }
        terms.push(Rational::new(BigInt::from(sum), BigInt::from(centralizer.len())));
    }
    let total = terms.iter().fold(Rational::zero(), |a, t| a + t);
    let classes = dhvw_euler_linear(g).value;
    let term_text: Vec<String> = terms.iter().map(rational_string).collect();
    let cert = json!({
        "quotient_order": reps.len(),
        "quotient_classes": q.classes.len(),
        "class_terms": term_text,
    });
    Ok(CheckResult::new(
        "blowup",
        g.name(),
        Side::Scalar(total),
        Side::int(classes),
        cert,
    ))
}

/// Weights of a diagonal action 1/d(a₁,…,aₙ) in the chart with coordinates
/// (x₁, x₂/x₁, …, xₙ/x₁): the chart's exponent matrix applied to the
/// weight vector, reduced mod d.
pub fn chart_weights(d: u64, weights: &[u64]) -> Vec<u64> {
    let n = weights.len();
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = if i == 0 {
                        (j == 0) as i64
                    } else {
                        (j == i) as i64 - (j == 0) as i64
                    };
                    BigInt::from(v)
                })
                .collect()
        })
        .collect();
    let e = IntMatrix::from_rows(&rows).expect("square");
    let w: Vec<BigInt> = weights.iter().map(|&a| BigInt::from(a)).collect();
    let dd = BigInt::from(d);
    (0..n)
        .map(|i| {
            let s: BigInt = (0..n).map(|j| &e[(i, j)] * &w[j]).sum();
            let r = ((s % &dd) + &dd) % &dd;
            u64::try_from(r).expect("reduced mod d")
        })
        .collect()
}

/// The generator ζ_n·I of Z_n acts on the first blow-up chart as the
/// pseudo-reflection (ζ_n, 1, …, 1): the number of chart coordinates it
/// fixes is compared against n − 1.
pub fn pseudo_reflection_certificate(g: &MatrixGroup) -> Result<CheckResult> {
    let n = g.dim();
    if !contains_center(g, n) {
        return Err(Error::input(format!("{} does not contain the scalar group Z_{n}", g.name())));
    }
    let w = chart_weights(n as u64, &vec![1; n]);
    let fixed = w.iter().filter(|&&a| a == 0).count();
    let first_ok = w[0] == 1;
    let cert = json!({ "chart_weights": w, "denominator": n });
    Ok(CheckResult::new(
        "pseudo-reflection",
        g.name(),
        Side::ints([fixed, first_ok as usize]),
        Side::ints([n - 1, 1]),
        cert,
    ))
}
