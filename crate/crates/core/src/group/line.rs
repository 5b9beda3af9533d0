//! Invariant lines, their stabilizers, cyclic quotients and the rescaled
//! complementary group.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::matrix_group::MatrixGroup;
use super::spec::GroupSpec;
use crate::error::{Error, Result};
use crate::linalg::{CyclotomicScalar, FieldMatrix, RootOfUnity, Subspace};

/// Subgroup generated by `gens`, as sorted element indices.
pub fn generated_subgroup(g: &MatrixGroup, gens: &[usize]) -> Vec<usize> {
    let mut seen: HashSet<usize> = HashSet::from([g.identity()]);
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<usize> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// Greedy generating set of a subgroup: scan members in order, keep each
/// one not yet generated.
pub fn generating_set(g: &MatrixGroup, members: &[usize]) -> Result<Vec<usize>> {
    let target: HashSet<usize> = members.iter().copied().collect();
    let mut gens = Vec::new();
    let mut have: HashSet<usize> = HashSet::from([g.identity()]);
    for &x in members {
        if have.contains(&x) {
            continue;
        }
        gens.push(x);
        have = generated_subgroup(g, &gens).into_iter().collect();
        if !have.is_subset(&target) {
            return Err(Error::input("element set is not a subgroup"));
        }
    }
    if have != target {
        return Err(Error::input("element set is not a subgroup"));
    }
    Ok(gens)
}

/// Action of G on an invariant line.
#[derive(Clone, Debug, Serialize)]
pub struct LineStabilizer {
    /// Elements acting trivially on the line.
    pub members: Vec<usize>,
    /// Scalar by which each element acts on the line.
    #[serde(skip)]
    pub characters: Vec<RootOfUnity>,
    /// Order of the quotient G / stabilizer.
    pub quotient_order: usize,
    /// Least element whose line character generates the quotient.
    pub generator: usize,
    pub quotient_cyclic: bool,
}

fn line_vector(line: &Subspace) -> Result<Vec<CyclotomicScalar>> {
    if line.dim() != 1 {
        return Err(Error::input(format!("expected a line, got a subspace of dimension {}", line.dim())));
    }
    Ok(line.basis()[0].clone())
}

/// Stabilizer of the generic point of an invariant line.
pub fn generic_line_stabilizer(g: &MatrixGroup, line: &Subspace) -> Result<LineStabilizer> {
    if line.ambient() != g.dim() {
        return Err(Error::shape("line lives in a different space"));
    }
    let v = line_vector(line)?;
    let p = v.iter().position(|c| !c.is_zero()).expect("nonzero line vector");
    for &s in g.generators() {
        if !line.contains(&line_image(g.element(s), &v)) {
            return Err(Error::input("line is not invariant under the group"));
        }
    }
    let mut characters = Vec::with_capacity(g.order());
    for x in g.elements() {
        let img = line_image(x, &v);
        let chi = img[p]
            .as_root_of_unity()
            .ok_or_else(|| Error::Internal("line character is not a root of unity".into()))?;
        characters.push(chi);
    }
    let members: Vec<usize> = (0..g.order()).filter(|&i| characters[i] == RootOfUnity::one()).collect();
    let quotient_order = g.order() / members.len();
    let generator = (0..g.order())
        .find(|&i| characters[i].order() as usize == quotient_order)
        .ok_or_else(|| Error::input("quotient by the line stabilizer is not cyclic"))?;
    Ok(LineStabilizer {
        members,
        characters,
        quotient_order,
        generator,
        quotient_cyclic: true,
    })
}

fn line_image(x: &FieldMatrix, v: &[CyclotomicScalar]) -> Vec<CyclotomicScalar> {
    let l = num_integer::lcm(x.conductor(), v[0].conductor());
    let v: Vec<CyclotomicScalar> = v.iter().map(|c| c.promote(l)).collect();
    x.promote(l).apply(&v)
}

/// The coordinate line spanned by e_k.
pub fn coordinate_line(n: usize, k: usize, conductor: u64) -> Subspace {
    let e: Vec<CyclotomicScalar> = (0..n)
        .map(|i| CyclotomicScalar::from_int(conductor, (i == k) as i64))
        .collect();
    Subspace::span(n, conductor, &[e]).expect("unit vector")
}

/// Map from the classes of a cyclic quotient G/N to the G-classes above them.
#[derive(Clone, Debug, Serialize)]
pub struct ClassMap {
    pub quotient_order: usize,
    /// Least element whose coset generates G/N.
    pub generator: usize,
    /// Fiber sizes ordered by the power of the generating coset.
    pub fibers: Vec<usize>,
    /// Class ids in each fiber.
    pub fiber_classes: Vec<Vec<usize>>,
}

impl ClassMap {
    pub fn total(&self) -> usize {
        self.fibers.iter().sum()
    }
}

/// Cosets gN, numbered in order of their least element.
fn cosets(g: &MatrixGroup, normal: &[usize]) -> Vec<usize> {
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut next = 0;
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        for &n in normal {
            coset_of[g.mul(x, n)] = next;
        }
        next += 1;
    }
    coset_of
}

/// Fibers of the induced map Cl(G) → Cl(G/N) for normal N with cyclic quotient.
pub fn induced_class_map(g: &MatrixGroup, normal: &[usize]) -> Result<ClassMap> {
    generating_set(g, normal)?;
    if !g.is_normal(normal) {
        return Err(Error::input("subgroup is not normal"));
    }
    let coset_of = cosets(g, normal);
    let q = g.order() / normal.len();
    // generator: least element whose coset has order q
    let mut generator = None;
    for x in 0..g.order() {
        let chain = g.power_chain(x);
        let k = chain.iter().position(|&p| coset_of[p] == coset_of[g.identity()]).expect("identity") + 1;
        if k == q {
            generator = Some(x);
            break;
        }
    }
    let generator = generator.ok_or_else(|| Error::input("quotient group is not cyclic"))?;
    let mut power_of_coset = vec![usize::MAX; q];
    let mut cur = g.identity();
    for k in 0..q {
        power_of_coset[coset_of[cur]] = k;
        cur = g.mul(cur, generator);
    }
    let mut fiber_classes = vec![Vec::new(); q];
    for (cid, class) in g.classes().iter().enumerate() {
        fiber_classes[power_of_coset[coset_of[class[0]]]].push(cid);
    }
    let fibers: Vec<usize> = fiber_classes.iter().map(Vec::len).collect();
    debug_assert_eq!(fibers.iter().sum::<usize>(), g.class_count());
    Ok(ClassMap {
        quotient_order: q,
        generator,
        fibers,
        fiber_classes,
    })
}

/// The group on the complementary hyperplane, rescaled into SL.
#[derive(Debug)]
pub struct PrimedGroup {
    pub group: MatrixGroup,
    /// Indices in `group` of the blocks of the line stabilizer.
    pub stabilizer: Vec<usize>,
    /// Index in G of the coset generator h.
    pub h: usize,
    /// Scalar rescaling the block of h.
    pub lambda: RootOfUnity,
    /// Index in `group` of the rescaled block h′.
    pub h_prime: usize,
    /// Order of the cyclic quotient of `group` by `stabilizer`.
    pub quotient_order: usize,
    pub note: String,
}

/// Complementary block of a block-diagonal matrix.
fn complement_block(x: &FieldMatrix, k: usize) -> FieldMatrix {
    let keep: Vec<usize> = (0..x.rows()).filter(|&i| i != k).collect();
    x.submatrix(&keep, &keep)
}

fn coordinate_axis(line: &Subspace) -> Option<usize> {
    let v = &line.basis()[0];
    let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    (nz.len() == 1).then(|| nz[0])
}

pub fn primed_group(g: &MatrixGroup, line: &Subspace, max_order: usize) -> Result<PrimedGroup> {
    let stab = generic_line_stabilizer(g, line)?;
    let k = coordinate_axis(line).ok_or_else(|| Error::input("invariant line must be a coordinate axis"))?;
    let n = g.dim();
    if n < 2 {
        return Err(Error::input("need dimension at least 2"));
    }
    for &s in g.generators() {
        let x = g.element(s);
        if (0..n).any(|i| i != k && (!x[(i, k)].is_zero() || !x[(k, i)].is_zero())) {
            return Err(Error::input("group does not split as a hyperplane block plus the line"));
        }
    }
    let h = stab.generator;
    let h1 = complement_block(g.element(h), k);
    let t = (n - 1) as u64;
    let rho = h1
        .det_root()
        .ok_or_else(|| Error::Internal("block determinant is not a root of unity".into()))?
        .inverse();
    // roots of λ^t = ρ are exp(2πi (p + jq)/(qt)); j = 0 has the least index
    let lambda = RootOfUnity::new(rho.numer as i64, rho.denom * t);
    let lam = CyclotomicScalar::root_of_unity(lambda.denom, lambda).expect("root in its own field");
    let h_prime = h1.promote(num_integer::lcm(h1.conductor(), lam.conductor())).scale(&lam.promote(
        num_integer::lcm(h1.conductor(), lam.conductor()),
    ));
    let stab_gens = generating_set(g, &stab.members)?;
    let mut gens: Vec<FieldMatrix> = stab_gens.iter().map(|&s| complement_block(g.element(s), k)).collect();
    gens.push(h_prime.clone());
    let spec = GroupSpec::new(format!("{}'", g.name()), gens)?;
    let group = MatrixGroup::closure(&spec, max_order)?;
    let mut stabilizer: Vec<usize> = stab
        .members
        .iter()
        .map(|&s| group.index_of(&complement_block(g.element(s), k)).expect("generated"))
        .collect();
    stabilizer.sort_unstable();
    let h_prime = group.index_of(&h_prime).expect("generator");
    let quotient_order = group.order() / stabilizer.len();
    Ok(PrimedGroup {
        group,
        stabilizer,
        h,
        lambda,
        h_prime,
        quotient_order,
        note: format!(
            "defined up to the choice of the root lambda; chose exp(2 pi i {}/{})",
            lambda.numer, lambda.denom
        ),
    })
}
