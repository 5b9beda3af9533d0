//! Fully enumerated finite matrix groups.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use num_integer::Integer;

use super::age::EigenProfile;
use super::spec::GroupSpec;
use crate::error::{Error, Result};
use crate::linalg::{FieldMatrix, RootOfUnity};

pub const DEFAULT_MAX_ORDER: usize = 20_000;

/// A finite subgroup of GL(n, Q(ζ_m)) with every element listed.
///
/// Elements are sorted by the canonical order on reduced entries, so an
/// element index is a stable name for the element. Conjugacy classes are
/// listed by their least element.
#[derive(Debug)]
pub struct MatrixGroup {
    name: String,
    dim: usize,
    conductor: u64,
    elements: Vec<FieldMatrix>,
    index: HashMap<FieldMatrix, usize>,
    generators: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    orders: Vec<u64>,
    dets: Vec<RootOfUnity>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    abelian: bool,
    profiles: OnceLock<Vec<EigenProfile>>,
    centralizers: OnceLock<Vec<Vec<usize>>>,
}

impl MatrixGroup {
    /// Breadth-first closure of the generators under right multiplication.
    pub fn closure(spec: &GroupSpec, max_order: usize) -> Result<MatrixGroup> {
        let n = spec.dim();
        let m = spec.conductor;
        for (i, g) in spec.generators.iter().enumerate() {
            if g.det()?.is_zero() {
                return Err(Error::input(format!("generator {i} of {} is not invertible", spec.name)));
            }
        }
        let id = FieldMatrix::identity(n, m);
        let mut seen: HashSet<FieldMatrix> = HashSet::new();
        let mut list = vec![id.clone()];
        seen.insert(id);
        let mut head = 0;
        while head < list.len() {
            for s in &spec.generators {
                let y = list[head].mul_sq(s);
                if !seen.contains(&y) {
                    if list.len() >= max_order {
                        return Err(Error::GroupTooLarge {
                            limit: max_order,
                            partial: list.len() + 1,
                        });
                    }
                    seen.insert(y.clone());
                    list.push(y);
                }
            }
            head += 1;
        }
        Self::from_closed_set(spec.name.clone(), list, &spec.generators)
    }

    /// Build from a set already known to be closed, plus a generating set.
    pub fn from_closed_set(
        name: String,
        mut elements: Vec<FieldMatrix>,
        generators: &[FieldMatrix],
    ) -> Result<MatrixGroup> {
        elements.sort();
        elements.dedup();
        let dim = elements[0].rows();
        let conductor = elements[0].conductor();
        let index: HashMap<FieldMatrix, usize> =
            elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let identity = *index
            .get(&FieldMatrix::identity(dim, conductor))
            .ok_or_else(|| Error::Internal("identity missing from group".into()))?;
        let mut gens = Vec::new();
        for g in generators {
            let g = g.promote(conductor);
            let i = *index
                .get(&g)
                .ok_or_else(|| Error::Internal("generator missing from closed set".into()))?;
            if !gens.contains(&i) {
                gens.push(i);
            }
        }
        let mut group = MatrixGroup {
            name,
            dim,
            conductor,
            elements,
            index,
            generators: gens,
            identity,
            inverses: Vec::new(),
            orders: Vec::new(),
            dets: Vec::new(),
            classes: Vec::new(),
            class_of: Vec::new(),
            abelian: false,
            profiles: OnceLock::new(),
            centralizers: OnceLock::new(),
        };
        group.abelian = group.generators_commute();
        group.compute_orders();
        group.compute_dets()?;
        group.compute_classes();
        Ok(group)
    }

    /// Subgroup consisting of the given element indices (must be closed).
    pub fn subgroup(&self, name: impl Into<String>, members: &[usize]) -> Result<MatrixGroup> {
        let elems: Vec<FieldMatrix> = members.iter().map(|&i| self.elements[i].clone()).collect();
        for &a in members {
            for &b in members {
                if !members.contains(&self.mul(a, b)) {
                    return Err(Error::input("element set is not closed under multiplication"));
                }
            }
        }
        let gens = elems.clone();
        MatrixGroup::from_closed_set(name.into(), elems, &gens)
    }

    fn compute_orders(&mut self) {
        let n = self.elements.len();
        let mut orders = vec![0u64; n];
        let mut inverses = vec![usize::MAX; n];
        for i in 0..n {
            if orders[i] != 0 {
                continue;
            }
            let chain = self.power_chain(i);
            let r = chain.len() as u64;
            for (k, &p) in chain.iter().enumerate() {
                let k = k as u64 + 1;
                orders[p] = r / k.gcd(&r);
                if k == r {
                    inverses[p] = self.identity;
                } else {
                    inverses[p] = chain[(r - k - 1) as usize];
                }
            }
        }
        self.orders = orders;
        self.inverses = inverses;
    }

    fn compute_dets(&mut self) -> Result<()> {
        let mut dets = Vec::with_capacity(self.elements.len());
        for g in &self.elements {
            let d = g
                .det()?
                .as_root_of_unity()
                .ok_or_else(|| Error::Internal("determinant of a finite-order matrix is not a root of unity".into()))?;
            dets.push(d);
        }
        self.dets = dets;
        Ok(())
    }

    fn compute_classes(&mut self) {
        let n = self.elements.len();
        if self.abelian {
            self.classes = (0..n).map(|i| vec![i]).collect();
            self.class_of = (0..n).collect();
            return;
        }
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        // elements are visited in canonical order, so each class is found
        // first through its least element.
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cid = classes.len();
            let mut members = vec![start];
            class_of[start] = cid;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &s in &self.generators {
                    let y = self.conjugate(s, x);
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
        self.classes = classes;
        self.class_of = class_of;
    }

    /// Powers g, g², …, g^r = 1 of element `i`, as indices.
    pub fn power_chain(&self, i: usize) -> Vec<usize> {
        let mut chain = vec![i];
        let mut cur = i;
        while cur != self.identity {
            cur = self.mul(cur, i);
            chain.push(cur);
        }
        chain
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[FieldMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &FieldMatrix {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    pub fn element_order(&self, i: usize) -> u64 {
        self.orders[i]
    }

    pub fn det(&self, i: usize) -> RootOfUnity {
        self.dets[i]
    }

    pub fn is_special_linear(&self) -> bool {
        self.dets.iter().all(|d| *d == RootOfUnity::one())
    }

    /// Index of a matrix, after promoting it to the group's conductor.
    pub fn index_of(&self, g: &FieldMatrix) -> Option<usize> {
        if g.rows() != self.dim || !g.is_square() {
            return None;
        }
        if self.conductor % g.conductor() != 0 {
            // only elements expressible over Q(ζ_m) can be members
            let l = g.conductor().lcm(&self.conductor);
            let target = g.promote(l);
            return self
                .elements
                .iter()
                .position(|e| e.promote(l) == target);
        }
        self.index.get(&g.promote(self.conductor)).copied()
    }

    pub fn contains(&self, g: &FieldMatrix) -> bool {
        self.index_of(g).is_some()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let p = self.elements[a].mul_sq(&self.elements[b]);
        *self.index.get(&p).expect("group is closed under multiplication")
    }

    /// s · x · s⁻¹
    pub fn conjugate(&self, s: usize, x: usize) -> usize {
        if self.abelian {
            return x;
        }
        self.mul(self.mul(s, x), self.inverses[s])
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.abelian
            || self.elements[a].mul_sq(&self.elements[b]) == self.elements[b].mul_sq(&self.elements[a])
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    fn generators_commute(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&a| g.iter().all(|&b| self.commute(a, b)))
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Least element of each class.
    pub fn class_representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    /// Centralizer {h : h⁻¹gh = g} of element `g`, by direct commutation test.
    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        if self.abelian {
            return (0..self.order()).collect();
        }
        (0..self.order()).filter(|&h| self.commute(g, h)).collect()
    }

    /// Centralizer of each class representative, computed once.
    pub fn class_centralizers(&self) -> &[Vec<usize>] {
        self.centralizers.get_or_init(|| {
            self.classes.iter().map(|c| self.centralizer(c[0])).collect()
        })
    }

    /// Eigenvalue data of every class, in class order.
    pub fn profiles(&self) -> &[EigenProfile] {
        self.profiles.get_or_init(|| {
            super::age::class_profiles(self).expect("eigenvalue multiplicities of a finite group are integral")
        })
    }

    pub fn profile_of(&self, i: usize) -> &EigenProfile {
        &self.profiles()[self.class_of[i]]
    }

    /// Whether `members` is normal: closed under conjugation by generators.
    pub fn is_normal(&self, members: &[usize]) -> bool {
        let set: HashSet<usize> = members.iter().copied().collect();
        self.generators
            .iter()
            .all(|&s| members.iter().all(|&x| set.contains(&self.conjugate(s, x))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named;

    #[test]
    fn cyclic_of_order_three() {
        let g = MatrixGroup::closure(&GroupSpec::parse_diag("1/3(1,1,1)").unwrap(), 100).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.class_count(), 3);
        assert!(g.is_special_linear());
    }

    #[test]
    fn quaternion_group() {
        let q8 = MatrixGroup::closure(&named::q8(), 100).unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.class_count(), 5);
        let sizes: usize = q8.classes().iter().map(Vec::len).sum();
        assert_eq!(sizes, 8);
        for (c, cent) in q8.classes().iter().zip(q8.class_centralizers()) {
            assert_eq!(c.len() * cent.len(), 8);
        }
    }

    #[test]
    fn closure_limit_reports_partial_count() {
        let e = MatrixGroup::closure(&GroupSpec::parse_diag("1/50(1,49)").unwrap(), 10);
        assert!(matches!(e, Err(Error::GroupTooLarge { limit: 10, partial: 11 })));
    }

    #[test]
    fn singular_generator_rejected() {
        let z = FieldMatrix::from_i64(&[vec![1, 0], vec![0, 0]], 1);
        let spec = GroupSpec::new("singular", vec![z]).unwrap();
        assert!(matches!(MatrixGroup::closure(&spec, 10), Err(Error::Input(_))));
    }

    #[test]
    fn inverses_and_orders() {
        let g = MatrixGroup::closure(&named::f21(), 100).unwrap();
        for i in 0..g.order() {
            assert_eq!(g.mul(i, g.inverse(i)), g.identity());
            assert_eq!(g.power_chain(i).len() as u64, g.element_order(i));
        }
    }
}
