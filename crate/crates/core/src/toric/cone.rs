//! Simplicial cones in an overlattice N ⊇ Z^n and their box points.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::{joint_eigenspaces, Classification, DiagSpec, MatrixGroup};
use crate::linalg::{rational_string, CyclotomicScalar, FieldMatrix, IntMatrix, Rational};

/// A point of N in the half-open parallelepiped spanned by a cone's rays.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoxPoint {
    /// Coordinates in the N-basis.
    pub coords: Vec<BigInt>,
    /// Coefficients along the rays, each in [0, 1).
    pub barycentric: Vec<Rational>,
    /// Value of the Gorenstein form.
    pub height: Rational,
}

impl BoxPoint {
    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// Simplicial cone spanned by the rows of `rays` (N-basis coordinates).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialCone {
    pub rays: IntMatrix,
    det: BigInt,
    adj: IntMatrix,
}

impl SimplicialCone {
    pub fn new(rays: IntMatrix) -> Result<Self> {
        if !rays.is_square() {
            return Err(Error::input("simplicial cone needs as many rays as the dimension"));
        }
        let det = rays.det()?;
        if det.is_zero() {
            return Err(Error::input("rays are linearly dependent"));
        }
        let adj = rays.adjugate()?;
        Ok(SimplicialCone { rays, det, adj })
    }

    pub fn dim(&self) -> usize {
        self.rays.rows()
    }

    /// |det| of the ray matrix: the index of the ray sublattice in N.
    pub fn multiplicity(&self) -> BigInt {
        self.det.abs()
    }

    /// Coefficients of `x` along the rays: (x · adj(R)) / det(R).
    pub fn barycentric(&self, x: &[BigInt]) -> Vec<Rational> {
        let n = self.dim();
        (0..n)
            .map(|j| {
                let num: BigInt = (0..n).map(|i| &x[i] * &self.adj[(i, j)]).sum();
                Rational::new(num, self.det.clone())
            })
            .collect()
    }

    /// All box points with heights under the functional `height` (values
    /// on the N-basis), enumerated from the Smith form of the ray matrix
    /// and sorted by barycentric coordinates.
    pub fn box_points(&self, height: &[Rational]) -> Vec<BoxPoint> {
        let n = self.dim();
        let snf = self.rays.smith_normal_form();
        let right = &snf.right;
        let rdet = right.det().expect("square");
        // right is unimodular, so its inverse is ±adj(right)
        let mut right_inv = right.adjugate().expect("square");
        if rdet.is_negative() {
            for i in 0..n {
                for j in 0..n {
                    right_inv[(i, j)] = -&right_inv[(i, j)];
                }
            }
        }
        let d: Vec<BigInt> = (0..n).map(|i| snf.diag[(i, i)].abs()).collect();
        let det = &self.det;
        let adj = &self.adj;
        let abs_det = det.abs();
        let mut out = Vec::new();
        let mut residue = vec![BigInt::zero(); n];
        loop {
            // coset representative x = residue · right⁻¹
            let x: Vec<BigInt> = (0..n)
                .map(|j| (0..n).map(|i| &residue[i] * &right_inv[(i, j)]).sum())
                .collect();
            // reduce into the parallelepiped: fractional parts of x·R⁻¹
            let fr: Vec<BigInt> = (0..n)
                .map(|j| {
                    let num: BigInt = (0..n).map(|i| &x[i] * &adj[(i, j)]).sum();
                    let num = if det.is_negative() { -num } else { num };
                    num.mod_floor(&abs_det)
                })
                .collect();
            let coords: Vec<BigInt> = (0..n)
                .map(|k| {
                    let s: BigInt = (0..n).map(|j| &fr[j] * &self.rays[(j, k)]).sum();
                    debug_assert!((&s % &abs_det).is_zero());
                    s / &abs_det
                })
                .collect();
            let barycentric: Vec<Rational> = fr.iter().map(|f| Rational::new(f.clone(), abs_det.clone())).collect();
            let h = coords
                .iter()
                .zip(height)
                .fold(Rational::zero(), |acc, (c, m)| acc + m * Rational::from_integer(c.clone()));
            out.push(BoxPoint {
                coords,
                barycentric,
                height: h,
            });
            // odometer over the invariant factors
            let mut k = 0;
            loop {
                if k == n {
                    out.sort_by(|a, b| a.barycentric.cmp(&b.barycentric));
                    return out;
                }
                residue[k] += 1;
                if residue[k] < d[k] {
                    break;
                }
                residue[k] = BigInt::zero();
                k += 1;
            }
        }
    }

    /// Classification from box-point heights.
    pub fn classify(&self, height: &[Rational]) -> Classification {
        if self.multiplicity().is_one() {
            return Classification::Smooth;
        }
        let pts = self.box_points(height);
        if pts.iter().any(|p| !p.height.is_integer()) {
            return Classification::NotGorenstein;
        }
        let one = Rational::one();
        let nonzero = pts.iter().filter(|p| !p.is_origin());
        let mut min: Option<&Rational> = None;
        for p in nonzero {
            if min.map_or(true, |m| p.height < *m) {
                min = Some(&p.height);
            }
        }
        match min {
            None => Classification::Smooth,
            Some(h) if *h > one => Classification::Terminal,
            Some(h) if *h == one => Classification::CanonicalNotTerminal,
            Some(_) => Classification::NotCanonical,
        }
    }
}

/// The positive orthant in the overlattice N = Z^n + Σ Z·a/d of an abelian
/// diagonal action.
#[derive(Clone, Debug)]
pub struct QuotientCone {
    n: usize,
    /// Rows of `basis / denom` form a basis of N in standard coordinates.
    basis: IntMatrix,
    denom: BigInt,
    /// Primitive ray generators in the N-basis.
    cone: SimplicialCone,
    /// Ray i is e_i / ray_scale[i].
    ray_scale: Vec<BigInt>,
    /// Gorenstein form evaluated on the N-basis.
    height: Vec<Rational>,
    generators: Vec<DiagSpec>,
    pub notes: Vec<String>,
}

impl QuotientCone {
    /// Cone for the group generated by the given diagonal actions.
    pub fn from_generators(n: usize, generators: &[DiagSpec]) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("dimension must be positive"));
        }
        if generators.iter().any(|g| g.dim() != n) {
            return Err(Error::shape("diagonal generators of different dimension"));
        }
        let mut notes = Vec::new();
        for g in generators {
            let k = g.degeneracy();
            if k > 1 {
                let eff: Vec<String> = g.exponents.iter().map(|a| (a / k).to_string()).collect();
                notes.push(format!(
                    "{g} acts with kernel of order {k}; effective quotient 1/{}({})",
                    g.d / k,
                    eff.join(",")
                ));
            }
        }
        let denom = generators.iter().fold(BigInt::one(), |acc, g| acc.lcm(&BigInt::from(g.d)));
        let mut rows: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { denom.clone() } else { BigInt::zero() }).collect())
            .collect();
        for g in generators {
            let s = &denom / BigInt::from(g.d);
            rows.push(g.exponents.iter().map(|&a| &s * BigInt::from(a)).collect());
        }
        let (h, _) = IntMatrix::from_rows(&rows)?.hermite_normal_form();
        let r = h.rows();
        let basis_rows: Vec<Vec<BigInt>> = (r - n..r).map(|i| h.row(i).to_vec()).collect();
        let basis = IntMatrix::from_rows(&basis_rows)?;
        let bdet = basis.det()?;
        let badj = basis.adjugate()?;
        // N-coordinates of e_i: row i of denom · basis⁻¹ = denom · adj / det
        let mut ray_rows = Vec::with_capacity(n);
        let mut ray_scale = Vec::with_capacity(n);
        for i in 0..n {
            let v: Vec<BigInt> = (0..n)
                .map(|j| {
                    let num = &denom * &badj[(i, j)];
                    debug_assert!((&num % &bdet).is_zero());
                    num / &bdet
                })
                .collect();
            let content = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            ray_rows.push(v.iter().map(|x| x / &content).collect::<Vec<_>>());
            ray_scale.push(content);
        }
        let cone = SimplicialCone::new(IntMatrix::from_rows(&ray_rows)?)?;
        if ray_scale.iter().any(|k| !k.is_one()) {
            notes.push("action contains pseudo-reflections; rays rescaled to primitive generators".into());
        }
        // m = Σ k_i e_i^*; on basis vector b_j: Σ_l k_l b_jl / denom
        let height = (0..n)
            .map(|j| {
                let s: BigInt = (0..n).map(|l| &ray_scale[l] * &basis[(j, l)]).sum();
                Rational::new(s, denom.clone())
            })
            .collect();
        Ok(QuotientCone {
            n,
            basis,
            denom,
            cone,
            ray_scale,
            height,
            generators: generators.to_vec(),
            notes,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn cone(&self) -> &SimplicialCone {
        &self.cone
    }

    pub fn rays(&self) -> Vec<Vec<BigInt>> {
        self.cone.rays.row_vecs()
    }

    /// k_i with ray i equal to e_i / k_i; all ones unless the action has pseudo-reflections.
    pub fn ray_scales(&self) -> &[BigInt] {
        &self.ray_scale
    }

    pub fn height_form(&self) -> &[Rational] {
        &self.height
    }

    pub fn generators(&self) -> &[DiagSpec] {
        &self.generators
    }

    /// Basis of N as rational row vectors in standard coordinates.
    pub fn lattice_basis(&self) -> Vec<Vec<Rational>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| Rational::new(self.basis[(i, j)].clone(), self.denom.clone()))
                    .collect()
            })
            .collect()
    }

    /// Standard coordinates of a point given in the N-basis.
    pub fn to_standard(&self, coords: &[BigInt]) -> Vec<Rational> {
        (0..self.n)
            .map(|j| {
                let s: BigInt = (0..self.n).map(|i| &coords[i] * &self.basis[(i, j)]).sum();
                Rational::new(s, self.denom.clone())
            })
            .collect()
    }

    pub fn is_gorenstein(&self) -> bool {
        self.height.iter().all(Rational::is_integer)
    }

    pub fn multiplicity(&self) -> BigInt {
        self.cone.multiplicity()
    }

    pub fn box_points(&self) -> Vec<BoxPoint> {
        self.cone.box_points(&self.height)
    }

    /// Box points of height exactly one, in lexicographic order of their
    /// coefficients along the rays.
    pub fn junior_points(&self) -> Vec<BoxPoint> {
        let one = Rational::one();
        self.box_points().into_iter().filter(|p| p.height == one).collect()
    }

    pub fn classify(&self) -> Classification {
        if !self.is_gorenstein() {
            return Classification::NotGorenstein;
        }
        self.cone.classify(&self.height)
    }

    /// Multiplicity as a machine integer (desk-scale cones only).
    pub fn multiplicity_u64(&self) -> u64 {
        self.multiplicity().to_u64().expect("multiplicity fits in u64")
    }
}

/// Cone of the cyclic quotient 1/d(a₁,…,a_n).
pub fn quotient_lattice(spec: &DiagSpec) -> Result<QuotientCone> {
    QuotientCone::from_generators(spec.dim(), std::slice::from_ref(spec))
}

/// |det| of a simplicial cone's ray generators.
pub fn cone_multiplicity(cone: &SimplicialCone) -> BigInt {
    cone.multiplicity()
}

/// Simultaneously diagonalize an abelian group and build its cone.
pub fn abelianize(g: &MatrixGroup) -> Result<QuotientCone> {
    if !g.is_abelian() {
        return Err(Error::NonAbelian);
    }
    let n = g.dim();
    let gens: Vec<_> = g.generators().iter().map(|&i| g.element(i).clone()).collect();
    if gens.is_empty() {
        return quotient_lattice(&DiagSpec::new(1, &vec![0; n])?);
    }
    let mut basis: Vec<Vec<_>> = if gens.iter().all(FieldMatrix::is_diagonal) {
        let m = g.conductor();
        (0..n)
            .map(|i| (0..n).map(|j| CyclotomicScalar::from_int(m, (i == j) as i64)).collect())
            .collect()
    } else {
        let pieces = joint_eigenspaces(&gens, g.order() as u64)?;
        pieces.iter().flat_map(|p| p.basis().to_vec()).collect()
    };
    // order eigenvectors by their leading coordinate so diagonal groups keep their axes
    basis.sort_by_key(|v| v.iter().position(|c| !c.is_zero()));
    let mut specs = Vec::new();
    for x in &gens {
        let r = crate::group::eigen_profile(x, g.order() as u64)?.order;
        let mut exps = Vec::with_capacity(n);
        for v in &basis {
            let l = num_integer::lcm(x.conductor(), v[0].conductor());
            let vv: Vec<_> = v.iter().map(|c| c.promote(l)).collect();
            let img = x.promote(l).apply(&vv);
            let p = v.iter().position(|c| !c.is_zero()).expect("nonzero eigenvector");
            let lambda = (&img[p] * &vv[p].inv().expect("nonzero"))
                .as_root_of_unity()
                .ok_or_else(|| Error::Internal("eigenvalue is not a root of unity".into()))?;
            exps.push(lambda.exponent_mod(r).expect("eigenvalue order divides element order") as i64);
        }
        specs.push(DiagSpec::new(r as i64, &exps)?);
    }
    QuotientCone::from_generators(n, &specs)
}

/// Rational vector as strings "p/q".
pub fn rational_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational_string).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(s: &str) -> QuotientCone {
        quotient_lattice(&s.parse().unwrap()).unwrap()
    }

    fn heights(c: &QuotientCone) -> Vec<String> {
        let mut h: Vec<String> = c.box_points().iter().map(|p| rational_string(&p.height)).collect();
        h.sort();
        h
    }

    #[test]
    fn multiplicities() {
        assert_eq!(cone("1/1(0,0)").multiplicity(), BigInt::one());
        assert_eq!(cone("1/2(1,1)").multiplicity(), BigInt::from(2));
        assert_eq!(cone("1/6(1,2,3)").multiplicity(), BigInt::from(6));
    }

    #[test]
    fn box_heights() {
        assert_eq!(heights(&cone("1/2(1,1,1,1)")), vec!["0", "2"]);
        assert_eq!(heights(&cone("1/6(1,2,3)")), vec!["0", "1", "1", "1", "1", "2"]);
        assert_eq!(cone("1/1(0,0,0)").box_points().len(), 1);
    }

    #[test]
    fn junior_points_of_one_third() {
        let c = cone("1/3(1,1,1)");
        let j = c.junior_points();
        assert_eq!(j.len(), 1);
        let third = Rational::new(1.into(), 3.into());
        assert_eq!(c.to_standard(&j[0].coords), vec![third.clone(), third.clone(), third]);
        assert_eq!(cone("1/6(1,2,3)").junior_points().len(), 4);
        assert!(cone("1/2(1,1,1,1)").junior_points().is_empty());
    }

    #[test]
    fn classification() {
        assert_eq!(cone("1/1(0,0,0)").classify(), Classification::Smooth);
        assert_eq!(cone("1/2(1,1,1,1)").classify(), Classification::Terminal);
        assert_eq!(cone("1/3(1,1,1)").classify(), Classification::CanonicalNotTerminal);
        assert_eq!(cone("1/5(1,1,1)").classify(), Classification::NotGorenstein);
    }

    #[test]
    fn degenerate_generator_is_noted() {
        let c = cone("1/6(2,2,2)");
        assert_eq!(c.multiplicity(), BigInt::from(3));
        assert_eq!(c.notes.len(), 1);
    }

    #[test]
    fn pseudo_reflection_gives_smooth_cone() {
        let c = cone("1/2(1,0)");
        assert_eq!(c.multiplicity(), BigInt::one());
        assert!(c.is_gorenstein());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(DiagSpec::new(0, &[1, 2]).is_err());
    }
}
