//! Crepant terminalization of Gorenstein canonical cones by stellar
//! subdivision at every height-one lattice point, plus the verifiers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::Classification;
use crate::linalg::{rational_string, IntMatrix, Rational};
use crate::toric::{BoxPoint, Fan, QuotientCone, SimplicialCone};

/// Replace every cone containing `ray` by the cones joining `ray` to the
/// facets of that cone not containing it. Cones not containing the ray are
/// untouched; an existing ray leaves the fan unchanged.
pub fn stellar_subdivide(fan: &Fan, ray: &[BigInt]) -> Result<Fan> {
    let mut cache = (0..fan.cones.len()).map(|k| fan.simplicial(k)).collect::<Result<Vec<_>>>()?;
    let mut out = fan.clone();
    subdivide_in_place(&mut out, &mut cache, ray)?;
    Ok(out)
}

/// Stellar subdivision keeping `cache[k]` equal to the k-th cone.
fn subdivide_in_place(fan: &mut Fan, cache: &mut Vec<SimplicialCone>, ray: &[BigInt]) -> Result<()> {
    if ray.len() != fan.dim {
        return Err(Error::shape("ray dimension differs from the fan"));
    }
    if fan.rays.iter().any(|r| r.as_slice() == ray) {
        return Ok(());
    }
    let content = ray.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
    if !content.is_one() {
        return Err(Error::input("subdivision ray is not primitive"));
    }
    let new_index = fan.rays.len();
    let mut cones = Vec::with_capacity(fan.cones.len() + fan.dim);
    let mut simplices = Vec::with_capacity(cones.capacity());
    let mut hit = false;
    for (c, sc) in fan.cones.iter().zip(cache.drain(..)) {
        let bary = sc.barycentric(ray);
        if bary.iter().any(Signed::is_negative) {
            cones.push(c.clone());
            simplices.push(sc);
            continue;
        }
        hit = true;
        for (i, b) in bary.iter().enumerate() {
            if b.is_positive() {
                let mut nc = c.clone();
                nc[i] = new_index;
                let mut rows = sc.rays.row_vecs();
                rows[i] = ray.to_vec();
                simplices.push(SimplicialCone::new(IntMatrix::from_rows(&rows)?)?);
                cones.push(nc);
            }
        }
    }
    if !hit {
        return Err(Error::input("subdivision ray lies outside the support of the fan"));
    }
    fan.rays.push(ray.to_vec());
    fan.cones = cones;
    *cache = simplices;
    Ok(())
}

/// Output of [`terminalize`] together with its verification flags.
#[derive(Clone, Debug)]
pub struct Terminalization {
    pub input: QuotientCone,
    pub fan: Fan,
    /// Junior points in insertion order.
    pub inserted: Vec<BoxPoint>,
    pub multiplicities: Vec<BigInt>,
    pub crepant: bool,
    pub terminal: bool,
    pub smooth: bool,
    pub volume_conserved: bool,
    pub faces_compatible: bool,
}

impl Terminalization {
    /// Evaluate all verifiers on an arbitrary fan refining `input`.
    pub fn from_fan(input: QuotientCone, fan: Fan, inserted: Vec<BoxPoint>) -> Result<Self> {
        let cones = (0..fan.cones.len()).map(|k| fan.simplicial(k)).collect::<Result<Vec<_>>>()?;
        let multiplicities = cones.iter().map(SimplicialCone::multiplicity).collect();
        let mut t = Terminalization {
            input,
            fan,
            inserted,
            multiplicities,
            crepant: false,
            terminal: false,
            smooth: false,
            volume_conserved: false,
            faces_compatible: false,
        };
        t.crepant = verify_crepant(&t);
        t.terminal = cones.iter().all(|c| c.classify(t.input.height_form()).is_terminal());
        t.smooth = smoothness_check(&t);
        t.volume_conserved = verify_volume_conservation(&t);
        t.faces_compatible = verify_face_compatibility(&t);
        Ok(t)
    }

    pub fn multiplicity_sum(&self) -> BigInt {
        self.multiplicities.iter().fold(BigInt::zero(), |a, b| a + b)
    }

    pub fn all_verified(&self) -> bool {
        self.crepant && self.terminal && self.volume_conserved && self.faces_compatible
    }

    /// Output rays are exactly the input rays and the junior points.
    pub fn vertex_set_matches(&self) -> bool {
        let mut expected: Vec<Vec<BigInt>> = self.input.rays();
        expected.extend(self.input.junior_points().into_iter().map(|p| p.coords));
        expected.sort();
        let mut got = self.fan.rays.clone();
        got.sort();
        got == expected
    }
}

/// Insert every junior point, in lexicographic order, by stellar subdivision.
pub fn terminalize(cone: &QuotientCone) -> Result<Terminalization> {
    if !cone.is_gorenstein() {
        return Err(Error::NotGorenstein);
    }
    let one = Rational::one();
    let points = cone.box_points();
    if let Some(low) = points.iter().find(|p| !p.is_origin() && p.height < one) {
        return Err(Error::NotCanonical {
            height: rational_string(&low.height),
        });
    }
    let junior: Vec<BoxPoint> = points.into_iter().filter(|p| p.height == one).collect();
    let mut fan = Fan::from_cone(cone.cone());
    let mut cache = vec![cone.cone().clone()];
    for p in &junior {
        subdivide_in_place(&mut fan, &mut cache, &p.coords)?;
    }
    Terminalization::from_fan(cone.clone(), fan.canonical(), junior)
}

fn ray_height(t: &Terminalization, ray: &[BigInt]) -> Rational {
    ray.iter()
        .zip(t.input.height_form())
        .fold(Rational::zero(), |acc, (c, m)| acc + m * Rational::from_integer(c.clone()))
}

/// Every output ray lies on the height-one hyperplane.
pub fn verify_crepant(t: &Terminalization) -> bool {
    let one = Rational::one();
    t.fan.rays.iter().all(|r| ray_height(t, r) == one)
}

/// Every maximal cone is smooth or terminal.
pub fn verify_terminal(t: &Terminalization) -> bool {
    (0..t.fan.cones.len()).all(|k| {
        t.fan
            .simplicial(k)
            .map(|c| c.classify(t.input.height_form()).is_terminal())
            .unwrap_or(false)
    })
}

/// Σ output multiplicities equals the input multiplicity.
pub fn verify_volume_conservation(t: &Terminalization) -> bool {
    t.multiplicity_sum() == t.input.multiplicity()
}

/// All output cones have multiplicity one.
pub fn smoothness_check(t: &Terminalization) -> bool {
    t.multiplicities.iter().all(One::is_one)
}

/// The cones form a triangulation of the input cone: every ray lies in the
/// input cone, each interior facet is shared by exactly two cones lying on
/// opposite sides of it, and each unshared facet lies on the boundary.
/// Together with volume conservation this certifies a degree-one cover.
pub fn verify_face_compatibility(t: &Terminalization) -> bool {
    let outer = t.input.cone();
    let bary: Vec<Vec<Rational>> = t.fan.rays.iter().map(|r| outer.barycentric(r)).collect();
    if bary.iter().flatten().any(Signed::is_negative) {
        return false;
    }
    let n = t.fan.dim;
    let mut facets: BTreeMap<Vec<usize>, Vec<i8>> = BTreeMap::new();
    for c in &t.fan.cones {
        if c.len() != n {
            return false;
        }
        for drop in 0..n {
            let mut f: Vec<usize> = c.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &r)| r).collect();
            f.sort_unstable();
            let mut rows: Vec<Vec<BigInt>> = f.iter().map(|&r| t.fan.rays[r].clone()).collect();
            rows.push(t.fan.rays[c[drop]].clone());
            let det = IntMatrix::from_rows(&rows).and_then(|m| m.det()).unwrap_or_default();
            if det.is_zero() {
                return false;
            }
            facets.entry(f).or_default().push(if det.is_positive() { 1 } else { -1 });
        }
    }
    facets.iter().all(|(f, sides)| match sides.as_slice() {
        [a, b] => a != b,
        [_] => (0..n).any(|i| f.iter().all(|&r| bary[r][i].is_zero())),
        _ => false,
    })
}

/// Classification of each output cone, in cone order.
pub fn cone_classes(t: &Terminalization) -> Vec<Classification> {
    (0..t.fan.cones.len())
        .map(|k| {
            t.fan
                .simplicial(k)
                .map(|c: SimplicialCone| c.classify(t.input.height_form()))
                .unwrap_or(Classification::NotCanonical)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::quotient_lattice;

    fn cone(s: &str) -> QuotientCone {
        quotient_lattice(&s.parse().unwrap()).unwrap()
    }

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn minus_identity_is_left_alone() {
        let t = terminalize(&cone("1/2(1,1,1,1)")).unwrap();
        assert!(t.inserted.is_empty());
        assert_eq!(t.fan.cones.len(), 1);
        assert!(t.terminal && t.crepant && t.volume_conserved && t.faces_compatible);
        assert!(!t.smooth);
    }

    #[test]
    fn one_third_gives_three_smooth_cones() {
        let t = terminalize(&cone("1/3(1,1,1)")).unwrap();
        assert_eq!(t.inserted.len(), 1);
        assert_eq!(t.fan.rays.len(), 4);
        assert_eq!(t.fan.cones.len(), 3);
        assert_eq!(t.multiplicity_sum(), BigInt::from(3));
        assert!(t.smooth && t.all_verified() && t.vertex_set_matches());
    }

    #[test]
    fn one_sixth_full_triangulation() {
        let t = terminalize(&cone("1/6(1,2,3)")).unwrap();
        assert_eq!(t.inserted.len(), 4);
        assert_eq!(t.fan.rays.len(), 7);
        assert!(t.multiplicities.iter().all(One::is_one));
        assert_eq!(t.multiplicity_sum(), BigInt::from(6));
        assert!(t.all_verified());
    }

    #[test]
    fn partial_subdivision_is_not_terminal() {
        let c = cone("1/6(1,2,3)");
        let junior = c.junior_points();
        let mut fan = Fan::from_cone(c.cone());
        for p in &junior[..2] {
            fan = stellar_subdivide(&fan, &p.coords).unwrap();
        }
        let t = Terminalization::from_fan(c, fan, junior[..2].to_vec()).unwrap();
        assert!(!t.terminal);
        assert!(t.volume_conserved && t.crepant);
    }

    #[test]
    fn height_two_ray_is_not_crepant() {
        let c = cone("1/2(1,1,1,1)");
        let p = c.box_points().into_iter().find(|p| !p.is_origin()).unwrap();
        let fan = stellar_subdivide(&Fan::from_cone(c.cone()), &p.coords).unwrap();
        let t = Terminalization::from_fan(c, fan, vec![]).unwrap();
        assert!(!t.crepant);
    }

    #[test]
    fn smooth_plane_cone_split() {
        let f = Fan::new(2, vec![b(&[1, 0]), b(&[0, 1])], vec![vec![0, 1]]).unwrap();
        let g = stellar_subdivide(&f, &b(&[1, 1])).unwrap();
        assert_eq!(g.cones.len(), 2);
        assert!(g.multiplicities().unwrap().iter().all(One::is_one));
        assert_eq!(stellar_subdivide(&g, &b(&[1, 1])).unwrap(), g);
        assert!(stellar_subdivide(&f, &b(&[-1, 1])).is_err());
    }

    #[test]
    fn non_canonical_and_non_gorenstein_rejected() {
        assert!(matches!(terminalize(&cone("1/5(1,1,1)")), Err(Error::NotGorenstein)));
    }
}
