//! Independent brute-force oracles against the library.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use quotsing_core::group::named::{f21, f21_with_center, q8};
use quotsing_core::group::{
    dhvw_euler_linear, reid_tai_classify, weight_one_class_count, Classification, DiagSpec, GroupSpec,
};
use quotsing_core::resolve::terminalize;
use quotsing_core::toric::{abelianize, quotient_lattice};
use quotsing_core::{FieldMatrix, MatrixGroup};

/// Ages of 1/d(a): age(k) = Σ ((k·aᵢ) mod d) / d, kept as numerators over d.
fn age_numerators(d: u64, a: &[u64]) -> Vec<u64> {
    (0..d).map(|k| a.iter().map(|&x| (k * x) % d).sum()).collect()
}

fn effective(d: u64, a: &[u64]) -> u64 {
    d / a.iter().fold(d, |g, &x| g.gcd(&x))
}

struct CyclicOracle {
    order: u64,
    junior: usize,
    classification: Classification,
}

fn cyclic_oracle(d: u64, a: &[u64]) -> CyclicOracle {
    let e = effective(d, a);
    // the kernel of the action repeats each element d/e times
    let ages: Vec<u64> = age_numerators(d, a).into_iter().take(e as usize).collect();
    let nontrivial = &ages[1..];
    let junior = nontrivial.iter().filter(|&&s| s == d).count();
    let classification = if nontrivial.iter().any(|&s| s % d != 0) {
        Classification::NotGorenstein
    } else if junior == 0 {
        Classification::Terminal
    } else {
        Classification::CanonicalNotTerminal
    };
    CyclicOracle {
        order: e,
        junior,
        classification,
    }
}

fn sl_specs(n: usize, max_d: u64) -> Vec<(u64, Vec<u64>)> {
    let mut out = Vec::new();
    for d in 1..=max_d {
        let mut v = vec![0u64; n];
        'outer: loop {
            if v.iter().sum::<u64>() % d == 0 {
                out.push((d, v.clone()));
            }
            for k in (0..n).rev() {
                v[k] += 1;
                if v[k] < d {
                    continue 'outer;
                }
                v[k] = 0;
            }
            break;
        }
    }
    out
}

fn spec_of(d: u64, a: &[u64]) -> GroupSpec {
    let a: Vec<i64> = a.iter().map(|&x| x as i64).collect();
    GroupSpec::from_diag(&DiagSpec::new(d as i64, &a).unwrap())
}

#[test]
fn cyclic_sl3_against_age_oracle() {
    for (d, a) in sl_specs(3, 12) {
        let o = cyclic_oracle(d, &a);
        let g = MatrixGroup::closure(&spec_of(d, &a), 1000).unwrap();
        assert_eq!(g.order() as u64, o.order, "1/{d}{a:?}");
        assert_eq!(g.class_count() as u64, o.order);
        assert_eq!(weight_one_class_count(&g), o.junior, "1/{d}{a:?}");
        assert_eq!(reid_tai_classify(&g).classification, o.classification, "1/{d}{a:?}");
        let cone = abelianize(&g).unwrap();
        assert_eq!(cone.junior_points().len(), o.junior);
        assert_eq!(cone.multiplicity(), BigInt::from(o.order));
    }
}

#[test]
fn cyclic_sl4_box_heights_match_ages() {
    for (d, a) in sl_specs(4, 7) {
        let e = effective(d, &a);
        let mut ages: Vec<u64> = age_numerators(d, &a).into_iter().take(e as usize).collect();
        ages.sort_unstable();
        let diag = DiagSpec::new(d as i64, &a.iter().map(|&x| x as i64).collect::<Vec<_>>()).unwrap();
        let cone = quotient_lattice(&diag).unwrap();
        let mut heights: Vec<u64> = cone
            .box_points()
            .iter()
            .map(|p| {
                let h = &p.height * BigInt::from(d);
                assert!(h.is_integer());
                u64::try_from(h.to_integer()).unwrap()
            })
            .collect();
        heights.sort_unstable();
        assert_eq!(heights, ages, "1/{d}{a:?}");
    }
}

#[test]
fn terminalization_ray_count_matches_oracle() {
    for (d, a) in sl_specs(3, 10) {
        let o = cyclic_oracle(d, &a);
        let cone = quotient_lattice(&DiagSpec::new(d as i64, &a.iter().map(|&x| x as i64).collect::<Vec<_>>()).unwrap())
            .unwrap();
        let t = terminalize(&cone).unwrap();
        assert_eq!(t.fan.rays.len(), 3 + o.junior);
        assert!(t.multiplicities.iter().all(One::is_one), "1/{d}{a:?}");
    }
}

/// Naive closure: multiply everything by everything until nothing new appears.
fn naive_closure(gens: &[FieldMatrix]) -> Vec<FieldMatrix> {
    let n = gens[0].rows();
    let mut set: HashSet<FieldMatrix> = HashSet::new();
    set.insert(FieldMatrix::identity(n, gens[0].conductor()));
    set.extend(gens.iter().cloned());
    loop {
        let cur: Vec<FieldMatrix> = set.iter().cloned().collect();
        let before = set.len();
        for x in &cur {
            for y in &cur {
                set.insert(x.mul_sq(y));
            }
        }
        if set.len() == before {
            return cur;
        }
    }
}

fn naive_class_count(elems: &[FieldMatrix]) -> usize {
    let mut seen: HashSet<FieldMatrix> = HashSet::new();
    let mut classes = 0;
    for x in elems {
        if seen.contains(x) {
            continue;
        }
        classes += 1;
        for h in elems {
            let hi = h.inverse().unwrap();
            seen.insert(h.mul_sq(x).mul_sq(&hi));
        }
    }
    classes
}

#[test]
fn nonabelian_closure_and_classes_against_naive() {
    for (spec, order, classes) in [(q8(), 8, 5), (f21(), 21, 5), (f21_with_center(), 84, 20)] {
        let naive = naive_closure(&spec.generators);
        assert_eq!(naive.len(), order, "{}", spec.name);
        assert_eq!(naive_class_count(&naive), classes, "{}", spec.name);
        let g = MatrixGroup::closure(&spec, 1000).unwrap();
        assert_eq!(g.order(), order);
        assert_eq!(g.class_count(), classes);
        let e = dhvw_euler_linear(&g);
        assert!(e.burnside_ok);
        assert_eq!(e.value, classes);
    }
}

/// Frozen values from the oracles above for a few named cases.
#[test]
fn frozen_small_instances() {
    let cases: [(&str, usize, usize, &str); 6] = [
        ("1/2(1,1,1,1)", 2, 0, "terminal"),
        ("1/3(1,1,1)", 3, 1, "canonical_not_terminal"),
        ("1/6(1,2,3)", 6, 4, "canonical_not_terminal"),
        ("1/5(1,2,3,4)", 5, 0, "terminal"),
        ("1/5(1,1,1,2)", 5, 1, "canonical_not_terminal"),
        ("1/7(1,2,4)", 7, 3, "canonical_not_terminal"),
    ];
    for (s, order, junior, class) in cases {
        let spec = GroupSpec::parse_diag(s).unwrap();
        let d: DiagSpec = s.parse().unwrap();
        let o = cyclic_oracle(d.d, &d.exponents);
        assert_eq!((o.order as usize, o.junior, o.classification.as_str()), (order, junior, class), "{s}");
        let g = MatrixGroup::closure(&spec, 100).unwrap();
        assert_eq!(g.order(), order, "{s}");
        assert_eq!(weight_one_class_count(&g), junior, "{s}");
        assert_eq!(reid_tai_classify(&g).classification.as_str(), class, "{s}");
    }
}
