//! Algebraic and combinatorial invariants on random inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use quotsing_core::group::DiagSpec;
use quotsing_core::lab::{run_suite, Suite, SuiteOptions};
use quotsing_core::resolve::{stellar_subdivide, terminalize, verify_face_compatibility, Terminalization};
use quotsing_core::specfile::GroupSpecFile;
use quotsing_core::toric::{quotient_lattice, Fan};
use quotsing_core::{CyclotomicScalar, IntMatrix, Rational};

fn scalar(m: u64) -> impl Strategy<Value = CyclotomicScalar> {
    let deg = (1..=m).filter(|k| k.gcd(&m) == 1).count();
    prop::collection::vec((-9i64..=9, 1i64..=4), deg).prop_map(move |c| {
        let coeffs = c.into_iter().map(|(p, q)| Rational::new(p.into(), q.into())).collect();
        CyclotomicScalar::from_coeffs(m, coeffs).unwrap()
    })
}

fn field_triple() -> impl Strategy<Value = (CyclotomicScalar, CyclotomicScalar, CyclotomicScalar)> {
    prop::sample::select(vec![1u64, 3, 4, 5, 7, 8, 9, 12, 15]).prop_flat_map(|m| (scalar(m), scalar(m), scalar(m)))
}

/// (d, a) with Σ a ≡ 0 mod d.
fn sl_spec(n: usize, max_d: u64) -> impl Strategy<Value = DiagSpec> {
    (1..=max_d)
        .prop_flat_map(move |d| (Just(d), prop::collection::vec(0..d, n - 1)))
        .prop_map(|(d, mut a)| {
            let last = (d - a.iter().sum::<u64>() % d) % d;
            a.push(last);
            DiagSpec { d, exponents: a }
        })
}

fn effective_order(s: &DiagSpec) -> BigInt {
    BigInt::from(s.d / s.exponents.iter().fold(s.d, |g, &x| g.gcd(&x)))
}

fn int_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, n), n).prop_map(|r| IntMatrix::from_i64(&r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms((a, b, c) in field_triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn conjugation_is_a_ring_map((a, b, _c) in field_triple()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn hermite_form_is_a_unimodular_transform(m in int_matrix(3)) {
        let (h, u) = m.hermite_normal_form();
        prop_assert!(u.is_unimodular());
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        prop_assert_eq!(h.det().unwrap().abs(), m.det().unwrap().abs());
    }

    #[test]
    fn smith_form_divisibility_chain(m in int_matrix(3)) {
        let s = m.smith_normal_form();
        prop_assert_eq!(s.left.mul(&m).unwrap().mul(&s.right).unwrap(), s.diag.clone());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(f.iter().all(|x| x.is_positive()));
        let prod = f.iter().fold(BigInt::one(), |a, b| a * b);
        if f.len() == 3 {
            prop_assert_eq!(prod, m.det().unwrap().abs());
        } else {
            prop_assert!(m.det().unwrap().is_zero());
        }
    }

    #[test]
    fn diag_spec_text_round_trip(s in sl_spec(4, 30)) {
        let back: DiagSpec = s.to_string().parse().unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn sl3_terminalization_is_smooth(s in sl_spec(3, 25)) {
        let cone = quotient_lattice(&s).unwrap();
        let t = terminalize(&cone).unwrap();
        prop_assert!(t.smooth, "{}", s);
        prop_assert_eq!(t.fan.rays.len(), 3 + t.inserted.len());
        prop_assert_eq!(t.multiplicity_sum(), effective_order(&s));
        prop_assert!(t.all_verified() && t.vertex_set_matches());
        if t.inserted.is_empty() {
            prop_assert!(effective_order(&s).is_one(), "{}", s);
        }
    }

    #[test]
    fn sl4_terminalization_conserves_volume(s in sl_spec(4, 16)) {
        let cone = quotient_lattice(&s).unwrap();
        let t = terminalize(&cone).unwrap();
        prop_assert!(t.crepant && t.terminal && t.faces_compatible, "{}", s);
        prop_assert_eq!(t.multiplicity_sum(), effective_order(&s));
    }

    #[test]
    fn any_junior_prefix_stays_a_subdivision(s in sl_spec(3, 20), k in 0usize..6) {
        let cone = quotient_lattice(&s).unwrap();
        let junior = cone.junior_points();
        let k = k.min(junior.len());
        let mut fan = Fan::from_cone(cone.cone());
        for p in &junior[..k] {
            fan = stellar_subdivide(&fan, &p.coords).unwrap();
        }
        let t = Terminalization::from_fan(cone.clone(), fan, junior[..k].to_vec()).unwrap();
        prop_assert!(t.volume_conserved && t.crepant);
        prop_assert!(verify_face_compatibility(&t));
    }

    #[test]
    fn fan_text_round_trip(s in sl_spec(4, 12)) {
        let t = terminalize(&quotient_lattice(&s).unwrap()).unwrap();
        prop_assert_eq!(Fan::parse(&t.fan.to_text()).unwrap(), t.fan);
    }

    #[test]
    fn spec_file_round_trip(s in sl_spec(3, 12)) {
        let f = GroupSpecFile::parse(&format!(r#"{{"name": "g", "diag": "{s}"}}"#)).unwrap();
        let back = GroupSpecFile::parse(&f.to_json()).unwrap();
        prop_assert_eq!(back.spec.generators, f.spec.generators);
    }
}

#[test]
fn suite_output_ignores_worker_count() {
    let one = SuiteOptions {
        max_d: Some(6),
        ..SuiteOptions::default()
    };
    let many = SuiteOptions {
        workers: 4,
        ..one.clone()
    };
    for suite in [Suite::Abelian, Suite::Type22, Suite::Claims] {
        let a = serde_json::to_string(&run_suite(suite, &one).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite(suite, &many).unwrap()).unwrap();
        assert_eq!(a, b, "{suite}");
    }
}
