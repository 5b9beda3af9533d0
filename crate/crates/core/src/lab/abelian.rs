//! Group-side and toric-side counts of an abelian quotient must agree.

use num_bigint::BigInt;
use serde_json::json;

use super::check::{CheckResult, Side};
use crate::error::{Error, Result};
use crate::group::{dhvw_euler_linear, reid_tai_classify, weight_one_class_count, GroupSpec, MatrixGroup};
use crate::resolve::terminalize;
use crate::toric::{abelianize, fan_orbifold_euler};

/// Compares, in order: cone multiplicity, class count, linear Euler number,
/// Euler number of the terminalization (each against |G|), the junior
/// count against the weight-one class count, the toric classification
/// against the age classification, and the number of passing verifiers.
pub fn crosscheck_abelian(spec: &GroupSpec, max_order: usize) -> Result<CheckResult> {
    let g = MatrixGroup::closure(spec, max_order)?;
    if !g.is_abelian() {
        return Err(Error::input(format!("{} is not abelian", spec.name)));
    }
    if !g.is_special_linear() {
        return Err(Error::input(format!("{} is not in SL(n)", spec.name)));
    }
    let cone = abelianize(&g)?;
    let t = terminalize(&cone)?;
    let order = BigInt::from(g.order());
    let euler = fan_orbifold_euler(&t.fan)?;
    let junior = t.inserted.len();
    let weight_one = weight_one_class_count(&g);
    let toric_class = cone.classify();
    let group_class = reid_tai_classify(&g).classification;
    let same_class = toric_class == group_class || (toric_class.is_terminal() && group_class.is_terminal());
    let verifiers = [t.crepant, t.terminal, t.volume_conserved, t.faces_compatible];
    let passing = verifiers.iter().filter(|&&b| b).count();
    let lhs = Side::ints([
        cone.multiplicity(),
        BigInt::from(g.class_count()),
        BigInt::from(dhvw_euler_linear(&g).value),
        euler.clone(),
        BigInt::from(junior),
        BigInt::from(same_class as u8),
        BigInt::from(passing),
    ]);
    let rhs = Side::ints([
        order.clone(),
        order.clone(),
        order.clone(),
        order,
        BigInt::from(weight_one),
        BigInt::from(1u8),
        BigInt::from(verifiers.len()),
    ]);
    let cert = json!({
        "order": g.order(),
        "junior_count": junior,
        "weight_one_classes": weight_one,
        "toric_classification": toric_class.as_str(),
        "group_classification": group_class.as_str(),
        "smooth": t.smooth,
        "rays": t.fan.rays.len(),
        "cones": t.fan.cones.len(),
    });
    Ok(CheckResult::new("abelian", spec.name.clone(), lhs, rhs, cert))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(s: &str) -> CheckResult {
        crosscheck_abelian(&GroupSpec::parse_diag(s).unwrap(), 1000).unwrap()
    }

    #[test]
    fn small_cases_pass() {
        let c = run("1/2(1,1,1,1)");
        assert!(c.passed(), "{}", c.summary());
        assert_eq!(c.certificate["junior_count"], 0);
        let c = run("1/3(1,1,1)");
        assert!(c.passed());
        assert_eq!(c.certificate["junior_count"], 1);
        let c = run("1/6(1,2,3)");
        assert!(c.passed());
        assert_eq!(c.certificate["junior_count"], 4);
    }

    #[test]
    fn non_abelian_rejected() {
        assert!(matches!(crosscheck_abelian(&crate::group::named::q8(), 100), Err(Error::Input(_))));
    }
}
