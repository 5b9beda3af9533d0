//! Three mutually exclusive shapes for a cyclic extension G′ of a
//! non-abelian G_η ⊂ SL(3) without scalars of order 3.

use serde::Serialize;
use serde_json::json;

use super::check::{CheckResult, Side};
use crate::error::{Error, Result};
use crate::group::named::{r3, scalar_root};
use crate::group::{has_odd_permutation, is_monomial_group, module_type, GroupSpec, MatrixGroup, ModuleType};
use crate::linalg::FieldMatrix;

/// Structural proxy for the classical families of subgroups of SL(3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Reducible.
    Reducible,
    /// Irreducible monomial with even permutation parts only.
    MonomialEven,
    /// Irreducible monomial with an odd permutation part.
    MonomialOdd,
    /// Irreducible and not monomial in the given basis.
    Primitive,
    Undetermined,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Reducible => "reducible",
            Family::MonomialEven => "monomial_even",
            Family::MonomialOdd => "monomial_odd",
            Family::Primitive => "primitive",
            Family::Undetermined => "undetermined",
        }
    }
}

pub fn family(g: &MatrixGroup) -> Family {
    match module_type(g) {
        ModuleType::Undetermined => Family::Undetermined,
        t if !t.is_irreducible() => Family::Reducible,
        _ if !is_monomial_group(g) => Family::Primitive,
        _ if has_odd_permutation(g) => Family::MonomialOdd,
        _ => Family::MonomialEven,
    }
}

/// Same element set, compared after promotion to a common conductor.
pub fn same_elements(a: &MatrixGroup, b: &MatrixGroup) -> bool {
    a.order() == b.order() && a.elements().iter().all(|x| b.contains(x))
}

fn extend(spec: &GroupSpec, extra: &[FieldMatrix], max_order: usize) -> Result<MatrixGroup> {
    let mut s = spec.clone();
    for x in extra {
        s = s.with_generator(x.clone())?;
    }
    MatrixGroup::closure(&s, max_order)
}

/// Counts how many of the three alternatives hold for G′ = ⟨G_η, ext⟩:
/// both groups reducible; G′ = ⟨G_η, ω₃⟩ with G_η irreducible; G_η
/// monomial-even, G′ monomial-odd and G′ = ⟨G_η, R⟩ or ⟨G_η, ω₃R⟩.
pub fn trichotomy_scan(g_eta: &GroupSpec, ext: &FieldMatrix, max_order: usize) -> Result<CheckResult> {
    if g_eta.dim() != 3 || ext.rows() != 3 {
        return Err(Error::input("trichotomy scan works in dimension 3"));
    }
    let w3 = scalar_root(3, 3);
    let base = MatrixGroup::closure(g_eta, max_order)?;
    if base.contains(&w3) {
        return Err(Error::input(format!("{} contains the scalar group Z_3", g_eta.name)));
    }
    if !base.is_special_linear() {
        return Err(Error::input(format!("{} is not in SL(3)", g_eta.name)));
    }
    let big = extend(g_eta, &[ext.clone()], max_order)?;
    let members: Vec<usize> = base
        .elements()
        .iter()
        .map(|x| big.index_of(x).expect("subgroup"))
        .collect();
    let normal = big.is_normal(&members);
    let cyclic_quotient = normal && crate::group::induced_class_map(&big, &members).is_ok();
    let fam_eta = family(&base);
    let fam_big = family(&big);

    let alt1 = fam_eta == Family::Reducible && fam_big == Family::Reducible;
    let irreducible_eta = matches!(fam_eta, Family::MonomialEven | Family::MonomialOdd | Family::Primitive);
    let with_w3 = extend(g_eta, &[w3.clone()], max_order)?;
    let alt2 = irreducible_eta && same_elements(&big, &with_w3);
    let r = r3();
    let wr = w3.mul_sq(&r);
    let via_r = same_elements(&big, &extend(g_eta, &[r], max_order)?);
    let via_wr = same_elements(&big, &extend(g_eta, &[wr], max_order)?);
    let alt3 = fam_eta == Family::MonomialEven && fam_big == Family::MonomialOdd && (via_r || via_wr);
    let holding = [alt1, alt2, alt3].iter().filter(|&&b| b).count();
    let cert = json!({
        "base_order": base.order(),
        "extension_order": big.order(),
        "base_family": fam_eta.as_str(),
        "extension_family": fam_big.as_str(),
        "base_abelian": base.is_abelian(),
        "base_normal": normal,
        "quotient_cyclic": cyclic_quotient,
        "alternatives": [alt1, alt2, alt3],
        "odd_branch": if via_r { "R" } else if via_wr { "w3*R" } else { "none" },
    });
    Ok(CheckResult::new(
        "trichotomy",
        g_eta.name.clone(),
        Side::int(holding),
        Side::int(1),
        cert,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named::f21;

    #[test]
    fn f21_by_scalar_is_second_alternative() {
        let c = trichotomy_scan(&f21(), &scalar_root(3, 3), 2000).unwrap();
        assert!(c.passed(), "{}", c.summary());
        assert_eq!(c.certificate["alternatives"], json!([false, true, false]));
        assert_eq!(c.certificate["extension_order"], 63);
        assert_eq!(c.certificate["base_normal"], true);
    }

    #[test]
    fn f21_by_r_is_third_alternative_without_normality() {
        let c = trichotomy_scan(&f21(), &r3(), 2000).unwrap();
        assert!(c.passed(), "{}", c.summary());
        assert_eq!(c.certificate["alternatives"], json!([false, false, true]));
        assert_eq!(c.certificate["base_normal"], false);
        assert_eq!(c.certificate["odd_branch"], "R");
    }

    #[test]
    fn scalar_in_base_rejected() {
        let s = f21().with_generator(scalar_root(3, 3)).unwrap();
        assert!(matches!(trichotomy_scan(&s, &r3(), 2000), Err(Error::Input(_))));
    }

    #[test]
    fn families() {
        let g = MatrixGroup::closure(&f21(), 100).unwrap();
        assert_eq!(family(&g), Family::MonomialEven);
        let g = MatrixGroup::closure(&f21().with_generator(r3()).unwrap(), 1000).unwrap();
        assert_eq!(family(&g), Family::MonomialOdd);
    }
}
