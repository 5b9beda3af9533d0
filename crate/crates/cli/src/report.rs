//! JSON report documents, with keys in a fixed order.

use serde::Serialize;

use quotsing_core::group::{
    contains_center, dhvw_euler_linear, module_type, reid_tai_classify, weight_one_class_count,
};
use quotsing_core::lab::{blowup_euler_check, crosscheck_abelian, CheckResult, Side, Suite};
use quotsing_core::resolve::{terminalize, Terminalization};
use quotsing_core::toric::{abelianize, QuotientCone};
use quotsing_core::{Error, GroupSpec, MatrixGroup, Result};

pub const REPORT_FORMAT_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct GroupSection {
    pub name: String,
    pub order: usize,
    pub class_count: usize,
    pub contains_center: bool,
    pub module_type: String,
    pub classification: &'static str,
    pub weight_one_classes: usize,
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
pub struct TerminalizationSection {
    pub ray_count: usize,
    pub cone_count: usize,
    pub multiplicity_sum: u64,
    pub smooth: bool,
    pub crepant: bool,
    pub terminal: bool,
}

#[derive(Serialize)]
pub struct ToricSection {
    pub multiplicity: u64,
    pub junior_count: usize,
    /// Fan text of the terminalization, or of the input cone when none exists.
    pub fan: String,
    pub terminalization: Option<TerminalizationSection>,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub format_version: u32,
    pub group: GroupSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub toric: Option<ToricSection>,
    pub checks: Vec<CheckResult>,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub format_version: u32,
    pub suite: &'static str,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn new(suite: Suite, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().filter(|c| c.passed()).count();
        VerifyReport {
            format_version: REPORT_FORMAT_VERSION,
            suite: suite.as_str(),
            total: checks.len(),
            passed,
            failed: checks.len() - passed,
            checks,
        }
    }
}

pub fn group_section(g: &MatrixGroup) -> GroupSection {
    let rt = reid_tai_classify(g);
    GroupSection {
        name: g.name().to_string(),
        order: g.order(),
        class_count: g.class_count(),
        contains_center: contains_center(g, g.dim()),
        module_type: module_type(g).to_string(),
        classification: rt.classification.as_str(),
        weight_one_classes: weight_one_class_count(g),
        warnings: rt.warnings,
    }
}

pub fn terminalization_section(t: &Terminalization) -> TerminalizationSection {
    TerminalizationSection {
        ray_count: t.fan.rays.len(),
        cone_count: t.fan.cones.len(),
        multiplicity_sum: u64::try_from(t.multiplicity_sum()).unwrap_or(u64::MAX),
        smooth: t.smooth,
        crepant: t.crepant,
        terminal: t.terminal,
    }
}

pub fn toric_section(cone: &QuotientCone, t: Option<&Terminalization>) -> ToricSection {
    let fan = match t {
        Some(t) => t.fan.to_text(),
        None => quotsing_core::toric::Fan::from_cone(cone.cone()).to_text(),
    };
    ToricSection {
        multiplicity: cone.multiplicity_u64(),
        junior_count: cone.junior_points().len(),
        fan,
        terminalization: t.map(terminalization_section),
    }
}

/// Burnside's lemma on commuting pairs: Σ |class|·|centralizer| = |G|·|Cl(G)|.
pub fn burnside_check(g: &MatrixGroup) -> CheckResult {
    let e = dhvw_euler_linear(g);
    CheckResult::new(
        "burnside",
        g.name(),
        Side::int(e.commuting_pairs),
        Side::int(g.order() * g.class_count()),
        serde_json::json!({ "fixed_dims": e.fixed_dims }),
    )
}

/// Checks that apply to this group, in name order.
pub fn analysis_checks(spec: &GroupSpec, g: &MatrixGroup, max_order: usize) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    if g.is_abelian() && g.is_special_linear() {
        match crosscheck_abelian(spec, max_order) {
            Ok(c) => checks.push(c),
            Err(Error::NotCanonical { .. } | Error::NotGorenstein) => {}
            Err(e) => return Err(e),
        }
    }
    if contains_center(g, g.dim()) {
        checks.push(blowup_euler_check(g)?);
    }
    checks.push(burnside_check(g));
    quotsing_core::lab::sort_results(&mut checks);
    Ok(checks)
}

/// Toric cone and terminalization of an abelian group; `None` otherwise.
/// Cones that are not Gorenstein canonical keep no resolution.
pub fn toric_parts(g: &MatrixGroup) -> Result<Option<(QuotientCone, Option<Terminalization>)>> {
    if !g.is_abelian() {
        return Ok(None);
    }
    let cone = abelianize(g)?;
    let t = match terminalize(&cone) {
        Ok(t) => Some(t),
        Err(Error::NotCanonical { .. } | Error::NotGorenstein) => None,
        Err(e) => return Err(e),
    };
    Ok(Some((cone, t)))
}

pub fn analyze(spec: &GroupSpec, max_order: usize) -> Result<AnalysisReport> {
    let g = MatrixGroup::closure(spec, max_order)?;
    let toric = toric_parts(&g)?.map(|(cone, t)| toric_section(&cone, t.as_ref()));
    Ok(AnalysisReport {
        format_version: REPORT_FORMAT_VERSION,
        group: group_section(&g),
        toric,
        checks: analysis_checks(spec, &g, max_order)?,
    })
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}
