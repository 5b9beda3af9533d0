//! Class counting through the cyclic quotient by a line stabilizer.

use serde_json::json;

use super::check::{CheckResult, Side};
use crate::error::{Error, Result};
use crate::group::{generic_line_stabilizer, induced_class_map, invariant_decomposition, MatrixGroup};
use crate::linalg::Subspace;

/// First one-dimensional summand of the invariant decomposition.
pub fn invariant_line(g: &MatrixGroup) -> Option<Subspace> {
    invariant_decomposition(g)?.into_iter().find(|s| s.dim() == 1)
}

/// |Cl(G)| against Σ over classes of the cyclic quotient C = G/G_η of the
/// number of G-classes above each, where G_η fixes the line pointwise.
pub fn class_fiber_sum_check(g: &MatrixGroup, line: Option<&Subspace>) -> Result<CheckResult> {
    let found;
    let line = match line {
        Some(l) => l,
        None => {
            found = invariant_line(g).ok_or_else(|| Error::input(format!("{} has no invariant line", g.name())))?;
            &found
        }
    };
    let stab = generic_line_stabilizer(g, line)?;
    let map = induced_class_map(g, &stab.members)?;
    let cert = json!({
        "stabilizer_order": stab.members.len(),
        "quotient_order": map.quotient_order,
        "fibers": map.fibers,
    });
    Ok(CheckResult::new(
        "cclass-sum",
        g.name(),
        Side::int(map.total()),
        Side::int(g.class_count()),
        cert,
    ))
}
