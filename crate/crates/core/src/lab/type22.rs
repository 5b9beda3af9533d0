//! Groups preserving a splitting V = V₁ ⊕ V₂ into two planes.

use serde_json::json;

use super::check::{CheckResult, Side};
use crate::error::{Error, Result};
use crate::group::{reid_tai_classify, MatrixGroup};
use crate::linalg::FieldMatrix;

fn is_block_22(x: &FieldMatrix) -> bool {
    x.rows() == 4 && (0..2).all(|i| (2..4).all(|j| x[(i, j)].is_zero() && x[(j, i)].is_zero()))
}

/// Elements acting as the identity on one block, as sorted indices.
pub fn block_stabilizer(g: &MatrixGroup, block: usize) -> Vec<usize> {
    let idx = [block * 2, block * 2 + 1];
    (0..g.order())
        .filter(|&i| {
            let b = g.element(i).submatrix(&idx, &idx);
            b.is_identity()
        })
        .collect()
}

/// Trivial block stabilizers force a terminal quotient. The two sides are
/// [V/G not terminal] and [V/G not terminal and some block stabilizer is
/// nontrivial], so they differ exactly when the implication breaks.
pub fn type22_terminal_check(g: &MatrixGroup) -> Result<CheckResult> {
    if g.dim() != 4 || !g.generators().iter().all(|&s| is_block_22(g.element(s))) {
        return Err(Error::input(format!("{} is not block diagonal of shape 2+2", g.name())));
    }
    let stabs = [block_stabilizer(g, 0), block_stabilizer(g, 1)];
    let class = reid_tai_classify(g).classification;
    let not_terminal = !class.is_terminal();
    let witness = stabs.iter().position(|s| s.len() > 1);
    let cert = json!({
        "classification": class.as_str(),
        "stabilizer_orders": [stabs[0].len(), stabs[1].len()],
        "witness_block": witness.map(|b| b + 1),
        "witness_element": witness.map(|b| stabs[b][1]),
    });
    Ok(CheckResult::new(
        "type22",
        g.name(),
        Side::int(not_terminal as u8),
        Side::int((not_terminal && witness.is_some()) as u8),
        cert,
    ))
}
