//! Commutator identities for diagonal elements of SL(3) under the cyclic
//! permutation T.

use serde_json::json;

use super::check::{CheckResult, Side};
use crate::error::Result;
use crate::group::named::{scalar_root, t3};
use crate::linalg::FieldMatrix;

fn diag(d: u64, e: [i64; 3]) -> FieldMatrix {
    FieldMatrix::diag_roots(d, &e)
}

/// For every non-scalar x = 1/d(a,b,c) in SL(3) of order 3, the commutator
/// T·x·T⁻¹·x⁻¹ is ω₃ when x = 1/3(i,i+1,i+2) and ω₃² for the inverses of
/// those. Sides: number of such x satisfying the identity, number of such x.
pub fn commutator_order_three(d: u64) -> Result<CheckResult> {
    let t = t3();
    let t_inv = t.transpose();
    let w = scalar_root(3, 3);
    let w2 = w.mul_sq(&w);
    let di = d as i64;
    let (mut applicable, mut holding) = (0usize, 0usize);
    for a in 0..di {
        for b in 0..di {
            let c = (-a - b).rem_euclid(di);
            let scalar = a == b && b == c;
            if scalar || (3 * a) % di != 0 || (3 * b) % di != 0 {
                continue;
            }
            applicable += 1;
            let x = diag(d, [a, b, c]);
            let x_inv = diag(d, [-a, -b, -c]);
            let comm = t.mul_sq(&x).mul_sq(&t_inv).mul_sq(&x_inv);
            let step = di / 3;
            let ascending = (b - a).rem_euclid(di) == step && (c - b).rem_euclid(di) == step;
            let expected = if ascending { &w } else { &w2 };
            if comm.promote(3 * d) == expected.promote(3 * d) {
                holding += 1;
            }
        }
    }
    Ok(CheckResult::new(
        "claims/order-three",
        format!("d={d}"),
        Side::int(holding),
        Side::int(applicable),
        json!({ "applicable": applicable }),
    ))
}

/// For every φ = 1/d(a,b,−a−b), f = φ⁻¹·T·φ·T⁻¹ is diagonal and
/// T⁻¹·f·T·f⁻¹ = φ³. Sides: number of φ satisfying both, d².
pub fn commutator_cube(d: u64) -> Result<CheckResult> {
    let t = t3();
    let t_inv = t.transpose();
    let di = d as i64;
    let mut holding = 0usize;
    for a in 0..di {
        for b in 0..di {
            let c = -a - b;
            let phi = diag(d, [a, b, c]);
            let phi_inv = diag(d, [-a, -b, -c]);
            let f = phi_inv.mul_sq(&t).mul_sq(&phi).mul_sq(&t_inv);
            if !f.is_diagonal() {
                continue;
            }
            let lhs = t_inv.mul_sq(&f).mul_sq(&t).mul_sq(&f.inverse()?);
            let cube = diag(d, [3 * a, 3 * b, 3 * c]);
            if lhs.promote(d) == cube.promote(d) {
                holding += 1;
            }
        }
    }
    Ok(CheckResult::new(
        "claims/cube",
        format!("d={d}"),
        Side::int(holding),
        Side::int(d * d),
        json!({ "cases": d * d }),
    ))
}
