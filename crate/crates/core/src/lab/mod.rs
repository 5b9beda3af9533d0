//! Consistency checks between independent computations, grouped into suites.

mod abelian;
mod blowup;
mod check;
mod claims;
pub mod corpus;
mod fibers;
mod suite;
mod trichotomy;
mod type22;

pub use abelian::crosscheck_abelian;
pub use blowup::{blowup_euler_check, center_quotient, chart_weights, pseudo_reflection_certificate, CenterQuotient};
pub use check::{CheckResult, Side, Verdict};
pub use claims::{commutator_cube, commutator_order_three};
pub use fibers::{class_fiber_sum_check, invariant_line};
pub use suite::{
    blowup_family, cyclic_specs, euler_proj_cases, run_suite, sl_tuples, sort_results, Suite, SuiteOptions,
    BLOWUP_MAX_D, BLOWUP_MAX_ORDER, CLAIMS_MAX_D, EULER_PROJ_CASES, EULER_PROJ_SEED, SL3_MAX_D, SL4_MAX_D,
    TYPE22_MAX_D,
};
pub use trichotomy::{family, same_elements, trichotomy_scan, Family};
pub use type22::{block_stabilizer, type22_terminal_check};
