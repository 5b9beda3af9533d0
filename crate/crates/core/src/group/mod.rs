//! Finite matrix groups: closure, classes, ages, classification and the
//! constructions attached to an invariant line.

mod age;
mod analysis;
mod line;
mod matrix_group;
mod monomial;
pub mod named;
mod projective;
mod spec;

pub use age::{eigen_profile, element_age, profile_from_traces, AgeProfile, EigenProfile};
pub use analysis::{
    centralizer, character_norm, contains_center, dhvw_euler_linear, invariant_decomposition, module_type,
    reid_tai_classify, weight_one_class_count, Classification, LinearEuler, ModuleType, ReidTai,
};
pub use line::{
    coordinate_line, generated_subgroup, generating_set, generic_line_stabilizer, induced_class_map, primed_group,
    ClassMap, LineStabilizer, PrimedGroup,
};
pub use matrix_group::{MatrixGroup, DEFAULT_MAX_ORDER};
pub use monomial::{diagonal_part, has_odd_permutation, is_monomial_group, monomial_permutation_part, Permutation};
pub use projective::{joint_eigenspaces, projective_fixed_euler, projective_fixed_euler_of};
pub use spec::{DiagSpec, GroupSpec};
