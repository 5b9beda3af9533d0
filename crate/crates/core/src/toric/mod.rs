//! Lattice cones and fans for abelian quotients.

mod cone;
mod fan;

pub use cone::{
    abelianize, cone_multiplicity, quotient_lattice, rational_strings, BoxPoint, QuotientCone, SimplicialCone,
};
pub use fan::{fan_orbifold_euler, Fan, FAN_FORMAT_VERSION};
