//! Cubature formulas for the sphere, Gaussian, and orthant integrals:
//! data model, exact verification, and the domain transforms.

pub mod catalog;
mod formula;
mod scale;
mod transform;
mod verify;

pub use catalog::{catalog_formula, printed_formula, stated_index, CATALOG_NAMES};
pub use formula::{
    normalize_first, pattern_orbit, sign_orbit, weight_of, CubPoint, CubatureFormula, Direction, Orbit, OrbitKind, PatternGroup,
};
pub use scale::RadialScale;
pub use transform::{double, from_sphere, halve_antipodal, sqrt_points, square_points, to_sphere};
pub use verify::{moment_sums, verify_degree, verify_index, Failure, Mode, Value, VerificationReport};
