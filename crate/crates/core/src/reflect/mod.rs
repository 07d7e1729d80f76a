//! Finite irreducible reflection groups: root data, corner-vector orbits,
//! invariant harmonics, invariant Euclidean designs, and positivity
//! certificates ruling them out.

pub mod certify;
pub mod design;
pub mod families;
pub mod groups;
pub mod invariants;
pub mod orbit;
pub mod printed;

pub use certify::{
    certify_nonexistence, check_certificate, check_printed, fourier_motzkin_positive, Certification, PositivityCertificate, PrintedCheck,
};
pub use design::{
    classify_weights, classify_weights_with_free, euclidean_design_check, sphere_design_from_orbit, weights_to_formula, EuclideanReport,
    WeightFamily, WeightedOrbit,
};
pub use families::ParametricFamily;
pub use groups::{group_data, GroupLabel, ReflectionGroupData, EXCEPTIONAL};
pub use invariants::{eval_invariant, invariant_basis, is_harmonic, molien_dims, InvariantSpec, UTable, UVector};
pub use orbit::{corner_orbit, orbit, GroupOrbit, DEFAULT_ORBIT_CAP};
