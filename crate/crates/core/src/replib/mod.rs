//! Representation-theoretic checks on a single fiber: invariant forms, fix
//! loci on the sphere of induced structures, the submodule generated by the
//! top form, and the top-degree identity for invariant forms.

mod fixlocus;
mod invariants;
pub mod random;
mod subspace;
mod suites;
mod theorem;

pub use fixlocus::{fix_locus, general_type_scan, sphere_json, FixLocus};
pub use invariants::{
    ad_induced, ao_invariants_check, c_equivariance_records, c_operator, c_power_det, gm_invariants, hodge_component,
    invariant_part, is_pure_pp, reference_points,
};
pub use subspace::{first_escape, submodule_closure, Subspace};
pub use suites::{fix_locus_bound_check, invariance_type_check, invariant_degrees, theorem21_random};
pub use theorem::{
    central_constant, central_constant_check, degree_functional, highest_weight_check, theorem21_check, DegreeValue,
};
