//! The Lefschetz operators, the Hodge operator and the ten-dimensional
//! algebra they span: structure constants, Killing form, roots and weights.

mod algebra;
mod basis;
mod roots;
mod weights;

pub use algebra::{bracket_table, structure_records, BracketTable, LieElt, DIM as ALGEBRA_DIM};
pub use basis::{build_basis, hodge_check, is_gm_invariant, su2_check, OpName, OperatorBasis};
pub use roots::{expected_b2_coords, root_records, root_system, Root, RootSystemReport};
pub use weights::{is_eigenvector, weight_decompose, weight_records, HodgeCell, HodgeTable};
