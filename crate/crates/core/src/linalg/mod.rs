//! Exact dense linear algebra over the rationals and prime fields.

mod complex;
mod field;
mod matrix;

pub use complex::{cohomology_dim, induced_map_on_cohomology, CohomologyFrame, FiniteChainMap, FiniteComplex};
pub use field::{FieldSpec, Scalar};
pub use matrix::{image_basis, kernel_basis, rank, ExactMatrix};
