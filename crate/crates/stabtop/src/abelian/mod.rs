//! Exact integer linear algebra: Hermite and Smith normal forms, integer
//! linear solving, lattice membership and inclusion, cokernel presentations.
//!
//! Everything here is pure and exact. Nonexistence verdicts (a vector is not
//! in a lattice) are meaningful only because no rounding ever happens, so
//! every operation works on arbitrary-precision integers.

mod group;
mod lattice;
mod matrix;
mod normal_form;

pub use group::{cokernel, FgAbGroup};
pub use lattice::{lattice_member, lattice_subset, Membership, Refutation, SubsetVerdict};
pub use matrix::IntMatrix;
pub use normal_form::{hermite_normal_form, smith_normal_form, SmithForm};



/// Errors from the integer-linear-algebra layer.
#[derive(Debug, thiserror::Error)]
pub enum AbelianError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}
