//! stabtop decides, from discretized data, whether a candidate vector field
//! or control system can possibly render a compact set asymptotically
//! stable. The tests are necessary conditions: a failed test certifies that
//! no suitable feedback exists, while a passed test says nothing.
//!
//! The pipeline: a punctured neighborhood of the target set is given as a
//! simplicial complex of dimension at most two with a declared tangent
//! frame; vector fields are sampled at vertices in that frame; integral
//! homology and winding numbers turn the samples into classes in
//! `H1(region) + Z`; exact integer lattice arithmetic then decides whether
//! the required inclusion of induced classes can hold.
//!
//! See the `examples/` directory for a runnable tour: homology of small
//! complexes, winding numbers, the built-in obstruction scenarios, and the
//! report-producing command-line front end.

pub mod abelian;
pub mod cli;
pub mod complex;
pub mod field;
pub mod scenarios;
pub mod stabilize;
