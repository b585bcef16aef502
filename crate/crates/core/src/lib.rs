//! Exact computations on the blow-up of a nodal quadric threefold:
//! intersection theory, line-bundle cohomology, a mutation calculus for
//! formal objects in the derived category, integer lattices, and checks of
//! stability-condition axioms.

pub mod calculus;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod lattice;
pub mod parallel;
pub mod stability;
