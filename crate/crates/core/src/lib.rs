//! A computational algebra workbench for Rota-Baxter systems: construction,
//! verification, enumeration and decomposition of operator pairs on finite
//! groups/monoids, and of their linear analogues on finite-dimensional Lie
//! algebras over exact rationals.
//!
//! Modules:
//! - [`tables`]: finite multiplication tables, subgroups, quotients, products
//! - [`rbs`]: the defining identities, descendent operation, skew-truss and
//!   skew-brace structure, induced weight ±1 operators
//! - [`structure`]: component groups, the partition of the carrier, the
//!   direct-sum decomposition
//! - [`factorization`]: image/kernel subgroups, the Cayley transform and
//!   unique factorization
//! - [`search`]: exhaustive and pruned enumeration of operator pairs with
//!   catalog persistence
//! - [`qlinalg`]: exact rational matrices, echelon forms and subspaces
//! - [`lie`]: Lie-algebra systems, derived brackets, the T-map, Lie
//!   factorization and the twisted modified Yang-Baxter equations
//! - [`io`]: JSON schemas shared by the CLI and the Python bindings

pub mod factorization;
pub mod io;
pub mod lie;
pub mod qlinalg;
pub mod rbs;
pub mod search;
pub mod structure;
pub mod tables;

pub use rbs::{verify_rbs, OperatorMap, RbsInstance};
pub use tables::{MulTable, Subset};
