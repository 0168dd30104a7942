//! Tope committees of simple oriented matroids.
//!
//! The crate counts committees of topes (tope subsets holding a strict
//! majority inside every positive halfspace) by exhaustive enumeration and by
//! a family of inclusion-exclusion and Möbius-function formulas, and it
//! provides the relative-blocking machinery those formulas rest on:
//!
//! * [`om`]: tope sets, parsing, validation, halfspaces, reorientation.
//! * [`oracle`]: brute-force committee counts (the ground truth).
//! * [`poset`]: blockers, generated union semilattices, Möbius functions,
//!   simplicial complexes and nerves.
//! * [`blocking`] and [`cross`]: relatively r-blocking elements in Boolean
//!   lattices and in crosspolytope face semilattices.
//! * [`convex`]: tope-support convex closure, free sets, the γ map.
//! * [`formulas`]: committee counting formulas and the cross-check driver.
//! * [`instances`] and [`fm`]: built-in instances and a seeded generator of
//!   realizable instances backed by exact Fourier–Motzkin elimination.
//!
//! Elements and tope positions are 0-based in the API; files and reports use
//! 1-based elements.

pub mod alternating;
pub mod blocking;
pub mod convex;
pub mod cross;
pub mod error;
pub mod fm;
pub mod formulas;
pub mod instances;
pub mod om;
pub mod oracle;
pub mod poset;
pub mod report;
pub mod sets;

pub use error::{Error, Result};
pub use om::{OrientedMatroid, Sign, SignVector};
pub use sets::IndexSet;
