//! Finite posets built from set families: Sperner families and blockers,
//! generated union semilattices with their Möbius functions, simplicial
//! complexes and nerves.

mod complex;
mod lattice;
mod sperner;

pub use complex::{nerve, reduced_euler_characteristic, union_mobius_number, SimplicialComplex};
pub use lattice::{
    union_semilattice, union_semilattice_filtered, union_semilattice_of_layers, GeneratedJoinSemilattice, LatticeBudget,
};
pub use sperner::{blocker, max_sets, min_sets};
