//! Integral lattices, discriminant forms and ADE root systems.
//!
//! Root lattices are negative definite: roots have norm −2 and the Gram
//! matrix of a root lattice is the negated Cartan matrix.

mod classify;
mod discriminant;
mod embed;
mod enumerate;
mod error;
mod lattice;
mod root;

pub use classify::{classify_root_set, classify_roots, RootComponent, RootSystemDecomposition};
pub use discriminant::{discriminant_group, mod1, mod2, DiscriminantGroup};
pub use embed::{is_primitive, orthogonal_complement, overlattice_from_glue, reflect};
pub use enumerate::{roots, short_vectors, short_vectors_in_coset, size_reduce};
pub use error::LatticeError;
pub use lattice::{Lattice, LatticeDoc};
pub use root::{make_root_lattice, DynkinType, Family, RootLattice};
