//! Finite structures over the four fixed signatures.
//!
//! "Substructure" means *induced* substructure throughout: an embedding must
//! reflect every relation as well as preserve it, so an edgeless pair does
//! not embed into a triangle. Universes are always `{0, .., n-1}`; every
//! operation that builds a structure keeps surviving vertices in order and
//! appends new vertices in creation order.

mod canon;
mod embedding;
mod enumerate;
mod io;
mod label;
mod structure;

pub use canon::{canonical_labeling, canonical_structure, canonicalize, CanonicalForm};
pub use embedding::{embeds, enumerate_embeddings, for_each_embedding, induced_substructure, Embedding};
pub use enumerate::{enumerate_levels, enumerate_structures, one_point_extensions, Domain, EnumOptions, DEFAULT_ENUM_CAP};
pub(crate) use enumerate::add_apex;
pub use io::{from_json, to_dot, to_json, StructureJson};
pub use label::Z5;
pub use structure::{Bits, FinStructure, Signature, MAX_VERTICES};
pub(crate) use structure::bit;
