//! Bounded certification toolkit for amalgamation properties of small
//! classes of finite relational structures.
//!
//! The crate is organized bottom-up: [`structures`] (finite structures,
//! embeddings, canonical forms, enumeration), [`classes`] (membership
//! predicates), [`amalgamation`] (free amalgams, the exhaustive amalgam
//! oracle and the witness and gadget constructions), [`limits`] (finite
//! approximations of generic limits and the order-reduct apparatus) and
//! [`claims`] (the fixed catalog of verifiable claims).

pub mod amalgamation;
pub mod certificate;
pub mod claims;
pub mod classes;
pub mod error;
pub mod limits;
pub mod par;
pub mod structures;

pub use certificate::{Certificate, Evidence, Stats, Verdict};
pub use classes::{ClassId, Membership};
pub use error::{Error, Result};
pub use structures::{Embedding, FinStructure, Signature, Z5};
