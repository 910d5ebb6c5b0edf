//! Construction, verification and search of (strongly real) Beauville
//! structures on finite groups.
//!
//! Products are read left to right: for permutations `pq` applies `p` first,
//! and `x^g = g⁻¹xg`.

pub mod atlas;
pub mod bsgs;
pub mod constructions;
pub mod element;
pub mod field;
pub mod format;
pub mod group;
pub mod perm;
pub mod search;
pub mod structure;
pub mod verdict;

pub use element::{Element, ElementKind, Invariant};
pub use field::{FieldElement, FieldSpec, SuzukiMatrix};
pub use group::{ClassKey, Group, GroupError};
pub use perm::{CycleType, Parity, Permutation};
pub use verdict::{Outcome, Verdict};
