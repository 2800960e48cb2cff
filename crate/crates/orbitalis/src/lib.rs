//! Finite-fragment engine for partial order automorphisms.
//!
//! The crate works with finite fragments of a large homogeneous partial
//! order. It grows fragments by one-point extensions, tracks partial
//! automorphisms over them, certifies facts about spiral lengths and
//! orbitals with finite witnesses, and cross-checks the supporting lemmas
//! by exhaustive search over small posets.

pub mod autos;
pub mod enumerate;
pub mod fraisse;
pub mod poset;

pub use autos::{b_window, AResult, AutoError, BWindow, OrbitSegment, PartialAuto};
pub use fraisse::{Event, LazyPoset};
pub use poset::{amalgamate, Cmp, Elem, Embedding, FinPoset, PosetError, PosetJson, QfType, Rel};
