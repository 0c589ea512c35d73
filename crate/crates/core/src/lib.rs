//! Finite hyperfields, quadratic form schemes and their Witt rings.

pub mod construct;
pub mod corpus;
pub mod document;
pub mod elemset;
pub mod fields;
pub mod hyperfield;
pub mod report;
pub mod rigidity;
pub mod witt;

pub use elemset::{Elem, ElemSet};
pub use hyperfield::{FiniteHyperfield, HyperfieldError, HyperfieldTables, MalformedTable, Morphism, MorphismKind};
