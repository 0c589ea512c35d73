//! Constructions producing new hyperfields from old ones.

mod extension;
mod ordered;
mod quotient;
mod scheme;
mod subgroup;

use thiserror::Error;

use crate::hyperfield::{FiniteHyperfield, HyperfieldError, HyperfieldTables};

pub use extension::{default_generator_names, group_extension, group_extension_named, ExtensionLayout};
pub use ordered::{OrdElem, OrdSum, LazyOrderedGroupHyperfield};
pub use quotient::quotient;
pub use scheme::{scheme_to_hyperfield, ValueSetTable};
pub use subgroup::SquareClassSubgroup;

#[derive(Debug, Clone, Error)]
pub enum ConstructError {
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid value-set table: {0}")]
    InvalidValueSetTable(String),
    #[error("construction would have {size} elements, bound is {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error(transparent)]
    Hyperfield(#[from] HyperfieldError),
}

impl From<crate::hyperfield::MalformedTable> for ConstructError {
    fn from(e: crate::hyperfield::MalformedTable) -> Self {
        ConstructError::Hyperfield(e.into())
    }
}

/// The prime hyperfield: `a + b` is enlarged by `{a, b}` for nonzero `a, b`
/// with `b ≠ -a`, and becomes everything when `b = -a`.
pub fn prime(h: &FiniteHyperfield) -> FiniteHyperfield {
    let zero = h.zero();
    let tables = HyperfieldTables::from_fns(
        h.labels().to_vec(),
        zero,
        h.one(),
        |a| h.neg(a),
        |a, b| h.mul(a, b),
        |a, b| {
            if a == zero || b == zero {
                h.add(a, b).clone()
            } else if b == h.neg(a) {
                h.full_set()
            } else {
                let mut s = h.add(a, b).clone();
                s.insert(a);
                s.insert(b);
                s
            }
        },
    )
    .expect("prime of total tables is total");
    FiniteHyperfield::new(tables).expect("the prime of a hyperfield is a hyperfield")
}

/// Whether `prime(h)` has the same tables as `h`.
pub fn is_prime_fixed(h: &FiniteHyperfield) -> bool {
    prime(h) == *h
}
