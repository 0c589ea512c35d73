//! Diagonal forms over quadratic hyperfields and their Witt rings.

mod harrison;
mod reduce;
mod ring;

use std::fmt;

use thiserror::Error;

use crate::hyperfield::{Elem, ElemSet, FiniteHyperfield};

pub use harrison::{harrison_check, harrison_check_rings, HarrisonReport};
pub use reduce::{witt_reduce, WittClass, WittReducer};
pub use ring::{witt_ring, witt_ring_with_bounds, WittBounds, WittRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WittError {
    #[error("forms must have at least one entry")]
    EmptyForm,
    #[error("form entries must be nonzero")]
    ZeroEntry,
    #[error("unknown element {0:?}")]
    UnknownLabel(String),
    #[error("isotropy needs dimension at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("binary equivalence needs binary forms")]
    NotBinary,
    #[error("forms live over different hyperfields")]
    AmbientMismatch,
    #[error("hyperfield is not quadratic: {0}")]
    NotQuadratic(String),
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("chain closure disagrees with isotropy at {0}")]
    ChainClosureDiscrepancy(String),
    #[error("ring axiom fails: {0}")]
    RingAxiom(String),
    #[error("morphism is not an isomorphism")]
    NotAnIsomorphism,
}

/// A diagonal form `⟨a₁, …, aₙ⟩` with nonzero entries.
#[derive(Clone, PartialEq, Eq)]
pub struct DiagonalForm {
    ambient: FiniteHyperfield,
    entries: Vec<Elem>,
}

impl DiagonalForm {
    pub fn new(ambient: &FiniteHyperfield, entries: Vec<Elem>) -> Result<Self, WittError> {
        if entries.is_empty() {
            return Err(WittError::EmptyForm);
        }
        if entries.iter().any(|&e| e == ambient.zero() || e.index() >= ambient.len()) {
            return Err(WittError::ZeroEntry);
        }
        Ok(DiagonalForm { ambient: ambient.clone(), entries })
    }

    pub fn from_labels(ambient: &FiniteHyperfield, labels: &[&str]) -> Result<Self, WittError> {
        let entries = labels
            .iter()
            .map(|l| ambient.find(l).ok_or_else(|| WittError::UnknownLabel(l.to_string())))
            .collect::<Result<_, _>>()?;
        Self::new(ambient, entries)
    }

    pub fn ambient(&self) -> &FiniteHyperfield {
        &self.ambient
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn labels(&self) -> Vec<String> {
        self.entries.iter().map(|&e| self.ambient.label(e).to_string()).collect()
    }

    pub fn scale(&self, x: Elem) -> DiagonalForm {
        DiagonalForm { ambient: self.ambient.clone(), entries: self.entries.iter().map(|&e| self.ambient.mul(x, e)).collect() }
    }

    pub fn orthogonal_sum(&self, other: &DiagonalForm) -> Result<DiagonalForm, WittError> {
        if self.ambient != other.ambient {
            return Err(WittError::AmbientMismatch);
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(DiagonalForm { ambient: self.ambient.clone(), entries })
    }
}

impl fmt::Debug for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩", self.labels().join(","))
    }
}

/// The full sum `a₁ + … + aₙ` as a left fold.
pub(crate) fn form_sum(h: &FiniteHyperfield, entries: &[Elem]) -> ElemSet {
    let Some((&first, rest)) = entries.split_first() else {
        return h.set_of([h.zero()]);
    };
    rest.iter().fold(h.set_of([first]), |acc, &a| h.add_set_elem(&acc, a))
}

/// Nonzero elements of `a₁ + … + aₙ`.
pub fn value_set(f: &DiagonalForm) -> ElemSet {
    let mut s = form_sum(&f.ambient, &f.entries);
    s.remove(f.ambient.zero());
    s
}

pub fn is_isotropic(f: &DiagonalForm) -> Result<bool, WittError> {
    if f.dim() < 2 {
        return Err(WittError::DimensionTooSmall(f.dim()));
    }
    Ok(form_sum(&f.ambient, &f.entries).contains(f.ambient.zero()))
}

/// `⟨a,b⟩ ≈ ⟨c,d⟩` iff `c ∈ D⟨a,b⟩` and `ab = cd`.
pub fn binary_equiv(f: &DiagonalForm, g: &DiagonalForm) -> Result<bool, WittError> {
    if f.ambient != g.ambient {
        return Err(WittError::AmbientMismatch);
    }
    let ([a, b], [c, d]) = (f.entries.as_slice(), g.entries.as_slice()) else {
        return Err(WittError::NotBinary);
    };
    Ok(binary_equiv_elems(&f.ambient, *a, *b, *c, *d))
}

pub(crate) fn binary_equiv_elems(h: &FiniteHyperfield, a: Elem, b: Elem, c: Elem, d: Elem) -> bool {
    h.add(a, b).contains(c) && h.mul(a, b) == h.mul(c, d)
}
