use std::fmt;

use super::ConstructError;
use crate::hyperfield::{Elem, ElemSet, FiniteHyperfield};

/// A subgroup of the multiplicative group of a finite hyperfield.
#[derive(Clone, PartialEq, Eq)]
pub struct SquareClassSubgroup {
    ambient: FiniteHyperfield,
    members: ElemSet,
}

impl SquareClassSubgroup {
    pub fn new(ambient: &FiniteHyperfield, members: ElemSet) -> Result<Self, ConstructError> {
        if members.capacity() != ambient.len() {
            return Err(ConstructError::InvalidSubgroup("member set over a different carrier".into()));
        }
        if members.contains(ambient.zero()) {
            return Err(ConstructError::InvalidSubgroup("contains 0".into()));
        }
        if !members.contains(ambient.one()) {
            return Err(ConstructError::InvalidSubgroup("does not contain 1".into()));
        }
        for a in members.iter() {
            for b in members.iter() {
                let p = ambient.mul(a, b);
                if !members.contains(p) {
                    return Err(ConstructError::InvalidSubgroup(format!(
                        "{}·{} = {} is outside",
                        ambient.label(a),
                        ambient.label(b),
                        ambient.label(p)
                    )));
                }
            }
            match ambient.inverse(a) {
                Some(inv) if members.contains(inv) => {}
                _ => {
                    return Err(ConstructError::InvalidSubgroup(format!("inverse of {} is outside", ambient.label(a))));
                }
            }
        }
        Ok(SquareClassSubgroup { ambient: ambient.clone(), members })
    }

    pub fn from_labels(ambient: &FiniteHyperfield, labels: &[&str]) -> Result<Self, ConstructError> {
        let mut s = ambient.empty_set();
        for l in labels {
            let e = ambient
                .find(l)
                .ok_or_else(|| ConstructError::InvalidSubgroup(format!("unknown element {l:?}")))?;
            s.insert(e);
        }
        Self::new(ambient, s)
    }

    pub fn trivial(ambient: &FiniteHyperfield) -> Self {
        Self::new(ambient, ambient.set_of([ambient.one()])).expect("{1} is a subgroup")
    }

    pub fn full(ambient: &FiniteHyperfield) -> Self {
        Self::new(ambient, ambient.nonzero_set()).expect("H* is a subgroup")
    }

    /// The subgroup generated by `gens`.
    pub fn generated_by(ambient: &FiniteHyperfield, gens: &[Elem]) -> Result<Self, ConstructError> {
        if gens.contains(&ambient.zero()) {
            return Err(ConstructError::InvalidSubgroup("generator 0".into()));
        }
        let mut members = ambient.set_of([ambient.one()]);
        let mut frontier = vec![ambient.one()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = ambient.mul(x, g);
                if !members.contains(y) {
                    members.insert(y);
                    frontier.push(y);
                }
            }
        }
        Self::new(ambient, members)
    }

    pub fn ambient(&self) -> &FiniteHyperfield {
        &self.ambient
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.members.contains(e)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains_minus_one(&self) -> bool {
        self.contains(self.ambient.minus_one())
    }

    /// Index of this subgroup in `H*`.
    pub fn index(&self) -> usize {
        self.ambient.nonzero_count() / self.len()
    }

    /// The coset `xT`.
    pub fn coset(&self, x: Elem) -> ElemSet {
        self.ambient.scale_set(x, &self.members)
    }

    /// `±T`.
    pub fn plus_minus(&self) -> ElemSet {
        let mut s = self.members.clone();
        s.union_with(&self.coset(self.ambient.minus_one()));
        s
    }

    pub fn labels(&self) -> Vec<String> {
        self.ambient.set_labels(&self.members)
    }
}

impl fmt::Debug for SquareClassSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(","))
    }
}
