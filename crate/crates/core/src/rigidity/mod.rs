//! Rigid elements, basic parts and valuation-shaped subgroups.
//!
//! For a subgroup `T ⊆ H*`, an element `x` is `T`-rigid when
//! `T + Tx ⊆ T ∪ Tx`. The basic part `B(T)` collects the `x` for which `x` or
//! `-x` fails to be rigid. `T` is exceptional when `B(T) = ±T` and either
//! `-1 ∈ T` or `T` is additively closed, where additive closure is read on
//! the hyperfield: `(t₁ + t₂) ∖ {0} ⊆ T`.

mod subgroups;

use thiserror::Error;

use crate::construct::{quotient, ConstructError, SquareClassSubgroup};
use crate::hyperfield::{Elem, ElemSet, FiniteHyperfield, Morphism, MorphismKind};

pub use subgroups::{enumerate_subgroups, MAX_SUBGROUP_UNITS};

#[derive(Debug, Clone, Error)]
pub enum RigidityError {
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("hyperfield is not quadratic: {0}")]
    NotQuadratic(String),
    #[error("morphism is not an isomorphism")]
    NotAnIsomorphism,
    #[error("{0} is not a power of two")]
    NotPowerOfTwo(u64),
    #[error("subgroup lives in a different hyperfield")]
    AmbientMismatch,
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

pub fn is_t_rigid(h: &FiniteHyperfield, t: &SquareClassSubgroup, x: Elem) -> bool {
    let allowed = {
        let mut s = t.members().clone();
        s.union_with(&t.coset(x));
        s
    };
    // T ∪ Tx is stable under T, so T + Tx ⊆ T ∪ Tx reduces to 1 + Tx.
    t.members().iter().all(|s| h.add(h.one(), h.mul(s, x)).is_subset(&allowed))
}

/// Whether `(t₁ + t₂) ∖ {0} ⊆ T` for all `t₁, t₂ ∈ T`.
pub fn is_additively_closed(h: &FiniteHyperfield, t: &SquareClassSubgroup) -> bool {
    let mut allowed = t.members().clone();
    allowed.insert(h.zero());
    t.members().iter().all(|s| h.add(h.one(), s).is_subset(&allowed))
}

#[derive(Clone, Debug)]
pub struct RigidityReport {
    pub ambient: FiniteHyperfield,
    pub subgroup: SquareClassSubgroup,
    /// Indexed by element; `false` at zero.
    pub rigid: Vec<bool>,
    pub basic: ElemSet,
    /// `B(T)` as a subgroup, when it is one.
    pub basic_subgroup: Option<SquareClassSubgroup>,
    pub plus_minus: ElemSet,
    pub subgroup_index: usize,
    pub basic_index: Option<usize>,
    pub additively_closed: bool,
    pub exceptional: bool,
}

impl RigidityReport {
    pub fn basic_labels(&self) -> Vec<String> {
        self.ambient.set_labels(&self.basic)
    }

    pub fn basic_is_plus_minus(&self) -> bool {
        self.basic == self.plus_minus
    }

    pub fn basic_is_subgroup_itself(&self) -> bool {
        &self.basic == self.subgroup.members()
    }
}

pub fn basic_part(h: &FiniteHyperfield, t: &SquareClassSubgroup) -> RigidityReport {
    let mut rigid = vec![false; h.len()];
    for x in h.nonzero() {
        rigid[x.index()] = is_t_rigid(h, t, x);
    }
    let basic = h.set_of(h.nonzero().filter(|&x| !rigid[x.index()] || !rigid[h.neg(x).index()]));
    let basic_subgroup = SquareClassSubgroup::new(h, basic.clone()).ok();
    let plus_minus = t.plus_minus();
    let additively_closed = is_additively_closed(h, t);
    let exceptional = basic == plus_minus && (t.contains_minus_one() || additively_closed);
    RigidityReport {
        ambient: h.clone(),
        subgroup: t.clone(),
        rigid,
        basic_index: basic_subgroup.as_ref().map(SquareClassSubgroup::index),
        basic_subgroup,
        basic,
        plus_minus,
        subgroup_index: t.index(),
        additively_closed,
        exceptional,
    }
}

/// How a subgroup `T` sits below its upper group `U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValuationShape {
    /// `B(T) = U` and `T` is unexceptional.
    Unexceptional,
    /// `B(T) = T` and `(U:T) = 2`.
    IndexTwo,
}

impl ValuationShape {
    pub fn name(self) -> &'static str {
        match self {
            ValuationShape::Unexceptional => "unexceptional",
            ValuationShape::IndexTwo => "index-two",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ValuationCandidate {
    pub subgroup: SquareClassSubgroup,
    pub shape: ValuationShape,
    /// Every upper group `U` meeting the structural conditions. Exactly one
    /// for the unexceptional shape; possibly several for index two.
    pub uppers: Vec<SquareClassSubgroup>,
    /// `(H*:U)`, shared by all listed uppers.
    pub upper_index: usize,
    pub report: RigidityReport,
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub ambient: FiniteHyperfield,
    pub subgroups_examined: usize,
    pub candidates: Vec<ValuationCandidate>,
}

impl DecompositionReport {
    pub fn with_shape(&self, shape: ValuationShape, upper_index: usize) -> Vec<&ValuationCandidate> {
        self.candidates.iter().filter(|c| c.shape == shape && c.upper_index == upper_index).collect()
    }
}

/// Whether `U ⊇ T` can serve as an upper group for `T`: `U` is proper,
/// contains `-1`, every unit outside `U` is `T`-rigid, and `U/T ∪ {0}` is a
/// sub-hyperfield of `H/ₘT`.
pub fn is_upper_group(
    h: &FiniteHyperfield,
    t: &SquareClassSubgroup,
    u: &SquareClassSubgroup,
    rigid: &[bool],
) -> Result<bool, RigidityError> {
    if u.len() == h.nonzero_count() || !u.contains_minus_one() || !t.members().is_subset(u.members()) {
        return Ok(false);
    }
    if h.nonzero().any(|x| !u.contains(x) && !rigid[x.index()]) {
        return Ok(false);
    }
    let mut allowed = u.members().clone();
    allowed.insert(h.zero());
    let minus_t = t.coset(h.minus_one());
    for y in u.members().iter().filter(|&y| !minus_t.contains(y)) {
        if !t.members().iter().all(|s| h.add(h.one(), h.mul(s, y)).is_subset(&allowed)) {
            return Ok(false);
        }
    }
    let (q, pi) = quotient(h, t)?;
    let image = q.set_of(u.members().iter().map(|y| pi.apply(y)));
    Ok(q.restrict(&image).is_ok())
}

pub fn detect_valuation_subgroups(h: &FiniteHyperfield) -> Result<DecompositionReport, RigidityError> {
    if let Some(why) = h.quadratic_violation() {
        return Err(RigidityError::NotQuadratic(why));
    }
    let all: Vec<SquareClassSubgroup> = enumerate_subgroups(h)?.collect();
    let mut candidates = Vec::new();
    for t in &all {
        let report = basic_part(h, t);
        if let Some(b) = report.basic_subgroup.clone() {
            if !report.exceptional && b.len() > t.len() && is_upper_group(h, t, &b, &report.rigid)? {
                candidates.push(ValuationCandidate {
                    subgroup: t.clone(),
                    shape: ValuationShape::Unexceptional,
                    upper_index: b.index(),
                    uppers: vec![b],
                    report,
                });
                continue;
            }
        }
        if report.basic_is_subgroup_itself() {
            let mut uppers = Vec::new();
            for u in all.iter().filter(|u| u.len() == 2 * t.len() && t.members().is_subset(u.members())) {
                if is_upper_group(h, t, u, &report.rigid)? {
                    uppers.push(u.clone());
                }
            }
            if let Some(first) = uppers.first() {
                candidates.push(ValuationCandidate {
                    subgroup: t.clone(),
                    shape: ValuationShape::IndexTwo,
                    upper_index: first.index(),
                    uppers,
                    report,
                });
            }
        }
    }
    Ok(DecompositionReport { ambient: h.clone(), subgroups_examined: all.len(), candidates })
}

/// Transport of a subgroup along an isomorphism.
#[derive(Clone, Debug)]
pub struct SubgroupMatch {
    pub image: SquareClassSubgroup,
    /// The map `H/ₘT → H'/ₘS` induced on quotients, when it is a morphism.
    pub induced: Option<Morphism>,
    pub quotient_isomorphism: bool,
    /// For an unexceptional-shaped `T`: the upper groups `U` and `U'`, and
    /// whether `α(U) = U'`.
    pub upper: Option<(SquareClassSubgroup, SquareClassSubgroup, bool)>,
}

impl SubgroupMatch {
    pub fn holds(&self) -> bool {
        self.quotient_isomorphism && self.upper.as_ref().is_none_or(|u| u.2)
    }
}

pub fn match_subgroups(alpha: &Morphism, t: &SquareClassSubgroup) -> Result<SubgroupMatch, RigidityError> {
    if alpha.kind() != MorphismKind::Isomorphism {
        return Err(RigidityError::NotAnIsomorphism);
    }
    let (h1, h2) = (alpha.source(), alpha.target());
    if t.ambient() != h1 {
        return Err(RigidityError::AmbientMismatch);
    }
    let image = SquareClassSubgroup::new(h2, alpha.apply_set(t.members()))?;
    let (q1, p1) = quotient(h1, t)?;
    let (q2, p2) = quotient(h2, &image)?;
    let mut map = vec![q2.zero(); q1.len()];
    for a in h1.elements() {
        map[p1.apply(a).index()] = p2.apply(alpha.apply(a));
    }
    let induced = Morphism::new(q1, q2, map).ok();
    let quotient_isomorphism = induced.as_ref().is_some_and(|m| m.kind() == MorphismKind::Isomorphism);
    let r1 = basic_part(h1, t);
    let upper = match r1.basic_subgroup.clone() {
        Some(u) if !r1.exceptional && u.len() > t.len() && is_upper_group(h1, t, &u, &r1.rigid)? => {
            let r2 = basic_part(h2, &image);
            let moved = alpha.apply_set(u.members());
            match r2.basic_subgroup {
                Some(u2) => {
                    let ok = &moved == u2.members();
                    Some((u, u2, ok))
                }
                None => {
                    let u2 = SquareClassSubgroup::new(h2, moved)?;
                    Some((u, u2, false))
                }
            }
        }
        _ => None,
    };
    Ok(SubgroupMatch { image, induced, quotient_isomorphism, upper })
}

/// `r` with `|Γ/2Γ| = 2^r`; a lower bound for the rational rank of `Γ`.
pub fn rank_lower_bound(quotient_order: u64) -> Result<u32, RigidityError> {
    if quotient_order == 0 || !quotient_order.is_power_of_two() {
        return Err(RigidityError::NotPowerOfTwo(quotient_order));
    }
    Ok(quotient_order.trailing_zeros())
}
