use std::fmt;

use thiserror::Error;

use super::{Elem, ElemSet, FiniteHyperfield, MalformedTable};

/// Classification of a morphism, weakest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MorphismKind {
    General,
    GroupExtension,
    Quotient,
    Isomorphism,
}

impl fmt::Display for MorphismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MorphismKind::General => "general",
            MorphismKind::GroupExtension => "group-extension",
            MorphismKind::Quotient => "quotient",
            MorphismKind::Isomorphism => "isomorphism",
        })
    }
}

/// First failing morphism condition, with element labels.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MorphismViolation {
    #[error("map has {got} entries, source has {expected} elements")]
    WrongLength { expected: usize, got: usize },
    #[error("image index {0} outside the target")]
    OutOfRange(usize),
    #[error("f(0) = {0} is not zero")]
    Zero(String),
    #[error("f(1) = {0} is not one")]
    One(String),
    #[error("f(-{0}) ≠ -f({0})")]
    Neg(String),
    #[error("f({0}·{1}) ≠ f({0})·f({1})")]
    Mul(String, String),
    #[error("{2} ∈ {0}+{1} but f({2}) ∉ f({0})+f({1})")]
    Add(String, String, String),
}

/// Check the five morphism conditions in the order zero, one, negation,
/// product, sum, reporting the first violation in source element order.
pub fn check_morphism(source: &FiniteHyperfield, target: &FiniteHyperfield, map: &[Elem]) -> Result<(), MorphismViolation> {
    if map.len() != source.len() {
        return Err(MorphismViolation::WrongLength { expected: source.len(), got: map.len() });
    }
    if let Some(bad) = map.iter().find(|e| e.index() >= target.len()) {
        return Err(MorphismViolation::OutOfRange(bad.index()));
    }
    let f = |e: Elem| map[e.index()];
    let l = |e: Elem| source.label(e).to_string();
    if f(source.zero()) != target.zero() {
        return Err(MorphismViolation::Zero(target.label(f(source.zero())).into()));
    }
    if f(source.one()) != target.one() {
        return Err(MorphismViolation::One(target.label(f(source.one())).into()));
    }
    for a in source.elements() {
        if f(source.neg(a)) != target.neg(f(a)) {
            return Err(MorphismViolation::Neg(l(a)));
        }
    }
    for a in source.elements() {
        for b in source.elements() {
            if f(source.mul(a, b)) != target.mul(f(a), f(b)) {
                return Err(MorphismViolation::Mul(l(a), l(b)));
            }
        }
    }
    for a in source.elements() {
        for b in source.elements() {
            let img = target.add(f(a), f(b));
            if let Some(c) = source.add(a, b).iter().find(|&c| !img.contains(f(c))) {
                return Err(MorphismViolation::Add(l(a), l(b), l(c)));
            }
        }
    }
    Ok(())
}

pub fn is_morphism(source: &FiniteHyperfield, target: &FiniteHyperfield, map: &[Elem]) -> bool {
    check_morphism(source, target, map).is_ok()
}

/// A verified morphism together with its classification.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    source: FiniteHyperfield,
    target: FiniteHyperfield,
    map: Vec<Elem>,
    kind: MorphismKind,
}

impl Morphism {
    pub fn new(source: FiniteHyperfield, target: FiniteHyperfield, map: Vec<Elem>) -> Result<Self, MorphismViolation> {
        check_morphism(&source, &target, &map)?;
        let kind = classify(&source, &target, &map);
        Ok(Morphism { source, target, map, kind })
    }

    /// Build from `(source label, target label)` pairs covering the source.
    pub fn from_labels(
        source: FiniteHyperfield,
        target: FiniteHyperfield,
        pairs: &[(&str, &str)],
    ) -> Result<Result<Self, MorphismViolation>, MalformedTable> {
        let mut map: Vec<Option<Elem>> = vec![None; source.len()];
        for (a, b) in pairs {
            let sa = source.find(a).ok_or_else(|| MalformedTable::UnknownLabel(a.to_string()))?;
            let tb = target.find(b).ok_or_else(|| MalformedTable::UnknownLabel(b.to_string()))?;
            map[sa.index()] = Some(tb);
        }
        let map: Vec<Elem> = map
            .into_iter()
            .enumerate()
            .map(|(i, e)| e.ok_or_else(|| MalformedTable::UnknownLabel(format!("no image for {}", source.label(Elem::new(i))))))
            .collect::<Result<_, _>>()?;
        Ok(Morphism::new(source, target, map))
    }

    pub fn identity(h: &FiniteHyperfield) -> Self {
        Morphism::new(h.clone(), h.clone(), h.elements().collect()).expect("identity is a morphism")
    }

    pub fn source(&self) -> &FiniteHyperfield {
        &self.source
    }

    pub fn target(&self) -> &FiniteHyperfield {
        &self.target
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn kind(&self) -> MorphismKind {
        self.kind
    }

    pub fn apply(&self, e: Elem) -> Elem {
        self.map[e.index()]
    }

    pub fn apply_set(&self, s: &ElemSet) -> ElemSet {
        self.target.set_of(s.iter().map(|e| self.apply(e)))
    }

    /// `(source label, target label)` pairs in source order.
    pub fn label_pairs(&self) -> Vec<(String, String)> {
        self.source
            .elements()
            .map(|e| (self.source.label(e).to_string(), self.target.label(self.apply(e)).to_string()))
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = ElemSet::empty(self.target.len());
        self.map.iter().all(|&e| {
            let fresh = !seen.contains(e);
            seen.insert(e);
            fresh
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.target.set_of(self.map.iter().copied()).len() == self.target.len()
    }

    /// Nonzero source elements mapped to one.
    pub fn kernel(&self) -> ElemSet {
        self.source.set_of(self.source.nonzero().filter(|&e| self.apply(e) == self.target.one()))
    }

    pub fn inverse(&self) -> Option<Morphism> {
        if !self.is_injective() || !self.is_surjective() {
            return None;
        }
        let mut inv = vec![Elem::new(0); self.target.len()];
        for a in self.source.elements() {
            inv[self.apply(a).index()] = a;
        }
        Morphism::new(self.target.clone(), self.source.clone(), inv).ok()
    }

    pub fn compose(&self, then: &Morphism) -> Result<Morphism, MorphismViolation> {
        let map = self.map.iter().map(|&e| then.apply(e)).collect();
        Morphism::new(self.source.clone(), then.target.clone(), map)
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism[{}](", self.kind)?;
        for (i, (a, b)) in self.label_pairs().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}↦{b}")?;
        }
        write!(f, ")")
    }
}

/// Strongest applicable kind of a verified morphism.
pub fn classify_morphism(f: &Morphism) -> MorphismKind {
    f.kind
}

fn classify(source: &FiniteHyperfield, target: &FiniteHyperfield, map: &[Elem]) -> MorphismKind {
    let injective = {
        let s = target.set_of(map.iter().copied());
        s.len() == map.len()
    };
    let surjective = target.set_of(map.iter().copied()).len() == target.len();
    if injective && surjective {
        let mut inv = vec![Elem::new(0); target.len()];
        for a in source.elements() {
            inv[map[a.index()].index()] = a;
        }
        if is_morphism(target, source, &inv) {
            return MorphismKind::Isomorphism;
        }
    }
    if surjective && is_quotient(source, target, map) {
        return MorphismKind::Quotient;
    }
    if injective && is_group_extension(source, target, map) {
        return MorphismKind::GroupExtension;
    }
    MorphismKind::General
}

/// `f(c) ∈ f(a)+f(b)` iff `cs ∈ at + bu` for some `s, t, u` in the kernel.
/// Equivalently the image of `⋃_{t} t·⋃_{w} (a + b·w)` equals `f(a)+f(b)`.
fn is_quotient(source: &FiniteHyperfield, target: &FiniteHyperfield, map: &[Elem]) -> bool {
    let kernel: Vec<Elem> = source.nonzero().filter(|&e| map[e.index()] == target.one()).collect();
    for a in source.elements() {
        for b in source.elements() {
            let mut r = source.empty_set();
            for &w in &kernel {
                r.union_with(source.add(a, source.mul(b, w)));
            }
            let mut img = target.empty_set();
            for &t in &kernel {
                for x in r.iter() {
                    img.insert(map[source.mul(t, x).index()]);
                }
            }
            if &img != target.add(map[a.index()], map[b.index()]) {
                return false;
            }
        }
    }
    true
}

fn is_group_extension(source: &FiniteHyperfield, target: &FiniteHyperfield, map: &[Elem]) -> bool {
    let image = target.set_of(map.iter().copied());
    let one = target.one();
    for x in target.nonzero() {
        if image.contains(x) {
            continue;
        }
        let rigid = target.set_of([one, x]);
        if !target.add(one, x).is_subset(&rigid) {
            return false;
        }
    }
    let minus_one = source.minus_one();
    for y in source.elements() {
        if y == minus_one {
            continue;
        }
        let img = target.set_of(source.add(source.one(), y).iter().map(|e| map[e.index()]));
        if &img != target.add(one, map[y.index()]) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperfield::test_tables::three_element;

    fn qf5() -> FiniteHyperfield {
        FiniteHyperfield::new(three_element(&[1, 2])).unwrap()
    }

    #[test]
    fn identity_is_isomorphism() {
        let h = qf5();
        assert_eq!(Morphism::identity(&h).kind(), MorphismKind::Isomorphism);
    }

    #[test]
    fn collapse_to_krasner_is_quotient() {
        let h = qf5();
        let k = FiniteHyperfield::krasner();
        let f = Morphism::from_labels(h, k, &[("0", "0"), ("1", "1"), ("p", "1")]).unwrap().unwrap();
        assert_eq!(f.kind(), MorphismKind::Quotient);
        assert_eq!(f.kernel().len(), 2);
    }

    #[test]
    fn violations_report_first_condition() {
        let h = qf5();
        let k = FiniteHyperfield::krasner();
        let r = check_morphism(&k, &h, &[Elem::new(0), Elem::new(2)]);
        assert_eq!(r, Err(MorphismViolation::One("p".into())));
    }
}
