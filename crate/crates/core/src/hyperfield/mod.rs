//! Exact finite hyperfields: tables, axiom verification, morphisms and
//! isomorphism search.

mod axioms;
mod iso;
mod morphism;

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use thiserror::Error;

pub use crate::elemset::{Elem, ElemSet};
pub use axioms::{check_axioms, Axiom, AxiomOutcome, AxiomReport};
pub use iso::{find_isomorphisms, fingerprint, Fingerprint};
pub use morphism::{check_morphism, classify_morphism, is_morphism, Morphism, MorphismKind, MorphismViolation};

/// Default upper bound on carrier size, overridable through `HFLAB_MAX_ELEMENTS`.
pub const DEFAULT_MAX_ELEMENTS: usize = 257;

pub fn max_elements() -> usize {
    std::env::var("HFLAB_MAX_ELEMENTS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ELEMENTS)
}

/// Structural problems detected before any axiom is evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MalformedTable {
    #[error("carrier is empty")]
    EmptyCarrier,
    #[error("carrier has {size} elements, bound is {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("invalid element label {0:?}")]
    InvalidLabel(String),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("negation undefined at {0:?}")]
    MissingNeg(String),
    #[error("product undefined at ({0:?}, {1:?})")]
    MissingMul(String, String),
    #[error("sum undefined at ({0:?}, {1:?})")]
    MissingAdd(String, String),
    #[error("sum ({0:?}, {1:?}) is the empty set")]
    EmptySum(String, String),
    #[error("conflicting entries for {0}")]
    Conflict(String),
}

#[derive(Debug, Clone, Error)]
pub enum HyperfieldError {
    #[error(transparent)]
    Malformed(#[from] MalformedTable),
    #[error("hyperfield axioms fail: {}", .0.summary())]
    AxiomsFailed(Box<AxiomReport>),
}

#[inline]
fn tri(a: Elem, b: Elem) -> usize {
    let (lo, hi) = if a <= b { (a.index(), b.index()) } else { (b.index(), a.index()) };
    hi * (hi + 1) / 2 + lo
}

/// Raw hyperfield tables over a labelled carrier. Commutativity of both
/// operations is structural: only pairs `a <= b` are stored.
///
/// Values of this type are total but not necessarily valid; see
/// [`check_axioms`] and [`FiniteHyperfield`].
#[derive(Clone, PartialEq, Eq)]
pub struct HyperfieldTables {
    labels: Vec<String>,
    index: HashMap<String, Elem>,
    zero: Elem,
    one: Elem,
    neg: Vec<Elem>,
    mul: Vec<Elem>,
    add: Vec<ElemSet>,
}

impl HyperfieldTables {
    /// Build tables from closures. Only pairs `a <= b` are queried.
    pub fn from_fns<N, M, A>(
        labels: Vec<String>,
        zero: Elem,
        one: Elem,
        neg: N,
        mul: M,
        add: A,
    ) -> Result<Self, MalformedTable>
    where
        N: Fn(Elem) -> Elem,
        M: Fn(Elem, Elem) -> Elem,
        A: Fn(Elem, Elem) -> ElemSet,
    {
        let n = labels.len();
        let mut b = TableBuilder::new(labels, zero, one)?;
        for a in (0..n).map(Elem::new) {
            b.set_neg(a, neg(a))?;
            for c in (a.index()..n).map(Elem::new) {
                b.set_mul(a, c, mul(a, c))?;
                b.set_add(a, c, add(a, c))?;
            }
        }
        b.finish()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e.index()]
    }

    pub fn find(&self, label: &str) -> Option<Elem> {
        self.index.get(label).copied()
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn minus_one(&self) -> Elem {
        self.neg(self.one)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a.index()]
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[tri(a, b)]
    }

    pub fn add(&self, a: Elem, b: Elem) -> &ElemSet {
        &self.add[tri(a, b)]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.labels.len()).map(Elem::new)
    }

    /// Nonzero elements in carrier order.
    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements().filter(move |&e| e != self.zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.len() - 1
    }

    pub fn empty_set(&self) -> ElemSet {
        ElemSet::empty(self.len())
    }

    pub fn full_set(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    pub fn nonzero_set(&self) -> ElemSet {
        let mut s = self.full_set();
        s.remove(self.zero);
        s
    }

    pub fn set_of<I: IntoIterator<Item = Elem>>(&self, it: I) -> ElemSet {
        ElemSet::from_iter(self.len(), it)
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.elements().find(|&b| self.mul(a, b) == self.one)
    }

    /// `X + c := ⋃_{x ∈ X} (x + c)`.
    pub fn add_set_elem(&self, xs: &ElemSet, c: Elem) -> ElemSet {
        let mut out = self.empty_set();
        for x in xs.iter() {
            out.union_with(self.add(x, c));
        }
        out
    }

    /// `X + Y := ⋃ (x + y)`.
    pub fn add_sets(&self, xs: &ElemSet, ys: &ElemSet) -> ElemSet {
        let mut out = self.empty_set();
        for y in ys.iter() {
            out.union_with(&self.add_set_elem(xs, y));
        }
        out
    }

    pub fn scale_set(&self, a: Elem, xs: &ElemSet) -> ElemSet {
        self.set_of(xs.iter().map(|x| self.mul(a, x)))
    }

    pub fn neg_set(&self, xs: &ElemSet) -> ElemSet {
        self.set_of(xs.iter().map(|x| self.neg(x)))
    }

    /// Nonzero part of a sum: the value set `D⟨a, b⟩`.
    pub fn value_set2(&self, a: Elem, b: Elem) -> ElemSet {
        let mut s = self.add(a, b).clone();
        s.remove(self.zero);
        s
    }

    pub fn set_labels(&self, xs: &ElemSet) -> Vec<String> {
        xs.iter().map(|e| self.label(e).to_string()).collect()
    }

    /// First violation of the quadratic-hyperfield conditions: every nonzero
    /// `a` has `a² = 1`, and `1 + a` is a subgroup of `H*` for `a ≠ −1`.
    pub fn quadratic_violation(&self) -> Option<String> {
        let one = self.one;
        for a in self.nonzero() {
            if self.mul(a, a) != one {
                return Some(format!("{}² ≠ 1", self.label(a)));
            }
        }
        for a in self.nonzero() {
            if a == self.minus_one() {
                continue;
            }
            let s = self.add(one, a);
            if s.contains(self.zero) || !s.contains(one) {
                return Some(format!("1+{} is not a subgroup of H*", self.label(a)));
            }
            for x in s.iter() {
                for y in s.iter() {
                    if !s.contains(self.mul(x, y)) {
                        return Some(format!("1+{} is not closed under products", self.label(a)));
                    }
                }
            }
        }
        None
    }

    pub fn is_quadratic(&self) -> bool {
        self.quadratic_violation().is_none()
    }
}

impl fmt::Debug for HyperfieldTables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HyperfieldTables").field("labels", &self.labels).finish_non_exhaustive()
    }
}

impl fmt::Display for HyperfieldTables {
    /// Addition and multiplication grids, one row per element.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_set = |s: &ElemSet| format!("{{{}}}", self.set_labels(s).join(","));
        let width = self
            .elements()
            .flat_map(|a| self.elements().map(move |b| (a, b)))
            .map(|(a, b)| fmt_set(self.add(a, b)).chars().count())
            .chain(self.labels.iter().map(|l| l.chars().count()))
            .max()
            .unwrap_or(1);
        writeln!(f, "elements: {}", self.labels.join(" "))?;
        writeln!(f, "zero: {}  one: {}  -1: {}", self.label(self.zero), self.label(self.one), self.label(self.minus_one()))?;
        writeln!(f, "addition:")?;
        write!(f, "{:>width$} |", "+")?;
        for b in self.elements() {
            write!(f, " {:>width$}", self.label(b))?;
        }
        writeln!(f)?;
        for a in self.elements() {
            write!(f, "{:>width$} |", self.label(a))?;
            for b in self.elements() {
                write!(f, " {:>width$}", fmt_set(self.add(a, b)))?;
            }
            writeln!(f)?;
        }
        writeln!(f, "multiplication:")?;
        for a in self.elements() {
            write!(f, "{:>width$} |", self.label(a))?;
            for b in self.elements() {
                write!(f, " {:>width$}", self.label(self.mul(a, b)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Incremental construction of [`HyperfieldTables`].
pub struct TableBuilder {
    labels: Vec<String>,
    index: HashMap<String, Elem>,
    zero: Elem,
    one: Elem,
    neg: Vec<Option<Elem>>,
    mul: Vec<Option<Elem>>,
    add: Vec<Option<ElemSet>>,
}

impl TableBuilder {
    pub fn new(labels: Vec<String>, zero: Elem, one: Elem) -> Result<Self, MalformedTable> {
        let n = labels.len();
        if n == 0 {
            return Err(MalformedTable::EmptyCarrier);
        }
        let bound = max_elements();
        if n > bound {
            return Err(MalformedTable::TooLarge { size: n, bound });
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.contains('|') {
                return Err(MalformedTable::InvalidLabel(l.clone()));
            }
            if index.insert(l.clone(), Elem::new(i)).is_some() {
                return Err(MalformedTable::DuplicateLabel(l.clone()));
            }
        }
        if zero.index() >= n || one.index() >= n {
            return Err(MalformedTable::UnknownLabel(format!("index {}", zero.index().max(one.index()))));
        }
        let pairs = n * (n + 1) / 2;
        Ok(TableBuilder {
            labels,
            index,
            zero,
            one,
            neg: vec![None; n],
            mul: vec![None; pairs],
            add: vec![None; pairs],
        })
    }

    pub fn resolve(&self, label: &str) -> Result<Elem, MalformedTable> {
        self.index.get(label).copied().ok_or_else(|| MalformedTable::UnknownLabel(label.to_string()))
    }

    fn check(&self, e: Elem) -> Result<Elem, MalformedTable> {
        if e.index() < self.labels.len() {
            Ok(e)
        } else {
            Err(MalformedTable::UnknownLabel(format!("index {}", e.index())))
        }
    }

    pub fn set_neg(&mut self, a: Elem, b: Elem) -> Result<(), MalformedTable> {
        self.check(a)?;
        self.check(b)?;
        match self.neg[a.index()] {
            Some(old) if old != b => Err(MalformedTable::Conflict(format!("-{}", self.labels[a.index()]))),
            _ => {
                self.neg[a.index()] = Some(b);
                Ok(())
            }
        }
    }

    pub fn set_mul(&mut self, a: Elem, b: Elem, c: Elem) -> Result<(), MalformedTable> {
        self.check(a)?;
        self.check(b)?;
        self.check(c)?;
        let k = tri(a, b);
        match self.mul[k] {
            Some(old) if old != c => Err(MalformedTable::Conflict(format!(
                "{}·{}",
                self.labels[a.index()],
                self.labels[b.index()]
            ))),
            _ => {
                self.mul[k] = Some(c);
                Ok(())
            }
        }
    }

    pub fn set_add(&mut self, a: Elem, b: Elem, s: ElemSet) -> Result<(), MalformedTable> {
        self.check(a)?;
        self.check(b)?;
        if s.capacity() != self.labels.len() {
            return Err(MalformedTable::Conflict("sum set over a different carrier".into()));
        }
        let k = tri(a, b);
        match &self.add[k] {
            Some(old) if *old != s => Err(MalformedTable::Conflict(format!(
                "{}+{}",
                self.labels[a.index()],
                self.labels[b.index()]
            ))),
            _ => {
                self.add[k] = Some(s);
                Ok(())
            }
        }
    }

    pub fn finish(self) -> Result<HyperfieldTables, MalformedTable> {
        let n = self.labels.len();
        let lab = |i: usize| self.labels[i].clone();
        let mut neg = Vec::with_capacity(n);
        for (i, v) in self.neg.iter().enumerate() {
            neg.push(v.ok_or_else(|| MalformedTable::MissingNeg(lab(i)))?);
        }
        let mut mul = Vec::with_capacity(self.mul.len());
        let mut add = Vec::with_capacity(self.add.len());
        for hi in 0..n {
            for lo in 0..=hi {
                let k = tri(Elem::new(lo), Elem::new(hi));
                debug_assert_eq!(k, mul.len());
                mul.push(self.mul[k].ok_or_else(|| MalformedTable::MissingMul(lab(lo), lab(hi)))?);
                let s = self.add[k].clone().ok_or_else(|| MalformedTable::MissingAdd(lab(lo), lab(hi)))?;
                if s.is_empty() {
                    return Err(MalformedTable::EmptySum(lab(lo), lab(hi)));
                }
                add.push(s);
            }
        }
        Ok(HyperfieldTables {
            labels: self.labels,
            index: self.index,
            zero: self.zero,
            one: self.one,
            neg,
            mul,
            add,
        })
    }
}

/// A validated finite hyperfield. Cheap to clone; immutable.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteHyperfield(Arc<HyperfieldTables>);

impl FiniteHyperfield {
    /// Validate tables against the full axiom battery.
    pub fn new(tables: HyperfieldTables) -> Result<Self, HyperfieldError> {
        let report = check_axioms(&tables);
        if report.all_pass() {
            Ok(FiniteHyperfield(Arc::new(tables)))
        } else {
            Err(HyperfieldError::AxiomsFailed(Box::new(report)))
        }
    }

    pub fn tables(&self) -> &HyperfieldTables {
        &self.0
    }

    /// The Krasner hyperfield `{0, 1}` with `1 + 1 = {0, 1}`.
    pub fn krasner() -> Self {
        let labels = vec!["0".to_string(), "1".to_string()];
        let tables = HyperfieldTables::from_fns(
            labels,
            Elem::new(0),
            Elem::new(1),
            |a| a,
            |a, b| if a.index() == 0 || b.index() == 0 { Elem::new(0) } else { Elem::new(1) },
            |a, b| match (a.index(), b.index()) {
                (0, x) | (x, 0) => ElemSet::singleton(2, Elem::new(x)),
                _ => ElemSet::full(2),
            },
        )
        .expect("krasner tables are total");
        FiniteHyperfield::new(tables).expect("krasner hyperfield is valid")
    }

    /// Same tables with new labels (same order).
    pub fn relabel(&self, labels: Vec<String>) -> Result<Self, HyperfieldError> {
        assert_eq!(labels.len(), self.len(), "relabel needs one label per element");
        let t = HyperfieldTables::from_fns(
            labels,
            self.zero(),
            self.one(),
            |a| self.neg(a),
            |a, b| self.mul(a, b),
            |a, b| self.add(a, b).clone(),
        )?;
        Ok(FiniteHyperfield(Arc::new(t)))
    }

    /// The restriction of `self` to `members ∪ {0}`, with sums intersected.
    /// Returns the sub-hyperfield and its inclusion map.
    pub fn restrict(&self, members: &ElemSet) -> Result<(FiniteHyperfield, Vec<Elem>), HyperfieldError> {
        let mut carrier = members.clone();
        carrier.insert(self.zero());
        let elems = carrier.to_vec();
        let pos: HashMap<Elem, Elem> = elems.iter().enumerate().map(|(i, &e)| (e, Elem::new(i))).collect();
        let n = elems.len();
        let labels = elems.iter().map(|&e| self.label(e).to_string()).collect();
        let lookup = |e: Elem| pos.get(&e).copied();
        let mut b = TableBuilder::new(labels, lookup(self.zero()).unwrap(), lookup(self.one()).ok_or_else(|| MalformedTable::UnknownLabel(self.label(self.one()).into()))?)?;
        for (i, &a) in elems.iter().enumerate() {
            let ai = Elem::new(i);
            let na = lookup(self.neg(a)).ok_or_else(|| MalformedTable::MissingNeg(self.label(a).into()))?;
            b.set_neg(ai, na)?;
            for (j, &c) in elems.iter().enumerate().skip(i) {
                let cj = Elem::new(j);
                let p = lookup(self.mul(a, c)).ok_or_else(|| MalformedTable::MissingMul(self.label(a).into(), self.label(c).into()))?;
                b.set_mul(ai, cj, p)?;
                let s = ElemSet::from_iter(n, self.add(a, c).iter().filter_map(lookup));
                b.set_add(ai, cj, s)?;
            }
        }
        let h = FiniteHyperfield::new(b.finish()?)?;
        Ok((h, elems))
    }
}

impl Deref for FiniteHyperfield {
    type Target = HyperfieldTables;
    fn deref(&self) -> &HyperfieldTables {
        &self.0
    }
}

impl fmt::Debug for FiniteHyperfield {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteHyperfield{:?}", self.0.labels)
    }
}

impl fmt::Display for FiniteHyperfield {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&*self.0, f)
    }
}

#[cfg(test)]
pub(crate) mod test_tables {
    use super::*;

    /// The three-element table `{0,1,p}` with `1+1 = p+p = H`, `1+p = {1,p}`,
    /// optionally with `1+p` overridden.
    pub fn three_element(one_plus_p: &[usize]) -> HyperfieldTables {
        let labels = ["0", "1", "p"].map(String::from).to_vec();
        let ops = one_plus_p.to_vec();
        HyperfieldTables::from_fns(
            labels,
            Elem::new(0),
            Elem::new(1),
            |a| a,
            |a, b| match (a.index(), b.index()) {
                (0, _) | (_, 0) => Elem::new(0),
                (x, y) if x == y => Elem::new(1),
                _ => Elem::new(2),
            },
            move |a, b| match (a.index(), b.index()) {
                (0, x) | (x, 0) => ElemSet::singleton(3, Elem::new(x)),
                (x, y) if x == y => ElemSet::full(3),
                _ => ElemSet::from_iter(3, ops.iter().map(|&i| Elem::new(i))),
            },
        )
        .unwrap()
    }
}
