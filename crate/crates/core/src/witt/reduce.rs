use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::{form_sum, DiagonalForm, WittError};
use crate::hyperfield::{Elem, FiniteHyperfield};

/// Default bound on `|H*|` for Witt computations.
pub const DEFAULT_MAX_UNITS: usize = 16;
const DEFAULT_MAX_STATES: usize = 200_000;

/// The Witt class of a form, held as its canonical anisotropic
/// representative: the least sorted entry list isometric to it.
#[derive(Clone, PartialEq, Eq)]
pub struct WittClass {
    ambient: FiniteHyperfield,
    rep: Vec<Elem>,
}

impl WittClass {
    pub(crate) fn from_rep(ambient: &FiniteHyperfield, rep: Vec<Elem>) -> Self {
        WittClass { ambient: ambient.clone(), rep }
    }

    pub fn representative(&self) -> &[Elem] {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.rep.len()
    }

    pub fn labels(&self) -> Vec<String> {
        self.rep.iter().map(|&e| self.ambient.label(e).to_string()).collect()
    }
}

impl fmt::Debug for WittClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[⟨{}⟩]", self.labels().join(","))
    }
}

impl fmt::Display for WittClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rep.is_empty() {
            f.write_str("0")
        } else {
            write!(f, "⟨{}⟩", self.labels().join(","))
        }
    }
}

/// Memoising engine for isometry classes and Witt reduction over one
/// quadratic hyperfield.
///
/// Two forms are isometric when one can be reached from the other by
/// replacing a pair of entries `a, b` with `c, ab/c` for `c ∈ D⟨a,b⟩`.
pub struct WittReducer {
    h: FiniteHyperfield,
    inv: Vec<Elem>,
    max_states: usize,
    closure_of: HashMap<Vec<Elem>, usize>,
    closures: Vec<Vec<Vec<Elem>>>,
}

impl WittReducer {
    pub fn new(h: &FiniteHyperfield) -> Result<Self, WittError> {
        if let Some(why) = h.quadratic_violation() {
            return Err(WittError::NotQuadratic(why));
        }
        let inv = h.elements().map(|e| h.inverse(e).unwrap_or(h.zero())).collect();
        Ok(WittReducer { h: h.clone(), inv, max_states: DEFAULT_MAX_STATES, closure_of: HashMap::new(), closures: Vec::new() })
    }

    pub fn with_state_bound(mut self, max_states: usize) -> Self {
        self.max_states = max_states;
        self
    }

    pub fn ambient(&self) -> &FiniteHyperfield {
        &self.h
    }

    fn closure_id(&mut self, form: &[Elem]) -> Result<usize, WittError> {
        let mut start = form.to_vec();
        start.sort_unstable();
        if let Some(&id) = self.closure_of.get(&start) {
            return Ok(id);
        }
        let h = &self.h;
        let mut seen: HashMap<Vec<Elem>, ()> = HashMap::new();
        let mut queue = VecDeque::from([start.clone()]);
        seen.insert(start, ());
        while let Some(m) = queue.pop_front() {
            for i in 0..m.len() {
                for j in i + 1..m.len() {
                    if j > i + 1 && m[j] == m[j - 1] {
                        continue;
                    }
                    let (a, b) = (m[i], m[j]);
                    let ab = h.mul(a, b);
                    for c in h.value_set2(a, b).iter() {
                        let d = h.mul(ab, self.inv[c.index()]);
                        let mut next: Vec<Elem> = m
                            .iter()
                            .enumerate()
                            .filter(|&(k, _)| k != i && k != j)
                            .map(|(_, &e)| e)
                            .collect();
                        next.push(c);
                        next.push(d);
                        next.sort_unstable();
                        if !seen.contains_key(&next) {
                            if seen.len() >= self.max_states {
                                return Err(WittError::SizeBound(format!(
                                    "isometry class of a {}-dimensional form exceeds {} members",
                                    m.len(),
                                    self.max_states
                                )));
                            }
                            seen.insert(next.clone(), ());
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        let mut members: Vec<Vec<Elem>> = seen.into_keys().collect();
        members.sort_unstable();
        let id = self.closures.len();
        for m in &members {
            self.closure_of.insert(m.clone(), id);
        }
        self.closures.push(members);
        Ok(id)
    }

    /// All sorted entry lists isometric to `form`, ascending.
    pub fn isometry_class(&mut self, form: &[Elem]) -> Result<&[Vec<Elem>], WittError> {
        let id = self.closure_id(form)?;
        Ok(&self.closures[id])
    }

    /// Least member of the isometry class.
    pub fn canonical(&mut self, form: &[Elem]) -> Result<Vec<Elem>, WittError> {
        let id = self.closure_id(form)?;
        Ok(self.closures[id][0].clone())
    }

    pub fn isometric(&mut self, f: &[Elem], g: &[Elem]) -> Result<bool, WittError> {
        Ok(f.len() == g.len() && self.closure_id(f)? == self.closure_id(g)?)
    }

    /// Canonical anisotropic representative of `rep ⊥ ⟨g⟩`, given that
    /// `rep` is a canonical anisotropic representative.
    pub fn add_entry(&mut self, rep: &[Elem], g: Elem) -> Result<Vec<Elem>, WittError> {
        let h = self.h.clone();
        let neg_g = h.neg(g);
        let isotropic = !rep.is_empty() && form_sum(&h, rep).contains(neg_g);
        if !isotropic {
            let mut f = rep.to_vec();
            f.push(g);
            return self.canonical(&f);
        }
        let id = self.closure_id(rep)?;
        let Some(mut member) = self.closures[id].iter().find(|m| m.contains(&neg_g)).cloned() else {
            let labels: Vec<&str> = rep.iter().map(|&e| h.label(e)).collect();
            return Err(WittError::ChainClosureDiscrepancy(format!(
                "⟨{}⟩ represents {} but no isometric form contains it",
                labels.join(","),
                h.label(neg_g)
            )));
        };
        let pos = member.iter().position(|&e| e == neg_g).expect("member contains -g");
        member.remove(pos);
        if member.is_empty() {
            return Ok(member);
        }
        if form_sum(&h, &member).contains(h.zero()) {
            return Err(WittError::ChainClosureDiscrepancy("cancellation produced an isotropic remainder".into()));
        }
        self.canonical(&member)
    }

    /// Canonical anisotropic representative of an arbitrary form.
    pub fn reduce(&mut self, entries: &[Elem]) -> Result<Vec<Elem>, WittError> {
        let mut rep = Vec::new();
        for &g in entries {
            if g == self.h.zero() {
                return Err(WittError::ZeroEntry);
            }
            rep = self.add_entry(&rep, g)?;
        }
        Ok(rep)
    }

    pub fn class(&mut self, entries: &[Elem]) -> Result<WittClass, WittError> {
        let rep = self.reduce(entries)?;
        Ok(WittClass { ambient: self.h.clone(), rep })
    }
}

/// Witt class of a form over a quadratic hyperfield with `|H*| ≤ 16`.
pub fn witt_reduce(f: &DiagonalForm) -> Result<WittClass, WittError> {
    let h = f.ambient();
    if h.nonzero_count() > DEFAULT_MAX_UNITS {
        return Err(WittError::SizeBound(format!("|H*| = {} exceeds {DEFAULT_MAX_UNITS}", h.nonzero_count())));
    }
    WittReducer::new(h)?.class(f.entries())
}
