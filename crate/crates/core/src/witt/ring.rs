use std::collections::HashMap;

use super::reduce::DEFAULT_MAX_UNITS;
use super::{WittClass, WittError, WittReducer};
use crate::hyperfield::{Elem, FiniteHyperfield};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WittBounds {
    pub max_units: usize,
    pub max_classes: usize,
}

impl Default for WittBounds {
    fn default() -> Self {
        WittBounds { max_units: DEFAULT_MAX_UNITS, max_classes: 256 }
    }
}

/// A finite Witt ring given by its classes and operation tables.
/// Class 0 is the zero class.
#[derive(Clone, Debug)]
pub struct WittRing {
    ambient: FiniteHyperfield,
    classes: Vec<WittClass>,
    index: HashMap<Vec<Elem>, usize>,
    /// `next[c][g]` is the class of `c ⊥ ⟨g⟩`, indexed by element.
    next: Vec<Vec<usize>>,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    one: usize,
}

impl WittRing {
    pub fn ambient(&self) -> &FiniteHyperfield {
        &self.ambient
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn classes(&self) -> &[WittClass] {
        &self.classes
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    /// Index of the class whose canonical representative is `rep`.
    pub fn index_of(&self, rep: &[Elem]) -> Option<usize> {
        self.index.get(rep).copied()
    }

    /// Class of an arbitrary form, by adding its entries one at a time.
    pub fn class_of(&self, entries: &[Elem]) -> usize {
        entries.iter().fold(0, |c, &g| self.next[c][g.index()])
    }

    /// Additive order of `⟨1⟩`.
    pub fn order_of_one(&self) -> usize {
        let mut c = self.one;
        let mut k = 1;
        while c != 0 {
            c = self.add(c, self.one);
            k += 1;
        }
        k
    }

    /// Dimension parity of each class.
    pub fn is_even(&self, c: usize) -> bool {
        self.classes[c].dim().is_multiple_of(2)
    }

    /// Whether every product of two even-dimensional classes vanishes.
    pub fn fundamental_ideal_square_vanishes(&self) -> bool {
        (0..self.len())
            .filter(|&a| self.is_even(a))
            .all(|a| (0..self.len()).filter(|&b| self.is_even(b)).all(|b| self.mul(a, b) == 0))
    }

    /// First failing commutative-ring axiom.
    pub fn ring_axiom_violation(&self) -> Option<String> {
        let n = self.len();
        let cls = |c: usize| self.classes[c].to_string();
        for a in 0..n {
            if self.add(a, 0) != a {
                return Some(format!("{} + 0", cls(a)));
            }
            if self.mul(a, self.one) != a {
                return Some(format!("{} · 1", cls(a)));
            }
            if !(0..n).any(|b| self.add(a, b) == 0) {
                return Some(format!("{} has no additive inverse", cls(a)));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Some(format!("commutativity at {}, {}", cls(a), cls(b)));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Some(format!("additive associativity at {}, {}, {}", cls(a), cls(b), cls(c)));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Some(format!("multiplicative associativity at {}, {}, {}", cls(a), cls(b), cls(c)));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Some(format!("distributivity at {}, {}, {}", cls(a), cls(b), cls(c)));
                    }
                }
            }
        }
        None
    }
}

pub fn witt_ring(h: &FiniteHyperfield) -> Result<WittRing, WittError> {
    witt_ring_with_bounds(h, WittBounds::default())
}

/// Enumerate the Witt classes reachable from zero by adding one-dimensional
/// forms, then derive addition and multiplication tables.
pub fn witt_ring_with_bounds(h: &FiniteHyperfield, bounds: WittBounds) -> Result<WittRing, WittError> {
    if h.nonzero_count() > bounds.max_units {
        return Err(WittError::SizeBound(format!("|H*| = {} exceeds {}", h.nonzero_count(), bounds.max_units)));
    }
    let mut reducer = WittReducer::new(h)?;
    let units: Vec<Elem> = h.nonzero().collect();
    let mut reps: Vec<Vec<Elem>> = vec![Vec::new()];
    let mut index: HashMap<Vec<Elem>, usize> = HashMap::from([(Vec::new(), 0)]);
    let mut next: Vec<Vec<usize>> = Vec::new();
    let mut c = 0;
    while c < reps.len() {
        let mut row = vec![usize::MAX; h.len()];
        for &g in &units {
            let r = reducer.add_entry(&reps[c], g)?;
            let id = match index.get(&r) {
                Some(&id) => id,
                None => {
                    if reps.len() >= bounds.max_classes {
                        return Err(WittError::SizeBound(format!("more than {} Witt classes", bounds.max_classes)));
                    }
                    index.insert(r.clone(), reps.len());
                    reps.push(r);
                    reps.len() - 1
                }
            };
            row[g.index()] = id;
        }
        next.push(row);
        c += 1;
    }
    let n = reps.len();
    let fold = |start: usize, entries: &mut dyn Iterator<Item = Elem>| entries.fold(start, |c, g| next[c][g.index()]);
    let add: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| fold(a, &mut reps[b].iter().copied())).collect()).collect();
    let mul: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| fold(0, &mut reps[a].iter().flat_map(|&x| reps[b].iter().map(move |&y| h.mul(x, y)))))
                .collect()
        })
        .collect();
    let one = next[0][h.one().index()];
    let classes = reps.into_iter().map(|rep| WittClass::from_rep(h, rep)).collect();
    let ring = WittRing { ambient: h.clone(), classes, index, next, add, mul, one };
    if let Some(why) = ring.ring_axiom_violation() {
        return Err(WittError::RingAxiom(why));
    }
    Ok(ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{q_finite_field, FiniteFieldSpec};

    #[test]
    fn small_rings() {
        let k = witt_ring(&FiniteHyperfield::krasner()).unwrap();
        assert_eq!((k.len(), k.order_of_one()), (2, 2));
        assert!(k.fundamental_ideal_square_vanishes());
        let f3 = witt_ring(&q_finite_field(FiniteFieldSpec::from_q(3).unwrap())).unwrap();
        assert_eq!((f3.len(), f3.order_of_one()), (4, 4));
        let f5 = witt_ring(&q_finite_field(FiniteFieldSpec::from_q(5).unwrap())).unwrap();
        assert_eq!((f5.len(), f5.order_of_one()), (4, 2));
        assert!(f5.fundamental_ideal_square_vanishes());
    }
}
