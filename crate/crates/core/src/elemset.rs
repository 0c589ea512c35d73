//! Fixed-capacity bit sets over hyperfield carriers.

use std::fmt;

/// Index of an element in a hyperfield carrier. Ordering follows the
/// carrier's declared element order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub fn new(index: usize) -> Self {
        Elem(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A subset of a carrier of known size.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet {
    words: Vec<u64>,
    capacity: usize,
}

impl ElemSet {
    pub fn empty(capacity: usize) -> Self {
        ElemSet {
            words: vec![0; capacity.div_ceil(64)],
            capacity,
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::empty(capacity);
        for i in 0..capacity {
            s.insert(Elem::new(i));
        }
        s
    }

    pub fn singleton(capacity: usize, e: Elem) -> Self {
        let mut s = Self::empty(capacity);
        s.insert(e);
        s
    }

    pub fn from_iter<I: IntoIterator<Item = Elem>>(capacity: usize, it: I) -> Self {
        let mut s = Self::empty(capacity);
        for e in it {
            s.insert(e);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, e: Elem) {
        let i = e.index();
        assert!(i < self.capacity, "element {i} outside carrier of size {}", self.capacity);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, e: Elem) {
        let i = e.index();
        if i < self.capacity {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn contains(&self, e: Elem) -> bool {
        let i = e.index();
        i < self.capacity && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &ElemSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &ElemSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Members in ascending element order.
    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(Elem::new(wi * 64 + bit))
            })
        })
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<Elem> {
        self.iter().next()
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|e| e.0)).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iteration_is_ordered_across_words() {
        let s = ElemSet::from_iter(130, [129, 3, 64, 0].map(Elem::new));
        assert_eq!(s.to_vec(), [0, 3, 64, 129].map(Elem::new).to_vec());
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn subset_and_union() {
        let a = ElemSet::from_iter(70, [1, 65].map(Elem::new));
        let mut b = ElemSet::singleton(70, Elem::new(2));
        assert!(!a.is_subset(&b));
        b.union_with(&a);
        assert!(a.is_subset(&b));
        assert!(a.intersects(&b));
        b.remove(Elem::new(65));
        assert!(!b.contains(Elem::new(65)));
    }
}
