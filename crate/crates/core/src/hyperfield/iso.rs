use super::{Elem, FiniteHyperfield, Morphism, MorphismKind};

/// Isomorphism-invariant summary of a nonzero element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub squares_to_one: bool,
    pub one_plus_size: usize,
    pub sum_sizes: Vec<usize>,
}

pub fn fingerprint(h: &FiniteHyperfield, a: Elem) -> Fingerprint {
    let mut sum_sizes: Vec<usize> = h.nonzero().map(|b| h.add(a, b).len()).collect();
    sum_sizes.sort_unstable();
    Fingerprint {
        squares_to_one: h.mul(a, a) == h.one(),
        one_plus_size: h.add(h.one(), a).len(),
        sum_sizes,
    }
}

struct Search<'a> {
    h1: &'a FiniteHyperfield,
    h2: &'a FiniteHyperfield,
    fp1: Vec<Option<Fingerprint>>,
    fp2: Vec<Option<Fingerprint>>,
    map: Vec<Option<Elem>>,
    used: Vec<bool>,
    assigned: Vec<Elem>,
    limit: usize,
    found: Vec<Morphism>,
}

impl Search<'_> {
    fn assign(&mut self, x: Elem, y: Elem) -> bool {
        if self.used[y.index()] || !self.consistent(x, y) {
            return false;
        }
        self.map[x.index()] = Some(y);
        self.used[y.index()] = true;
        self.assigned.push(x);
        true
    }

    fn unassign(&mut self) {
        let x = self.assigned.pop().expect("nonempty assignment stack");
        let y = self.map[x.index()].take().expect("assigned");
        self.used[y.index()] = false;
    }

    /// Would `x ↦ y` agree with every already assigned element?
    fn consistent(&self, x: Elem, y: Elem) -> bool {
        let (h1, h2) = (self.h1, self.h2);
        if self.fp1[x.index()] != self.fp2[y.index()] {
            return false;
        }
        let f = |e: Elem| if e == x { Some(y) } else { self.map[e.index()] };
        if let Some(nx) = f(h1.neg(x)) {
            if nx != h2.neg(y) {
                return false;
            }
        }
        for &a in self.assigned.iter().chain(std::iter::once(&x)) {
            let fa = f(a).unwrap();
            if let Some(p) = f(h1.mul(x, a)) {
                if p != h2.mul(y, fa) {
                    return false;
                }
            }
            let s1 = h1.add(x, a);
            let s2 = h2.add(y, fa);
            for &c in self.assigned.iter().chain(std::iter::once(&x)) {
                if s1.contains(c) != s2.contains(f(c).unwrap()) {
                    return false;
                }
            }
        }
        for (i, &a) in self.assigned.iter().enumerate() {
            let fa = self.map[a.index()].unwrap();
            for &b in &self.assigned[i..] {
                let fb = self.map[b.index()].unwrap();
                if h1.add(a, b).contains(x) != h2.add(fa, fb).contains(y) {
                    return false;
                }
            }
        }
        true
    }

    /// Image forced by multiplicativity or negation, if any.
    fn forced(&self, x: Elem) -> Option<Elem> {
        let (h1, h2) = (self.h1, self.h2);
        if let Some(n) = self.map[h1.neg(x).index()] {
            return Some(h2.neg(n));
        }
        for &a in &self.assigned {
            if a == h1.zero() {
                continue;
            }
            let inv = h1.inverse(a)?;
            if let Some(fb) = self.map[h1.mul(x, inv).index()] {
                return Some(h2.mul(self.map[a.index()].unwrap(), fb));
            }
        }
        None
    }

    fn run(&mut self, order: &[Elem], pos: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if pos == order.len() {
            let map: Vec<Elem> = self.map.iter().map(|e| e.unwrap()).collect();
            if let Ok(m) = Morphism::new(self.h1.clone(), self.h2.clone(), map) {
                if m.kind() == MorphismKind::Isomorphism {
                    self.found.push(m);
                }
            }
            return;
        }
        let x = order[pos];
        if self.map[x.index()].is_some() {
            self.run(order, pos + 1);
            return;
        }
        let candidates: Vec<Elem> = match self.forced(x) {
            Some(y) => vec![y],
            None => self.h2.nonzero().collect(),
        };
        for y in candidates {
            if self.assign(x, y) {
                self.run(order, pos + 1);
                self.unassign();
                if self.found.len() >= self.limit {
                    return;
                }
            }
        }
    }
}

/// Up to `limit` isomorphisms `h1 → h2`, ordered lexicographically by the
/// images of `h1`'s elements in carrier order.
pub fn find_isomorphisms(h1: &FiniteHyperfield, h2: &FiniteHyperfield, limit: usize) -> Vec<Morphism> {
    if h1.len() != h2.len() || limit == 0 {
        return Vec::new();
    }
    let fps = |h: &FiniteHyperfield| -> Vec<Option<Fingerprint>> {
        h.elements().map(|e| (e != h.zero()).then(|| fingerprint(h, e))).collect()
    };
    let mut s = Search {
        h1,
        h2,
        fp1: fps(h1),
        fp2: fps(h2),
        map: vec![None; h1.len()],
        used: vec![false; h2.len()],
        assigned: Vec::new(),
        limit,
        found: Vec::new(),
    };
    // 0 ↦ 0, 1 ↦ 1 and -1 ↦ -1 are fixed before the search starts.
    s.map[h1.zero().index()] = Some(h2.zero());
    s.used[h2.zero().index()] = true;
    s.assigned.push(h1.zero());
    if !s.assign(h1.one(), h2.one()) {
        return Vec::new();
    }
    if h1.minus_one() != h1.one() {
        if h2.minus_one() == h2.one() || !s.assign(h1.minus_one(), h2.minus_one()) {
            return Vec::new();
        }
    } else if h2.minus_one() != h2.one() {
        return Vec::new();
    }
    let order: Vec<Elem> = h1.elements().collect();
    s.run(&order, 0);
    s.found
}
