use std::cmp::Ordering;
use std::fmt;

/// An element of `Γ ∪ {0}` for `Γ = Z^r` under the lexicographic order.
/// The hyperfield zero plays the role of `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrdElem {
    Zero,
    Value(Vec<i64>),
}

impl fmt::Display for OrdElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdElem::Zero => f.write_str("0"),
            OrdElem::Value(v) if v.len() == 1 => write!(f, "{}", v[0]),
            OrdElem::Value(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// Result of a lazy sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrdSum {
    /// Exactly one element.
    Single(OrdElem),
    /// `{0} ∪ {c : c ≥ a}`.
    UpFrom(Vec<i64>),
}

impl OrdSum {
    pub fn contains(&self, c: &OrdElem) -> bool {
        match (self, c) {
            (OrdSum::Single(x), c) => x == c,
            (OrdSum::UpFrom(_), OrdElem::Zero) => true,
            (OrdSum::UpFrom(a), OrdElem::Value(v)) => v.as_slice() >= a.as_slice(),
        }
    }
}

/// The hyperfield of the ordered group `Z^r`, written additively: the sum
/// of two distinct values is their minimum, `a + a` is `{0} ∪ [a, ∞)`,
/// products add componentwise and `-a = a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LazyOrderedGroupHyperfield {
    rank: usize,
}

impl LazyOrderedGroupHyperfield {
    pub fn new(rank: usize) -> Self {
        assert!(rank >= 1, "rank must be positive");
        LazyOrderedGroupHyperfield { rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn value(&self, v: &[i64]) -> OrdElem {
        assert_eq!(v.len(), self.rank, "value of the wrong rank");
        OrdElem::Value(v.to_vec())
    }

    pub fn one(&self) -> OrdElem {
        OrdElem::Value(vec![0; self.rank])
    }

    pub fn neg(&self, a: &OrdElem) -> OrdElem {
        a.clone()
    }

    pub fn cmp(&self, a: &[i64], b: &[i64]) -> Ordering {
        a.cmp(b)
    }

    pub fn mul(&self, a: &OrdElem, b: &OrdElem) -> OrdElem {
        match (a, b) {
            (OrdElem::Value(x), OrdElem::Value(y)) => OrdElem::Value(x.iter().zip(y).map(|(p, q)| p + q).collect()),
            _ => OrdElem::Zero,
        }
    }

    pub fn add(&self, a: &OrdElem, b: &OrdElem) -> OrdSum {
        match (a, b) {
            (OrdElem::Zero, x) | (x, OrdElem::Zero) => OrdSum::Single(x.clone()),
            (OrdElem::Value(x), OrdElem::Value(y)) => match x.cmp(y) {
                Ordering::Equal => OrdSum::UpFrom(x.clone()),
                Ordering::Less => OrdSum::Single(a.clone()),
                Ordering::Greater => OrdSum::Single(b.clone()),
            },
        }
    }

    pub fn sum_contains(&self, a: &OrdElem, b: &OrdElem, c: &OrdElem) -> bool {
        self.add(a, b).contains(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_queries() {
        let g = LazyOrderedGroupHyperfield::new(1);
        let (two, three) = (g.value(&[2]), g.value(&[3]));
        assert!(!g.sum_contains(&three, &three, &two));
        assert!(g.sum_contains(&three, &three, &three));
        assert!(g.sum_contains(&three, &three, &OrdElem::Zero));
        assert_eq!(g.add(&two, &three), OrdSum::Single(two.clone()));
        assert_eq!(g.mul(&two, &three), g.value(&[5]));
    }

    #[test]
    fn rank_two_is_lexicographic() {
        let g = LazyOrderedGroupHyperfield::new(2);
        let (a, b) = (g.value(&[1, 0]), g.value(&[0, 5]));
        assert_eq!(g.add(&a, &b), OrdSum::Single(b.clone()));
        assert!(g.sum_contains(&a, &a, &g.value(&[1, 7])));
        assert!(!g.sum_contains(&a, &a, &g.value(&[0, 100])));
    }
}
