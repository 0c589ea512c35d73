use super::ConstructError;
use crate::hyperfield::{Elem, ElemSet, FiniteHyperfield, HyperfieldTables};

/// An abstract quadratic form scheme: an exponent-2 group, a distinguished
/// `-1`, and a value subgroup `V(a)` for each `a`. Indices refer to `labels`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueSetTable {
    pub labels: Vec<String>,
    /// `mul[i][j]` is the index of `labels[i]·labels[j]`.
    pub mul: Vec<Vec<usize>>,
    pub minus_one: usize,
    pub value_sets: Vec<Vec<usize>>,
}

impl ValueSetTable {
    /// Read the scheme off a hyperfield satisfying the quadratic
    /// conditions: `V(a) = 1 + a` for `a ≠ -1` and `V(-1) = H*`.
    pub fn from_hyperfield(h: &FiniteHyperfield) -> Result<Self, ConstructError> {
        if let Some(why) = h.quadratic_violation() {
            return Err(ConstructError::Precondition(why));
        }
        let units: Vec<Elem> = h.nonzero().collect();
        let pos = |e: Elem| units.iter().position(|&u| u == e).expect("nonzero");
        let mul = units.iter().map(|&a| units.iter().map(|&b| pos(h.mul(a, b))).collect()).collect();
        let value_sets = units
            .iter()
            .map(|&a| {
                if a == h.minus_one() {
                    (0..units.len()).collect()
                } else {
                    h.add(h.one(), a).iter().map(pos).collect()
                }
            })
            .collect();
        Ok(ValueSetTable {
            labels: units.iter().map(|&u| h.label(u).to_string()).collect(),
            mul,
            minus_one: pos(h.minus_one()),
            value_sets,
        })
    }

    fn validate(&self) -> Result<usize, ConstructError> {
        let bad = |m: String| Err(ConstructError::InvalidValueSetTable(m));
        let n = self.labels.len();
        if n == 0 {
            return bad("empty group".into());
        }
        if self.mul.len() != n || self.mul.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return bad("multiplication table is not total".into());
        }
        if self.value_sets.len() != n || self.value_sets.iter().flatten().any(|&x| x >= n) {
            return bad("value sets are not total".into());
        }
        if self.minus_one >= n {
            return bad("-1 is not a group element".into());
        }
        let Some(one) = (0..n).find(|&e| (0..n).all(|x| self.mul[e][x] == x && self.mul[x][e] == x)) else {
            return bad("no identity".into());
        };
        for a in 0..n {
            if self.mul[a][a] != one {
                return bad(format!("{}² ≠ 1", self.labels[a]));
            }
            for b in 0..n {
                if self.mul[a][b] != self.mul[b][a] {
                    return bad(format!("not commutative at ({}, {})", self.labels[a], self.labels[b]));
                }
                for c in 0..n {
                    if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]] {
                        return bad("not associative".into());
                    }
                }
            }
        }
        if self.mul[self.minus_one][self.minus_one] != one {
            return bad("-1 does not square to 1".into());
        }
        for (a, v) in self.value_sets.iter().enumerate() {
            if !v.contains(&one) || !v.contains(&a) {
                return bad(format!("V({}) must contain 1 and {}", self.labels[a], self.labels[a]));
            }
            if v.iter().any(|&x| v.iter().any(|&y| !v.contains(&self.mul[x][y]))) {
                return bad(format!("V({}) is not a subgroup", self.labels[a]));
            }
        }
        Ok(one)
    }
}

/// The hyperfield `G ∪ {0}` with `a + b = a·V(ab)` for nonzero `b ≠ -a`
/// and `a + (-a)` everything.
pub fn scheme_to_hyperfield(t: &ValueSetTable) -> Result<FiniteHyperfield, ConstructError> {
    let one = t.validate()?;
    if t.labels.iter().any(|l| l == "0") {
        return Err(ConstructError::InvalidValueSetTable("label \"0\" is reserved for zero".into()));
    }
    let n = t.labels.len() + 1;
    let g = |e: Elem| e.index() - 1;
    let el = |i: usize| Elem::new(i + 1);
    let zero = Elem::new(0);
    let neg = |e: Elem| if e == zero { zero } else { el(t.mul[t.minus_one][g(e)]) };
    let mut labels = vec!["0".to_string()];
    labels.extend(t.labels.iter().cloned());
    let tables = HyperfieldTables::from_fns(
        labels,
        zero,
        el(one),
        neg,
        |a, b| if a == zero || b == zero { zero } else { el(t.mul[g(a)][g(b)]) },
        |a, b| {
            if a == zero {
                ElemSet::singleton(n, b)
            } else if b == zero {
                ElemSet::singleton(n, a)
            } else if b == neg(a) {
                ElemSet::full(n)
            } else {
                let ab = t.mul[g(a)][g(b)];
                ElemSet::from_iter(n, t.value_sets[ab].iter().map(|&v| el(t.mul[g(a)][v])))
            }
        },
    )?;
    let h = FiniteHyperfield::new(tables)?;
    if let Some(why) = h.quadratic_violation() {
        return Err(ConstructError::InvalidValueSetTable(why));
    }
    Ok(h)
}
