//! Independent oracles shared by the integration suites.

#![allow(dead_code)]

use hflab::hyperfield::{Elem, FiniteHyperfield};

/// The Witt group read off the presentation of the group ring `Z[H*]` modulo
/// `[g] + [-g]` and `[a] + [b] - [c] - [d]` for each binary equivalence
/// `⟨a,b⟩ ≈ ⟨c,d⟩`, computed by integer Hermite reduction.
pub struct PresentationOracle {
    units: Vec<Elem>,
    /// Upper triangular basis of the relation lattice; row `i` has its pivot
    /// in column `i`.
    rows: Vec<Vec<i128>>,
}

fn reduce_into(rows: &mut [Option<Vec<i128>>], mut v: Vec<i128>) {
    let n = v.len();
    for col in 0..n {
        if v[col] == 0 {
            continue;
        }
        match rows[col].take() {
            None => {
                if v[col] < 0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
                rows[col] = Some(v);
                return;
            }
            Some(mut r) => {
                // Euclid on the pivot column, keeping both vectors in the lattice.
                while v[col] != 0 {
                    let q = r[col].div_euclid(v[col]);
                    for k in 0..n {
                        r[k] -= q * v[k];
                    }
                    std::mem::swap(&mut r, &mut v);
                }
                if r[col] < 0 {
                    r.iter_mut().for_each(|x| *x = -*x);
                }
                rows[col] = Some(r);
            }
        }
    }
}

impl PresentationOracle {
    pub fn new(h: &FiniteHyperfield) -> Self {
        let units: Vec<Elem> = h.nonzero().collect();
        let n = units.len();
        let pos = |e: Elem| units.iter().position(|&u| u == e).unwrap();
        let mut rows: Vec<Option<Vec<i128>>> = vec![None; n];
        for &g in &units {
            let mut v = vec![0i128; n];
            v[pos(g)] += 1;
            v[pos(h.neg(g))] += 1;
            reduce_into(&mut rows, v);
        }
        for &a in &units {
            for &b in &units {
                let ab = h.mul(a, b);
                for c in h.add(a, b).iter().filter(|&c| c != h.zero()) {
                    let d = h.mul(ab, h.inverse(c).unwrap());
                    let mut v = vec![0i128; n];
                    v[pos(a)] += 1;
                    v[pos(b)] += 1;
                    v[pos(c)] -= 1;
                    v[pos(d)] -= 1;
                    reduce_into(&mut rows, v);
                }
            }
        }
        let rows = rows.into_iter().map(|r| r.expect("relation lattice has full rank")).collect();
        PresentationOracle { units, rows }
    }

    /// `|Z^n / L|`.
    pub fn order(&self) -> u128 {
        self.rows.iter().enumerate().map(|(i, r)| r[i] as u128).product()
    }

    pub fn contains(&self, v: &[i128]) -> bool {
        let mut v = v.to_vec();
        for (i, r) in self.rows.iter().enumerate() {
            if v[i] % r[i] != 0 {
                return false;
            }
            let q = v[i] / r[i];
            for k in i..v.len() {
                v[k] -= q * r[k];
            }
        }
        true
    }

    /// Additive order of the class of the form with these entries.
    pub fn order_of(&self, entries: &[Elem]) -> u128 {
        let mut v = vec![0i128; self.units.len()];
        for &e in entries {
            v[self.units.iter().position(|&u| u == e).unwrap()] += 1;
        }
        let mut k = 1u128;
        let mut acc = v.clone();
        while !self.contains(&acc) {
            acc.iter_mut().zip(&v).for_each(|(a, b)| *a += b);
            k += 1;
        }
        k
    }

    /// Whether two forms have the same class.
    pub fn same_class(&self, f: &[Elem], g: &[Elem]) -> bool {
        let mut v = vec![0i128; self.units.len()];
        for &e in f {
            v[self.units.iter().position(|&u| u == e).unwrap()] += 1;
        }
        for &e in g {
            v[self.units.iter().position(|&u| u == e).unwrap()] -= 1;
        }
        self.contains(&v)
    }
}

/// Every sorted entry list reachable from `form` by replacing two entries
/// `a, b` with `c, d` where `⟨a,b⟩ ≈ ⟨c,d⟩`. A plain reachability search,
/// independent of the library's memoised closure.
pub fn chain_class(h: &FiniteHyperfield, form: &[Elem]) -> std::collections::BTreeSet<Vec<Elem>> {
    let mut start = form.to_vec();
    start.sort();
    let mut seen = std::collections::BTreeSet::from([start.clone()]);
    let mut stack = vec![start];
    while let Some(m) = stack.pop() {
        for i in 0..m.len() {
            for j in 0..m.len() {
                if i == j {
                    continue;
                }
                let (a, b) = (m[i], m[j]);
                for c in h.nonzero() {
                    for d in h.nonzero() {
                        if h.add(a, b).contains(c) && h.mul(a, b) == h.mul(c, d) {
                            let mut next: Vec<Elem> =
                                m.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &e)| e).collect();
                            next.push(c);
                            next.push(d);
                            next.sort();
                            if seen.insert(next.clone()) {
                                stack.push(next);
                            }
                        }
                    }
                }
            }
        }
    }
    seen
}

/// Corpus members with at most `max_units` units, by name.
pub fn small_corpus(max_units: usize) -> Vec<(String, FiniteHyperfield)> {
    hflab::corpus::corpus()
        .expect("corpus builds")
        .into_iter()
        .filter(|e| e.hyperfield.nonzero_count() <= max_units)
        .map(|e| (e.name, e.hyperfield))
        .collect()
}
