use std::collections::HashSet;

use super::RigidityError;
use crate::construct::SquareClassSubgroup;
use crate::hyperfield::{Elem, ElemSet, FiniteHyperfield};

pub const MAX_SUBGROUP_UNITS: usize = 256;

/// All subgroups of `H*`, by increasing size and then lexicographically by
/// sorted member list.
pub fn enumerate_subgroups(h: &FiniteHyperfield) -> Result<std::vec::IntoIter<SquareClassSubgroup>, RigidityError> {
    let n = h.nonzero_count();
    if n > MAX_SUBGROUP_UNITS {
        return Err(RigidityError::SizeBound(format!("|H*| = {n} exceeds {MAX_SUBGROUP_UNITS}")));
    }
    let sets = match f2_basis(h) {
        Some(basis) => subspaces(h, &basis),
        None => closure_search(h),
    };
    let mut keyed: Vec<(usize, Vec<Elem>, ElemSet)> = sets.into_iter().map(|s| (s.len(), s.to_vec(), s)).collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let groups: Vec<SquareClassSubgroup> = keyed
        .into_iter()
        .map(|(_, _, s)| SquareClassSubgroup::new(h, s).expect("enumerated sets are subgroups"))
        .collect();
    Ok(groups.into_iter())
}

/// A basis of `H*` over the two-element field, or `None` when some unit does
/// not square to 1.
fn f2_basis(h: &FiniteHyperfield) -> Option<Vec<Elem>> {
    let one = h.one();
    if h.nonzero().any(|x| h.mul(x, x) != one) {
        return None;
    }
    let mut span = h.set_of([one]);
    let mut basis = Vec::new();
    for x in h.nonzero() {
        if !span.contains(x) {
            let shifted = h.scale_set(x, &span);
            span.union_with(&shifted);
            basis.push(x);
        }
    }
    Some(basis)
}

fn product(h: &FiniteHyperfield, basis: &[Elem], mask: u32) -> Elem {
    basis
        .iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .fold(h.one(), |acc, (_, &b)| h.mul(acc, b))
}

/// Subspaces of `F₂^d`, one per reduced row echelon matrix.
fn subspaces(h: &FiniteHyperfield, basis: &[Elem]) -> Vec<ElemSet> {
    let d = basis.len();
    let mut out = Vec::new();
    for pivots in 0u32..(1 << d) {
        let pivot_cols: Vec<usize> = (0..d).filter(|&c| pivots >> c & 1 == 1).collect();
        // Free positions: for each pivot row, the non-pivot columns after its pivot.
        let free: Vec<(usize, usize)> = pivot_cols
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (p + 1..d).filter(move |&c| pivots >> c & 1 == 0).map(move |c| (r, c)))
            .collect();
        for fill in 0u64..(1u64 << free.len()) {
            let mut rows: Vec<u32> = pivot_cols.iter().map(|&p| 1 << p).collect();
            for (k, &(r, c)) in free.iter().enumerate() {
                if fill >> k & 1 == 1 {
                    rows[r] |= 1 << c;
                }
            }
            let mut set = h.empty_set();
            for combo in 0u32..(1 << rows.len()) {
                let mask = rows
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| combo >> i & 1 == 1)
                    .fold(0, |m, (_, &row)| m ^ row);
                set.insert(product(h, basis, mask));
            }
            out.push(set);
        }
    }
    out
}

fn closure(h: &FiniteHyperfield, start: &ElemSet, x: Elem) -> ElemSet {
    let mut members = start.clone();
    let mut frontier: Vec<Elem> = members.to_vec();
    let gens: Vec<Elem> = start.iter().chain([x]).collect();
    members.insert(x);
    frontier.push(x);
    while let Some(a) = frontier.pop() {
        for &g in &gens {
            let p = h.mul(a, g);
            if !members.contains(p) {
                members.insert(p);
                frontier.push(p);
            }
        }
    }
    members
}

fn closure_search(h: &FiniteHyperfield) -> Vec<ElemSet> {
    let trivial = h.set_of([h.one()]);
    let mut seen: HashSet<Vec<Elem>> = HashSet::from([trivial.to_vec()]);
    let mut all = vec![trivial];
    let mut i = 0;
    while i < all.len() {
        let s = all[i].clone();
        for x in h.nonzero().filter(|&x| !s.contains(x)) {
            let t = closure(h, &s, x);
            if seen.insert(t.to_vec()) {
                all.push(t);
            }
        }
        i += 1;
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::group_extension;
    use crate::fields::{q_finite_field, FiniteFieldSpec};

    fn count(h: &FiniteHyperfield) -> usize {
        enumerate_subgroups(h).unwrap().count()
    }

    #[test]
    fn gaussian_totals() {
        let k = FiniteHyperfield::krasner();
        assert_eq!(count(&k), 1);
        let f3 = q_finite_field(FiniteFieldSpec::from_q(3).unwrap());
        assert_eq!(count(&f3), 2);
        let (e1, _) = group_extension(&f3, 1).unwrap();
        assert_eq!(count(&e1), 5);
        let (e2, _) = group_extension(&f3, 2).unwrap();
        assert_eq!(count(&e2), 16);
        let (e3, _) = group_extension(&f3, 3).unwrap();
        assert_eq!(count(&e3), 67);
    }

    #[test]
    fn order_is_size_then_lex() {
        let f3 = q_finite_field(FiniteFieldSpec::from_q(3).unwrap());
        let (e, _) = group_extension(&f3, 2).unwrap();
        let v: Vec<(usize, Vec<Elem>)> = enumerate_subgroups(&e).unwrap().map(|s| (s.len(), s.members().to_vec())).collect();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(v[0].1, [e.one()]);
    }

    #[test]
    fn closure_search_agrees_on_elementary_groups() {
        let f5 = q_finite_field(FiniteFieldSpec::from_q(5).unwrap());
        let (e, _) = group_extension(&f5, 2).unwrap();
        let mut a: Vec<Vec<Elem>> = closure_search(&e).iter().map(ElemSet::to_vec).collect();
        let mut b: Vec<Vec<Elem>> = subspaces(&e, &f2_basis(&e).unwrap()).iter().map(ElemSet::to_vec).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}
