use super::{ConstructError, SquareClassSubgroup};
use crate::hyperfield::{Elem, ElemSet, FiniteHyperfield, HyperfieldTables, Morphism};

/// `H/ₘT` together with the canonical surjection. Classes are labelled by
/// their least member and ordered accordingly.
pub fn quotient(h: &FiniteHyperfield, t: &SquareClassSubgroup) -> Result<(FiniteHyperfield, Morphism), ConstructError> {
    if t.ambient() != h {
        return Err(ConstructError::InvalidSubgroup("subgroup of a different hyperfield".into()));
    }
    let mut class_of: Vec<Option<Elem>> = vec![None; h.len()];
    let mut reps: Vec<Elem> = Vec::new();
    for a in h.elements() {
        if class_of[a.index()].is_some() {
            continue;
        }
        let id = Elem::new(reps.len());
        reps.push(a);
        if a == h.zero() {
            class_of[a.index()] = Some(id);
        } else {
            for m in t.coset(a).iter() {
                class_of[m.index()] = Some(id);
            }
        }
    }
    let class_of: Vec<Elem> = class_of.into_iter().map(|c| c.expect("every element is classified")).collect();
    let n = reps.len();
    let members: Vec<Elem> = t.members().to_vec();
    let project = |s: &ElemSet| ElemSet::from_iter(n, s.iter().map(|e| class_of[e.index()]));
    let rep = |c: Elem| reps[c.index()];
    let tables = HyperfieldTables::from_fns(
        reps.iter().map(|&r| h.label(r).to_string()).collect(),
        class_of[h.zero().index()],
        class_of[h.one().index()],
        |c| class_of[h.neg(rep(c)).index()],
        |c, d| class_of[h.mul(rep(c), rep(d)).index()],
        |c, d| {
            let (b, a) = (rep(c), rep(d));
            let mut inner = h.empty_set();
            for &w in &members {
                inner.union_with(h.add(b, h.mul(a, w)));
            }
            let mut all = h.empty_set();
            for &s in &members {
                all.union_with(&h.scale_set(s, &inner));
            }
            project(&all)
        },
    )?;
    let q = FiniteHyperfield::new(tables)?;
    let f = Morphism::new(h.clone(), q.clone(), class_of).expect("canonical surjection is a morphism");
    Ok((q, f))
}
