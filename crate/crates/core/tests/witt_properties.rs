mod common;

use std::sync::LazyLock;

use proptest::prelude::*;

use hflab::hyperfield::{Elem, FiniteHyperfield};
use hflab::witt::{value_set, witt_ring, DiagonalForm, WittReducer, WittRing};

use common::{chain_class, small_corpus, PresentationOracle};

static POOL: LazyLock<Vec<(String, FiniteHyperfield)>> =
    LazyLock::new(|| small_corpus(16).into_iter().filter(|(_, h)| h.is_quadratic()).collect());

static ORACLES: LazyLock<Vec<PresentationOracle>> = LazyLock::new(|| POOL.iter().map(|(_, h)| PresentationOracle::new(h)).collect());

fn units(h: &FiniteHyperfield, picks: &[usize]) -> Vec<Elem> {
    let us: Vec<Elem> = h.nonzero().collect();
    picks.iter().map(|&i| us[i % us.len()]).collect()
}

fn picks(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(any::<usize>(), len)
}

fn sorted(mut v: Vec<Elem>) -> Vec<Elem> {
    v.sort();
    v
}

fn concat(a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().chain(b).copied().collect()
}

/// Pool members whose rings fit the default bounds.
fn rings() -> Vec<(usize, WittRing)> {
    let out: Vec<_> = POOL.iter().enumerate().filter_map(|(k, (_, h))| witt_ring(h).ok().map(|r| (k, r))).collect();
    assert!(out.len() >= 20, "only {} rings in bounds", out.len());
    out
}

#[test]
fn rings_satisfy_the_ring_axioms() {
    for (k, ring) in rings() {
        let name = &POOL[k].0;
        assert_eq!(ring.ring_axiom_violation(), None, "{name}");
    }
}

#[test]
fn ring_order_matches_the_presentation() {
    for (k, ring) in rings() {
        let ((name, h), oracle) = (&POOL[k], &ORACLES[k]);
        assert_eq!(ring.len() as u128, oracle.order(), "{name}");
        assert_eq!(ring.order_of_one() as u128, oracle.order_of(&[h.one()]), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn scaling_moves_value_sets(k in 0..POOL.len(), f in picks(1..=4), x in any::<usize>()) {
        let h = &POOL[k].1;
        let form = DiagonalForm::new(h, units(h, &f)).unwrap();
        let x = units(h, &[x])[0];
        prop_assert_eq!(value_set(&form.scale(x)), h.scale_set(x, &value_set(&form)));
    }

    #[test]
    fn fold_order_is_irrelevant(k in 0..POOL.len(), f in picks(1..=4)) {
        let h = &POOL[k].1;
        let entries = units(h, &f);
        let mut rev = entries.clone();
        rev.reverse();
        let a = value_set(&DiagonalForm::new(h, entries).unwrap());
        let b = value_set(&DiagonalForm::new(h, rev).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn isometry_agrees_with_chain_search(k in 0..POOL.len(), f in picks(1..=3), g in picks(1..=3)) {
        let h = &POOL[k].1;
        let (f, g) = (units(h, &f), units(h, &g));
        prop_assume!(f.len() == g.len());
        let mut red = WittReducer::new(h).unwrap();
        prop_assert_eq!(red.isometric(&f, &g).unwrap(), chain_class(h, &f).contains(&sorted(g)));
    }

    #[test]
    fn witt_cancellation(k in 0..POOL.len(), f in picks(1..=2), g in picks(1..=2), c in picks(1..=1)) {
        let h = &POOL[k].1;
        let (f, g, c) = (units(h, &f), units(h, &g), units(h, &c));
        prop_assume!(f.len() == g.len());
        if chain_class(h, &concat(&f, &c)).contains(&sorted(concat(&g, &c))) {
            prop_assert!(chain_class(h, &f).contains(&sorted(g)));
        }
    }

    #[test]
    fn hyperbolic_plane_is_absorbed(k in 0..POOL.len(), f in picks(1..=3), a in any::<usize>()) {
        let h = &POOL[k].1;
        let f = units(h, &f);
        let a = units(h, &[a])[0];
        let mut red = WittReducer::new(h).unwrap();
        let bigger = concat(&f, &[a, h.neg(a)]);
        prop_assert!(red.class(&bigger).unwrap() == red.class(&f).unwrap());
    }

    #[test]
    fn witt_classes_match_the_presentation(k in 0..POOL.len(), f in picks(1..=4), g in picks(1..=4)) {
        let h = &POOL[k].1;
        let (f, g) = (units(h, &f), units(h, &g));
        let mut red = WittReducer::new(h).unwrap();
        let same = red.class(&f).unwrap() == red.class(&g).unwrap();
        prop_assert_eq!(same, ORACLES[k].same_class(&f, &g));
    }
}
