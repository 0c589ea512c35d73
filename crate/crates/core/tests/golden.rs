//! Pinned outputs. Set `HFLAB_UPDATE_GOLDEN=1` to rewrite the files.

use std::path::PathBuf;

use serde_json::{json, Value};

use hflab::construct::{LazyOrderedGroupHyperfield, OrdElem, OrdSum, SquareClassSubgroup};
use hflab::corpus::{extension_entry, finite_field_entry, krasner_entry, padic_entry, CorpusEntry};
use hflab::document::{canonical_json, HyperfieldDocument};
use hflab::report::{rigidity_report_json, witt_ring_json};
use hflab::rigidity::basic_part;
use hflab::witt::witt_ring;

fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn check(name: &str, text: String) {
    let p = path(name);
    if std::env::var_os("HFLAB_UPDATE_GOLDEN").is_some() {
        std::fs::write(&p, &text).unwrap();
    }
    let want = std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
    assert_eq!(text, want, "{name} differs from its golden file");
}

fn document(e: &CorpusEntry) -> String {
    HyperfieldDocument::from_hyperfield(&e.hyperfield, e.metadata.clone()).to_canonical_string()
}

#[test]
fn krasner_document() {
    check("krasner.json", document(&krasner_entry()));
}

#[test]
fn krasner_extension_document() {
    check("ext_krasner_1.json", document(&extension_entry(&krasner_entry(), 1).unwrap()));
}

#[test]
fn dyadic_document() {
    check("q2adic.json", document(&padic_entry(2).unwrap()));
}

#[test]
fn finite_field_witt_ring() {
    let h = finite_field_entry(3).unwrap().hyperfield;
    check("witt_f3.json", canonical_json(&witt_ring_json(&witt_ring(&h).unwrap())));
}

#[test]
fn padic_rigidity_report() {
    let h = padic_entry(3).unwrap().hyperfield;
    let trivial = basic_part(&h, &SquareClassSubgroup::trivial(&h));
    let pm = basic_part(&h, &SquareClassSubgroup::from_labels(&h, &["1", "-1"]).unwrap());
    let v = json!({ "trivial": rigidity_report_json(&trivial), "plus_minus": rigidity_report_json(&pm) });
    check("q3adic_rigidity.json", canonical_json(&v));
}

fn sum_json(s: &OrdSum) -> Value {
    match s {
        OrdSum::Single(x) => json!({ "single": x.to_string() }),
        OrdSum::UpFrom(a) => json!({ "zero_and_at_least": OrdElem::Value(a.clone()).to_string() }),
    }
}

/// Values of a sum are dominated by the smaller summand.
#[test]
fn ordered_group_convention() {
    let g = LazyOrderedGroupHyperfield::new(2);
    let samples = [OrdElem::Zero, g.value(&[0, 0]), g.value(&[0, 1]), g.value(&[1, -3]), g.value(&[-1, 2])];
    let mut rows = Vec::new();
    for a in &samples {
        for b in &samples {
            rows.push(json!({ "a": a.to_string(), "b": b.to_string(), "sum": sum_json(&g.add(a, b)), "product": g.mul(a, b).to_string() }));
        }
    }
    check("ordered_rank2.json", canonical_json(&Value::Array(rows)));
}

#[test]
fn golden_files_are_canonical() {
    for entry in std::fs::read_dir(path("")).unwrap() {
        let p = entry.unwrap().path();
        let text = std::fs::read_to_string(&p).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(canonical_json(&v), text, "{}", p.display());
    }
}
