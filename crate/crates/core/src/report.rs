//! JSON renderings of analysis results.

use serde_json::{json, Map, Value};

use crate::construct::SquareClassSubgroup;
use crate::hyperfield::{AxiomOutcome, AxiomReport, Morphism};
use crate::rigidity::{DecompositionReport, RigidityReport, SubgroupMatch};
use crate::witt::{HarrisonReport, WittRing};

fn outcome_json(o: &AxiomOutcome) -> Value {
    json!({
        "id": o.axiom.id(),
        "description": o.axiom.description(),
        "passed": o.passed,
        "witness": o.witness,
    })
}

pub fn axiom_report_json(r: &AxiomReport) -> Value {
    json!({
        "all_pass": r.all_pass(),
        "axioms": r.axioms.iter().map(outcome_json).collect::<Vec<_>>(),
        "consequences": r.consequences.iter().map(outcome_json).collect::<Vec<_>>(),
        "checker_inconsistent": r.checker_inconsistent(),
    })
}

/// A morphism as a label-to-label mapping plus its kind.
pub fn morphism_json(m: &Morphism) -> Value {
    let map: Map<String, Value> = m.label_pairs().into_iter().map(|(a, b)| (a, Value::String(b))).collect();
    json!({ "kind": m.kind().to_string(), "map": map })
}

fn subgroup_json(t: &SquareClassSubgroup) -> Value {
    json!(t.labels())
}

fn table_json(ring: &WittRing, op: impl Fn(usize, usize) -> usize) -> Value {
    let n = ring.len();
    json!((0..n).map(|a| (0..n).map(|b| op(a, b)).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn witt_ring_json(ring: &WittRing) -> Value {
    let classes: Vec<Value> = ring
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| json!({ "index": i, "representative": c.labels(), "dim": c.dim() }))
        .collect();
    json!({
        "order": ring.len(),
        "order_of_one": ring.order_of_one(),
        "fundamental_ideal_square_vanishes": ring.fundamental_ideal_square_vanishes(),
        "zero": ring.zero(),
        "one": ring.one(),
        "classes": classes,
        "add": table_json(ring, |a, b| ring.add(a, b)),
        "mul": table_json(ring, |a, b| ring.mul(a, b)),
    })
}

pub fn harrison_json(r: &HarrisonReport) -> Value {
    json!({ "holds": r.holds, "class_map": r.class_map, "witness": r.witness })
}

pub fn rigidity_report_json(r: &RigidityReport) -> Value {
    let h = &r.ambient;
    let rigid: Vec<String> = h.nonzero().filter(|x| r.rigid[x.index()]).map(|x| h.label(x).to_string()).collect();
    json!({
        "subgroup": subgroup_json(&r.subgroup),
        "rigid": rigid,
        "basic_part": r.basic_labels(),
        "basic_part_is_subgroup": r.basic_subgroup.is_some(),
        "plus_minus_subgroup": h.set_labels(&r.plus_minus),
        "subgroup_index": r.subgroup_index,
        "basic_part_index": r.basic_index,
        "minus_one_in_subgroup": r.subgroup.contains_minus_one(),
        "additively_closed": r.additively_closed,
        "exceptional": r.exceptional,
    })
}

pub fn decomposition_json(d: &DecompositionReport) -> Value {
    let candidates: Vec<Value> = d
        .candidates
        .iter()
        .map(|c| {
            json!({
                "subgroup": subgroup_json(&c.subgroup),
                "shape": c.shape.name(),
                "upper_index": c.upper_index,
                "uppers": c.uppers.iter().map(subgroup_json).collect::<Vec<_>>(),
                "basic_part": c.report.basic_labels(),
                "exceptional": c.report.exceptional,
            })
        })
        .collect();
    json!({
        "subgroups_examined": d.subgroups_examined,
        "candidates": candidates,
        "note": "residues with infinitely many square classes have no finite model; only finite residue shapes are detected",
    })
}

pub fn subgroup_match_json(m: &SubgroupMatch) -> Value {
    json!({
        "image": subgroup_json(&m.image),
        "quotient_isomorphism": m.quotient_isomorphism,
        "upper": m.upper.as_ref().map(|(u, u2, ok)| json!({ "source": subgroup_json(u), "target": subgroup_json(u2), "preserved": ok })),
        "holds": m.holds(),
    })
}
