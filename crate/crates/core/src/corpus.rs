//! The reference collection of hyperfields used by the test suites and the
//! `gen` command.

use serde_json::{Map, Value};

use crate::construct::{group_extension, SquareClassSubgroup};
use crate::fields::{prime_powers_up_to, q_2adic, q_finite_field, q_padic, FieldError, FiniteFieldSpec, PadicOracleConfig};
use crate::hyperfield::{FiniteHyperfield, Morphism};
use crate::rigidity::{basic_part, ValuationShape};

pub const ODD_PRIMES: [u64; 8] = [3, 5, 7, 11, 13, 17, 19, 23];

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub hyperfield: FiniteHyperfield,
    pub metadata: Map<String, Value>,
    pub extension: Option<ExtensionModel>,
}

/// Provenance of a group extension: the base it was built on and the
/// residue structure at the bottom of the tower.
#[derive(Clone, Debug)]
pub struct ExtensionModel {
    pub base_name: String,
    pub base: FiniteHyperfield,
    pub rank: usize,
    pub embedding: Morphism,
    pub residue_name: String,
    pub residue: FiniteHyperfield,
    /// Rank counted from the residue; exceeds `rank` when the base is itself
    /// an extension.
    pub total_rank: usize,
    pub residue_embedding: Morphism,
}

impl ExtensionModel {
    /// The shape the trivial subgroup should take, read off the residue:
    /// unexceptional when every residue unit is basic and `{1}` is
    /// unexceptional there, index two when the residue has two units and
    /// trivial basic part. `None` for residues like Krasner where
    /// `-1 = 1` and there is a single unit.
    pub fn designed_shape(&self) -> Option<(ValuationShape, usize)> {
        let r = &self.residue;
        let report = basic_part(r, &SquareClassSubgroup::trivial(r));
        let upper_index = 1usize << self.total_rank;
        if report.basic == r.nonzero_set() && !report.exceptional && r.nonzero_count() > 1 {
            Some((ValuationShape::Unexceptional, upper_index))
        } else if report.basic_is_subgroup_itself() && r.nonzero_count() == 2 {
            Some((ValuationShape::IndexTwo, upper_index))
        } else {
            None
        }
    }

    /// Image of the residue units: the designed upper group.
    pub fn designed_upper(&self, h: &FiniteHyperfield) -> SquareClassSubgroup {
        SquareClassSubgroup::new(h, self.residue_embedding.apply_set(&self.residue.nonzero_set())).expect("image of a unit group")
    }
}

fn meta(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

pub fn krasner_entry() -> CorpusEntry {
    CorpusEntry {
        name: "krasner".into(),
        hyperfield: FiniteHyperfield::krasner(),
        metadata: meta(&[("generator", "krasner".into())]),
        extension: None,
    }
}

pub fn finite_field_entry(q: u32) -> Result<CorpusEntry, FieldError> {
    let spec = FiniteFieldSpec::from_q(q)?;
    Ok(CorpusEntry {
        name: format!("Q(F{q})"),
        hyperfield: q_finite_field(spec),
        metadata: meta(&[("generator", "fq".into()), ("q", q.into())]),
        extension: None,
    })
}

pub fn padic_entry(p: u64) -> Result<CorpusEntry, FieldError> {
    let cfg = PadicOracleConfig::default_for(p)?;
    let (hyperfield, generator) = if p == 2 { (q_2adic(cfg)?, "2adic") } else { (q_padic(p, cfg)?, "padic") };
    Ok(CorpusEntry {
        name: format!("Q(Q{p})"),
        hyperfield,
        metadata: meta(&[("generator", generator.into()), ("p", p.into()), ("precision", cfg.precision.into())]),
        extension: None,
    })
}

/// Residue structure of a base: odd `Q(Q_p)` sits over `Q(F_p)` with one
/// extra rank; everything else is its own residue.
fn residue_of(base: &CorpusEntry) -> Result<(String, FiniteHyperfield, usize, Morphism), FieldError> {
    let h = &base.hyperfield;
    match (base.metadata.get("generator").and_then(Value::as_str), base.metadata.get("p").and_then(Value::as_u64)) {
        (Some("padic"), Some(p)) => {
            let res = finite_field_entry(p as u32)?;
            let pairs: Vec<(String, String)> = res.hyperfield.labels().iter().map(|l| (l.clone(), l.clone())).collect();
            let refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            let emb = Morphism::from_labels(res.hyperfield.clone(), h.clone(), &refs)?
                .map_err(|v| FieldError::Precondition(format!("residue embedding: {v}")))?;
            Ok((res.name, res.hyperfield, 1, emb))
        }
        _ => Ok((base.name.clone(), h.clone(), 0, Morphism::identity(h))),
    }
}

pub fn extension_entry(base: &CorpusEntry, r: usize) -> Result<CorpusEntry, FieldError> {
    let (hyperfield, embedding) = group_extension(&base.hyperfield, r)?;
    let (residue_name, residue, extra, to_base) = residue_of(base)?;
    let residue_embedding =
        to_base.compose(&embedding).map_err(|v| FieldError::Precondition(format!("composite embedding: {v}")))?;
    let name = format!("ext({}, {r})", base.name);
    let mut metadata = meta(&[("generator", "extension".into()), ("r", r.into())]);
    metadata.insert("base".into(), Value::Object(base.metadata.clone()));
    Ok(CorpusEntry {
        name,
        metadata,
        extension: Some(ExtensionModel {
            base_name: base.name.clone(),
            base: base.hyperfield.clone(),
            rank: r,
            embedding,
            residue_name,
            residue,
            total_rank: r + extra,
            residue_embedding,
        }),
        hyperfield,
    })
}

/// Bases for extension models: every listed hyperfield has `|H*| ≤ 8`.
pub fn extension_bases() -> Result<Vec<CorpusEntry>, FieldError> {
    Ok(vec![krasner_entry(), finite_field_entry(3)?, finite_field_entry(5)?, padic_entry(3)?, padic_entry(5)?, padic_entry(2)?])
}

pub fn extension_models() -> Result<Vec<CorpusEntry>, FieldError> {
    let mut out = Vec::new();
    for base in extension_bases()? {
        for r in 1..=3 {
            out.push(extension_entry(&base, r)?);
        }
    }
    Ok(out)
}

/// Krasner, `Q(F_q)` for every prime power `q ≤ 101`, `Q(Q_p)` for odd
/// `p ≤ 23`, the 2-adic model, and the extension models.
pub fn corpus() -> Result<Vec<CorpusEntry>, FieldError> {
    let mut out = vec![krasner_entry()];
    for q in prime_powers_up_to(101) {
        out.push(finite_field_entry(q)?);
    }
    for p in ODD_PRIMES {
        out.push(padic_entry(p)?);
    }
    out.push(padic_entry(2)?);
    out.extend(extension_models()?);
    Ok(out)
}
