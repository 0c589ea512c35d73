//! The JSON interchange format for hyperfield tables.
//!
//! A document lists the elements in order and stores commutative tables
//! under keys `"a|b"` with `a` not after `b`. Canonical output has sorted
//! object keys, sum arrays in element order, two-space indentation and a
//! trailing newline.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::construct::ValueSetTable;
use crate::hyperfield::{AxiomReport, Elem, FiniteHyperfield, HyperfieldError, HyperfieldTables, MalformedTable, TableBuilder};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("unsupported format_version {0:?}")]
    Version(String),
    #[error("malformed key {0:?}; expected \"a|b\"")]
    BadKey(String),
    #[error(transparent)]
    Malformed(#[from] MalformedTable),
    #[error("axioms fail:\n{0}")]
    AxiomsFailed(Box<AxiomReport>),
}

impl From<HyperfieldError> for DocumentError {
    fn from(e: HyperfieldError) -> Self {
        match e {
            HyperfieldError::Malformed(m) => DocumentError::Malformed(m),
            HyperfieldError::AxiomsFailed(r) => DocumentError::AxiomsFailed(r),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperfieldDocument {
    pub format_version: String,
    pub elements: Vec<String>,
    pub zero: String,
    pub one: String,
    pub neg: BTreeMap<String, String>,
    pub mul: BTreeMap<String, String>,
    pub add: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub metadata: Map<String, Value>,
}

fn pair_key(a: &str, b: &str) -> String {
    format!("{a}|{b}")
}

fn split_key(key: &str) -> Result<(&str, &str), DocumentError> {
    let mut parts = key.split('|');
    match (parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), None) => Ok((a, b)),
        _ => Err(DocumentError::BadKey(key.to_string())),
    }
}

impl HyperfieldDocument {
    pub fn from_tables(h: &HyperfieldTables, metadata: Map<String, Value>) -> Self {
        let mut neg = BTreeMap::new();
        let mut mul = BTreeMap::new();
        let mut add = BTreeMap::new();
        for a in h.elements() {
            neg.insert(h.label(a).to_string(), h.label(h.neg(a)).to_string());
            for b in h.elements().filter(|&b| b >= a) {
                let key = pair_key(h.label(a), h.label(b));
                mul.insert(key.clone(), h.label(h.mul(a, b)).to_string());
                add.insert(key, h.set_labels(h.add(a, b)));
            }
        }
        HyperfieldDocument {
            format_version: FORMAT_VERSION.to_string(),
            elements: h.labels().to_vec(),
            zero: h.label(h.zero()).to_string(),
            one: h.label(h.one()).to_string(),
            neg,
            mul,
            add,
            metadata,
        }
    }

    pub fn from_hyperfield(h: &FiniteHyperfield, metadata: Map<String, Value>) -> Self {
        Self::from_tables(h.tables(), metadata)
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: HyperfieldDocument = serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))?;
        if doc.format_version != FORMAT_VERSION {
            return Err(DocumentError::Version(doc.format_version));
        }
        Ok(doc)
    }

    /// Tables without the axiom check, for reporting on invalid input.
    pub fn to_tables(&self) -> Result<HyperfieldTables, DocumentError> {
        let zero = self.elements.iter().position(|l| *l == self.zero).ok_or_else(|| MalformedTable::UnknownLabel(self.zero.clone()))?;
        let one = self.elements.iter().position(|l| *l == self.one).ok_or_else(|| MalformedTable::UnknownLabel(self.one.clone()))?;
        let mut b = TableBuilder::new(self.elements.clone(), Elem::new(zero), Elem::new(one))?;
        for (a, na) in &self.neg {
            let (a, na) = (b.resolve(a)?, b.resolve(na)?);
            b.set_neg(a, na)?;
        }
        for (key, c) in &self.mul {
            let (x, y) = split_key(key)?;
            let (x, y, c) = (b.resolve(x)?, b.resolve(y)?, b.resolve(c)?);
            b.set_mul(x, y, c)?;
        }
        let n = self.elements.len();
        for (key, sum) in &self.add {
            let (x, y) = split_key(key)?;
            let (x, y) = (b.resolve(x)?, b.resolve(y)?);
            let mut s = crate::ElemSet::empty(n);
            for l in sum {
                s.insert(b.resolve(l)?);
            }
            b.set_add(x, y, s)?;
        }
        Ok(b.finish()?)
    }

    pub fn to_hyperfield(&self) -> Result<FiniteHyperfield, DocumentError> {
        Ok(FiniteHyperfield::new(self.to_tables()?)?)
    }

    /// Canonical text form.
    pub fn to_canonical_string(&self) -> String {
        canonical_json(&serde_json::to_value(self).expect("documents serialize"))
    }
}

/// Pretty-printed JSON with sorted keys and a trailing newline.
pub fn canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&sort_keys(v)).expect("values serialize");
    s.push('\n');
    s
}

fn sort_keys(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            let sorted: BTreeMap<&String, Value> = m.iter().map(|(k, x)| (k, sort_keys(x))).collect();
            Value::Object(sorted.into_iter().map(|(k, x)| (k.clone(), x)).collect())
        }
        Value::Array(xs) => Value::Array(xs.iter().map(sort_keys).collect()),
        other => other.clone(),
    }
}

/// Re-serialize a document text canonically.
pub fn canonicalize(text: &str) -> Result<String, DocumentError> {
    let doc = HyperfieldDocument::parse(text)?;
    let tables = doc.to_tables()?;
    Ok(HyperfieldDocument::from_tables(&tables, doc.metadata).to_canonical_string())
}

/// JSON form of a quadratic form scheme: the group, `-1`, the products
/// and the value set of each element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueSetDocument {
    pub format_version: String,
    pub elements: Vec<String>,
    pub minus_one: String,
    pub mul: BTreeMap<String, String>,
    pub value_sets: BTreeMap<String, Vec<String>>,
}

impl ValueSetDocument {
    pub fn from_table(t: &ValueSetTable) -> Self {
        let n = t.labels.len();
        let mut mul = BTreeMap::new();
        for a in 0..n {
            for b in a..n {
                mul.insert(pair_key(&t.labels[a], &t.labels[b]), t.labels[t.mul[a][b]].clone());
            }
        }
        let value_sets = (0..n)
            .map(|a| {
                let mut v = t.value_sets[a].clone();
                v.sort_unstable();
                v.dedup();
                (t.labels[a].clone(), v.into_iter().map(|i| t.labels[i].clone()).collect())
            })
            .collect();
        ValueSetDocument {
            format_version: FORMAT_VERSION.to_string(),
            elements: t.labels.clone(),
            minus_one: t.labels[t.minus_one].clone(),
            mul,
            value_sets,
        }
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: ValueSetDocument = serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))?;
        if doc.format_version != FORMAT_VERSION {
            return Err(DocumentError::Version(doc.format_version));
        }
        Ok(doc)
    }

    pub fn to_table(&self) -> Result<ValueSetTable, DocumentError> {
        let n = self.elements.len();
        let pos = |l: &str| self.elements.iter().position(|x| x == l).ok_or_else(|| MalformedTable::UnknownLabel(l.to_string()));
        let mut mul = vec![vec![usize::MAX; n]; n];
        for (key, c) in &self.mul {
            let (a, b) = split_key(key)?;
            let (a, b, c) = (pos(a)?, pos(b)?, pos(c)?);
            mul[a][b] = c;
            mul[b][a] = c;
        }
        for (i, row) in mul.iter().enumerate() {
            if let Some(j) = row.iter().position(|&x| x == usize::MAX) {
                return Err(MalformedTable::MissingMul(self.elements[i].clone(), self.elements[j].clone()).into());
            }
        }
        let mut value_sets = vec![Vec::new(); n];
        for (a, vs) in &self.value_sets {
            value_sets[pos(a)?] = vs.iter().map(|l| pos(l)).collect::<Result<_, _>>()?;
        }
        Ok(ValueSetTable { labels: self.elements.clone(), mul, minus_one: pos(&self.minus_one)?, value_sets })
    }

    pub fn to_canonical_string(&self) -> String {
        canonical_json(&serde_json::to_value(self).expect("documents serialize"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::group_extension;

    #[test]
    fn krasner_document() {
        let k = FiniteHyperfield::krasner();
        let text = HyperfieldDocument::from_hyperfield(&k, Map::new()).to_canonical_string();
        assert!(text.ends_with("}\n"));
        assert!(text.contains("\"1|1\": [\n      \"0\",\n      \"1\"\n    ]"));
        let back = HyperfieldDocument::parse(&text).unwrap().to_hyperfield().unwrap();
        assert_eq!(back, k);
        assert_eq!(canonicalize(&text).unwrap(), text);
    }

    #[test]
    fn round_trip_extension() {
        let (e, _) = group_extension(&FiniteHyperfield::krasner(), 2).unwrap();
        let mut meta = Map::new();
        meta.insert("generator".into(), Value::from("extension"));
        let text = HyperfieldDocument::from_hyperfield(&e, meta).to_canonical_string();
        let doc = HyperfieldDocument::parse(&text).unwrap();
        assert_eq!(doc.metadata["generator"], "extension");
        assert_eq!(doc.to_hyperfield().unwrap(), e);
        assert_eq!(doc.to_canonical_string(), text);
    }

    #[test]
    fn errors() {
        assert!(matches!(HyperfieldDocument::parse("{"), Err(DocumentError::Json(_))));
        let k = FiniteHyperfield::krasner();
        let mut doc = HyperfieldDocument::from_hyperfield(&k, Map::new());
        doc.format_version = "2".into();
        let text = serde_json::to_string(&doc).unwrap();
        assert!(matches!(HyperfieldDocument::parse(&text), Err(DocumentError::Version(_))));
        let mut doc = HyperfieldDocument::from_hyperfield(&k, Map::new());
        doc.add.remove("1|1");
        assert!(matches!(doc.to_tables(), Err(DocumentError::Malformed(MalformedTable::MissingAdd(..)))));
        let mut doc = HyperfieldDocument::from_hyperfield(&k, Map::new());
        doc.add.insert("1|1".into(), vec!["1".into()]);
        assert!(matches!(doc.to_hyperfield(), Err(DocumentError::AxiomsFailed(_))));
        let mut doc = HyperfieldDocument::from_hyperfield(&k, Map::new());
        doc.mul.insert("1".into(), "1".into());
        assert!(matches!(doc.to_tables(), Err(DocumentError::BadKey(_))));
    }

    #[test]
    fn value_set_round_trip() {
        let h = crate::fields::q_finite_field(crate::fields::FiniteFieldSpec::from_q(3).unwrap());
        let t = ValueSetTable::from_hyperfield(&h).unwrap();
        let text = ValueSetDocument::from_table(&t).to_canonical_string();
        let back = ValueSetDocument::parse(&text).unwrap().to_table().unwrap();
        assert_eq!(crate::construct::scheme_to_hyperfield(&back).unwrap(), h);
    }
}
