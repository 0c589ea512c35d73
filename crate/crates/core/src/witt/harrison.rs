use super::{binary_equiv_elems, witt_ring, WittError, WittRing};
use crate::hyperfield::{Elem, Morphism, MorphismKind};

/// Outcome of transporting binary equivalence and the Witt ring along a
/// hyperfield isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarrisonReport {
    pub holds: bool,
    /// Image of each source class index; empty when the check failed early.
    pub class_map: Vec<usize>,
    pub witness: Option<String>,
}

impl HarrisonReport {
    fn fail(witness: String, class_map: Vec<usize>) -> Self {
        HarrisonReport { holds: false, class_map, witness: Some(witness) }
    }
}

pub fn harrison_check(alpha: &Morphism) -> Result<HarrisonReport, WittError> {
    if alpha.kind() != MorphismKind::Isomorphism {
        return Err(WittError::NotAnIsomorphism);
    }
    let w1 = witt_ring(alpha.source())?;
    let w2 = witt_ring(alpha.target())?;
    harrison_check_rings(alpha, &w1, &w2)
}

/// As [`harrison_check`], with both Witt rings supplied.
pub fn harrison_check_rings(alpha: &Morphism, w1: &WittRing, w2: &WittRing) -> Result<HarrisonReport, WittError> {
    if alpha.kind() != MorphismKind::Isomorphism {
        return Err(WittError::NotAnIsomorphism);
    }
    if w1.ambient() != alpha.source() || w2.ambient() != alpha.target() {
        return Err(WittError::AmbientMismatch);
    }
    let (h1, h2) = (alpha.source(), alpha.target());
    let units: Vec<Elem> = h1.nonzero().collect();
    for &a in &units {
        for &b in &units {
            for &c in &units {
                for &d in &units {
                    let before = binary_equiv_elems(h1, a, b, c, d);
                    let after = binary_equiv_elems(h2, alpha.apply(a), alpha.apply(b), alpha.apply(c), alpha.apply(d));
                    if before != after {
                        let l = |e: Elem| h1.label(e);
                        return Ok(HarrisonReport::fail(
                            format!("⟨{},{}⟩ ≈ ⟨{},{}⟩ is not transported", l(a), l(b), l(c), l(d)),
                            Vec::new(),
                        ));
                    }
                }
            }
        }
    }
    let class_map: Vec<usize> = w1
        .classes()
        .iter()
        .map(|c| {
            let image: Vec<Elem> = c.representative().iter().map(|&e| alpha.apply(e)).collect();
            w2.class_of(&image)
        })
        .collect();
    let n = w1.len();
    if n != w2.len() {
        return Ok(HarrisonReport::fail(format!("|W| = {n} vs {}", w2.len()), class_map));
    }
    let mut hit = vec![false; n];
    for &j in &class_map {
        hit[j] = true;
    }
    if hit.iter().any(|&x| !x) {
        return Ok(HarrisonReport::fail("induced class map is not bijective".into(), class_map));
    }
    if class_map[w1.one()] != w2.one() || class_map[w1.zero()] != w2.zero() {
        return Ok(HarrisonReport::fail("induced map does not preserve 0 and 1".into(), class_map));
    }
    for a in 0..n {
        for b in 0..n {
            if class_map[w1.add(a, b)] != w2.add(class_map[a], class_map[b]) {
                return Ok(HarrisonReport::fail(format!("addition at {}, {}", w1.classes()[a], w1.classes()[b]), class_map));
            }
            if class_map[w1.mul(a, b)] != w2.mul(class_map[a], class_map[b]) {
                return Ok(HarrisonReport::fail(
                    format!("multiplication at {}, {}", w1.classes()[a], w1.classes()[b]),
                    class_map,
                ));
            }
        }
    }
    Ok(HarrisonReport { holds: true, class_map, witness: None })
}
