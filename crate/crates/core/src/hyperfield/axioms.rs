use std::fmt;

use super::{Elem, HyperfieldTables};

/// Axioms of a hyperfield followed by their elementary consequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Reversibility,
    ZeroNeutral,
    Associativity,
    Commutativity,
    MultiplicativeMonoid,
    ZeroAbsorbing,
    Distributivity,
    Inverses,
    NegZero,
    DoubleNeg,
    NonemptySum,
    NegProduct,
    NegNegProduct,
}

impl Axiom {
    pub const AXIOMS: [Axiom; 8] = [
        Axiom::Reversibility,
        Axiom::ZeroNeutral,
        Axiom::Associativity,
        Axiom::Commutativity,
        Axiom::MultiplicativeMonoid,
        Axiom::ZeroAbsorbing,
        Axiom::Distributivity,
        Axiom::Inverses,
    ];

    pub const CONSEQUENCES: [Axiom; 5] =
        [Axiom::NegZero, Axiom::DoubleNeg, Axiom::NonemptySum, Axiom::NegProduct, Axiom::NegNegProduct];

    /// Short identifier used in reports.
    pub fn id(self) -> &'static str {
        match self {
            Axiom::Reversibility => "I(1)",
            Axiom::ZeroNeutral => "I(2)",
            Axiom::Associativity => "I(3)",
            Axiom::Commutativity => "I(4)",
            Axiom::MultiplicativeMonoid => "II",
            Axiom::ZeroAbsorbing => "III",
            Axiom::Distributivity => "IV",
            Axiom::Inverses => "V",
            Axiom::NegZero => "(i)",
            Axiom::DoubleNeg => "(ii)",
            Axiom::NonemptySum => "(iii)",
            Axiom::NegProduct => "(iv)",
            Axiom::NegNegProduct => "(v)",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Axiom::Reversibility => "c ∈ a+b implies a ∈ c+(-b)",
            Axiom::ZeroNeutral => "b+0 = {b}",
            Axiom::Associativity => "(a+b)+c = a+(b+c)",
            Axiom::Commutativity => "a+b = b+a",
            Axiom::MultiplicativeMonoid => "(H,·,1) is a commutative monoid",
            Axiom::ZeroAbsorbing => "a·0 = 0",
            Axiom::Distributivity => "a(b+c) ⊆ ab+ac",
            Axiom::Inverses => "1 ≠ 0 and every nonzero element is invertible",
            Axiom::NegZero => "-0 = 0",
            Axiom::DoubleNeg => "-(-a) = a",
            Axiom::NonemptySum => "a+b ≠ ∅",
            Axiom::NegProduct => "a(-b) = -(ab)",
            Axiom::NegNegProduct => "(-a)(-b) = ab",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomOutcome {
    pub axiom: Axiom,
    pub passed: bool,
    /// Labels of the first counterexample in element order; empty on success.
    pub witness: Vec<String>,
}

impl fmt::Display for AxiomOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "{:<6} pass  {}", self.axiom.id(), self.axiom.description())
        } else {
            write!(f, "{:<6} FAIL  {}  witness ({})", self.axiom.id(), self.axiom.description(), self.witness.join(", "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub axioms: Vec<AxiomOutcome>,
    pub consequences: Vec<AxiomOutcome>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.axioms.iter().chain(&self.consequences).all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomOutcome> {
        self.axioms.iter().chain(&self.consequences).filter(|o| !o.passed)
    }

    pub fn outcome(&self, axiom: Axiom) -> &AxiomOutcome {
        self.axioms
            .iter()
            .chain(&self.consequences)
            .find(|o| o.axiom == axiom)
            .expect("report covers every axiom")
    }

    /// A consequence failed although every axiom passed.
    pub fn checker_inconsistent(&self) -> bool {
        self.axioms.iter().all(|o| o.passed) && self.consequences.iter().any(|o| !o.passed)
    }

    pub fn summary(&self) -> String {
        let failed: Vec<String> = self
            .failures()
            .map(|o| format!("{} at ({})", o.axiom.id(), o.witness.join(", ")))
            .collect();
        if failed.is_empty() {
            "all pass".into()
        } else {
            failed.join("; ")
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.axioms {
            writeln!(f, "{o}")?;
        }
        for o in &self.consequences {
            writeln!(f, "{o}")?;
        }
        Ok(())
    }
}

/// Exhaustively check every hyperfield axiom and consequence.
pub fn check_axioms(h: &HyperfieldTables) -> AxiomReport {
    let run = |ax: Axiom| {
        let w = first_witness(h, ax);
        AxiomOutcome {
            axiom: ax,
            passed: w.is_none(),
            witness: w.map(|es| es.iter().map(|&e| h.label(e).to_string()).collect()).unwrap_or_default(),
        }
    };
    AxiomReport {
        axioms: Axiom::AXIOMS.iter().map(|&a| run(a)).collect(),
        consequences: Axiom::CONSEQUENCES.iter().map(|&a| run(a)).collect(),
    }
}

fn first_witness(h: &HyperfieldTables, ax: Axiom) -> Option<Vec<Elem>> {
    let els: Vec<Elem> = h.elements().collect();
    let zero = h.zero();
    let one = h.one();
    let pairs = || els.iter().flat_map(|&a| els.iter().map(move |&b| (a, b)));
    let triples = || pairs().flat_map(|(a, b)| els.iter().map(move |&c| (a, b, c)));
    match ax {
        Axiom::Reversibility => triples()
            .find(|&(a, b, c)| h.add(a, b).contains(c) && !h.add(c, h.neg(b)).contains(a))
            .map(|(a, b, c)| vec![a, b, c]),
        Axiom::ZeroNeutral => els
            .iter()
            .find(|&&b| {
                let s = h.add(b, zero);
                s.len() != 1 || !s.contains(b)
            })
            .map(|&b| vec![b]),
        Axiom::Associativity => {
            for &a in &els {
                for &b in &els {
                    let ab = h.add(a, b);
                    for &c in &els {
                        let left = h.add_set_elem(ab, c);
                        let right = h.add_set_elem(h.add(b, c), a);
                        if left != right {
                            return Some(vec![a, b, c]);
                        }
                    }
                }
            }
            None
        }
        // Symmetric storage makes this hold by construction; the check is
        // kept so the report is complete.
        Axiom::Commutativity => pairs().find(|&(a, b)| h.add(a, b) != h.add(b, a)).map(|(a, b)| vec![a, b]),
        Axiom::MultiplicativeMonoid => {
            if let Some(&a) = els.iter().find(|&&a| h.mul(a, one) != a) {
                return Some(vec![a, one]);
            }
            if let Some((a, b)) = pairs().find(|&(a, b)| h.mul(a, b) != h.mul(b, a)) {
                return Some(vec![a, b]);
            }
            triples()
                .find(|&(a, b, c)| h.mul(h.mul(a, b), c) != h.mul(a, h.mul(b, c)))
                .map(|(a, b, c)| vec![a, b, c])
        }
        Axiom::ZeroAbsorbing => els.iter().find(|&&a| h.mul(a, zero) != zero).map(|&a| vec![a]),
        Axiom::Distributivity => triples()
            .find(|&(a, b, c)| !h.scale_set(a, h.add(b, c)).is_subset(h.add(h.mul(a, b), h.mul(a, c))))
            .map(|(a, b, c)| vec![a, b, c]),
        Axiom::Inverses => {
            if zero == one {
                return Some(vec![zero]);
            }
            els.iter()
                .find(|&&a| a != zero && h.inverse(a).is_none())
                .map(|&a| vec![a])
        }
        Axiom::NegZero => (h.neg(zero) != zero).then(|| vec![zero]),
        Axiom::DoubleNeg => els.iter().find(|&&a| h.neg(h.neg(a)) != a).map(|&a| vec![a]),
        Axiom::NonemptySum => pairs().find(|&(a, b)| h.add(a, b).is_empty()).map(|(a, b)| vec![a, b]),
        Axiom::NegProduct => pairs()
            .find(|&(a, b)| h.mul(a, h.neg(b)) != h.neg(h.mul(a, b)))
            .map(|(a, b)| vec![a, b]),
        Axiom::NegNegProduct => pairs()
            .find(|&(a, b)| h.mul(h.neg(a), h.neg(b)) != h.mul(a, b))
            .map(|(a, b)| vec![a, b]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperfield::test_tables::three_element;
    use crate::hyperfield::FiniteHyperfield;

    #[test]
    fn krasner_passes_everything() {
        let k = FiniteHyperfield::krasner();
        let r = check_axioms(&k);
        assert!(r.all_pass());
        assert_eq!(r.axioms.len(), 8);
        assert_eq!(r.consequences.len(), 5);
    }

    #[test]
    fn three_element_table_passes() {
        assert!(check_axioms(&three_element(&[1, 2])).all_pass());
    }

    #[test]
    fn mutated_table_fails_reversibility_with_first_witness() {
        let r = check_axioms(&three_element(&[1]));
        let o = r.outcome(Axiom::Reversibility);
        assert!(!o.passed);
        // 1 ∈ p+p while p ∉ 1+(-p) = {1}.
        assert_eq!(o.witness, ["p", "p", "1"]);
        assert!(!r.checker_inconsistent());
    }
}
