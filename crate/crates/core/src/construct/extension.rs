use super::ConstructError;
use crate::hyperfield::{max_elements, Elem, ElemSet, FiniteHyperfield, HyperfieldTables, Morphism};

/// Coordinates of a group extension `{0} ∪ H0* × (Z/2)^r`.
///
/// Element order: `0`, then nonzero pairs `(u, g)` with the bitmask `g`
/// outer and `u` inner, both ascending.
#[derive(Clone, Debug)]
pub struct ExtensionLayout {
    base: FiniteHyperfield,
    units: Vec<Elem>,
    generators: Vec<String>,
}

impl ExtensionLayout {
    pub fn new(base: &FiniteHyperfield, generators: Vec<String>) -> Self {
        ExtensionLayout { base: base.clone(), units: base.nonzero().collect(), generators }
    }

    pub fn base(&self) -> &FiniteHyperfield {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        1 + (self.units.len() << self.rank())
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn zero(&self) -> Elem {
        Elem::new(0)
    }

    pub fn pair(&self, u: Elem, g: usize) -> Elem {
        let pos = self.units.iter().position(|&x| x == u).expect("unit of the base");
        Elem::new(1 + g * self.units.len() + pos)
    }

    /// `(u, g)` for a nonzero element.
    pub fn split(&self, e: Elem) -> Option<(Elem, usize)> {
        let i = e.index().checked_sub(1)?;
        Some((self.units[i % self.units.len()], i / self.units.len()))
    }

    pub fn embed(&self, u: Elem) -> Elem {
        if u == self.base.zero() {
            self.zero()
        } else {
            self.pair(u, 0)
        }
    }

    fn label(&self, e: Elem) -> String {
        let Some((u, g)) = self.split(e) else {
            return self.base.label(self.base.zero()).to_string();
        };
        let word: Vec<&str> = (0..self.rank())
            .filter(|i| g >> i & 1 == 1)
            .map(|i| self.generators[i].as_str())
            .collect();
        match (g, u == self.base.one()) {
            (0, _) => self.base.label(u).to_string(),
            (_, true) => word.join("·"),
            _ => format!("{}·{}", self.base.label(u), word.join("·")),
        }
    }
}

/// Generator names `e{k+1}, …, e{k+r}`, where `k` is the largest index of
/// an `e`-generator already occurring in the base labels.
pub fn default_generator_names(base: &FiniteHyperfield, r: usize) -> Vec<String> {
    let k = base
        .labels()
        .iter()
        .flat_map(|l| l.split('·'))
        .filter_map(|tok| tok.strip_prefix('e').and_then(|d| d.parse::<usize>().ok()))
        .max()
        .unwrap_or(0);
    (k + 1..=k + r).map(|i| format!("e{i}")).collect()
}

/// Group extension of `h0` by `(Z/2)^r` with default generator names.
pub fn group_extension(h0: &FiniteHyperfield, r: usize) -> Result<(FiniteHyperfield, Morphism), ConstructError> {
    group_extension_named(h0, &default_generator_names(h0, r))
}

/// Group extension of `h0` by `(Z/2)^r`, `r = generators.len()`, returning
/// the extension and the embedding `u ↦ (u, 0)`.
pub fn group_extension_named<S: AsRef<str>>(
    h0: &FiniteHyperfield,
    generators: &[S],
) -> Result<(FiniteHyperfield, Morphism), ConstructError> {
    if let Some(why) = h0.quadratic_violation() {
        return Err(ConstructError::Precondition(why));
    }
    if generators.is_empty() {
        return Ok((h0.clone(), Morphism::identity(h0)));
    }
    let layout = ExtensionLayout::new(h0, generators.iter().map(|g| g.as_ref().to_string()).collect());
    let size = (h0.nonzero_count() << layout.rank()) + 1;
    let bound = max_elements();
    if layout.rank() > 20 || size > bound {
        return Err(ConstructError::TooLarge { size, bound });
    }
    let n = size;
    let labels: Vec<String> = (0..n).map(|i| layout.label(Elem::new(i))).collect();
    let zero = layout.zero();
    let one = layout.embed(h0.one());
    let tables = HyperfieldTables::from_fns(
        labels,
        zero,
        one,
        |e| match layout.split(e) {
            None => zero,
            Some((u, g)) => layout.pair(h0.neg(u), g),
        },
        |a, b| match (layout.split(a), layout.split(b)) {
            (Some((u, g)), Some((v, h))) => layout.pair(h0.mul(u, v), g ^ h),
            _ => zero,
        },
        |a, b| match (layout.split(a), layout.split(b)) {
            (None, _) => ElemSet::singleton(n, b),
            (_, None) => ElemSet::singleton(n, a),
            (Some((u, g)), Some((v, h))) => {
                if g == h && v == h0.neg(u) {
                    ElemSet::full(n)
                } else if g == h {
                    ElemSet::from_iter(
                        n,
                        h0.add(u, v).iter().filter(|&w| w != h0.zero()).map(|w| layout.pair(w, g)),
                    )
                } else {
                    ElemSet::from_iter(n, [a, b])
                }
            }
        },
    )?;
    let ext = FiniteHyperfield::new(tables)?;
    let map = h0.elements().map(|u| layout.embed(u)).collect();
    let iota = Morphism::new(h0.clone(), ext.clone(), map).expect("the embedding is a morphism");
    Ok((ext, iota))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperfield::MorphismKind;

    #[test]
    fn krasner_by_one_generator() {
        let k = FiniteHyperfield::krasner();
        let (e, iota) = group_extension_named(&k, &["p"]).unwrap();
        assert_eq!(e.labels(), ["0", "1", "p"]);
        assert_eq!(iota.kind(), MorphismKind::GroupExtension);
        let (one, p) = (e.one(), e.find("p").unwrap());
        assert_eq!(e.add(one, p), &e.set_of([one, p]));
        assert_eq!(e.add(p, p).len(), 3);
    }

    #[test]
    fn default_names_continue_existing_generators() {
        let k = FiniteHyperfield::krasner();
        let (e, _) = group_extension(&k, 1).unwrap();
        assert_eq!(default_generator_names(&e, 2), ["e2", "e3"]);
        let (e2, _) = group_extension(&e, 1).unwrap();
        assert!(e2.find("e1·e2").is_some());
    }

    #[test]
    fn rank_zero_is_identity() {
        let k = FiniteHyperfield::krasner();
        let (e, iota) = group_extension(&k, 0).unwrap();
        assert_eq!(e, k);
        assert_eq!(iota.kind(), MorphismKind::Isomorphism);
    }
}
