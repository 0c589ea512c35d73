use super::finite::q_finite_field;
use super::galois::{is_prime, FiniteFieldSpec};
use super::FieldError;
use crate::construct::group_extension_named;
use crate::hyperfield::{Elem, ElemSet, FiniteHyperfield, HyperfieldTables};

/// Prime and working precision for the p-adic isotropy oracle: solutions
/// are sought modulo `p^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PadicOracleConfig {
    pub p: u64,
    pub precision: u32,
}

impl PadicOracleConfig {
    pub fn new(p: u64, precision: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if precision == 0 {
            return Err(FieldError::PrecisionTooLow { p, precision, form: "any".into() });
        }
        let fits = (p as u128).checked_pow(precision + 1).is_some_and(|m| m < 1u128 << 60);
        if !fits {
            return Err(FieldError::PrecisionTooHigh { p, precision });
        }
        Ok(PadicOracleConfig { p, precision })
    }

    /// `N = 9` for `p = 2`, `N = 4` otherwise.
    pub fn default_for(p: u64) -> Result<Self, FieldError> {
        Self::new(p, if p == 2 { 9 } else { 4 })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Isotropy {
    Isotropic,
    Anisotropic,
    Undecided,
}

fn vp(mut x: i128, p: i128) -> u32 {
    assert!(x != 0);
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

struct Ternary {
    c: [i128; 3],
    p: i128,
    n: u32,
    undecided: bool,
}

impl Ternary {
    fn value(&self, x: &[i128; 3]) -> i128 {
        self.c.iter().zip(x).map(|(c, x)| c * x * x).sum()
    }

    /// Hensel: a root mod `p^j` with a unit coordinate `x_i` lifts when
    /// `j ≥ 2·v(2c_i) + 1`.
    fn certified(&self, x: &[i128; 3], j: u32) -> bool {
        (0..3)
            .filter(|&i| x[i] % self.p != 0)
            .map(|i| vp(2 * self.c[i], self.p))
            .min()
            .is_some_and(|k| j > 2 * k)
    }

    fn dfs(&mut self, x: [i128; 3], lead: usize, j: u32) -> bool {
        if self.certified(&x, j) {
            return true;
        }
        if j >= self.n {
            self.undecided = true;
            return false;
        }
        let pj = self.p.pow(j);
        let modulus = pj * self.p;
        let free: Vec<usize> = (0..3).filter(|&i| i != lead).collect();
        for t0 in 0..self.p {
            for t1 in 0..self.p {
                let mut y = x;
                y[free[0]] += t0 * pj;
                y[free[1]] += t1 * pj;
                if self.value(&y).rem_euclid(modulus) == 0 && self.dfs(y, lead, j + 1) {
                    return true;
                }
            }
        }
        false
    }
}

/// Decide whether `c0 x² + c1 y² + c2 z²` has a nontrivial zero over `Q_p`
/// by lifting primitive solutions modulo `p^precision`.
pub fn ternary_isotropy(coeffs: [i64; 3], cfg: PadicOracleConfig) -> Isotropy {
    assert!(coeffs.iter().all(|&c| c != 0), "coefficients must be nonzero");
    let p = cfg.p as i128;
    let mut t = Ternary { c: coeffs.map(i128::from), p, n: cfg.precision, undecided: false };
    // Normalise a primitive solution so that its first unit coordinate is 1;
    // earlier coordinates are then divisible by p.
    for lead in 0..3 {
        let later = 2 - lead as u32;
        for code in 0..p.pow(later) {
            let mut x = [0i128; 3];
            x[lead] = 1;
            let mut c = code;
            for xi in x.iter_mut().skip(lead + 1) {
                *xi = c % p;
                c /= p;
            }
            if t.value(&x).rem_euclid(p) == 0 && t.dfs(x, lead, 1) {
                return Isotropy::Isotropic;
            }
        }
    }
    if t.undecided {
        Isotropy::Undecided
    } else {
        Isotropy::Anisotropic
    }
}

/// Whether `z` is represented by `⟨a, b⟩` over `Q_p`, i.e. `⟨a, b, -z⟩` is
/// isotropic.
pub fn represents(a: i64, b: i64, z: i64, cfg: PadicOracleConfig) -> Isotropy {
    ternary_isotropy([a, b, -z], cfg)
}

/// Hyperfield on `{0} ∪ reps` whose sums are decided by the oracle.
fn oracle_hyperfield(
    labels: Vec<String>,
    reps: &[i64],
    class_of: impl Fn(i64) -> usize,
    cfg: PadicOracleConfig,
) -> Result<HyperfieldTables, FieldError> {
    let m = reps.len();
    let n = m + 1;
    let cls = |z: i64| Elem::new(class_of(z) + 1);
    let neg: Vec<Elem> = reps.iter().map(|&r| cls(-r)).collect();
    let mut sums = vec![vec![ElemSet::empty(n); m]; m];
    for i in 0..m {
        for j in i..m {
            let s = if neg[i] == Elem::new(j + 1) {
                ElemSet::full(n)
            } else {
                let mut s = ElemSet::empty(n);
                for (k, &z) in reps.iter().enumerate() {
                    match represents(reps[i], reps[j], z, cfg) {
                        Isotropy::Isotropic => s.insert(Elem::new(k + 1)),
                        Isotropy::Anisotropic => {}
                        Isotropy::Undecided => {
                            return Err(FieldError::PrecisionTooLow {
                                p: cfg.p,
                                precision: cfg.precision,
                                form: format!("⟨{}, {}, {}⟩", reps[i], reps[j], -z),
                            })
                        }
                    }
                }
                s
            };
            sums[i][j] = s.clone();
            sums[j][i] = s;
        }
    }
    let zero = Elem::new(0);
    Ok(HyperfieldTables::from_fns(
        labels,
        zero,
        cls(1),
        |a| if a == zero { zero } else { neg[a.index() - 1] },
        |a, b| {
            if a == zero || b == zero {
                zero
            } else {
                cls(reps[a.index() - 1] * reps[b.index() - 1])
            }
        },
        |a, b| match (a.index(), b.index()) {
            (0, _) => ElemSet::singleton(n, b),
            (_, 0) => ElemSet::singleton(n, a),
            (i, j) => sums[i - 1][j - 1].clone(),
        },
    )?)
}

fn legendre_is_residue(w: i64, p: i64) -> bool {
    let w = w.rem_euclid(p);
    let mut result = 1i64;
    let mut base = w;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result == 1
}

/// Class index among `[1, u, p, up]` of a nonzero integer, `p` odd.
fn odd_class(z: i64, p: i64) -> usize {
    let v = vp(z as i128, p as i128);
    let w = z / p.pow(v);
    (v as usize % 2) * 2 + usize::from(!legendre_is_residue(w, p))
}

/// The quadratic hyperfield of `Q_p` from the isotropy oracle alone.
pub fn q_padic_oracle(p: u64, cfg: PadicOracleConfig) -> Result<FiniteHyperfield, FieldError> {
    if p == 2 || !is_prime(p) || cfg.p != p {
        return Err(FieldError::NotOddPrime(p));
    }
    let pi = p as i64;
    let u = (2..pi).find(|&w| !legendre_is_residue(w, pi)).expect("a nonresidue exists");
    let nonsq = if p % 4 == 3 { "-1" } else { "s" };
    let labels = vec!["0".to_string(), "1".into(), nonsq.into(), p.to_string(), format!("{nonsq}·{p}")];
    let tables = oracle_hyperfield(labels, &[1, u, pi, u * pi], |z| odd_class(z, pi), cfg)?;
    Ok(FiniteHyperfield::new(tables)?)
}

/// The quadratic hyperfield of `Q_p`, `p` odd, computed as a group
/// extension of the residue model and confirmed by the isotropy oracle.
pub fn q_padic(p: u64, cfg: PadicOracleConfig) -> Result<FiniteHyperfield, FieldError> {
    let oracle = q_padic_oracle(p, cfg)?;
    let residue = q_finite_field(FiniteFieldSpec::new(p as u32, 1)?);
    let (ext, _) = group_extension_named(&residue, &[p.to_string()])?;
    if let Some(diff) = first_difference(&ext, &oracle) {
        return Err(FieldError::OracleDisagreement(diff));
    }
    Ok(ext)
}

fn first_difference(a: &FiniteHyperfield, b: &FiniteHyperfield) -> Option<String> {
    if a.labels() != b.labels() {
        return Some(format!("carriers {:?} vs {:?}", a.labels(), b.labels()));
    }
    for x in a.elements() {
        if a.neg(x) != b.neg(x) {
            return Some(format!("-{}", a.label(x)));
        }
        for y in a.elements() {
            if a.mul(x, y) != b.mul(x, y) {
                return Some(format!("{}·{}", a.label(x), a.label(y)));
            }
            if a.add(x, y) != b.add(x, y) {
                return Some(format!(
                    "{}+{}: {:?} vs {:?}",
                    a.label(x),
                    a.label(y),
                    a.set_labels(a.add(x, y)),
                    b.set_labels(b.add(x, y))
                ));
            }
        }
    }
    (a.one() != b.one() || a.zero() != b.zero()).then(|| "distinguished elements".to_string())
}

/// Representatives of `Q_2*/Q_2*²`, in carrier order.
pub const DYADIC_REPS: [i64; 8] = [1, -1, 2, -2, 5, -5, 10, -10];

/// Index into [`DYADIC_REPS`] of the square class of a nonzero integer.
pub fn dyadic_class(z: i64) -> usize {
    let v = vp(z as i128, 2);
    let w = (z >> v).rem_euclid(8);
    let unit = match w {
        1 => 0,
        7 => 1,
        5 => 4,
        3 => 5,
        _ => unreachable!("odd residue"),
    };
    unit + 2 * (v as usize % 2)
}

/// The quadratic hyperfield of `Q_2` from the isotropy oracle.
pub fn q_2adic(cfg: PadicOracleConfig) -> Result<FiniteHyperfield, FieldError> {
    if cfg.p != 2 {
        return Err(FieldError::NotPrime(cfg.p));
    }
    let mut labels = vec!["0".to_string()];
    labels.extend(DYADIC_REPS.iter().map(|r| r.to_string()));
    let h = FiniteHyperfield::new(oracle_hyperfield(labels, &DYADIC_REPS, dyadic_class, cfg)?)?;
    if let Some(why) = h.quadratic_violation() {
        return Err(FieldError::OracleDisagreement(why));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(p: u64) -> PadicOracleConfig {
        PadicOracleConfig::default_for(p).unwrap()
    }

    #[test]
    fn classic_isotropy_facts() {
        // x² + y² + z² is anisotropic over Q_2, isotropic over Q_3.
        assert_eq!(ternary_isotropy([1, 1, 1], cfg(2)), Isotropy::Anisotropic);
        assert_eq!(ternary_isotropy([1, 1, 1], cfg(3)), Isotropy::Isotropic);
        // x² + y² = 3 has no 3-adic solution.
        assert_eq!(represents(1, 1, 3, cfg(3)), Isotropy::Anisotropic);
        assert_eq!(represents(1, 1, 2, cfg(2)), Isotropy::Isotropic);
        assert_eq!(represents(1, 1, -1, cfg(2)), Isotropy::Anisotropic);
    }

    #[test]
    fn low_precision_is_undecided() {
        let c = PadicOracleConfig::new(2, 2).unwrap();
        assert_eq!(ternary_isotropy([1, 1, -2], c), Isotropy::Undecided);
        assert!(matches!(q_2adic(c), Err(FieldError::PrecisionTooLow { .. })));
    }

    #[test]
    fn dyadic_classes() {
        assert_eq!(dyadic_class(17), 0);
        assert_eq!(dyadic_class(-1), 1);
        assert_eq!(dyadic_class(3), 5);
        assert_eq!(dyadic_class(-20), 5);
        assert_eq!(dyadic_class(-40), 7);
        for (i, &r) in DYADIC_REPS.iter().enumerate() {
            assert_eq!(dyadic_class(r), i);
            assert_eq!(dyadic_class(r * 9), i);
        }
    }

    #[test]
    fn padic_three_agrees_with_extension() {
        let h = q_padic(3, cfg(3)).unwrap();
        assert_eq!(h.labels(), ["0", "1", "-1", "3", "-1·3"]);
        let three = h.find("3").unwrap();
        assert_eq!(h.add(h.one(), three), &h.set_of([h.one(), three]));
    }
}
