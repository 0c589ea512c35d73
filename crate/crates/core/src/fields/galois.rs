use super::FieldError;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u32 = 101;

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `Some((p, k))` when `q = p^k` with `p` prime and `k ≥ 1`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut m = q;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// Characteristic and degree of a finite field `F_{p^k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteFieldSpec {
    p: u32,
    k: u32,
}

impl FiniteFieldSpec {
    pub fn new(p: u32, k: u32) -> Result<Self, FieldError> {
        if !is_prime(p as u64) || k == 0 {
            return Err(FieldError::NotPrimePower(p.saturating_pow(k.max(1))));
        }
        let q = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q > MAX_FIELD_SIZE as u64 {
            return Err(FieldError::UnsupportedQ(q));
        }
        Ok(FiniteFieldSpec { p, k })
    }

    pub fn from_q(q: u32) -> Result<Self, FieldError> {
        if q > MAX_FIELD_SIZE {
            return Err(FieldError::UnsupportedQ(q as u64));
        }
        let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p, k)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.k)
    }
}

/// All prime powers `q ≤ bound`, ascending.
pub fn prime_powers_up_to(bound: u32) -> Vec<u32> {
    (2..=bound).filter(|&q| prime_power(q).is_some()).collect()
}

/// Arithmetic in `F_{p^k}`. Elements are integer codes `Σ c_i p^i` of
/// their coefficient vectors modulo a fixed monic irreducible polynomial.
#[derive(Clone, Debug)]
pub struct GaloisField {
    spec: FiniteFieldSpec,
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
}

fn poly_from_code(code: u32, p: u32, len: usize) -> Vec<u32> {
    let mut c = code;
    (0..len)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn code_from_poly(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Remainder of `a` modulo the monic polynomial `m` over `F_p`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - lead * c % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut f = poly_from_code(code, p, d);
            f.push(1);
            if poly_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl GaloisField {
    pub fn new(spec: FiniteFieldSpec) -> Self {
        let (p, k) = (spec.p, spec.k as usize);
        let q = spec.order();
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            (0..p.pow(k as u32))
                .map(|code| {
                    let mut m = poly_from_code(code, p, k);
                    m.push(1);
                    m
                })
                .find(|m| is_irreducible(m, p))
                .expect("an irreducible polynomial of every degree exists")
        };
        let n = q as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        let mut neg = vec![0u16; n];
        for a in 0..q {
            let pa = poly_from_code(a, p, k);
            neg[a as usize] = code_from_poly(&pa.iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p) as u16;
            for b in 0..q {
                let pb = poly_from_code(b, p, k);
                let s: Vec<u32> = pa.iter().zip(&pb).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * n + b as usize] = code_from_poly(&s, p) as u16;
                let prod = poly_rem(&poly_mul(&trim(pa.clone()), &trim(pb), p), &modulus, p);
                mul[a as usize * n + b as usize] = code_from_poly(&prod, p) as u16;
            }
        }
        GaloisField { spec, modulus, add, mul, neg }
    }

    pub fn of_order(q: u32) -> Result<Self, FieldError> {
        Ok(Self::new(FiniteFieldSpec::from_q(q)?))
    }

    pub fn spec(&self) -> FiniteFieldSpec {
        self.spec
    }

    pub fn order(&self) -> u32 {
        self.spec.order()
    }

    /// Coefficients of the modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.order() + b) as usize] as u32
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.order() + b) as usize] as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize] as u32
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order()
    }

    pub fn is_square(&self, a: u32) -> bool {
        self.elements().any(|x| self.mul(x, x) == a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_powers_up_to(101).len(), 36);
    }

    #[test]
    fn fields_are_fields() {
        for q in [4, 8, 9, 25, 27, 32, 49, 64, 81] {
            let f = GaloisField::of_order(q).unwrap();
            for a in 1..q {
                assert!(f.elements().any(|b| f.mul(a, b) == 1), "q={q} a={a}");
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
            for a in 0..q {
                for b in 0..q {
                    for c in [1, q - 1] {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn modulus_for_f4_is_x2_x_1() {
        assert_eq!(GaloisField::of_order(4).unwrap().modulus(), &[1, 1, 1]);
    }

    #[test]
    fn rejects_unsupported_orders() {
        assert!(matches!(FiniteFieldSpec::from_q(103), Err(FieldError::UnsupportedQ(103))));
        assert!(matches!(FiniteFieldSpec::from_q(6), Err(FieldError::NotPrimePower(6))));
    }
}
