use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::galois::is_prime;
use super::FieldError;

/// Rational rank of the value group, residue ntd and residue characteristic
/// of a valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValuationDescriptor {
    pub rank_q: u32,
    /// `-1` only for algebraic extensions of a finite prime field.
    pub residue_ntd: i64,
    /// `0` or a prime.
    pub residue_char: u64,
}

impl ValuationDescriptor {
    pub fn new(rank_q: u32, residue_ntd: i64, residue_char: u64) -> Result<Self, FieldError> {
        if residue_ntd < -1 {
            return Err(FieldError::InvalidDescriptor(format!("ntd {residue_ntd} < -1")));
        }
        if residue_char != 0 && !is_prime(residue_char) {
            return Err(FieldError::InvalidDescriptor(format!("characteristic {residue_char} is not 0 or prime")));
        }
        if residue_char == 0 && residue_ntd < 0 {
            return Err(FieldError::InvalidDescriptor("ntd is at least 0 in characteristic 0".into()));
        }
        Ok(ValuationDescriptor { rank_q, residue_ntd, residue_char })
    }

    /// Characteristic bucket: 0 for residue characteristic 0, 2 for
    /// characteristic 2, 1 otherwise.
    pub fn char_bucket(&self) -> u8 {
        match self.residue_char {
            0 => 0,
            2 => 2,
            _ => 1,
        }
    }
}

/// The `(i, j)` family an Abhyankar valuation belongs to: `i` is the residue
/// ntd and `j` the characteristic bucket.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NuBucket {
    pub i: i64,
    pub j: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NtdReport {
    pub abhyankar: bool,
    /// Only Abhyankar valuations with residue ntd `≥ 0` are bucketed.
    pub bucket: Option<NuBucket>,
}

/// Check the Abhyankar inequality `ntd(K) ≥ rk_Q + ntd(K_v)` and classify.
pub fn ntd_arithmetic(desc: &ValuationDescriptor, ambient_ntd: i64) -> Result<NtdReport, FieldError> {
    let sum = desc.rank_q as i64 + desc.residue_ntd;
    if ambient_ntd < sum {
        return Err(FieldError::InequalityViolation { ambient: ambient_ntd, rank_q: desc.rank_q, residue_ntd: desc.residue_ntd });
    }
    let abhyankar = ambient_ntd == sum;
    let bucket = (abhyankar && desc.residue_ntd >= 0).then(|| NuBucket { i: desc.residue_ntd, j: desc.char_bucket() });
    Ok(NtdReport { abhyankar, bucket })
}

fn prime_exponents(mut n: BigInt) -> Vec<(BigInt, u32)> {
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += 1;
    }
    if n > BigInt::from(1) {
        out.push((n, 1));
    }
    out
}

/// Whether `(r)` is the square of a fractional ideal of `Z`: every prime
/// occurs to an even power.
pub fn v_q_membership(r: &BigRational) -> Result<bool, FieldError> {
    if r.is_zero() {
        return Err(FieldError::ZeroInput);
    }
    let (n, d) = (r.numer().abs(), r.denom().abs());
    let g = n.gcd(&d);
    let even = |x: BigInt| prime_exponents(x).iter().all(|(_, e)| e % 2 == 0);
    Ok(even(n / &g) && even(d / g))
}

/// 2-rank of `V_Q / Q*²`. Square classes of `Q*` are signed squarefree
/// integers; those with prime numerators up to `bound` are enumerated and
/// filtered by [`v_q_membership`].
pub fn v_q_2rank_with_bound(bound: u64) -> Result<u32, FieldError> {
    let primes: Vec<u64> = (2..=bound).filter(|&p| is_prime(p)).collect();
    if primes.len() > 16 {
        return Err(FieldError::InvalidDescriptor("prime bound too large for enumeration".into()));
    }
    let mut count = 0u64;
    for mask in 0u64..1 << primes.len() {
        let m: BigInt = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| BigInt::from(p))
            .product();
        for sign in [1, -1] {
            if v_q_membership(&BigRational::from_integer(&m * sign))? {
                count += 1;
            }
        }
    }
    Ok(count.trailing_zeros())
}

pub fn v_q_2rank() -> u32 {
    v_q_2rank_with_bound(30).expect("bound 30 is within limits")
}
