//! Quadratic hyperfields of concrete fields and valuation bookkeeping.

mod descriptors;
mod finite;
mod galois;
pub mod gauss;
mod padic;

use thiserror::Error;

use crate::construct::ConstructError;
use crate::hyperfield::{FiniteHyperfield, HyperfieldError};

pub use descriptors::{ntd_arithmetic, v_q_2rank, v_q_2rank_with_bound, v_q_membership, NtdReport, NuBucket, ValuationDescriptor};
pub use finite::{field_hyperfield, q_finite_field, q_local, q_local_named, square_class_hyperfield};
pub use galois::{is_prime, prime_power, prime_powers_up_to, FiniteFieldSpec, GaloisField, MAX_FIELD_SIZE};
pub use gauss::{gauss_extend, parse_expression, parse_polynomial, GaussValuation, Polynomial, RationalFunction};
pub use padic::{
    dyadic_class, q_2adic, q_padic, q_padic_oracle, represents, ternary_isotropy, Isotropy, PadicOracleConfig, DYADIC_REPS,
};

#[derive(Debug, Clone, Error)]
pub enum FieldError {
    #[error("unsupported field size {0}")]
    UnsupportedQ(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("residue characteristic 2 is dyadic; use the 2-adic model")]
    DyadicResidue,
    #[error("precision {precision} is too low at p = {p}: isotropy of {form} undecided")]
    PrecisionTooLow { p: u64, precision: u32, form: String },
    #[error("precision {precision} is too high for p = {p}")]
    PrecisionTooHigh { p: u64, precision: u32 },
    #[error("oracle and construction disagree at {0}")]
    OracleDisagreement(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("Abhyankar inequality violated: ntd {ambient} < {rank_q} + {residue_ntd}")]
    InequalityViolation { ambient: i64, rank_q: u32, residue_ntd: i64 },
    #[error("invalid valuation descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("zero has no square class")]
    ZeroInput,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

impl From<HyperfieldError> for FieldError {
    fn from(e: HyperfieldError) -> Self {
        FieldError::Construct(e.into())
    }
}

impl From<crate::hyperfield::MalformedTable> for FieldError {
    fn from(e: crate::hyperfield::MalformedTable) -> Self {
        FieldError::Construct(e.into())
    }
}

/// Whether `y ∈ D⟨1,x⟩` forces `D⟨1,y⟩ = D⟨1,x⟩` for all `x, y ≠ 1`.
/// Holds in the quadratic hyperfields of fields of characteristic 2.
pub fn char2_criterion(h: &FiniteHyperfield) -> Result<bool, FieldError> {
    if let Some(why) = h.quadratic_violation() {
        return Err(FieldError::Precondition(why));
    }
    let one = h.one();
    for x in h.nonzero().filter(|&x| x != one) {
        let dx = h.value_set2(one, x);
        for y in dx.iter().filter(|&y| y != one) {
            if h.value_set2(one, y) != dx {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char2_examples() {
        assert!(char2_criterion(&FiniteHyperfield::krasner()).unwrap());
        assert!(char2_criterion(&q_finite_field(FiniteFieldSpec::from_q(3).unwrap())).unwrap());
        let q3 = q_padic(3, PadicOracleConfig::default_for(3).unwrap()).unwrap();
        assert!(!char2_criterion(&q3).unwrap());
    }
}
