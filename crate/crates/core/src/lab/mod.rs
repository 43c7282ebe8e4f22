//! Frobenius and ordinary power profiles, annihilation exponents, the
//! two-length element trick, symbolic powers and closure probes.

mod closure;
mod powers;
mod profile;
mod trick;

pub use closure::{
    brenner_bound, frobenius_closure_degree_check, frobenius_closure_probe, tight_closure_witness_search,
    ClosureReport, FrobeniusProbe, TightWitness,
};
pub use powers::{chudnovsky_check, fekete_violations, powers_profile, symbolic_power, PowersProfile, PowersRow};
pub use profile::{
    ann_exponent, check_ann_exponent, eghk_estimate, frobenius_profile, EghkEstimate, FrobeniusProfile, FrobeniusRow,
};
pub use trick::{element_trick_length, find_trick_element, TrickMode};

use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// `ceil(a / q)` in integer arithmetic.
pub fn ceil_div(a: u64, q: u64) -> u64 {
    a.div_ceil(q)
}

pub(crate) fn ratio(num: u64, den: u64) -> Result<Rational> {
    let n = i64::try_from(num).map_err(|_| Error::Internal("ratio numerator overflow".into()))?;
    let d = i64::try_from(den).map_err(|_| Error::Internal("ratio denominator overflow".into()))?;
    Ok(Rational::new(n, d))
}

pub(crate) fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp).ok_or_else(|| Error::Precondition(format!("{base}^{exp} does not fit in 64 bits")))
}

/// Krull dimension of `R` itself.
pub(crate) fn ring_dimension(pres: &std::sync::Arc<crate::ideal::QuotientPresentation>) -> Result<usize> {
    match crate::hilbert::krull_dimension(&crate::ideal::IdealHandle::zero(pres))? {
        crate::hilbert::KrullDimension::Dim(d) => Ok(d),
        crate::hilbert::KrullDimension::Empty => Err(Error::Precondition("the ring is zero".into())),
    }
}
