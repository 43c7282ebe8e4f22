use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::checked_pow;
use crate::error::{Error, Result};
use crate::hilbert::{h0_summary, krull_dimension, length_of_quotient, KrullDimension};
use crate::ideal::IdealHandle;
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrickMode {
    /// `I^[p^e]` with powers `s^q`, `s^{2q}`.
    Frobenius(u32),
    /// `I^n` with powers `s^n`, `s^{2n}`.
    Ordinary(u32),
}

/// `2·ℓ(R/(I_k + (s^k))) − ℓ(R/(I_k + (s^{2k})))`, which equals the length of
/// `H^0_m(R/I_k)` when `s` avoids the non-maximal associated primes.
pub fn element_trick_length(i: &IdealHandle, s: &Polynomial, mode: TrickMode) -> Result<u64> {
    if s.ring() != i.ring() {
        return Err(Error::RingMismatch);
    }
    if !s.is_homogeneous() || i.presentation().reduce(s)?.is_zero() {
        return Err(Error::TrickElement("s must be homogeneous and nonzero in R".into()));
    }
    let (base, k) = match mode {
        TrickMode::Frobenius(e) => {
            let q = checked_pow(i.ring().characteristic(), e)?;
            let k = u32::try_from(q).map_err(|_| Error::ExponentOverflow)?;
            (i.frobenius_power(e)?, k)
        }
        TrickMode::Ordinary(n) => (i.ordinary_power(n)?, n),
    };
    let near = base.add_element(&s.pow(k)?)?;
    let far = base.add_element(&s.pow(2 * k)?)?;
    if !near.has_finite_colength() || !far.has_finite_colength() {
        return Err(Error::TrickElement(format!("R/(I + ({s})) does not have finite length")));
    }
    let a = length_of_quotient(&near)?;
    let b = length_of_quotient(&far)?;
    (2 * a).checked_sub(b).ok_or_else(|| Error::TrickElement(format!("negative trick length for s = {s}")))
}

fn validates(i: &IdealHandle, s: &Polynomial) -> Result<bool> {
    if !i.add_element(s)?.has_finite_colength() {
        return Ok(false);
    }
    let expected = h0_summary(&i.frobenius_power(1)?)?.length;
    match element_trick_length(i, s, TrickMode::Frobenius(1)) {
        Ok(len) => Ok(len == expected),
        Err(Error::TrickElement(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

const RANDOM_TRIES_PER_DEGREE: usize = 16;

/// Searches homogeneous `s` of degree at most `degree_cap` with
/// `R/(I + (s))` of finite length, validated against the direct H^0
/// length at `e = 1`: variables first, then monomials, then seeded random
/// combinations of up to three monomials.
pub fn find_trick_element(i: &IdealHandle, degree_cap: u32) -> Result<Polynomial> {
    match krull_dimension(i)? {
        KrullDimension::Dim(d) if d >= 1 => {}
        _ => return Err(Error::Precondition("the trick element needs dim R/I >= 1".into())),
    }
    let ring = i.ring();
    for v in 0..ring.nvars() {
        let s = ring.variable(v);
        if validates(i, &s)? {
            return Ok(s);
        }
    }
    for d in 2..=degree_cap {
        for m in ring.monomials_of_degree(d) {
            let s = ring.monomial(m);
            if validates(i, &s)? {
                return Ok(s);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let p = ring.characteristic();
    for d in 1..=degree_cap {
        let mons = ring.monomials_of_degree(d);
        for _ in 0..RANDOM_TRIES_PER_DEGREE {
            let count = rng.gen_range(2..=3.min(mons.len()).max(2));
            let terms = (0..count)
                .map(|_| (mons[rng.gen_range(0..mons.len())].clone(), ring.field().element(rng.gen_range(1..p))))
                .collect();
            let s = Polynomial::from_terms(ring, terms);
            if s.is_zero() {
                continue;
            }
            if validates(i, &s)? {
                return Ok(s);
            }
        }
    }
    Err(Error::TrickElement(format!("no trick element of degree <= {degree_cap} found")))
}
