use rayon::prelude::*;

use super::{ceil_div, checked_pow, ratio, ring_dimension, Rational};
use crate::error::{Error, Result};
use crate::hilbert::{annihilation_exponent_homogeneous, end_degree, h0_summary_with, EndDegree};
use crate::ideal::IdealHandle;

/// Least `a` with `m^a · H^0_m(R/J) = 0`.
///
/// Non-homogeneous ideals are handled by searching the degrees `a` at
/// which every monomial lies in `J : J^sat`.
pub fn ann_exponent(j: &IdealHandle) -> Result<u32> {
    let sat = j.saturation()?;
    if sat == *j {
        return Ok(0);
    }
    if j.is_homogeneous() {
        return annihilation_exponent_homogeneous(j, &sat);
    }
    let a = j.colon_ideal(&sat)?;
    if a.is_unit() {
        return Ok(0);
    }
    if !a.has_finite_colength() {
        return Err(Error::Internal("J : J^sat is not of finite colength".into()));
    }
    let bound = a.basis().leading_monomials().iter().map(|m| m.degree()).sum::<u32>() + 1;
    for deg in 1..=bound {
        let mut all = true;
        for m in j.ring().monomials_of_degree(deg) {
            if !a.contains(&j.ring().monomial(m))? {
                all = false;
                break;
            }
        }
        if all {
            return Ok(deg);
        }
    }
    Err(Error::Internal("no power of m annihilates H^0".into()))
}

/// Confirms that `a` is exact for homogeneous `J`: every degree-`a`
/// monomial moves the generators of `J^sat` into `J`, and some degree
/// `a - 1` monomial does not.
pub fn check_ann_exponent(j: &IdealHandle, a: u32) -> Result<bool> {
    let sat = j.saturation()?;
    let outside: Vec<_> =
        sat.basis().elements().iter().filter(|g| !j.contains(g).unwrap_or(true)).cloned().collect();
    let ring = j.ring();
    let kills = |deg: u32| -> Result<bool> {
        for m in ring.monomials_of_degree(deg) {
            let mono = ring.monomial(m);
            for g in &outside {
                if !j.contains(&mono.mul(g)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };
    if outside.is_empty() {
        return Ok(a == 0);
    }
    Ok(a > 0 && kills(a)? && !kills(a - 1)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusRow {
    pub e: u32,
    pub q: u64,
    pub h0_length: u64,
    pub h0_end: EndDegree,
    pub ann_exp: u32,
    /// `end(R/I^[q])` when that quotient has finite length.
    pub v: Option<u32>,
    pub ratio_hk: Rational,
    pub ratio_v: Option<Rational>,
}

#[derive(Clone, Debug)]
pub struct FrobeniusProfile {
    pub ideal: IdealHandle,
    pub rows: Vec<FrobeniusRow>,
    /// Observed over all rows.
    pub b_hat: u64,
    /// Observed over the top half of the rows.
    pub c_hat: u64,
    pub dim: usize,
}

fn frobenius_row(i: &IdealHandle, e: u32, dim: usize) -> Result<FrobeniusRow> {
    let p = i.ring().characteristic();
    let q = checked_pow(p, e)?;
    let jq = i.frobenius_power(e)?;
    let sat = jq.saturation()?;
    let h0 = h0_summary_with(&jq, &sat)?;
    let ann_exp = if h0.length == 0 { 0 } else { annihilation_exponent_homogeneous(&jq, &sat)? };
    let v = if jq.has_finite_colength() {
        match end_degree(&jq)? {
            EndDegree::Degree(d) => Some(d),
            EndDegree::MinusInfinity => None,
        }
    } else {
        None
    };
    let q_dim = checked_pow(q, dim as u32)?;
    Ok(FrobeniusRow {
        e,
        q,
        h0_length: h0.length,
        h0_end: h0.end,
        ann_exp,
        v,
        ratio_hk: ratio(h0.length, q_dim)?,
        ratio_v: v.map(|v| ratio(v as u64, q)).transpose()?,
    })
}

/// Rows `e = 1..=e_max` for `I^[p^e]`; rows are computed in parallel on the
/// current rayon pool and assembled in order of `e`.
pub fn frobenius_profile(i: &IdealHandle, e_max: u32) -> Result<FrobeniusProfile> {
    if e_max == 0 {
        return Err(Error::Precondition("e_max must be at least 1".into()));
    }
    if !i.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let dim = ring_dimension(i.presentation())?;
    let rows = (1..=e_max).into_par_iter().map(|e| frobenius_row(i, e, dim)).collect::<Result<Vec<_>>>()?;
    let ceil = |r: &FrobeniusRow| ceil_div(r.ann_exp as u64, r.q);
    let b_hat = rows.iter().map(ceil).max().unwrap_or(0);
    let c_hat = rows[rows.len() / 2..].iter().map(ceil).max().unwrap_or(0);
    Ok(FrobeniusProfile { ideal: i.clone(), rows, b_hat, c_hat, dim })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EghkEstimate {
    pub ratios: Vec<Rational>,
    /// The last two ratios agree.
    pub exact: bool,
    pub value: Rational,
}

pub fn eghk_estimate(profile: &FrobeniusProfile) -> EghkEstimate {
    let ratios: Vec<Rational> = profile.rows.iter().map(|r| r.ratio_hk).collect();
    let n = ratios.len();
    let exact = n >= 2 && ratios[n - 1] == ratios[n - 2];
    let value = ratios.last().copied().unwrap_or_else(|| Rational::from_integer(0));
    EghkEstimate { ratios, exact, value }
}
