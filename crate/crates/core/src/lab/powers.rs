use rayon::prelude::*;

use super::{ceil_div, checked_pow, ratio, ring_dimension, Rational};
use crate::error::{Error, Result};
use crate::hilbert::{alpha, annihilation_exponent_homogeneous, h0_summary_with, krull_dimension, KrullDimension};
use crate::ideal::IdealHandle;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowersRow {
    pub n: u32,
    pub h0_length: u64,
    pub ann_exp: u32,
    pub alpha_sat: u32,
    pub ratio_alpha: Rational,
    pub ratio_len: Rational,
}

#[derive(Clone, Debug)]
pub struct PowersProfile {
    pub ideal: IdealHandle,
    pub rows: Vec<PowersRow>,
    /// Observed over the top half of the rows.
    pub d_hat: u64,
    /// `min_n α(sat(I^n))/n`.
    pub waldschmidt_upper: Rational,
    pub dim: usize,
    pub warnings: Vec<String>,
}

/// `p^(n)` as the saturation of `p^n`; primality of `p` is trusted.
pub fn symbolic_power(p: &IdealHandle, n: u32) -> Result<IdealHandle> {
    if krull_dimension(p)? != KrullDimension::Dim(1) {
        return Err(Error::Precondition("symbolic powers need a prime of dimension one".into()));
    }
    p.ordinary_power(n)?.saturation()
}

fn powers_row(i: &IdealHandle, n: u32, dim: usize) -> Result<PowersRow> {
    let pn = i.ordinary_power(n)?;
    let sat = pn.saturation()?;
    let h0 = h0_summary_with(&pn, &sat)?;
    let ann_exp = if h0.length == 0 { 0 } else { annihilation_exponent_homogeneous(&pn, &sat)? };
    let alpha_sat = if sat.is_unit() { 0 } else { alpha(&sat)? };
    Ok(PowersRow {
        n,
        h0_length: h0.length,
        ann_exp,
        alpha_sat,
        ratio_alpha: ratio(alpha_sat as u64, n as u64)?,
        ratio_len: ratio(h0.length, checked_pow(n as u64, dim as u32)?)?,
    })
}

/// Rows `n = 1..=n_max` for `I^n` and its saturation. With `symbolic`, the
/// caller asserts `I` is a prime of dimension one, so the saturations are
/// the symbolic powers.
pub fn powers_profile(i: &IdealHandle, n_max: u32, symbolic: bool) -> Result<PowersProfile> {
    if n_max == 0 {
        return Err(Error::Precondition("n_max must be at least 1".into()));
    }
    if !i.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let mut warnings = Vec::new();
    if symbolic {
        if krull_dimension(i)? != KrullDimension::Dim(1) {
            return Err(Error::Precondition("symbolic powers need a prime of dimension one".into()));
        }
        if i.saturation()? != *i {
            warnings.push("the ideal is not saturated, so it is not a prime of dimension one".to_string());
        }
    }
    let dim = ring_dimension(i.presentation())?;
    let rows = (1..=n_max).into_par_iter().map(|n| powers_row(i, n, dim)).collect::<Result<Vec<_>>>()?;
    let d_hat = rows[rows.len() / 2..].iter().map(|r| ceil_div(r.ann_exp as u64, r.n as u64)).max().unwrap_or(0);
    let waldschmidt_upper = rows.iter().map(|r| r.ratio_alpha).min().unwrap();
    Ok(PowersProfile { ideal: i.clone(), rows, d_hat, waldschmidt_upper, dim, warnings })
}

/// Per row, whether `(α(I) + N − 1)/N ≤ α(I^(n))/n`.
pub fn chudnovsky_check(profile: &PowersProfile, alpha_p: u32, big_n: u32) -> Vec<bool> {
    let lhs = Rational::new(alpha_p as i64 + big_n as i64 - 1, big_n as i64);
    profile.rows.iter().map(|r| lhs <= r.ratio_alpha).collect()
}

/// Pairs `(n, m)` with `α(n + m) > α(n) + α(m)` among computed rows.
pub fn fekete_violations(profile: &PowersProfile) -> Vec<(u32, u32)> {
    let alpha_at = |n: u32| profile.rows.iter().find(|r| r.n == n).map(|r| r.alpha_sat);
    let mut out = Vec::new();
    for a in &profile.rows {
        for b in &profile.rows {
            if a.n > b.n {
                continue;
            }
            if let Some(sum) = alpha_at(a.n + b.n) {
                if sum > a.alpha_sat + b.alpha_sat {
                    out.push((a.n, b.n));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::QuotientPresentation;
    use std::sync::Arc;

    fn cone() -> (Arc<QuotientPresentation>, IdealHandle) {
        let pr = QuotientPresentation::parse(101, &["x", "y", "z"], &["z^2-x*y"]).unwrap();
        let p = IdealHandle::parse(&pr, &["x", "z"]).unwrap();
        (pr, p)
    }

    #[test]
    fn cone_symbolic_powers() {
        let (pr, p) = cone();
        assert_eq!(symbolic_power(&p, 1).unwrap(), p);
        assert_eq!(symbolic_power(&p, 2).unwrap(), IdealHandle::parse(&pr, &["x"]).unwrap());
        // odd powers: p^(2n+1) = x^n p, since v_p(x) = 2 and v_p(z) = 1
        for n in 1..=3u32 {
            let expected = IdealHandle::parse(&pr, &[format!("x^{}", n + 1), format!("x^{n}*z")]).unwrap();
            assert_eq!(symbolic_power(&p, 2 * n + 1).unwrap(), expected);
            let printed = IdealHandle::parse(&pr, &[format!("x^{}", n + 1), format!("z^{}", 2 * n + 1)]).unwrap();
            assert!(printed.is_subset_of(&expected).unwrap() && printed != expected);
        }
        assert!(symbolic_power(&IdealHandle::irrelevant(&pr), 2).is_err());
    }

    #[test]
    fn cone_profile() {
        let (_, p) = cone();
        let prof = powers_profile(&p, 6, true).unwrap();
        for r in &prof.rows {
            assert_eq!(r.alpha_sat, r.n.div_ceil(2));
            assert!(r.h0_length == 0 || r.ann_exp <= r.n);
        }
        assert_eq!(prof.waldschmidt_upper, Rational::new(1, 2));
        assert_eq!(prof.d_hat, 1);
        assert!(prof.warnings.is_empty());
        assert!(fekete_violations(&prof).is_empty());
        let chud = chudnovsky_check(&prof, 1, 1);
        assert!(chud[0] && !chud[1]);
        assert!(prof.waldschmidt_upper >= Rational::from_integer(1 - prof.d_hat as i64));
    }

    #[test]
    fn equality_case_passes_chudnovsky() {
        let pr = QuotientPresentation::parse(7, &["x", "y", "z"], &[]).unwrap();
        let line = IdealHandle::parse(&pr, &["x", "y"]).unwrap();
        let prof = powers_profile(&line, 4, true).unwrap();
        assert!(prof.rows.iter().all(|r| r.alpha_sat == r.n && r.h0_length == 0));
        assert!(chudnovsky_check(&prof, 1, 1).into_iter().all(|b| b));
    }
}
