//! Hilbert series numerators, dimensions, lengths and end degrees of
//! standard graded quotients, and the zeroth local cohomology `J^sat/J`.

use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::IdealHandle;
use crate::monomial::Monomial;

/// `N(t)` with `HS(S/J) = N(t)/(1-t)^m`; coefficient `i` multiplies `t^i`.
/// The zero polynomial (no coefficients) belongs to the unit ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertNumerator {
    pub coefficients: Vec<i64>,
    pub nvars: usize,
}

/// Top degree of a graded module of finite length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EndDegree {
    MinusInfinity,
    Degree(u32),
}

impl EndDegree {
    pub fn degree(self) -> Option<u32> {
        match self {
            EndDegree::MinusInfinity => None,
            EndDegree::Degree(d) => Some(d),
        }
    }
}

impl fmt::Display for EndDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndDegree::MinusInfinity => write!(f, "-inf"),
            EndDegree::Degree(d) => write!(f, "{d}"),
        }
    }
}

/// `H^0_m(S/J) = J^sat/J` through its Hilbert series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H0Summary {
    pub length: u64,
    pub end: EndDegree,
    /// `diff[d] = dim (J^sat/J)_d`.
    pub diff: Vec<i64>,
}

/// Krull dimension, with the zero ring kept apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KrullDimension {
    Empty,
    Dim(usize),
}

impl fmt::Display for KrullDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KrullDimension::Empty => write!(f, "-inf"),
            KrullDimension::Dim(d) => write!(f, "{d}"),
        }
    }
}

fn overflow() -> Error {
    Error::Internal("Hilbert numerator coefficient overflow".into())
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_add(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = x.checked_add(y).ok_or_else(overflow)?;
    }
    Ok(trim(out))
}

fn poly_sub(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    let neg: Vec<i64> = b.iter().map(|c| c.checked_neg().ok_or_else(overflow)).collect::<Result<_>>()?;
    poly_add(a, &neg)
}

fn poly_mul(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let prod = x.checked_mul(y).ok_or_else(overflow)?;
            out[i + j] = out[i + j].checked_add(prod).ok_or_else(overflow)?;
        }
    }
    Ok(trim(out))
}

fn shift(a: &[i64], k: usize) -> Vec<i64> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; k];
    out.extend_from_slice(a);
    out
}

/// Divides by `1 - t` when the remainder vanishes.
fn div_one_minus_t(a: &[i64]) -> Result<Option<Vec<i64>>> {
    if a.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let mut q = Vec::with_capacity(a.len());
    let mut acc = 0i64;
    for &c in a {
        acc = acc.checked_add(c).ok_or_else(overflow)?;
        q.push(acc);
    }
    if q.pop() != Some(0) {
        return Ok(None);
    }
    Ok(Some(trim(q)))
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

/// Numerator of the Hilbert series of `S/M` for a monomial ideal `M`.
pub fn monomial_numerator(gens: &[Monomial]) -> Result<Vec<i64>> {
    numerator_rec(minimalize(gens.to_vec()))
}

fn numerator_rec(gens: Vec<Monomial>) -> Result<Vec<i64>> {
    if gens.is_empty() {
        return Ok(vec![1]);
    }
    if gens.iter().any(|g| g.is_one()) {
        return Ok(Vec::new());
    }
    let pairwise_coprime = gens.iter().all(|g| g.pure_power_var().is_some()) || {
        let mut ok = true;
        'outer: for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if !gens[i].is_coprime(&gens[j]) {
                    ok = false;
                    break 'outer;
                }
            }
        }
        ok
    };
    if pairwise_coprime {
        let mut acc = vec![1i64];
        for g in &gens {
            let mut factor = vec![0i64; g.degree() as usize + 1];
            factor[0] = 1;
            factor[g.degree() as usize] = -1;
            acc = poly_mul(&acc, &factor)?;
        }
        return Ok(acc);
    }
    let nvars = gens[0].nvars();
    // pivot variable: the one occurring in the most non-pure-power generators
    let mut counts = vec![0usize; nvars];
    for g in gens.iter().filter(|g| g.pure_power_var().is_none()) {
        for (i, &e) in g.exponents().iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let var = (0..nvars).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let mut exps: Vec<u32> = gens.iter().map(|g| g.exponents()[var]).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2].max(1);
    let pivot = Monomial::variable(nvars, var, e);

    let mut with_pivot = gens.clone();
    with_pivot.push(pivot.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let ge = g.exponents()[var];
            g.with_exponent(var, ge - ge.min(e))
        })
        .collect();
    let a = numerator_rec(minimalize(with_pivot))?;
    let b = numerator_rec(minimalize(colon))?;
    poly_add(&a, &shift(&b, e as usize))
}

fn require_homogeneous(j: &IdealHandle) -> Result<()> {
    if j.is_homogeneous() {
        Ok(())
    } else {
        Err(Error::NotHomogeneous)
    }
}

/// Hilbert series numerator of `S/J` from the leading-term ideal.
pub fn hilbert_numerator(j: &IdealHandle) -> Result<HilbertNumerator> {
    require_homogeneous(j)?;
    let coefficients = monomial_numerator(&j.basis().leading_monomials())?;
    Ok(HilbertNumerator { coefficients, nvars: j.ring().nvars() })
}

impl HilbertNumerator {
    /// `dim (S/J)_d` for `d = 0..=max_degree`.
    pub fn dimensions(&self, max_degree: usize) -> Result<Vec<i64>> {
        let mut series: Vec<i64> = (0..=max_degree).map(|i| self.coefficients.get(i).copied().unwrap_or(0)).collect();
        for _ in 0..self.nvars {
            for i in 1..series.len() {
                series[i] = series[i].checked_add(series[i - 1]).ok_or_else(overflow)?;
            }
        }
        Ok(series)
    }

    /// `N(t)/(1-t)^m` when `S/J` has finite length.
    fn finite_part(&self) -> Result<Option<Vec<i64>>> {
        let mut cur = self.coefficients.clone();
        for _ in 0..self.nvars {
            match div_one_minus_t(&cur)? {
                Some(q) => cur = q,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }
}

/// `dim S/J`, or `Empty` for the unit ideal.
pub fn krull_dimension(j: &IdealHandle) -> Result<KrullDimension> {
    let n = hilbert_numerator(j)?;
    if n.coefficients.is_empty() {
        return Ok(KrullDimension::Empty);
    }
    let mut cur = n.coefficients;
    let mut order = 0;
    while order < n.nvars {
        match div_one_minus_t(&cur)? {
            Some(q) => {
                cur = q;
                order += 1;
            }
            None => break,
        }
    }
    Ok(KrullDimension::Dim(n.nvars - order))
}

fn finite_hilbert_polynomial(j: &IdealHandle) -> Result<Vec<i64>> {
    if !j.has_finite_colength() {
        return Err(Error::NotFiniteLength);
    }
    let n = hilbert_numerator(j)?;
    n.finite_part()?.ok_or_else(|| Error::Internal("finite colength but inexact division".into()))
}

/// `ℓ(S/J)` for `J` of finite colength.
pub fn length_of_quotient(j: &IdealHandle) -> Result<u64> {
    let d = finite_hilbert_polynomial(j)?;
    Ok(d.iter().sum::<i64>() as u64)
}

/// Largest `d` with `(S/J)_d ≠ 0` for `J` of finite colength.
pub fn end_degree(j: &IdealHandle) -> Result<EndDegree> {
    let d = finite_hilbert_polynomial(j)?;
    Ok(if d.is_empty() { EndDegree::MinusInfinity } else { EndDegree::Degree(d.len() as u32 - 1) })
}

/// Least degree of an element of `J` not in the relations.
pub fn alpha(j: &IdealHandle) -> Result<u32> {
    require_homogeneous(j)?;
    let mut best: Option<u32> = None;
    for g in j.basis().elements() {
        if !j.presentation().reduce(g)?.is_zero() {
            let d = g.total_degree().unwrap_or(0);
            best = Some(best.map_or(d, |b| b.min(d)));
        }
    }
    best.ok_or(Error::ZeroIdeal)
}

/// Length, end degree and Hilbert function of `J^sat/J`.
pub fn h0_summary(j: &IdealHandle) -> Result<H0Summary> {
    require_homogeneous(j)?;
    let sat = j.saturation()?;
    h0_summary_with(j, &sat)
}

/// As [`h0_summary`] with a known saturation.
pub fn h0_summary_with(j: &IdealHandle, sat: &IdealHandle) -> Result<H0Summary> {
    let nj = hilbert_numerator(j)?;
    let ns = hilbert_numerator(sat)?;
    let mut diff = poly_sub(&nj.coefficients, &ns.coefficients)?;
    for _ in 0..nj.nvars {
        diff = div_one_minus_t(&diff)?.ok_or_else(|| Error::Internal("J^sat/J is not of finite length".into()))?;
    }
    if diff.iter().any(|&c| c < 0) {
        return Err(Error::Internal("negative dimension in J^sat/J".into()));
    }
    let length = diff.iter().sum::<i64>() as u64;
    let end = if diff.is_empty() { EndDegree::MinusInfinity } else { EndDegree::Degree(diff.len() as u32 - 1) };
    Ok(H0Summary { length, end, diff })
}

/// Least `a` with `m^a (J^sat/J) = 0` for homogeneous `J`, read off
/// `A = J : J^sat` as `end(S/A) + 1`.
pub(crate) fn annihilation_exponent_homogeneous(j: &IdealHandle, sat: &IdealHandle) -> Result<u32> {
    let a = j.colon_ideal(sat)?;
    if a.is_unit() {
        return Ok(0);
    }
    match end_degree(&a)? {
        EndDegree::MinusInfinity => Ok(0),
        EndDegree::Degree(d) => Ok(d + 1),
    }
}
