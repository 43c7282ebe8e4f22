use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) type Exponents = SmallVec<[u32; 8]>;

/// A power product, one exponent per ring variable, with cached total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), degree: 0 }
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        let mut degree = 0u32;
        for &e in exps {
            degree = degree.checked_add(e).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial { exps: SmallVec::from_slice(exps), degree })
    }

    pub fn variable(nvars: usize, index: usize, power: u32) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = power;
        m.degree = power;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = Exponents::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            exps.push(a.checked_add(*b).ok_or(Error::ExponentOverflow)?);
        }
        let degree = self.degree.checked_add(other.degree).ok_or(Error::ExponentOverflow)?;
        Ok(Monomial { exps, degree })
    }

    pub fn pow(&self, k: u32) -> Result<Monomial> {
        let mut exps = Exponents::with_capacity(self.exps.len());
        for a in self.exps.iter() {
            exps.push(a.checked_mul(k).ok_or(Error::ExponentOverflow)?);
        }
        let degree = self.degree.checked_mul(k).ok_or(Error::ExponentOverflow)?;
        Ok(Monomial { exps, degree })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = other.exps.iter().zip(self.exps.iter()).map(|(b, a)| b - a).collect();
        Monomial { exps, degree: other.degree - self.degree }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the single variable if this is a pure power `x_i^k`, `k >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub(crate) fn permuted(&self, perm: &[usize]) -> Monomial {
        // new position i holds old variable perm[i]
        let exps: Exponents = perm.iter().map(|&j| self.exps[j]).collect();
        Monomial { exps, degree: self.degree }
    }

    pub(crate) fn prepend_zeros(&self, k: usize) -> Monomial {
        let mut exps = Exponents::from_elem(0, k);
        exps.extend_from_slice(&self.exps);
        Monomial { exps, degree: self.degree }
    }

    pub(crate) fn drop_leading(&self, k: usize) -> Monomial {
        let exps: Exponents = SmallVec::from_slice(&self.exps[k..]);
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub(crate) fn with_exponent(&self, var: usize, e: u32) -> Monomial {
        let mut exps = self.exps.clone();
        let degree = self.degree - exps[var] + e;
        exps[var] = e;
        Monomial { exps, degree }
    }
}

/// Monomial orders. `Block { split }` compares the first `split` variables
/// first (grevlex), then the rest (grevlex); it eliminates the leading block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    Block { split: usize },
}

fn grevlex_slices(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::GrevLex => {
                match a.degree.cmp(&b.degree) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for i in (0..a.exps.len()).rev() {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Block { split } => {
                match grevlex_slices(&a.exps[..split], &b.exps[..split]) {
                    Ordering::Equal => grevlex_slices(&a.exps[split..], &b.exps[split..]),
                    o => o,
                }
            }
        }
    }

    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::GrevLex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn grevlex_on_degree_three() {
        let o = MonomialOrder::GrevLex;
        // x^3 > y^3 > z^3 and xyz > y^3 in grevlex with x > y > z
        assert_eq!(o.cmp(&mono(&[3, 0, 0]), &mono(&[0, 3, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&mono(&[0, 3, 0]), &mono(&[0, 0, 3])), Ordering::Greater);
        assert_eq!(o.cmp(&mono(&[1, 1, 1]), &mono(&[0, 3, 0])), Ordering::Less);
        assert_eq!(o.cmp(&mono(&[0, 2, 0]), &mono(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::Block { split: 1 };
        assert_eq!(o.cmp(&mono(&[1, 0, 0]), &mono(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&mono(&[0, 1, 1]), &mono(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn overflow_is_an_error() {
        let m = mono(&[u32::MAX - 1, 0]);
        assert_eq!(m.mul(&mono(&[2, 0])), Err(Error::ExponentOverflow));
        assert_eq!(mono(&[1 << 20, 0]).pow(1 << 12), Err(Error::ExponentOverflow));
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![MonomialOrder::GrevLex, MonomialOrder::Lex, MonomialOrder::Block { split: 1 }, MonomialOrder::Block { split: 2 }]
    }

    proptest! {
        #[test]
        fn order_axioms(a in prop::collection::vec(0u32..6, 3),
                        b in prop::collection::vec(0u32..6, 3),
                        c in prop::collection::vec(0u32..6, 3)) {
            let (a, b, c) = (mono(&a), mono(&b), mono(&c));
            let one = Monomial::one(3);
            for o in orders() {
                // total and antisymmetric
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
                prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
                // multiplicative
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c).unwrap(), &b.mul(&c).unwrap()));
                // 1 is minimal
                prop_assert_ne!(o.cmp(&a, &one), Ordering::Less);
                // transitive
                if o.cmp(&a, &b) != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
                    prop_assert_ne!(o.cmp(&a, &c), Ordering::Greater);
                }
            }
        }
    }
}
