use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::monomial::Monomial;
use crate::ring::Ring;

pub type Term = (Monomial, FieldElement);

/// A polynomial in canonical form: terms strictly descending in the ring
/// order, no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.ring == other.ring
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    /// Builds a polynomial from arbitrary terms, sorting and combining.
    pub fn from_terms(ring: &Ring, mut terms: Vec<Term>) -> Self {
        let order = ring.order();
        let field = ring.field();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(last.1, c),
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if matches!(out.last(), Some(t) if t.1.is_zero()) {
            out.pop();
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Trusts that `terms` is already canonical.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<Term>) -> Self {
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<FieldElement> {
        self.terms.first().map(|t| t.1)
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|t| t.0.degree() == m.degree()),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let order = self.ring.order();
        let field = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let sign = |c: FieldElement| if negate_other { field.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), sign(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(a[i].1, sign(b[j].1));
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| (t.0.clone(), sign(t.1))));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(*c))).collect(),
        }
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let field = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(*a, c))).collect(),
        }
    }

    /// Multiplication by `c * m`; order is preserved since monomial orders
    /// are multiplicative.
    pub fn mul_term(&self, c: FieldElement, m: &Monomial) -> Result<Polynomial> {
        if c.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let field = self.ring.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (tm, tc) in &self.terms {
            terms.push((tm.mul(m)?, field.mul(*tc, c)));
        }
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// `self - c * m * g`, merged in one pass.
    pub(crate) fn sub_mul_term(&self, c: FieldElement, m: &Monomial, g: &Polynomial) -> Result<Polynomial> {
        let order = self.ring.order();
        let field = self.ring.field();
        let a = &self.terms;
        let mut out = Vec::with_capacity(a.len() + g.terms.len());
        let mut i = 0;
        for (gm, gc) in &g.terms {
            let bm = gm.mul(m)?;
            let bc = field.neg(field.mul(*gc, c));
            loop {
                if i < a.len() {
                    match order.cmp(&a[i].0, &bm) {
                        Ordering::Greater => {
                            out.push(a[i].clone());
                            i += 1;
                            continue;
                        }
                        Ordering::Equal => {
                            let s = field.add(a[i].1, bc);
                            if !s.is_zero() {
                                out.push((bm, s));
                            }
                            i += 1;
                        }
                        Ordering::Less => out.push((bm, bc)),
                    }
                } else {
                    out.push((bm, bc));
                }
                break;
            }
        }
        out.extend(a[i..].iter().cloned());
        Ok(Polynomial { ring: self.ring.clone(), terms: out })
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Polynomial::zero(&self.ring);
        let field = self.ring.field();
        for (m, c) in &small.terms {
            acc = acc.sub_mul_term(field.neg(*c), m, large)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, mut k: u32) -> Result<Polynomial> {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `f^(p^e)`, computed termwise: over `F_p` the Frobenius map fixes
    /// coefficients and is additive, so each exponent is scaled by `p^e`.
    pub fn frobenius_image(&self, e: u32) -> Result<Polynomial> {
        let p = self.ring.characteristic();
        let q = p.checked_pow(e).filter(|q| *q <= u32::MAX as u64).ok_or(Error::ExponentOverflow)? as u32;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.pow(q)?, *c));
        }
        // the order is multiplicative, so scaling all exponents keeps terms sorted
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(c) if c == FieldElement::ONE => self.clone(),
            Some(c) => self.scale(self.ring.field().inv(c)),
        }
    }

    /// Reinterprets the polynomial in a ring with the same variables but a
    /// different order.
    pub fn in_ring(&self, ring: &Ring) -> Polynomial {
        debug_assert_eq!(ring.nvars(), self.ring.nvars());
        Polynomial::from_terms(ring, self.terms.clone())
    }

    pub(crate) fn permuted(&self, ring: &Ring, perm: &[usize]) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().map(|(m, c)| (m.permuted(perm), *c)).collect())
    }

    pub(crate) fn map_monomials(&self, ring: &Ring, f: impl Fn(&Monomial) -> Monomial) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().map(|(m, c)| (f(m), *c)).collect())
    }

    /// Exact division by a monomial dividing every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (tm, c) in &self.terms {
            if !m.divides(tm) {
                return None;
            }
            terms.push((m.quotient_of(tm), *c));
        }
        Some(Polynomial { ring: self.ring.clone(), terms })
    }

    /// Exact polynomial division `self / divisor`; `None` if not exact.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ring(divisor)?;
        let lm = divisor.leading_monomial().ok_or(Error::ZeroDivisor)?.clone();
        let field = self.ring.field();
        let lc_inv = field.inv(divisor.leading_coefficient().unwrap());
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !lm.divides(&m) {
                return Ok(None);
            }
            let qm = lm.quotient_of(&m);
            let qc = field.mul(c, lc_inv);
            rem = rem.sub_mul_term(qc, &qm, divisor)?;
            quot.push((qm, qc));
        }
        Ok(Some(Polynomial { ring: self.ring.clone(), terms: quot }))
    }

    /// Homogeneous components keyed by degree.
    pub fn homogeneous_components(&self) -> Vec<(u32, Polynomial)> {
        let mut degs: Vec<u32> = self.terms.iter().map(|t| t.0.degree()).collect();
        degs.sort_unstable();
        degs.dedup();
        degs.into_iter()
            .map(|d| {
                let terms = self.terms.iter().filter(|t| t.0.degree() == d).cloned().collect();
                (d, Polynomial { ring: self.ring.clone(), terms })
            })
            .collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.ring.vars();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{}", vars[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else if *c == FieldElement::ONE {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", c, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(p: u64, vars: &[&str]) -> Ring {
        Ring::new(p, vars).unwrap()
    }

    #[test]
    fn freshman_dream_char_two() {
        let r = ring(2, &["x", "y"]);
        let f = r.parse("x+y").unwrap();
        assert_eq!(f.mul(&f).unwrap(), r.parse("x^2+y^2").unwrap());
        assert!(f.mul(&r.zero()).unwrap().is_zero());
    }

    #[test]
    fn difference_of_squares_mod_seven() {
        let r = ring(7, &["x", "y"]);
        let prod = r.parse("x+y").unwrap().mul(&r.parse("x-y").unwrap()).unwrap();
        assert_eq!(prod.to_string(), "x^2+6*y^2");
    }

    #[test]
    fn frobenius_examples() {
        let r = ring(2, &["x", "y", "z"]);
        let f = r.parse("x+y").unwrap();
        assert_eq!(f.frobenius_image(2).unwrap(), r.parse("x^4+y^4").unwrap());
        let cubic = r.parse("x^3+y^3+z^3").unwrap();
        let img = cubic.frobenius_image(1).unwrap();
        assert_eq!(img, r.parse("x^6+y^6+z^6").unwrap());
        assert_eq!(img, cubic.mul(&cubic).unwrap());
        assert!(img.is_homogeneous());
        assert_eq!(img.total_degree(), Some(6));
    }

    #[test]
    fn frobenius_exponent_overflow() {
        let r = ring(2, &["x"]);
        let f = r.parse("x^4096").unwrap();
        assert_eq!(f.frobenius_image(20), Err(Error::ExponentOverflow));
        assert_eq!(f.frobenius_image(40), Err(Error::ExponentOverflow));
    }

    #[test]
    fn exact_division() {
        let r = ring(5, &["x", "y"]);
        let f = r.parse("x^3*y - x*y^3").unwrap();
        let g = r.parse("x*y").unwrap();
        assert_eq!(f.div_exact(&g).unwrap().unwrap(), r.parse("x^2-y^2").unwrap());
        assert!(r.parse("x+1").unwrap().div_exact(&g).unwrap().is_none());
    }

    fn arb_poly(p: u64) -> impl Strategy<Value = Vec<(u32, u32, u32, u64)>> {
        prop::collection::vec((0u32..4, 0u32..4, 0u32..3, 0u64..p), 0..5)
    }

    fn build(r: &Ring, raw: &[(u32, u32, u32, u64)]) -> Polynomial {
        let terms = raw
            .iter()
            .map(|&(a, b, c, k)| (Monomial::from_exponents(&[a, b, c]).unwrap(), r.field().element(k)))
            .collect();
        Polynomial::from_terms(r, terms)
    }

    proptest! {
        #[test]
        fn termwise_frobenius_equals_iterated_product(p in prop::sample::select(vec![2u64, 3, 5]),
                                                      e in 0u32..3,
                                                      raw in arb_poly(5)) {
            let r = ring(p, &["x", "y", "z"]);
            let f = build(&r, &raw);
            let q = p.pow(e);
            let mut iterated = r.one();
            for _ in 0..q {
                iterated = iterated.mul(&f).unwrap();
            }
            prop_assert_eq!(f.frobenius_image(e).unwrap(), iterated);
        }

        #[test]
        fn print_parse_round_trip(raw in arb_poly(7)) {
            let r = ring(7, &["x", "y", "z"]);
            let f = build(&r, &raw);
            let g = r.parse(&f.to_string()).unwrap();
            prop_assert_eq!(&f, &g);
            prop_assert_eq!(f.to_string(), g.to_string());
        }

        #[test]
        fn homogeneous_products(d1 in 0u32..4, d2 in 0u32..4, seed in any::<u64>()) {
            let r = ring(3, &["x", "y", "z"]);
            let mk = |d: u32, s: u64| {
                let ms = r.monomials_of_degree(d);
                let terms = ms.into_iter().enumerate()
                    .map(|(i, m)| (m, r.field().element((s >> (i % 32)) & 3)))
                    .collect();
                Polynomial::from_terms(&r, terms)
            };
            let f = mk(d1, seed);
            let g = mk(d2, seed.rotate_left(17));
            let h = f.mul(&g).unwrap();
            prop_assert!(h.is_homogeneous());
            if !h.is_zero() {
                prop_assert_eq!(h.total_degree(), Some(d1 + d2));
            }
        }
    }
}
