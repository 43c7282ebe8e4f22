use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Rational;
use crate::error::{Error, Result};
use crate::ideal::IdealHandle;
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusProbe {
    /// Least `e` with `x^(p^e) ∈ I^[p^e]`.
    pub member_at: Option<u32>,
    pub checked_up_to: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightWitness {
    pub c: Polynomial,
    pub verified_up_to: u32,
}

#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub element: Polynomial,
    pub ideal: IdealHandle,
    pub frobenius: FrobeniusProbe,
    pub tight_witness: Option<TightWitness>,
}

/// Least `e ≤ e_max` with `x^q ∈ I^[q]`. Membership is then confirmed at
/// every larger computed `e`.
pub fn frobenius_closure_probe(x: &Polynomial, i: &IdealHandle, e_max: u32) -> Result<FrobeniusProbe> {
    let mut member_at = None;
    for e in 0..=e_max {
        let inside = i.frobenius_power(e)?.contains(&x.frobenius_image(e)?)?;
        match (member_at, inside) {
            (None, true) => member_at = Some(e),
            (Some(_), false) => return Err(Error::Internal("Frobenius membership lost at a larger q".into())),
            _ => {}
        }
    }
    Ok(FrobeniusProbe { member_at, checked_up_to: e_max })
}

fn witnesses(c: &Polynomial, x: &Polynomial, i: &IdealHandle, e_max: u32) -> Result<bool> {
    for e in 1..=e_max {
        if !i.frobenius_power(e)?.contains(&c.mul(&x.frobenius_image(e)?)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

const RANDOM_WITNESSES_PER_DEGREE: usize = 8;

/// Searches `c` of degree `0..=cap`, nonzero in `R`, with `c·x^q ∈ I^[q]`
/// for `q = p, …, p^e_max`. Monomials come first, then seeded random sums.
/// A hit is evidence for `x ∈ I*`, not a proof.
pub fn tight_closure_witness_search(
    x: &Polynomial,
    i: &IdealHandle,
    cap: u32,
    e_max: u32,
) -> Result<Option<TightWitness>> {
    let ring = i.ring();
    let pres = i.presentation();
    let mut rng = ChaCha8Rng::seed_from_u64(0xc105);
    for d in 0..=cap {
        let mons = ring.monomials_of_degree(d);
        let mut candidates: Vec<Polynomial> = mons.iter().map(|m| ring.monomial(m.clone())).collect();
        if mons.len() > 1 {
            for _ in 0..RANDOM_WITNESSES_PER_DEGREE {
                let terms = (0..rng.gen_range(2..=3))
                    .map(|_| {
                        let m = mons[rng.gen_range(0..mons.len())].clone();
                        (m, ring.field().element(rng.gen_range(1..ring.characteristic())))
                    })
                    .collect();
                candidates.push(Polynomial::from_terms(ring, terms));
            }
        }
        for c in candidates {
            if c.is_zero() || pres.reduce(&c)?.is_zero() {
                continue;
            }
            if witnesses(&c, x, i, e_max)? {
                return Ok(Some(TightWitness { c, verified_up_to: e_max }));
            }
        }
    }
    Ok(None)
}

/// Whether every monomial of degree `c` that is nonzero in `R` has
/// `μ^q ∈ I^[q]` for all `e ≤ e_max`.
pub fn frobenius_closure_degree_check(i: &IdealHandle, c: u32, e_max: u32) -> Result<bool> {
    if !i.has_finite_colength() {
        return Err(Error::Precondition("the ideal must be m-primary".into()));
    }
    let ring = i.ring();
    let powers = (0..=e_max).map(|e| i.frobenius_power(e)).collect::<Result<Vec<_>>>()?;
    for m in ring.monomials_of_degree(c) {
        let mu = ring.monomial(m);
        if i.presentation().reduce(&mu)?.is_zero() {
            continue;
        }
        for (e, ie) in powers.iter().enumerate() {
            if !ie.contains(&mu.frobenius_image(e as u32)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `(d1 + d2 + e, ((d−1)(d−2) − 2)/d + 1)`.
pub fn brenner_bound(d: u32, d1: u32, d2: u32, e: Rational) -> Result<(Rational, Rational)> {
    if d == 0 {
        return Err(Error::Precondition("curve degree must be positive".into()));
    }
    let d = d as i64;
    let alpha = Rational::from_integer(d1 as i64 + d2 as i64) + e;
    let beta = Rational::new((d - 1) * (d - 2) - 2, d) + 1;
    Ok((alpha, beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::QuotientPresentation;
    use std::sync::Arc;

    fn fermat() -> (Arc<QuotientPresentation>, IdealHandle) {
        let pr = QuotientPresentation::parse(2, &["x", "y", "z"], &["x^3+y^3+z^3"]).unwrap();
        let i = IdealHandle::parse(&pr, &["x", "y"]).unwrap();
        (pr, i)
    }

    #[test]
    fn probes_on_fermat_char_two() {
        let (pr, i) = fermat();
        let r = pr.ring();
        // z^4 = z(x^3 + y^3) in characteristic 2
        let z2 = r.parse("z^2").unwrap();
        assert_eq!(frobenius_closure_probe(&z2, &i, 3).unwrap().member_at, Some(1));
        assert_eq!(frobenius_closure_probe(&r.parse("z^3").unwrap(), &i, 2).unwrap().member_at, Some(0));
        assert_eq!(frobenius_closure_probe(&r.parse("x*z").unwrap(), &i, 2).unwrap().member_at, Some(0));
        assert_eq!(tight_closure_witness_search(&z2, &i, 3, 3).unwrap().unwrap().c, r.one());
        let one = tight_closure_witness_search(&r.parse("x").unwrap(), &i, 2, 2).unwrap().unwrap();
        assert_eq!(one.c, r.one());
        assert!(tight_closure_witness_search(&r.parse("z").unwrap(), &i, 1, 2).unwrap().is_none());
    }

    #[test]
    fn probes_on_fermat_char_seven() {
        let pr = QuotientPresentation::parse(7, &["x", "y", "z"], &["x^3+y^3+z^3"]).unwrap();
        let i = IdealHandle::parse(&pr, &["x", "y"]).unwrap();
        let z2 = pr.ring().parse("z^2").unwrap();
        assert_eq!(frobenius_closure_probe(&z2, &i, 2).unwrap().member_at, None);
        let w = tight_closure_witness_search(&z2, &i, 2, 2).unwrap().unwrap();
        assert_eq!(w.c.total_degree(), Some(1));
        assert!(!frobenius_closure_degree_check(&i, 2, 1).unwrap());
        assert!(frobenius_closure_degree_check(&i, 3, 1).unwrap());
    }

    #[test]
    fn degree_check() {
        let (pr, i) = fermat();
        assert!(frobenius_closure_degree_check(&i, 3, 2).unwrap());
        assert!(!frobenius_closure_degree_check(&i, 2, 2).unwrap());
        assert!(frobenius_closure_degree_check(&IdealHandle::unit(&pr), 0, 2).unwrap());
        assert!(frobenius_closure_degree_check(&IdealHandle::parse(&pr, &["x"]).unwrap(), 3, 1).is_err());
    }

    #[test]
    fn brenner() {
        let r = |n, d| Rational::new(n, d);
        assert_eq!(brenner_bound(3, 1, 1, r(0, 1)).unwrap(), (r(2, 1), r(1, 1)));
        for n in 2..6 {
            assert_eq!(brenner_bound(1, 2, n, r(-1, 1)).unwrap(), (r(n as i64 + 1, 1), r(-1, 1)));
        }
        assert_eq!(brenner_bound(4, 0, 0, r(1, 2)).unwrap(), (r(1, 2), r(2, 1)));
        assert!(brenner_bound(0, 1, 1, r(0, 1)).is_err());
    }
}
