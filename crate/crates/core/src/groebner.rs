//! Buchberger's algorithm producing reduced Gröbner bases.
//!
//! Pairs are processed smallest lcm degree first and pruned with the
//! Gebauer–Möller criteria. New elements are fully reduced against the
//! current basis; a single interreduction at the end produces the unique
//! reduced basis.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Term};
use crate::ring::Ring;

/// A reduced Gröbner basis: monic, interreduced, sorted by leading monomial
/// (ascending). Unique for a given ideal and order.
#[derive(Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    elements: Vec<Polynomial>,
}

impl std::fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.elements.iter()).finish()
    }
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| g.leading_monomial().unwrap().clone()).collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        normal_form(f, self)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        ideal_member(f, self)
    }
}

struct Reducer<'a> {
    polys: Vec<&'a Polynomial>,
}

impl<'a> Reducer<'a> {
    fn find(&self, m: &Monomial) -> Option<&'a Polynomial> {
        self.polys.iter().copied().find(|g| g.leading_monomial().unwrap().divides(m))
    }
}

/// Full reduction of `f` by the polynomials accepted by `pick`.
fn reduce_with<'a, F>(f: &Polynomial, mut pick: F) -> Result<Polynomial>
where
    F: FnMut(&Monomial) -> Option<&'a Polynomial>,
{
    let ring = f.ring().clone();
    let field = ring.field();
    let order = ring.order();
    let mut terms: Vec<Term> = f.terms().to_vec();
    let mut i = 0;
    while i < terms.len() {
        let (m, c) = terms[i].clone();
        match pick(&m) {
            None => i += 1,
            Some(g) => {
                let lm = g.leading_monomial().unwrap();
                let factor = lm.quotient_of(&m);
                let coeff = field.mul(c, field.inv(g.leading_coefficient().unwrap()));
                let tail = Polynomial::from_sorted(&ring, terms.split_off(i));
                let reduced = tail.sub_mul_term(coeff, &factor, g)?;
                debug_assert!(reduced.leading_monomial().is_none_or(|l| order.cmp(l, &m) == Ordering::Less));
                terms.extend(reduced.into_terms());
            }
        }
    }
    Ok(Polynomial::from_sorted(&ring, terms))
}

fn reduce_by(f: &Polynomial, reducers: &Reducer<'_>) -> Result<Polynomial> {
    reduce_with(f, |m| reducers.find(m))
}

/// Remainder of `f` modulo the basis: `f - r` lies in the ideal and no term
/// of `r` is divisible by a leading monomial of the basis.
pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial> {
    if f.ring() != &basis.ring {
        return Err(Error::RingMismatch);
    }
    let reducers = Reducer { polys: basis.elements.iter().collect() };
    reduce_by(f, &reducers)
}

pub fn ideal_member(f: &Polynomial, basis: &GroebnerBasis) -> Result<bool> {
    Ok(normal_form(f, basis)?.is_zero())
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State {
    ring: Ring,
    polys: Vec<Polynomial>,
    lms: Vec<Monomial>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl State {
    fn reducer(&self) -> Reducer<'_> {
        Reducer { polys: self.active.iter().map(|&k| &self.polys[k]).collect() }
    }

    /// Gebauer–Möller update for a new basis element.
    fn insert(&mut self, h: Polynomial) {
        let t = self.polys.len();
        let lm_h = h.leading_monomial().unwrap().clone();
        self.polys.push(h);
        self.lms.push(lm_h.clone());

        let mut candidates: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| Pair { i: g, j: t, lcm: self.lms[g].lcm(&lm_h) })
            .collect();
        // criterion M: drop (g, h) if some other (g', h) has a strictly dividing lcm,
        // keeping the first of equal lcms
        let mut kept: Vec<Pair> = Vec::new();
        for (k, pr) in candidates.iter().enumerate() {
            let coprime = self.lms[pr.i].is_coprime(&lm_h);
            let dominated = candidates.iter().enumerate().any(|(l, other)| {
                l != k && other.lcm.divides(&pr.lcm) && (other.lcm != pr.lcm || l < k)
            });
            if !dominated || coprime {
                kept.push(pr.clone());
            }
        }
        // among equal lcms keep one; discard coprime leading monomials (criterion F/B1)
        let mut filtered: Vec<Pair> = Vec::new();
        for pr in kept {
            if filtered.iter().any(|q| q.lcm == pr.lcm) {
                continue;
            }
            filtered.push(pr);
        }
        let filtered: Vec<Pair> = filtered.into_iter().filter(|pr| !self.lms[pr.i].is_coprime(&lm_h)).collect();
        candidates.clear();

        // criterion B on old pairs
        let lms = &self.lms;
        self.pairs.retain(|pr| {
            !(lm_h.divides(&pr.lcm)
                && lms[pr.i].lcm(&lm_h) != pr.lcm
                && lms[pr.j].lcm(&lm_h) != pr.lcm)
        });
        self.pairs.extend(filtered);

        self.active.retain(|&g| !lm_h.divides(&lms[g]));
        self.active.push(t);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.ring.order();
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let ord = a
                .lcm
                .degree()
                .cmp(&b.lcm.degree())
                .then_with(|| order.cmp(&a.lcm, &b.lcm))
                .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn s_polynomial(&self, pr: &Pair) -> Result<Polynomial> {
        let (f, g) = (&self.polys[pr.i], &self.polys[pr.j]);
        let mf = self.lms[pr.i].quotient_of(&pr.lcm);
        let mg = self.lms[pr.j].quotient_of(&pr.lcm);
        // both are monic
        let a = f.mul_term(FieldElement::ONE, &mf)?;
        a.sub_mul_term(FieldElement::ONE, &mg, g)
    }
}

/// Reduced Gröbner basis of the ideal generated by `generators`, under the
/// order of their common ring. Zero generators are ignored.
pub fn buchberger(generators: &[Polynomial], ring: &Ring) -> Result<GroebnerBasis> {
    for g in generators {
        if g.ring() != ring {
            return Err(Error::RingMismatch);
        }
    }
    let mut state = State { ring: ring.clone(), polys: Vec::new(), lms: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for g in generators {
        if g.is_zero() {
            continue;
        }
        if g.is_constant() {
            return Ok(GroebnerBasis { ring: ring.clone(), elements: vec![ring.one()] });
        }
        let r = reduce_by(g, &state.reducer())?;
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(GroebnerBasis { ring: ring.clone(), elements: vec![ring.one()] });
        }
        state.insert(r.monic());
    }
    while let Some(pr) = state.next_pair() {
        let s = state.s_polynomial(&pr)?;
        let r = reduce_by(&s, &state.reducer())?;
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(GroebnerBasis { ring: ring.clone(), elements: vec![ring.one()] });
        }
        state.insert(r.monic());
    }
    let survivors: Vec<Polynomial> = state.active.iter().map(|&k| state.polys[k].clone()).collect();
    interreduce(ring, survivors)
}

/// Gröbner basis under a different order (the generators are reinterpreted).
pub fn buchberger_with_order(generators: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    let Some(first) = generators.first() else {
        return Err(Error::Precondition("no generators to infer the ring from".into()));
    };
    let ring = first.ring().reordered(order);
    let gens: Vec<Polynomial> = generators.iter().map(|g| g.in_ring(&ring)).collect();
    buchberger(&gens, &ring)
}

fn interreduce(ring: &Ring, mut polys: Vec<Polynomial>) -> Result<GroebnerBasis> {
    let order = ring.order();
    polys.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    // minimal: drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Polynomial> = Vec::new();
    for p in polys {
        let lm = p.leading_monomial().unwrap();
        if minimal.iter().any(|q| q.leading_monomial().unwrap().divides(lm)) {
            continue;
        }
        minimal.push(p);
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others = Reducer {
            polys: minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, q)| q).collect(),
        };
        reduced.push(reduce_by(&minimal[k], &others)?.monic());
    }
    Ok(GroebnerBasis { ring: ring.clone(), elements: reduced })
}

/// Elements of a block-order basis free of the leading block variables
/// `drop`; a Gröbner basis of the elimination ideal.
pub fn eliminate(basis: &GroebnerBasis, drop: &[usize]) -> Result<Vec<Polynomial>> {
    if drop.is_empty() {
        return Ok(basis.elements.clone());
    }
    let mut sorted = drop.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    match basis.order() {
        MonomialOrder::Block { split } if sorted == (0..split).collect::<Vec<_>>() => {}
        MonomialOrder::Lex if sorted == (0..sorted.len()).collect::<Vec<_>>() => {}
        _ => return Err(Error::OrderMismatch),
    }
    Ok(basis
        .elements
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| sorted.iter().all(|&v| m.exponents()[v] == 0)))
        .cloned()
        .collect())
}

#[cfg(test)]
pub(crate) fn normal_form_randomized(f: &Polynomial, basis: &GroebnerBasis, seed: u64) -> Result<Polynomial> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let elems = &basis.elements;
    reduce_with(f, |m| {
        let cands: Vec<&Polynomial> = elems.iter().filter(|g| g.leading_monomial().unwrap().divides(m)).collect();
        if cands.is_empty() {
            None
        } else {
            Some(cands[rng.gen_range(0..cands.len())])
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn polys(r: &Ring, src: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| r.parse(s).unwrap()).collect()
    }

    fn fermat() -> (Ring, GroebnerBasis) {
        let r = Ring::new(2, &["x", "y", "z"]).unwrap();
        let g = buchberger(&polys(&r, &["x^2", "y^2", "x^3+y^3+z^3"]), &r).unwrap();
        (r, g)
    }

    #[test]
    fn fermat_basis_is_x2_y2_z3() {
        let (r, g) = fermat();
        assert_eq!(g.elements(), &polys(&r, &["y^2", "x^2", "z^3"])[..]);
        // sorted ascending by leading monomial
        let lms = g.leading_monomials();
        for w in lms.windows(2) {
            assert_eq!(r.order().cmp(&w[0], &w[1]), Ordering::Less);
        }
    }

    #[test]
    fn fermat_normal_forms() {
        let (r, g) = fermat();
        assert!(normal_form(&r.parse("z^3").unwrap(), &g).unwrap().is_zero());
        assert!(normal_form(&r.parse("x^2").unwrap(), &g).unwrap().is_zero());
        let survivor = normal_form(&r.parse("x*y*z^2").unwrap(), &g).unwrap();
        assert!(!survivor.is_zero());
        assert_eq!(survivor.total_degree(), Some(4));
    }

    #[test]
    fn degenerate_inputs() {
        let r = Ring::new(3, &["x", "y"]).unwrap();
        assert!(buchberger(&[], &r).unwrap().is_empty());
        assert!(buchberger(&[r.zero()], &r).unwrap().is_empty());
        let g = buchberger(&polys(&r, &["x^5"]), &r).unwrap();
        assert_eq!(g.elements(), &polys(&r, &["x^5"])[..]);
        let g = buchberger(&polys(&r, &["x+y", "1"]), &r).unwrap();
        assert!(g.is_unit());
        assert!(!ideal_member(&r.one(), &buchberger(&polys(&r, &["x^2", "x*y"]), &r).unwrap()).unwrap());
    }

    #[test]
    fn membership_in_frobenius_powers_of_fermat() {
        let r = Ring::new(2, &["x", "y", "z"]).unwrap();
        for q in [2u32, 4, 8] {
            let gens = vec![
                r.parse(&format!("x^{q}")).unwrap(),
                r.parse(&format!("y^{q}")).unwrap(),
                r.parse("x^3+y^3+z^3").unwrap(),
            ];
            let g = buchberger(&gens, &r).unwrap();
            let witness = r.parse(&format!("x^{}*y^{}*z^2", q - 1, q - 1)).unwrap();
            assert!(!ideal_member(&witness, &g).unwrap(), "q = {q}");
        }
    }

    #[test]
    fn elimination_intersection() {
        let r = Ring::new(5, &["x", "y"]).unwrap();
        let ext = r.with_leading_block(1);
        // t*(x) + (1-t)*(y)
        let gens = vec![ext.parse_ext("#t0*x"), ext.parse_ext("y-#t0*y")];
        let g = buchberger(&gens, &ext).unwrap();
        let elim = eliminate(&g, &[0]).unwrap();
        assert_eq!(elim.len(), 1);
        assert_eq!(elim[0].to_string(), "x*y");
        assert_eq!(eliminate(&g, &[]).unwrap().len(), g.len());
        let grevlex = buchberger(&polys(&r, &["x", "y"]), &r).unwrap();
        assert_eq!(eliminate(&grevlex, &[0]), Err(Error::OrderMismatch));
    }

    #[test]
    fn elimination_nested_ideals() {
        let r = Ring::new(5, &["x", "y"]).unwrap();
        let ext = r.with_leading_block(1);
        let gens = vec![ext.parse_ext("#t0*x^2"), ext.parse_ext("#t0*x*y"), ext.parse_ext("x-#t0*x")];
        let g = buchberger(&gens, &ext).unwrap();
        let elim: Vec<String> = eliminate(&g, &[0]).unwrap().iter().map(|p| p.to_string()).collect();
        let mut elim = elim;
        elim.sort();
        assert_eq!(elim, vec!["x*y", "x^2"]);
    }

    impl Ring {
        /// Test helper: parses with `#t0` as an auxiliary variable name.
        fn parse_ext(&self, s: &str) -> Polynomial {
            let renamed = Ring::new(self.characteristic(), &self.vars().iter().map(|v| v.replace('#', "aux_")).collect::<Vec<_>>()).unwrap();
            let p = renamed.parse(&s.replace('#', "aux_")).unwrap();
            Polynomial::from_terms(self, p.terms().to_vec())
        }
    }

    fn random_ideal(r: &Ring, seed: u64, count: usize) -> Vec<Polynomial> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let d = rng.gen_range(1..=3);
                let ms = r.monomials_of_degree(d);
                let mut terms = Vec::new();
                for m in ms {
                    if rng.gen_bool(0.4) {
                        terms.push((m, r.field().element(rng.gen_range(1..r.characteristic()))));
                    }
                }
                Polynomial::from_terms(r, terms)
            })
            .collect()
    }

    fn s_pairs_reduce_to_zero(g: &GroebnerBasis) -> bool {
        let el = g.elements();
        for i in 0..el.len() {
            for j in i + 1..el.len() {
                let (a, b) = (el[i].leading_monomial().unwrap(), el[j].leading_monomial().unwrap());
                let l = a.lcm(b);
                let s = el[i]
                    .mul_term(FieldElement::ONE, &a.quotient_of(&l))
                    .unwrap()
                    .sub_mul_term(FieldElement::ONE, &b.quotient_of(&l), &el[j])
                    .unwrap();
                if !normal_form(&s, g).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn reduced_basis_invariants(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 7])) {
            let r = Ring::new(p, &["x", "y", "z"]).unwrap();
            let gens = random_ideal(&r, seed, 3);
            let g = buchberger(&gens, &r).unwrap();
            prop_assert!(s_pairs_reduce_to_zero(&g));
            for e in g.elements() {
                prop_assert_eq!(e.leading_coefficient(), Some(FieldElement::ONE));
            }
            for gen in &gens {
                prop_assert!(ideal_member(gen, &g).unwrap());
            }
        }

        #[test]
        fn canonicity_across_generating_sets(seed in any::<u64>()) {
            let r = Ring::new(5, &["x", "y", "z"]).unwrap();
            let gens = random_ideal(&r, seed, 3);
            let g1 = buchberger(&gens, &r).unwrap();
            let g2 = buchberger(g1.elements(), &r).unwrap();
            prop_assert_eq!(&g1, &g2);
            let extra = random_ideal(&r, seed ^ 0x9e37, 3);
            let mut combo = r.zero();
            for (a, b) in gens.iter().zip(extra.iter()) {
                combo = combo.add(&a.mul(b).unwrap()).unwrap();
            }
            let mut more = gens.clone();
            more.reverse();
            more.push(combo);
            let g3 = buchberger(&more, &r).unwrap();
            prop_assert_eq!(&g1, &g3);
        }

        #[test]
        fn confluence_of_normal_forms(seed in any::<u64>(), fseed in any::<u64>()) {
            let r = Ring::new(3, &["x", "y", "z"]).unwrap();
            let g = buchberger(&random_ideal(&r, seed, 3), &r).unwrap();
            let f = random_ideal(&r, fseed, 2).into_iter().fold(r.zero(), |acc, p| acc.add(&p.pow(2).unwrap()).unwrap());
            let reference = normal_form(&f, &g).unwrap();
            for k in 0..4 {
                prop_assert_eq!(&normal_form_randomized(&f, &g, fseed.wrapping_add(k)).unwrap(), &reference);
            }
        }

        #[test]
        fn membership_closed_under_ideal_operations(seed in any::<u64>()) {
            let r = Ring::new(7, &["x", "y", "z"]).unwrap();
            let gens = random_ideal(&r, seed, 3);
            let g = buchberger(&gens, &r).unwrap();
            let h = random_ideal(&r, seed.rotate_left(7), 1).pop().unwrap();
            let f1 = gens[0].clone();
            let f2 = gens[1].mul(&h).unwrap();
            prop_assert!(ideal_member(&f1.add(&f2).unwrap(), &g).unwrap());
            prop_assert!(ideal_member(&h.mul(&f1).unwrap(), &g).unwrap());
        }

        #[test]
        fn leading_ideal_is_deterministic(seed in any::<u64>()) {
            let r = Ring::new(2, &["x", "y", "z"]).unwrap();
            let gens = random_ideal(&r, seed, 3);
            let a = buchberger(&gens, &r).unwrap().leading_monomials();
            let b = buchberger(&gens, &r).unwrap().leading_monomials();
            prop_assert_eq!(a, b);
        }
    }
}
