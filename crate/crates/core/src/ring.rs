use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingInner {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
}

/// A polynomial ring `F_p[x_1, ..., x_m]` with a fixed monomial order.
/// Every variable has weight one.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}]", self.0.field.characteristic(), self.0.vars.join(","))
    }
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    /// Graded reverse lexicographic ring over `F_p` in the given variables.
    pub fn new<S: AsRef<str>>(p: u64, vars: &[S]) -> Result<Ring> {
        Self::with_order(p, vars, MonomialOrder::GrevLex)
    }

    pub fn with_order<S: AsRef<str>>(p: u64, vars: &[S], order: MonomialOrder) -> Result<Ring> {
        let field = PrimeField::new(p)?;
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref();
            if !valid_identifier(v) {
                return Err(Error::BadVariableName(v.to_string()));
            }
            if names.iter().any(|n| n == v) {
                return Err(Error::DuplicateVariable(v.to_string()));
            }
            names.push(v.to_string());
        }
        if let MonomialOrder::Block { split } = order {
            if split > names.len() {
                return Err(Error::Precondition(format!("block split {split} exceeds variable count")));
            }
        }
        Ok(Ring(Arc::new(RingInner { field, vars: names, order })))
    }

    pub fn field(&self) -> PrimeField {
        self.0.field
    }

    pub fn characteristic(&self) -> u64 {
        self.0.field.characteristic()
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self)
    }

    pub fn one(&self) -> Polynomial {
        self.constant(FieldElement::ONE)
    }

    pub fn constant(&self, c: FieldElement) -> Polynomial {
        Polynomial::from_terms(self, vec![(Monomial::one(self.nvars()), c)])
    }

    pub fn variable(&self, index: usize) -> Polynomial {
        Polynomial::from_terms(self, vec![(Monomial::variable(self.nvars(), index, 1), FieldElement::ONE)])
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial {
        Polynomial::from_terms(self, vec![(m, FieldElement::ONE)])
    }

    pub fn parse(&self, src: &str) -> Result<Polynomial> {
        crate::parse::parse_polynomial(src, self)
    }

    /// Same variables and field, different order.
    pub fn reordered(&self, order: MonomialOrder) -> Ring {
        Ring(Arc::new(RingInner { field: self.0.field, vars: self.0.vars.clone(), order }))
    }

    /// Prepends fresh auxiliary variables as a leading elimination block.
    /// Auxiliary names start with `#`, so they can never collide with
    /// user-declared identifiers.
    pub(crate) fn with_leading_block(&self, count: usize) -> Ring {
        let mut vars: Vec<String> = (0..count).map(|i| format!("#t{i}")).collect();
        vars.extend(self.0.vars.iter().cloned());
        Ring(Arc::new(RingInner { field: self.0.field, vars, order: MonomialOrder::Block { split: count } }))
    }

    /// Grevlex ring whose variable `i` is the old variable `perm[i]`.
    pub(crate) fn permuted(&self, perm: &[usize]) -> Ring {
        let vars = perm.iter().map(|&j| self.0.vars[j].clone()).collect();
        Ring(Arc::new(RingInner { field: self.0.field, vars, order: MonomialOrder::GrevLex }))
    }

    /// All monomials of total degree `d`.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if n == 0 {
                if left == 0 {
                    out.push(Monomial::from_exponents(cur).unwrap());
                }
                return;
            }
            if i == n - 1 {
                cur[i] = left;
                out.push(Monomial::from_exponents(cur).unwrap());
                cur[i] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_names_validated() {
        assert!(matches!(Ring::new(2, &["x", "x"]), Err(Error::DuplicateVariable(_))));
        assert!(matches!(Ring::new(2, &["1x"]), Err(Error::BadVariableName(_))));
        assert!(matches!(Ring::new(2, &[""]), Err(Error::BadVariableName(_))));
        assert!(matches!(Ring::new(6, &["x"]), Err(Error::NotPrime(6))));
        assert!(Ring::new(2, &["x0", "x_1", "T"]).is_ok());
    }

    #[test]
    fn monomial_enumeration_counts() {
        let r = Ring::new(2, &["x", "y", "z"]).unwrap();
        assert_eq!(r.monomials_of_degree(10).len(), 66);
        assert_eq!(r.monomials_of_degree(0).len(), 1);
    }
}
