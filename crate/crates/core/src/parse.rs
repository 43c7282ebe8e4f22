//! Text input for polynomials.
//!
//! ```text
//! poly    := ['-'] term (('+' | '-') term)*
//! term    := uint | uint '*'? factors | factors
//! factors := factor ('*'? factor)*
//! factor  := var ('^' uint)?
//! ```
//! Whitespace is ignored. Juxtaposed names such as `xy` are split into
//! declared variables when the whole identifier is not itself declared.

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Term};
use crate::ring::Ring;

const MAX_EXPONENT: u64 = (1 << 31) - 1;

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    ring: &'a Ring,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|c| c.1)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map(|c| c.0).unwrap_or_else(|| self.chars.last().map(|c| c.0 + 1).unwrap_or(0))
    }

    fn malformed(&self, msg: &str) -> Error {
        Error::Malformed { pos: self.pos(), msg: msg.to_string() }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.at;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.at += 1;
        }
        if self.at == start {
            return None;
        }
        Some(self.chars[start..self.at].iter().map(|c| c.1).collect())
    }

    fn coefficient(&self, digits: &str) -> FieldElement {
        let p = self.ring.characteristic();
        let v = digits.bytes().fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p);
        FieldElement(v)
    }

    fn exponent(&self, digits: &str) -> Result<u32> {
        let mut v: u64 = 0;
        for b in digits.bytes() {
            v = v * 10 + (b - b'0') as u64;
            if v > MAX_EXPONENT {
                return Err(Error::ExponentOverflow);
            }
        }
        Ok(v as u32)
    }

    /// Splits an identifier into declared variable names, preferring long names.
    fn split_identifier(&self, ident: &str) -> Option<Vec<usize>> {
        if let Some(i) = self.ring.var_index(ident) {
            return Some(vec![i]);
        }
        let n = ident.len();
        // best[k] = decomposition of ident[..k]
        let mut best: Vec<Option<Vec<usize>>> = vec![None; n + 1];
        best[0] = Some(Vec::new());
        for k in 0..n {
            let Some(prefix) = best[k].clone() else { continue };
            for (vi, name) in self.ring.vars().iter().enumerate() {
                if ident[k..].starts_with(name.as_str()) && best[k + name.len()].is_none() {
                    let mut v = prefix.clone();
                    v.push(vi);
                    best[k + name.len()] = Some(v);
                }
            }
        }
        best[n].take()
    }

    fn factors(&mut self, exps: &mut [u64]) -> Result<bool> {
        let mut any = false;
        loop {
            let save = self.at;
            if any && self.peek() == Some('*') {
                self.at += 1;
            }
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
                _ => {
                    self.at = save;
                    if any && self.peek() == Some('*') {
                        self.at += 1;
                        return Err(self.malformed("expected a variable after `*`"));
                    }
                    return Ok(any);
                }
            }
            let start = self.at;
            let pos = self.pos();
            while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                self.at += 1;
            }
            let ident: String = self.chars[start..self.at].iter().map(|c| c.1).collect();
            let vars = self
                .split_identifier(&ident)
                .ok_or(Error::UndeclaredVariable { name: ident.clone(), pos })?;
            let mut power = 1u64;
            if self.peek() == Some('^') {
                self.at += 1;
                let d = self.digits().ok_or_else(|| self.malformed("expected exponent after `^`"))?;
                power = self.exponent(&d)? as u64;
            }
            let (last, rest) = vars.split_last().unwrap();
            for &v in rest {
                exps[v] += 1;
            }
            exps[*last] += power;
            for &v in &vars {
                if exps[v] > MAX_EXPONENT {
                    return Err(Error::ExponentOverflow);
                }
            }
            any = true;
        }
    }

    fn term(&mut self) -> Result<Term> {
        let n = self.ring.nvars();
        let mut exps = vec![0u64; n];
        let mut coeff = FieldElement::ONE;
        if let Some(d) = self.digits() {
            coeff = self.coefficient(&d);
            if self.peek() == Some('*') {
                self.at += 1;
                if !self.factors(&mut exps)? {
                    return Err(self.malformed("expected a variable after `*`"));
                }
            } else {
                self.factors(&mut exps)?;
            }
        } else if !self.factors(&mut exps)? {
            return Err(self.malformed("expected a term"));
        }
        let exps: Vec<u32> = exps.into_iter().map(|e| e as u32).collect();
        Ok((Monomial::from_exponents(&exps)?, coeff))
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let field = self.ring.field();
        let mut terms = Vec::new();
        let mut negate = false;
        if self.peek() == Some('-') {
            negate = true;
            self.at += 1;
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if negate { field.neg(c) } else { c }));
            match self.peek() {
                None => break,
                Some('+') => negate = false,
                Some('-') => negate = true,
                Some(_) => return Err(self.malformed("unexpected character")),
            }
            self.at += 1;
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }
}

/// Parses `src` into a canonical polynomial of `ring`, reducing
/// coefficients mod p.
pub fn parse_polynomial(src: &str, ring: &Ring) -> Result<Polynomial> {
    let chars: Vec<(usize, char)> = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    if let Some(&(pos, c)) = chars.iter().find(|(_, c)| !c.is_ascii()) {
        return Err(Error::Malformed { pos, msg: format!("non-ASCII character `{c}`") });
    }
    let mut parser = Parser { chars, at: 0, ring };
    if parser.peek().is_none() {
        return Err(Error::Malformed { pos: 0, msg: "empty polynomial".into() });
    }
    parser.poly()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermat_cubic() {
        let r = Ring::new(2, &["x", "y", "z"]).unwrap();
        let f = parse_polynomial("x^3+y^3+z^3", &r).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.terms().iter().all(|(m, c)| m.degree() == 3 && *c == FieldElement::ONE));
    }

    #[test]
    fn zero_polynomial() {
        let r = Ring::new(3, &["x"]).unwrap();
        assert!(parse_polynomial("0", &r).unwrap().is_zero());
        assert!(parse_polynomial(" 3 x - 3*x ", &r).unwrap().is_zero());
    }

    #[test]
    fn negative_coefficient_reduces() {
        let r = Ring::new(5, &["x", "y"]).unwrap();
        let f = parse_polynomial("x^2 - y^2", &r).unwrap();
        let t = f.terms();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].0.exponents(), &[2, 0]);
        assert_eq!(t[0].1, FieldElement(1));
        assert_eq!(t[1].0.exponents(), &[0, 2]);
        assert_eq!(t[1].1, FieldElement(4));
    }

    #[test]
    fn juxtaposition_and_splitting() {
        let r = Ring::new(7, &["x", "y", "z"]).unwrap();
        assert_eq!(parse_polynomial("2xy^2z", &r).unwrap(), parse_polynomial("2*x*y^2*z", &r).unwrap());
        assert_eq!(parse_polynomial("x x", &r).unwrap(), parse_polynomial("x^2", &r).unwrap());
        let r2 = Ring::new(2, &["x0", "x1", "x2"]).unwrap();
        assert_eq!(parse_polynomial("x0x2+x1", &r2).unwrap().to_string(), "x0*x2+x1");
    }

    #[test]
    fn errors() {
        let r = Ring::new(5, &["x", "y"]).unwrap();
        assert!(matches!(parse_polynomial("x+w", &r), Err(Error::UndeclaredVariable { ref name, pos: 2 }) if name == "w"));
        assert!(matches!(parse_polynomial("x+", &r), Err(Error::Malformed { .. })));
        assert!(matches!(parse_polynomial("x^", &r), Err(Error::Malformed { .. })));
        assert!(matches!(parse_polynomial("x*", &r), Err(Error::Malformed { .. })));
        assert!(matches!(parse_polynomial("(x)", &r), Err(Error::Malformed { .. })));
        assert!(matches!(parse_polynomial("", &r), Err(Error::Malformed { .. })));
        assert_eq!(parse_polynomial("x^2147483648", &r), Err(Error::ExponentOverflow));
        assert_eq!(parse_polynomial("x^2147483647*x", &r), Err(Error::ExponentOverflow));
        assert!(parse_polynomial("x^2147483647", &r).is_ok());
    }

    #[test]
    fn large_coefficients_reduce() {
        let r = Ring::new(7, &["x"]).unwrap();
        assert_eq!(parse_polynomial("123456789012345678901234567893x", &r).unwrap(), parse_polynomial("3x", &r).unwrap());
    }
}
