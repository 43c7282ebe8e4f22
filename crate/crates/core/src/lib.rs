//! Exact computations in standard graded rings over prime fields:
//! Gröbner bases, Frobenius and ordinary powers, saturation, zeroth local
//! cohomology of quotients, generalized Hilbert–Kunz functions, annihilation
//! exponents, symbolic powers and Waldschmidt estimates.

pub mod cli;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod lab;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod selftest;

pub use error::{Error, Result};
pub use field::{FieldElement, PrimeField};
pub use groebner::{buchberger, eliminate, ideal_member, normal_form, GroebnerBasis};
pub use ideal::{IdealHandle, QuotientPresentation};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use poly::Polynomial;
pub use ring::Ring;
