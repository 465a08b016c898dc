//! Exact commutative-algebra kernel.
//!
//! Sparse multivariate polynomials over the rationals, global / local / block
//! monomial orders, Buchberger and Mora standard bases, and the ideal
//! operations built on them (quotients, saturation, elimination, syzygies,
//! radical membership, dimension).

pub mod error;
pub mod ideal;
pub mod matrix;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod ring;
mod sbasis;

pub use error::{AlgebraError, Result};
pub use ideal::{DivisionWitness, Ideal, SyzygyModule};
pub use matrix::PolyMatrix;
pub use monomial::Monomial;
pub use order::{OrderBlock, OrderKind, TermOrder};
pub use poly::Polynomial;
pub use ring::{BlockRole, Ring, RingRef, Var};

/// Coefficient field: canonical arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;
