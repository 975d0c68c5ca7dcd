//! Exact computation of light-leaves pairings for Soergel bimodules.
//!
//! Pairings between light leaves whose decorations contain no D1 are read
//! off as the coefficient of `D_x` in a product of simple roots and
//! Demazure elements of the nil Hecke ring. The crate provides the
//! supporting Coxeter-group combinatorics, the polynomial ring of the
//! realization, a Hecke-algebra cross-check and integer invariants
//! (determinants, elementary divisors, torsion primes) of the resulting
//! Gram matrices.

pub mod coxeter;
pub mod delta;
pub mod error;
pub mod forms;
pub mod hecke;
pub mod nilhecke;
pub mod poly;
pub mod subexpr;

pub use coxeter::{CoxeterSystem, Element, Generator, Order};
pub use error::{Error, Result};
pub use nilhecke::{d_coefficient, f_element, NHElement};
pub use poly::Polynomial;
pub use subexpr::{Bits, DecoratedSubexpression, Decoration, Expression, SubexprFilter};
