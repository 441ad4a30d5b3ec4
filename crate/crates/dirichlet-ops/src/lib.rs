//! Computing with Dirichlet series and composition operators on the Hardy
//! space `H^2` and weighted Bergman spaces `A_mu^2` of Dirichlet series.
//!
//! The objects here are Dirichlet polynomials `f = sum a_n n^{-s}` and
//! composition symbols `Phi(s) = c0 s + phi(s)` with `c0` a nonnegative
//! integer and `phi` a Dirichlet polynomial. Around them the crate builds:
//!
//! - exact sparse algebra: convolution, translation, character twists on the
//!   polytorus, exponentials and composition ([`poly`], [`symbol`]);
//! - measures `d mu = h(sigma) d sigma` on `(0, inf)`, their coefficient
//!   weights `w_h(n)`, the accumulated weight `beta_h`, space norms,
//!   reproducing kernels and Monte-Carlo checks of the Littlewood-Paley
//!   formula ([`measure`], [`spaces`]);
//! - truncated operator matrices, operator norms, Hilbert-Schmidt sums and
//!   essential-norm bounds ([`operators`]);
//! - preimage solving by the argument principle and the generalized
//!   Nevanlinna counting functions ([`counting`]);
//! - Carleson windows, pullback measures, and the counting-vs-measure
//!   comparison ([`carleson`]);
//! - a configurable verification suite tying all of it together ([`suite`]).
//!
//! Numerical conventions: indices are exact integers under explicit cutoffs
//! with reported truncation loss; scalars are `f64`; limit statements are
//! probed on geometric grids and reported as trends, never as limits.
//!
//! See the `examples/` directory for one runnable tour per capability.

pub mod arith;
pub mod carleson;
pub mod config;
pub mod corpus;
pub mod counting;
pub mod error;
pub mod measure;
pub mod operators;
pub mod poly;
pub mod quad;
pub mod report;
pub mod spaces;
pub mod suite;
pub mod symbol;
pub mod trend;

pub use error::{Error, Result};
pub use measure::MeasureDensity;
pub use poly::{Character, DirichletPolynomial};
pub use symbol::{compose, Symbol};
