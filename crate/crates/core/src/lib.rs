//! Multivariate Fuss-Narayana polynomials, three ways.
//!
//! The moment polynomials `P_k(d_0, ..., d_p)` of products of `p` rectangular
//! random matrices are computed here
//!
//! * in closed form from generalized Fuss-Narayana numbers ([`exact`]),
//! * by enumerating noncrossing pair partitions adapted to the words
//!   `(1 ... p p* ... 1*)^k` and reading monomials off right legs
//!   ([`partitions`]),
//! * as coefficients of the power series solving `g = x prod_i (g + d_i)`,
//!   by fixed-point iteration or Lagrange inversion ([`series`]).
//!
//! Substituting `d_0 = 1` gives the multivariate Fuss-Narayana polynomials
//! `F_k(t_1, ..., t_p)`, which are the moments of free multiplicative
//! convolutions of Marchenko-Pastur laws ([`freeprob`]).
//!
//! All combinatorial quantities are exact (`num-rational` over `num-bigint`);
//! floating point only appears in the Marchenko-Pastur quadrature.

pub mod error;
pub mod exact;
pub mod freeprob;
pub mod partitions;
pub mod poly;
pub mod quad;
pub mod report;
pub mod scalar;
pub mod series;
pub mod suites;

pub use error::{Error, Result};
pub use exact::{
    binomial, closed_form_pk, fuss_catalan, fuss_narayana_poly, gfn_number, vandermonde_check,
};
pub use poly::{d_vars, t_vars, MultiPoly, PolyJson};
pub use report::VerificationReport;
pub use scalar::ExactScalar;
pub use series::{lagrange_coefficient, solve_functional_equation, TruncatedSeries};
