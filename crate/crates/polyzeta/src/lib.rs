//! Numerical toolkit for multiple zeta values, multiple zeta-star values,
//! multiple T-values, multiple polylogarithms and their level-two analogue,
//! and for the integrals over (0,1) whose expansions produce them.
//!
//! The crate is organized around six layers:
//!
//! - [`compositions`]: exact combinatorics of composition indices (Hoffman
//!   dual, reversal, coarsenings/refinements, binomial weights).
//! - [`series`]: floating-point evaluation with error estimates of
//!   Hurwitz-type zeta, zeta-star and T-values, multiple polylogarithms
//!   Li_k(x), and the odd-indexed A-function.
//! - [`quadrature`]: tanh-sinh evaluation of the singular integrals over
//!   (0,1) built from those functions, with an analytic remainder bound for
//!   the truncated right end.
//! - [`formulas`]: exact finite-sum expansions (binomial-weighted zeta / T /
//!   zeta-star combinations, symmetric double-value formulas, and the
//!   arctangent-type transformation identity).
//! - [`verify`]: an identity registry that evaluates both sides of each
//!   identity over parameter grids and reports residuals.
//! - [`cli`]: the `polyzeta` command-line front end.
#![allow(clippy::manual_is_multiple_of)]

pub mod cli;
pub mod compositions;
mod error;
pub mod formulas;
pub mod quadrature;
pub mod series;
pub mod verify;

pub use error::{Error, Result};

pub use compositions::{Composition, WeakComposition};
pub use series::{EvalResult, HurwitzShift, Method};
