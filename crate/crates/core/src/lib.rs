//! Second-order structure of time-changed fractional Brownian motion
//! Z(t) = B_H(Y(t)), where Y is the inverse of a subordinator.

// `!(x > 0.0)` is used on purpose throughout: it rejects NaN along with the bad range.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod dd;
pub mod error;
pub mod laplace;
pub mod moments;
pub mod montecarlo;
pub mod quadrature;
pub mod specfun;
pub mod subordinators;
pub mod tfbm;

pub use error::{Error, Result};
pub use subordinators::{laplace_exponent, validate_spec, SpecError, SubordinatorSpec};
