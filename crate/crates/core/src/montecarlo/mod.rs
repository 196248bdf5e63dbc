//! Monte Carlo oracle: subordinator paths, their inverses, and Z sampled at
//! the random times, with standard errors for every analytic quantity.

mod estimate;
mod fgn;
mod paths;
mod rng;
mod samplers;

pub use estimate::{estimate, estimate_many, McEstimate, Quantity, MIN_REPLICATES};
pub use fgn::fgn_path;
pub use paths::{inverse_values_at, sample_d_increments, sample_z_at, PathConfig, SubordinatorPath};
pub use rng::RngStream;
pub use samplers::{sample_increment, sample_stable_increment, sample_tempered_increment, TEMPERED_MAX_ATTEMPTS};
