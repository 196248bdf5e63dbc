use thiserror::Error;

use crate::subordinators::SpecError;

/// Every fallible operation in the crate reports through this type.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("{func}: argument outside domain: {detail}")]
    Domain { func: &'static str, detail: String },

    #[error("{func}: result overflows f64")]
    Overflow { func: &'static str },

    #[error("{func}: no convergence after {terms} terms")]
    ConvergenceFailure { func: &'static str, terms: usize },

    #[error("laplace inversion unstable at t={t}: {coarse} vs {fine} between node counts")]
    InversionInstability { t: f64, coarse: f64, fine: f64 },

    #[error("tanh-sinh quadrature did not reach tolerance (last estimates {previous} and {last})")]
    QuadratureFailure { previous: f64, last: f64 },

    #[error("quadrature route {quadrature} and closed form {closed_form} disagree")]
    DualRouteMismatch { quadrature: f64, closed_form: f64 },

    #[error(transparent)]
    InvalidSpec(#[from] SpecError),

    #[error("variance vanishes at t={t}; correlation undefined")]
    DegenerateVariance { t: f64 },

    #[error("{0} has no closed form for this family; use the numerical route")]
    Unsupported(String),

    #[error("tempered sampler exceeded {attempts} rejection attempts")]
    SamplerStall { attempts: u64 },

    #[error("subordinator path did not cross t={target} before u={span}")]
    HorizonExceeded { target: f64, span: f64 },

    #[error("covariance matrix is not positive semidefinite even after regularization")]
    Factorization,

    #[error("circulant embedding has negative eigenvalue {eigenvalue}")]
    EmbeddingNegative { eigenvalue: f64 },

    #[error("{failed} of {total} Monte Carlo replicates failed: {first}")]
    ReplicateFailures { failed: usize, total: usize, first: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain { func, detail: detail.into() }
}
