use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("pole of the gamma function at z = {0}")]
    GammaPole(f64),

    #[error("hypergeometric c-parameter is a non-positive integer ({0})")]
    HypergeometricPole(f64),

    #[error("hypergeometric series did not converge after {terms} terms (partial value {partial_re} + {partial_im}i)")]
    NoConvergence {
        terms: usize,
        partial_re: f64,
        partial_im: f64,
    },

    #[error("point outside the open unit ball (|z|^2 = {0})")]
    OutsideBall(f64),

    #[error("point not on the unit sphere (|omega| = {0})")]
    NotOnSphere(f64),

    #[error("invalid group element: {0}")]
    InvalidGroupElement(String),

    #[error("finite-difference stencil leaves the ball at |z|^2 = {0}")]
    StencilOutsideBall(f64),

    #[error("unsupported dimension n = {0} for this operation")]
    UnsupportedDimension(usize),

    #[error("pole: {0}")]
    Pole(String),

    #[error("outside the pointwise regime: {0}")]
    RefusedRegime(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("integrand returned NaN at lambda = {0}")]
    NanIntegrand(f64),

    #[error("invalid quadrature specification: {0}")]
    InvalidSpec(String),

    #[error("{0}")]
    Other(String),
}
