//! Complex special functions: log Γ, ₂F₁, Jacobi polynomials and functions,
//! and the c-function C_ν(λ).

mod gamma;
mod hyper;
mod jacobi;

pub use gamma::{is_nonpositive_integer, ln_gamma, log_gamma, log_gamma_checked, log_rgamma};
pub use hyper::{gauss_2f1, gauss_2f1_eval, Evaluation, HypergeometricArgs, Route};
pub use jacobi::{
    harish_chandra_c, jacobi_function, jacobi_polynomial, log_harish_chandra_c, log_jacobi_c,
    plancherel_weight, HarishChandraSeries,
};
