//! Spectral kernels of the magnetic Laplacian
//!
//! ```text
//! Δ_ν = 4(1−|z|²){ Σ (δ_ij − z_i z̄_j) ∂²/∂z_i∂z̄_j − ν Σ z̄_j ∂/∂z̄_j }
//! ```
//!
//! on the unit ball of ℂⁿ, for ν > n non-integer. The crate evaluates the
//! spectral density, heat, resolvent and wave kernels, the closed-form wave
//! and Green kernels, Poisson kernels and the Fourier–Helgason pair, and
//! ships a harness ([`verify`]) that audits each identity numerically.

pub mod error;
pub mod geometry;
pub mod kernels;
pub mod params;
pub mod quad;
pub mod specfun;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use params::{Parameters, SpectrumAtom};

/// Crate version embedded in CLI headers and reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
