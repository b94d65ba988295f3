//! Model parameters (n, ν) and the discrete spectrum of the shifted operator
//! Δ̃_ν = −(Δ_ν + (ν−n)²).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::log_gamma;

/// Default absolute distance from the nearest integer below which ν is rejected.
pub const DEFAULT_INTEGRALITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub n: usize,
    pub nu: f64,
}

/// One line of the point spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumAtom {
    pub j: usize,
    /// λ_j = −i(ν−n−2j)
    pub lambda_j: Complex64,
    /// s_j = λ_j² = −(ν−n−2j)²
    pub s_j: f64,
    /// Δ_ν eigenvalue ρ_j = 4j(j+n−ν)
    pub rho_j: f64,
    pub c_j: f64,
    /// τ_j = c_j · j!/(n)_j
    pub tau_j: f64,
}

impl Parameters {
    pub fn new(n: usize, nu: f64) -> Result<Self> {
        Self::with_tolerance(n, nu, DEFAULT_INTEGRALITY_TOL)
    }

    pub fn with_tolerance(n: usize, nu: f64, integrality_tol: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameters("n must be at least 1".into()));
        }
        if !nu.is_finite() {
            return Err(Error::InvalidParameters("nu must be finite".into()));
        }
        if nu <= n as f64 {
            return Err(Error::InvalidParameters("nu must exceed n".into()));
        }
        if (nu - nu.round()).abs() < integrality_tol {
            return Err(Error::InvalidParameters("nu must be non-integer".into()));
        }
        Ok(Self { n, nu })
    }

    pub fn nf(&self) -> f64 {
        self.n as f64
    }

    /// ν − n, the spectral gap parameter.
    pub fn gap(&self) -> f64 {
        self.nu - self.nf()
    }

    /// Largest atom index, floor((ν−n)/2).
    pub fn max_atom_index(&self) -> usize {
        (self.gap() / 2.0).floor() as usize
    }

    /// Γ(n) / (2 π^{n+1} 2^{2(ν−n)}), the weight in front of every continuous
    /// λ-integral once s = λ² has been substituted.
    pub fn continuous_prefactor(&self) -> f64 {
        let n = self.nf();
        (log_gamma(Complex64::new(n, 0.0)).re
            - std::f64::consts::LN_2
            - (n + 1.0) * std::f64::consts::PI.ln()
            - 2.0 * self.gap() * std::f64::consts::LN_2)
            .exp()
    }

    /// The reproducing-kernel constant A_{n,ν/2,j}(1) of the weighted
    /// eigenspace, an independent closed form for the projector normalisation.
    pub fn bergman_constant(&self, j: usize) -> f64 {
        let (n, nu, jf) = (self.nf(), self.nu, j as f64);
        let lg = |x: f64| log_gamma(Complex64::new(x, 0.0)).re;
        let log_val = lg(jf + n) - lg(n) - lg(jf + 1.0) + lg(nu - jf) - lg(nu - n - jf + 1.0)
            - n * std::f64::consts::PI.ln();
        (nu - n - 2.0 * jf) * log_val.exp()
    }
}

/// Rising factorial (a)_k for real a.
pub fn pochhammer(a: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (a + i as f64))
}

pub fn discrete_spectrum(p: &Parameters) -> Vec<SpectrumAtom> {
    let (n, nu) = (p.nf(), p.nu);
    let lg = |x: f64| log_gamma(Complex64::new(x, 0.0)).re;
    (0..=p.max_atom_index())
        .map(|j| {
            let jf = j as f64;
            let a = nu - n - 2.0 * jf;
            let log_c = std::f64::consts::LN_2 + lg(n + jf)
                - n * std::f64::consts::PI.ln()
                - lg(n)
                - lg(jf + 1.0)
                + lg(nu - jf)
                - lg(nu - n - jf + 1.0);
            let c_j = a * log_c.exp();
            let fact: f64 = (1..=j).map(|i| i as f64).product();
            let tau_j = c_j * fact / pochhammer(n, j);
            SpectrumAtom {
                j,
                lambda_j: Complex64::new(0.0, -a),
                s_j: -a * a,
                rho_j: 4.0 * jf * (jf + n - nu),
                c_j,
                tau_j,
            }
        })
        .collect()
}

/// ω(ν,n) = max_j |s_j| − (ν−n)², the abscissa beyond which the resolvent
/// is given by the Laplace transform of the heat semigroup.
pub fn resolvent_abscissa(p: &Parameters) -> f64 {
    let p_max = discrete_spectrum(p)
        .iter()
        .map(|a| a.s_j.abs())
        .fold(0.0_f64, f64::max);
    p_max - p.gap() * p.gap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rejects_bad_parameters() {
        let e = Parameters::new(1, 1.0).unwrap_err();
        assert!(e.to_string().contains("nu must exceed n"));
        let e = Parameters::new(2, 3.0).unwrap_err();
        assert!(e.to_string().contains("nu must be non-integer"));
        assert!(Parameters::new(1, 2.5).is_ok());
    }

    #[test]
    fn spectrum_examples() {
        let p = Parameters::new(1, 2.5).unwrap();
        let a = discrete_spectrum(&p);
        assert_eq!(a.len(), 1);
        assert!((a[0].s_j + 2.25).abs() < 1e-15);
        assert!((a[0].lambda_j - Complex64::new(0.0, -1.5)).norm() < 1e-15);
        assert!((a[0].c_j - 3.0 / PI).abs() < 1e-14);
        assert_eq!(a[0].tau_j, a[0].c_j);

        let p = Parameters::new(1, 3.5).unwrap();
        let a = discrete_spectrum(&p);
        assert_eq!(a.len(), 2);
        assert!((a[0].s_j + 6.25).abs() < 1e-15);
        assert!((a[1].s_j + 0.25).abs() < 1e-15);
        // 2·0.5·Γ(2)Γ(2.5)/(π Γ(2.5))
        assert!((a[1].c_j - 1.0 / PI).abs() < 1e-14);

        assert_eq!(discrete_spectrum(&Parameters::new(2, 2.5).unwrap()).len(), 1);
    }

    #[test]
    fn abscissa_is_zero() {
        for (n, nu) in [(1, 2.5), (1, 3.5), (2, 4.5)] {
            let p = Parameters::new(n, nu).unwrap();
            assert_eq!(resolvent_abscissa(&p), 0.0);
        }
    }
}
