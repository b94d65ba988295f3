//! Jacobi polynomials, Jacobi functions and their c-function.

use num_complex::Complex64;

use super::gamma::log_gamma;
use super::hyper::{gauss_2f1, HypergeometricArgs};
use crate::error::{Error, Result};
use crate::params::Parameters;

/// P_j^{(α,β)}(y) via the terminating sum
/// (α+1)_j/j! Σ_m (−j)_m (j+α+β+1)_m / ((α+1)_m m!) ((1−y)/2)^m.
pub fn jacobi_polynomial(j: usize, alpha: f64, beta: f64, y: f64) -> f64 {
    if j == 0 {
        return 1.0;
    }
    let jf = j as f64;
    let u = (1.0 - y) / 2.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 0..j {
        let mf = m as f64;
        term *= (mf - jf) * (jf + alpha + beta + 1.0 + mf) / ((alpha + 1.0 + mf) * (mf + 1.0)) * u;
        sum += term;
    }
    let lead: f64 = (0..j).map(|i| (alpha + 1.0 + i as f64) / (i as f64 + 1.0)).product();
    lead * sum
}

/// φ_λ^{(α,β)}(t) = ₂F₁((α+β+1−iλ)/2, (α+β+1+iλ)/2; α+1; −sinh²t).
pub fn jacobi_function(lambda: Complex64, alpha: f64, beta: f64, t: f64) -> Result<Complex64> {
    if super::gamma::is_nonpositive_integer(Complex64::new(alpha + 1.0, 0.0)) {
        return Err(Error::HypergeometricPole(alpha + 1.0));
    }
    let rho = alpha + beta + 1.0;
    let il = Complex64::i() * lambda;
    let sh = t.sinh();
    gauss_2f1(HypergeometricArgs::new(
        (rho - il) / 2.0,
        (rho + il) / 2.0,
        Complex64::new(alpha + 1.0, 0.0),
        -sh * sh,
    ))
}

/// log of the Jacobi c-function
/// c(λ) = 2^{ρ−iλ} Γ(α+1) Γ(iλ) / (Γ((iλ+ρ)/2) Γ((iλ+α−β+1)/2)).
pub fn log_jacobi_c(lambda: Complex64, alpha: f64, beta: f64) -> Result<Complex64> {
    let rho = alpha + beta + 1.0;
    let il = Complex64::i() * lambda;
    for (z, what) in [
        (il, "Gamma(i lambda)"),
        (Complex64::new(alpha + 1.0, 0.0), "Gamma(alpha+1)"),
    ] {
        if super::gamma::is_nonpositive_integer(z) {
            return Err(Error::Pole(format!("{what} at lambda = {lambda}")));
        }
    }
    let d1 = (il + rho) / 2.0;
    let d2 = (il + alpha - beta + 1.0) / 2.0;
    if super::gamma::is_nonpositive_integer(d1) || super::gamma::is_nonpositive_integer(d2) {
        // a zero of c, not a pole; the log is −∞
        return Ok(Complex64::new(f64::NEG_INFINITY, 0.0));
    }
    Ok((rho - il) * std::f64::consts::LN_2 + log_gamma(Complex64::new(alpha + 1.0, 0.0)) + log_gamma(il)
        - log_gamma(d1)
        - log_gamma(d2))
}

/// Coefficients Γ_k(λ) of the Harish-Chandra expansion
/// Φ_λ(t) = e^{(iλ−ρ)t} Σ_k Γ_k q^k, q = e^{−2t}, for the Jacobi operator.
#[derive(Debug, Clone)]
pub struct HarishChandraSeries {
    lambda: Complex64,
    rho: f64,
    coef: Vec<Complex64>,
    /// Σ (μ−2i)Γ_i over even / odd i < coef.len()
    parity_sums: [Complex64; 2],
    alpha: f64,
    beta: f64,
}

impl HarishChandraSeries {
    pub fn new(lambda: Complex64, alpha: f64, beta: f64) -> Self {
        Self {
            lambda,
            rho: alpha + beta + 1.0,
            coef: vec![Complex64::new(1.0, 0.0)],
            parity_sums: [Complex64::i() * lambda - (alpha + beta + 1.0), Complex64::new(0.0, 0.0)],
            alpha,
            beta,
        }
    }

    // Γ_k = −Σ_{m=1}^k b_m (μ−2(k−m)) Γ_{k−m} / (4k(k−iλ)), μ = iλ−ρ,
    // b_m = 2(2α+1) + 2(2β+1)(−1)^m. Since b_m depends only on the parity of
    // m, the convolution splits into two running sums over i = k−m.
    fn extend_to(&mut self, k_max: usize) {
        let il = Complex64::i() * self.lambda;
        let mu = il - self.rho;
        let b_even = 2.0 * (2.0 * self.alpha + 1.0) + 2.0 * (2.0 * self.beta + 1.0);
        let b_odd = 2.0 * (2.0 * self.alpha + 1.0) - 2.0 * (2.0 * self.beta + 1.0);
        while self.coef.len() <= k_max {
            let k = self.coef.len();
            // m even ⇔ i ≡ k (mod 2); i = k itself is excluded because it is not yet in the sums
            let acc = b_even * self.parity_sums[k % 2] + b_odd * self.parity_sums[(k + 1) % 2];
            let kf = k as f64;
            let g = -acc / (4.0 * kf * (kf - il));
            self.parity_sums[k % 2] += (mu - 2.0 * kf) * g;
            self.coef.push(g);
        }
    }

    /// The series part Σ_k Γ_k q^k (without the exponential prefactor).
    pub fn sum(&mut self, t: f64) -> Result<Complex64> {
        if t <= 0.0 {
            return Err(Error::Precondition("Harish-Chandra expansion needs t > 0".into()));
        }
        let q = (-2.0 * t).exp();
        let mut s = Complex64::new(0.0, 0.0);
        let mut qk = 1.0;
        let mut small = 0;
        for k in 0..20_000 {
            self.extend_to(k);
            let term = self.coef[k] * qk;
            s += term;
            if term.norm() <= 1e-17 * s.norm() {
                small += 1;
                if small >= 3 {
                    return Ok(s);
                }
            } else {
                small = 0;
            }
            qk *= q;
        }
        Err(Error::NoConvergence { terms: 20_000, partial_re: s.re, partial_im: s.im })
    }

    /// Φ_λ(t) = e^{(iλ−ρ)t} Σ_k Γ_k q^k.
    pub fn phi(&mut self, t: f64) -> Result<Complex64> {
        let s = self.sum(t)?;
        Ok(s * ((Complex64::i() * self.lambda - self.rho) * t).exp())
    }
}

/// C_ν(λ) = 2^{n−ν−iλ} Γ(n) Γ(iλ) / (Γ((iλ+n−ν)/2) Γ((iλ+n+ν)/2)).
pub fn harish_chandra_c(p: &Parameters, lambda: f64) -> Result<Complex64> {
    if lambda == 0.0 {
        return Err(Error::Pole("harish_chandra_c: Gamma(i lambda) at lambda = 0".into()));
    }
    Ok(log_harish_chandra_c(p, Complex64::new(lambda, 0.0))?.exp())
}

/// log C_ν(λ) for complex λ; C_ν is the Jacobi c-function with (α,β) = (n−1, −ν).
pub fn log_harish_chandra_c(p: &Parameters, lambda: Complex64) -> Result<Complex64> {
    log_jacobi_c(lambda, p.nf() - 1.0, -p.nu)
}

/// |C_ν(λ)|⁻², 0 at λ = 0.
pub fn plancherel_weight(p: &Parameters, lambda: f64) -> f64 {
    if lambda == 0.0 {
        return 0.0;
    }
    match log_harish_chandra_c(p, Complex64::new(lambda.abs(), 0.0)) {
        Ok(l) => (-2.0 * l.re).exp(),
        Err(_) => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::pochhammer;

    #[test]
    fn polynomial_examples() {
        assert_eq!(jacobi_polynomial(0, 3.3, -1.1, 0.4), 1.0);
        assert!((jacobi_polynomial(1, 0.0, -2.5, 3.0) - 0.5).abs() < 1e-15);
        let v = jacobi_polynomial(5, 1.0, -3.7, 1.0);
        let expect = pochhammer(2.0, 5) / 120.0;
        assert!((v - expect).abs() < 1e-13 * expect);
    }

    #[test]
    fn function_examples() {
        let a = jacobi_function(Complex64::new(2.3, 0.0), 0.0, -2.5, 0.7).unwrap();
        let b = jacobi_function(Complex64::new(-2.3, 0.0), 0.0, -2.5, 0.7).unwrap();
        assert!((a - b).norm() < 1e-14 * a.norm());
        let l = Complex64::new(0.0, -(0.0 - 2.5 + 1.0));
        let v = jacobi_function(l, 0.0, -2.5, 1.3).unwrap();
        assert!((v - 1.0).norm() < 1e-14);
    }

    #[test]
    fn harish_chandra_expansion_matches_series() {
        for &(lam, t) in &[(3.0, 0.6), (17.5, 1.1), (0.8, 2.0)] {
            let (al, be) = (0.0, -2.5);
            let l = Complex64::new(lam, 0.0);
            let direct = jacobi_function(l, al, be, t).unwrap();
            let c1 = log_jacobi_c(l, al, be).unwrap().exp();
            let c2 = log_jacobi_c(-l, al, be).unwrap().exp();
            let v = c1 * HarishChandraSeries::new(l, al, be).phi(t).unwrap()
                + c2 * HarishChandraSeries::new(-l, al, be).phi(t).unwrap();
            assert!((v - direct).norm() < 1e-11 * direct.norm().max(1e-3), "{lam} {t}: {v} vs {direct}");
        }
    }

    #[test]
    fn weight_symmetry_and_origin() {
        let p = Parameters::new(1, 2.5).unwrap();
        let a = harish_chandra_c(&p, 1.7).unwrap().norm_sqr().recip();
        let b = harish_chandra_c(&p, -1.7).unwrap().norm_sqr().recip();
        assert!((a - b).abs() < 1e-13 * a);
        assert_eq!(plancherel_weight(&p, 0.0), 0.0);
        assert!(plancherel_weight(&p, 1e-4) < 1e-6 * plancherel_weight(&p, 1.0));
        let r = plancherel_weight(&p, 60.0) / plancherel_weight(&p, 30.0);
        assert!((r / 2.0 - 1.0).abs() < 0.02);
    }
}
