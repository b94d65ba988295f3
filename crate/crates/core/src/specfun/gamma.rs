use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_7;

/// True if `z` lies within 1e-12 of a non-positive integer.
pub fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im.abs() < 1e-12 && z.re < 0.5 && (z.re - z.re.round()).abs() < 1e-12
}

/// log Γ(z). Poles return `+inf` in the real part; use [`log_gamma_checked`]
/// to surface them as errors.
///
/// For Re z ≥ 1/2 the imaginary part is the continuous branch that vanishes
/// on the positive real axis. Reflected values (Re z < 1/2) agree with it
/// modulo 2πi, which is immaterial for every exponentiated use.
pub fn log_gamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return Complex64::new(f64::INFINITY, 0.0);
    }
    if z.re < 0.5 {
        // Γ(z)Γ(1−z) = π / sin(πz)
        return Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - lanczos(Complex64::new(1.0, 0.0) - z);
    }
    lanczos(z)
}

pub fn log_gamma_checked(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::GammaPole(z.re));
    }
    Ok(log_gamma(z))
}

/// log Γ(x) for real positive x.
pub fn ln_gamma(x: f64) -> f64 {
    log_gamma(Complex64::new(x, 0.0)).re
}

/// 1/Γ(z) in log form: `None` when z is a pole of Γ (so 1/Γ(z) = 0).
pub fn log_rgamma(z: Complex64) -> Option<Complex64> {
    if is_nonpositive_integer(z) {
        None
    } else {
        Some(-log_gamma(z))
    }
}

fn lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_2PI + (z + 0.5) * t.ln() - t + x.ln()
}

/// log sin(πz), evaluated without overflow for large |Im z|.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let w = z * PI;
    if w.im > 20.0 {
        // sin w = (i/2) e^{−iw} (1 − e^{2iw})
        let e = (Complex64::i() * 2.0 * w).exp();
        Complex64::new(0.5f64.ln(), PI / 2.0) - Complex64::i() * w + (Complex64::new(1.0, 0.0) - e).ln()
    } else if w.im < -20.0 {
        // sin w = (−i/2) e^{iw} (1 − e^{−2iw})
        let e = (-Complex64::i() * 2.0 * w).exp();
        Complex64::new(0.5f64.ln(), -PI / 2.0) + Complex64::i() * w + (Complex64::new(1.0, 0.0) - e).ln()
    } else {
        w.sin().ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchors() {
        assert!(log_gamma(Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((log_gamma(Complex64::new(0.5, 0.0)).re - 0.572_364_942_924_700_1).abs() < 1e-14);
        let v = (2.0 * log_gamma(Complex64::new(0.0, 1.0)).re).exp();
        assert!((v - PI / PI.sinh()).abs() < 1e-15);
        assert!((ln_gamma(10.0) - 362_880f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn poles() {
        assert!(log_gamma_checked(Complex64::new(-3.0, 0.0)).is_err());
        assert!(log_gamma_checked(Complex64::new(0.0, 0.0)).is_err());
        assert!(log_gamma_checked(Complex64::new(-2.5, 0.0)).is_ok());
    }

    #[test]
    fn negative_real_axis() {
        // Γ(−2.5) = −8√π/15
        let v = log_gamma(Complex64::new(-2.5, 0.0)).exp();
        assert!((v.re + 8.0 * PI.sqrt() / 15.0).abs() < 1e-13);
        assert!(v.im.abs() < 1e-13);
    }
}
