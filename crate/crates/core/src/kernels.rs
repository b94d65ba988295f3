//! Spectral kernels of Δ_ν: density, projectors, functional calculus, heat,
//! resolvent and wave kernels, the closed-form wave kernel and the Green
//! kernel of H_{ν/2,1}.
//!
//! Every continuous part has the form
//! `(1−⟨z,w⟩)^{−ν} · K · ∫₀^∞ |C_ν(λ)|⁻² φ_λ(d) h(λ) dλ` with
//! K = Γ(n)/(2π^{n+1}2^{2(ν−n)}) and φ_λ = φ_λ^{(n−1,−ν)}. For λ ≥ [`HEAD`] and d > 0 the
//! product |C_ν|⁻²φ_λ is split as u + ū with u = Φ_λ(d)/C_ν(−λ) (Harish-Chandra
//! expansion), so each piece carries a single frequency and the oscillatory
//! quadrature path applies.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{inner, sinh2_distance, BallPoint};
use crate::params::{discrete_spectrum, Parameters, SpectrumAtom};
use crate::quad::{integrate_from, integrate_panels, CompensatedSum, QuadDiagnostics, QuadResult, QuadratureSpec};
use crate::specfun::{
    gauss_2f1, is_nonpositive_integer, jacobi_function, jacobi_polynomial, log_gamma, log_gamma_checked, log_harish_chandra_c,
    plancherel_weight, HarishChandraSeries, HypergeometricArgs,
};

/// Start of the Harish-Chandra tail.
pub const HEAD: f64 = 10.0;
/// Below this distance the kernels treat z and w as coincident (φ_λ ≡ 1).
pub const COINCIDENT: f64 = 1e-3;

/// Scalar inputs shared by the kernel operations; unused ones stay `None`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct ScalarArguments {
    pub s: Option<f64>,
    pub lambda: Option<Complex64>,
    pub t: Option<f64>,
    pub xi: Option<Complex64>,
    pub mu: Option<Complex64>,
    pub j: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelValue {
    pub value: Complex64,
    /// log of (1−⟨z,w⟩)^{−ν}
    pub prefactor_exponent: Complex64,
    pub diagnostics: QuadDiagnostics,
}

impl KernelValue {
    fn exact(value: Complex64, log_pref: Complex64) -> Self {
        Self { value, prefactor_exponent: log_pref, diagnostics: QuadDiagnostics::exact() }
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// log (1−⟨z,w⟩)^{−ν}, principal branch (Re(1−⟨z,w⟩) > 0 on the ball).
pub fn log_prefactor(p: &Parameters, z: &[Complex64], w: &[Complex64]) -> Complex64 {
    -p.nu * (c(1.0) - inner(z, w)).ln()
}

fn check_dims(p: &Parameters, z: &BallPoint, w: &BallPoint) -> Result<()> {
    if z.dim() != p.n || w.dim() != p.n {
        return Err(Error::UnsupportedDimension(z.dim().max(w.dim())));
    }
    Ok(())
}

/// (x = sinh²d, d) for a pair of points.
pub fn distance_pair(z: &BallPoint, w: &BallPoint) -> (f64, f64) {
    let x = sinh2_distance(z.coords(), w.coords());
    (x, x.sqrt().asinh())
}

// ---------------------------------------------------------------- discrete parts

/// Σ_j τ_j g(atom) P_j^{(n−1,−ν)}(cosh 2d), with cosh 2d = 1 + 2x.
fn discrete_sum<G>(p: &Parameters, x: f64, g: G) -> Complex64
where
    G: Fn(&SpectrumAtom) -> Complex64,
{
    discrete_spectrum(p)
        .iter()
        .map(|a| a.tau_j * jacobi_polynomial(a.j, p.nf() - 1.0, -p.nu, 1.0 + 2.0 * x) * g(a))
        .sum()
}

pub fn projector_kernel(p: &Parameters, atom: &SpectrumAtom, z: &BallPoint, w: &BallPoint) -> Result<KernelValue> {
    check_dims(p, z, w)?;
    let (x, _) = distance_pair(z, w);
    let lp = log_prefactor(p, z.coords(), w.coords());
    let v = atom.tau_j * jacobi_polynomial(atom.j, p.nf() - 1.0, -p.nu, 1.0 + 2.0 * x);
    Ok(KernelValue::exact(lp.exp() * v, lp))
}

/// The same kernel in the terminating-₂F₁ form
/// c_j (1−⟨z,w⟩)^{−ν} ₂F₁(−j, j−ν+n; n; 1−cosh²d).
pub fn projector_kernel_hypergeometric(
    p: &Parameters,
    atom: &SpectrumAtom,
    z: &BallPoint,
    w: &BallPoint,
) -> Result<KernelValue> {
    check_dims(p, z, w)?;
    let (x, _) = distance_pair(z, w);
    let lp = log_prefactor(p, z.coords(), w.coords());
    let j = atom.j as f64;
    let f = gauss_2f1(HypergeometricArgs::real(-j, j - p.nu + p.nf(), p.nf(), -x))?;
    Ok(KernelValue::exact(lp.exp() * atom.c_j * f, lp))
}

// ---------------------------------------------------------------- radial spectral engine

/// |C_ν(λ)|⁻² φ_λ(d) and its Harish-Chandra splitting at a fixed distance.
#[derive(Debug, Clone, Copy)]
pub struct RadialSpectrum {
    p: Parameters,
    d: f64,
}

impl RadialSpectrum {
    pub fn new(p: &Parameters, d: f64) -> Self {
        Self { p: *p, d }
    }

    fn alpha(&self) -> f64 {
        self.p.nf() - 1.0
    }

    fn beta(&self) -> f64 {
        -self.p.nu
    }

    pub fn coincident(&self) -> bool {
        self.d < COINCIDENT
    }

    /// A(λ) = e^{−iλd} Φ_λ(d) / C_ν(−λ); then |C_ν|⁻²φ_λ = 2 Re(e^{iλd}A) for real λ.
    pub fn amplitude(&self, lambda: f64) -> Result<Complex64> {
        let l = c(lambda);
        let rho = self.alpha() + self.beta() + 1.0;
        let s = HarishChandraSeries::new(l, self.alpha(), self.beta()).sum(self.d)?;
        let log_c = log_harish_chandra_c(&self.p, -l)?;
        Ok(s * (-rho * self.d - log_c).exp())
    }

    /// |C_ν(λ)|⁻² φ_λ(d).
    pub fn weighted_phi(&self, lambda: f64) -> Result<f64> {
        if self.coincident() {
            return Ok(plancherel_weight(&self.p, lambda));
        }
        if lambda >= HEAD {
            let u = Complex64::from_polar(1.0, lambda * self.d) * self.amplitude(lambda)?;
            return Ok(2.0 * u.re);
        }
        let phi = jacobi_function(c(lambda), self.alpha(), self.beta(), self.d)?;
        Ok(plancherel_weight(&self.p, lambda) * phi.re)
    }
}

/// One term e^{iωλ} m(λ) of a spectral multiplier.
pub struct MultiplierTerm<'a> {
    pub omega: f64,
    pub m: Box<dyn Fn(f64) -> Complex64 + 'a>,
}

/// h(λ) = Σ_k e^{iω_k λ} m_k(λ). `cutoff` marks integrands with Gaussian
/// decay, integrated on fixed panels up to that point.
pub struct Multiplier<'a> {
    pub terms: Vec<MultiplierTerm<'a>>,
    pub cutoff: Option<f64>,
}

impl<'a> Multiplier<'a> {
    pub fn eval(&self, lambda: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|t| Complex64::from_polar(1.0, t.omega * lambda) * (t.m)(lambda))
            .sum()
    }

    /// e^{−tλ²}
    pub fn heat(t: f64) -> Self {
        Self {
            terms: vec![MultiplierTerm { omega: 0.0, m: Box::new(move |l| c((-t * l * l).exp())) }],
            cutoff: Some((46.0 / t).sqrt() + 1.0),
        }
    }

    /// 1/(λ² + shift)
    pub fn resolvent(shift: Complex64) -> Self {
        Self {
            terms: vec![MultiplierTerm { omega: 0.0, m: Box::new(move |l| (c(l * l) + shift).inv()) }],
            cutoff: None,
        }
    }

    /// sin(tλ)/λ
    pub fn sin_over_lambda(t: f64) -> Self {
        let i = Complex64::i();
        Self {
            terms: vec![
                MultiplierTerm { omega: t, m: Box::new(move |l| (2.0 * i * l).inv()) },
                MultiplierTerm { omega: -t, m: Box::new(move |l| -(2.0 * i * l).inv()) },
            ],
            cutoff: None,
        }
    }

    /// sin(t√(λ²+a²))/√(λ²+a²)
    pub fn wave(t: f64, a: f64) -> Self {
        let i = Complex64::i();
        // √(λ²+a²) − λ = a²/(√(λ²+a²)+λ)
        let m = move |l: f64, sign: f64| {
            let r = (l * l + a * a).sqrt();
            let ph = t * a * a / (r + l);
            sign * Complex64::from_polar(1.0, sign * ph) / (2.0 * i * r)
        };
        Self {
            terms: vec![
                MultiplierTerm { omega: t, m: Box::new(move |l| m(l, 1.0)) },
                MultiplierTerm { omega: -t, m: Box::new(move |l| m(l, -1.0)) },
            ],
            cutoff: None,
        }
    }
}

/// ∫₀^∞ |C_ν(λ)|⁻² φ_λ(d) h(λ) dλ.
pub fn continuous_integral(p: &Parameters, d: f64, h: &Multiplier<'_>, spec: &QuadratureSpec) -> Result<QuadResult> {
    spec.validate()?;
    let rs = RadialSpectrum::new(p, d);
    let full = |l: f64| -> Complex64 {
        match rs.weighted_phi(l) {
            Ok(v) => h.eval(l) * v,
            Err(_) => Complex64::new(f64::NAN, 0.0),
        }
    };
    if let Some(cut) = h.cutoff {
        // the cutoff is where the Gaussian factor drops below e^{-46}; lambda_max does not truncate it
        let end = cut.max(1e-3);
        let count = end.ceil().max(1.0) as usize;
        let breaks: Vec<f64> = (0..=count).map(|k| end * k as f64 / count as f64).collect();
        let mut r = integrate_panels(&full, &breaks, 1.0, spec)?;
        r.diag.tail_estimate = (end * full(end).norm()).max(0.0);
        return Ok(r);
    }
    let head_breaks: Vec<f64> = (0..=HEAD as usize).map(|k| k as f64).collect();
    let head_scale = head_breaks.windows(2).map(|w| full(0.5 * (w[0] + w[1])).norm()).sum::<f64>();
    let head = integrate_panels(&full, &head_breaks, head_scale, spec)?;
    let mut acc = CompensatedSum::default();
    acc.add(head.value);
    let mut diag = head.diag;
    for term in &h.terms {
        let pieces: Vec<(f64, bool)> = if rs.coincident() {
            vec![(term.omega, false)]
        } else {
            vec![(term.omega + d, true), (term.omega - d, false)]
        };
        for (omega, first) in pieces {
            let g = |l: f64| -> Complex64 {
                let base = if rs.coincident() {
                    c(plancherel_weight(p, l))
                } else {
                    match rs.amplitude(l) {
                        Ok(a) if first => a,
                        Ok(a) => a.conj(),
                        Err(_) => return Complex64::new(f64::NAN, 0.0),
                    }
                };
                Complex64::from_polar(1.0, omega * l) * base * (term.m)(l)
            };
            let piece_spec = if omega.abs() > 1e-12 {
                spec.with_period(std::f64::consts::TAU / omega.abs())
            } else {
                QuadratureSpec { oscillation_period: None, ..spec.clone() }
            };
            let r = integrate_from(&g, HEAD, &piece_spec)?;
            acc.add(r.value);
            diag = diag.merge(r.diag);
        }
    }
    Ok(QuadResult { value: acc.value(), diag })
}

// ---------------------------------------------------------------- kernels

/// Absolutely continuous part of the spectral density e^ν(s, z, w).
pub fn spectral_density_continuous(p: &Parameters, s: f64, z: &BallPoint, w: &BallPoint) -> Result<KernelValue> {
    check_dims(p, z, w)?;
    let lp = log_prefactor(p, z.coords(), w.coords());
    if s <= 0.0 {
        return Ok(KernelValue::exact(c(0.0), lp));
    }
    let (_, d) = distance_pair(z, w);
    let l = s.sqrt();
    let phi = jacobi_function(c(l), p.nf() - 1.0, -p.nu, d)?;
    let v = 0.5 * p.continuous_prefactor() * plancherel_weight(p, l) / l * phi;
    Ok(KernelValue::exact(lp.exp() * v, lp))
}

/// Ω_f(z,w) = ∫ e^ν(s,z,w) f(s) ds + Σ_j f(s_j) K_j(z,w), the s-integral taken
/// as ∫ dλ after s = λ². `f` is only sampled on s > 0 and at the atoms; the
/// quadrature path follows `spec` (smooth unless an oscillation period is set).
pub fn functional_calculus<F>(p: &Parameters, f: F, z: &BallPoint, w: &BallPoint, spec: &QuadratureSpec) -> Result<KernelValue>
where
    F: Fn(f64) -> Complex64,
{
    check_dims(p, z, w)?;
    let (x, d) = distance_pair(z, w);
    let lp = log_prefactor(p, z.coords(), w.coords());
    let rs = RadialSpectrum::new(p, d);
    let g = |l: f64| match rs.weighted_phi(l) {
        Ok(v) => f(l * l) * v,
        Err(_) => Complex64::new(f64::NAN, 0.0),
    };
    let r = integrate_from(&g, 0.0, spec)?;
    let disc = discrete_sum(p, x, |a| f(a.s_j));
    let v = disc + p.continuous_prefactor() * r.value;
    Ok(KernelValue { value: lp.exp() * v, prefactor_exponent: lp, diagnostics: r.diag })
}

pub fn heat_kernel(p: &Parameters, t: f64, z: &BallPoint, w: &BallPoint, spec: &QuadratureSpec) -> Result<KernelValue> {
    check_dims(p, z, w)?;
    if !(t > 0.0) {
        return Err(Error::Precondition(format!("heat kernel needs t > 0, got {t}")));
    }
    let (x, d) = distance_pair(z, w);
    let lp = log_prefactor(p, z.coords(), w.coords());
    let r = continuous_integral(p, d, &Multiplier::heat(t), spec)?;
    let a2 = p.gap() * p.gap();
    let disc = discrete_sum(p, x, |a| c((a.rho_j * t).exp()));
    let v = disc + (-t * a2).exp() * p.continuous_prefactor() * r.value;
    Ok(KernelValue { value: lp.exp() * v, prefactor_exponent: lp, diagnostics: r.diag })
}

pub fn resolvent_kernel(p: &Parameters, xi: Complex64, z: &BallPoint, w: &BallPoint, spec: &QuadratureSpec) -> Result<KernelValue> {
    check_dims(p, z, w)?;
    let a2 = p.gap() * p.gap();
    for a in discrete_spectrum(p) {
        if (xi - a.rho_j).norm() < 1e-8 {
            return Err(Error::Pole(format!("xi = {xi} is at the eigenvalue rho_{} = {}", a.j, a.rho_j)));
        }
    }
    if xi.im.abs() < 1e-8 && xi.re <= -a2 + 1e-8 {
        return Err(Error::Pole(format!("xi = {xi} is on the continuous spectrum (-inf, {}]", -a2)));
    }
    let (x, d) = distance_pair(z, w);
    if d < COINCIDENT {
        return Err(Error::Precondition("the resolvent kernel is singular on the diagonal z = w".into()));
    }
    let lp = log_prefactor(p, z.coords(), w.coords());
    let r = continuous_integral(p, d, &Multiplier::resolvent(xi + a2), spec)?;
    let disc = discrete_sum(p, x, |a| (xi - a.rho_j).inv());
    let v = disc + p.continuous_prefactor() * r.value;
    Ok(KernelValue { value: lp.exp() * v, prefactor_exponent: lp, diagnostics: r.diag })
}

/// Wave kernel of ∂²_t u = Δ_ν u, u(0) = 0, u_t(0) = f. Refused unless
/// d(z,w) < |t|; see [`wave_kernel_unchecked`].
pub fn wave_kernel(p: &Parameters, t: f64, z: &BallPoint, w: &BallPoint, spec: &QuadratureSpec) -> Result<KernelValue> {
    let (_, d) = distance_pair(z, w);
    if t != 0.0 && d >= t.abs() {
        return Err(Error::RefusedRegime(format!("d(z,w) = {d} is not below |t| = {}", t.abs())));
    }
    wave_kernel_unchecked(p, t, z, w, spec)
}

pub fn wave_kernel_unchecked(p: &Parameters, t: f64, z: &BallPoint, w: &BallPoint, spec: &QuadratureSpec) -> Result<KernelValue> {
    check_dims(p, z, w)?;
    let lp = log_prefactor(p, z.coords(), w.coords());
    if t == 0.0 {
        return Ok(KernelValue::exact(c(0.0), lp));
    }
    let (x, d) = distance_pair(z, w);
    let r = continuous_integral(p, d, &Multiplier::wave(t, p.gap()), spec)?;
    let disc = discrete_sum(p, x, |a| {
        let om = (-a.rho_j).max(0.0).sqrt();
        if a.j == 0 || om == 0.0 {
            c(t)
        } else {
            c((om * t).sin() / om)
        }
    });
    let v = disc + p.continuous_prefactor() * r.value;
    Ok(KernelValue { value: lp.exp() * v, prefactor_exponent: lp, diagnostics: r.diag })
}

/// Kernel of sin(t√Δ̃_ν)/√Δ̃_ν: atoms contribute sinh(t(2j+n−ν))/(2j+n−ν), the
/// continuous part sin(tλ)/λ.
pub fn shifted_wave_kernel(p: &Parameters, t: f64, z: &BallPoint, w: &BallPoint, spec: &QuadratureSpec) -> Result<KernelValue> {
    check_dims(p, z, w)?;
    let lp = log_prefactor(p, z.coords(), w.coords());
    if t == 0.0 {
        return Ok(KernelValue::exact(c(0.0), lp));
    }
    let (x, d) = distance_pair(z, w);
    let r = continuous_integral(p, d, &Multiplier::sin_over_lambda(t), spec)?;
    let v = shifted_wave_discrete(p, t, x) + p.continuous_prefactor() * r.value;
    Ok(KernelValue { value: lp.exp() * v, prefactor_exponent: lp, diagnostics: r.diag })
}

/// Σ_j τ_j P_j(1+2x) sinh(t(2j+n−ν))/(2j+n−ν).
pub fn shifted_wave_discrete(p: &Parameters, t: f64, x: f64) -> Complex64 {
    discrete_sum(p, x, |a| {
        let k = 2.0 * a.j as f64 + p.nf() - p.nu;
        c((t * k).sinh() / k)
    })
}

/// Closed-form wave kernel K_n^{0,−ν} for n = 1:
/// c_n (1−⟨z,w⟩)^{−ν} cosh^{ν−n}d (cosh²t/cosh²d − 1)₊^{−n+1/2}
/// ₂F₁(1−n+ν, 1−n−ν; 3/2−n; (cosh d − cosh t)/(2 cosh d)), c_n = (−1)^{n−1}Γ(n−½)/(2πⁿ).
/// Even in t; zero for |t| ≤ d.
pub fn closed_form_wave_kernel(p: &Parameters, t: f64, z: &BallPoint, w: &BallPoint) -> Result<KernelValue> {
    check_dims(p, z, w)?;
    if p.n != 1 {
        return Err(Error::UnsupportedDimension(p.n));
    }
    let lp = log_prefactor(p, z.coords(), w.coords());
    let (x, d) = distance_pair(z, w);
    if t.abs() <= d {
        return Ok(KernelValue::exact(c(0.0), lp));
    }
    let n = p.nf();
    let ch = (1.0 + x).sqrt();
    let cn = (-1f64).powi(p.n as i32 - 1) * log_gamma(c(n - 0.5)).re.exp() / (2.0 * std::f64::consts::PI.powi(p.n as i32));
    let supp = t.cosh().powi(2) / (1.0 + x) - 1.0;
    let arg = (ch - t.cosh()) / (2.0 * ch);
    let f = gauss_2f1(HypergeometricArgs::real(1.0 - n + p.nu, 1.0 - n - p.nu, 1.5 - n, arg))?;
    let v = cn * ch.powf(p.nu - n) * supp.powf(-n + 0.5) * f;
    Ok(KernelValue::exact(lp.exp() * v, lp))
}

/// Exponent of the (1−|z|²)(1−|w|²)/|1−⟨z,w⟩|² factor in the Green kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GreenExponent {
    /// n − iμ/2, as printed.
    Printed,
    /// (n − iμ)/2, for which the kernel solves (H_{ν/2,1} − h(μ))G = 0 off the diagonal.
    Corrected,
}

/// Green kernel of H_{ν/2,1} − (μ²+ν²+n²) with the printed exponent.
pub fn green_kernel(p: &Parameters, mu: Complex64, z: &BallPoint, w: &BallPoint) -> Result<KernelValue> {
    green_kernel_with(p, mu, z, w, GreenExponent::Printed)
}

pub fn green_kernel_with(
    p: &Parameters,
    mu: Complex64,
    z: &BallPoint,
    w: &BallPoint,
    exponent: GreenExponent,
) -> Result<KernelValue> {
    check_dims(p, z, w)?;
    let (n, nu) = (p.nf(), p.nu);
    let i = Complex64::i();
    let a = (n - i * mu + nu) / 2.0;
    let b = (n - i * mu - nu) / 2.0;
    let cc = c(1.0) - i * mu;
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return Err(Error::Pole(format!("mu = {mu} is on the excluded lattice -i(2l+n±nu)")));
    }
    if is_nonpositive_integer(cc) {
        return Err(Error::Pole(format!("1 - i mu = {cc} is a pole of the hypergeometric function")));
    }
    let ip = inner(z.coords(), w.coords());
    let one_m = c(1.0) - ip;
    let big_x = (1.0 - z.norm_sqr()) * (1.0 - w.norm_sqr()) / one_m.norm_sqr();
    if big_x >= 1.0 - 1e-14 {
        return Err(Error::Precondition("green kernel is singular at z = w".into()));
    }
    let log_c = log_gamma_checked(a)? + log_gamma_checked(b)? - log_gamma(cc) - (2.0 * std::f64::consts::PI.powf(n)).ln();
    // ((1−conj⟨z,w⟩)/(1−⟨z,w⟩))^{ν/2} = e^{−iν arg(1−⟨z,w⟩)}
    let phase = Complex64::from_polar(1.0, -nu * one_m.arg());
    let e = match exponent {
        GreenExponent::Printed => n - i * mu / 2.0,
        GreenExponent::Corrected => (n - i * mu) / 2.0,
    };
    let f = gauss_2f1(HypergeometricArgs::new(a, b, cc, big_x))?;
    let v = (log_c + e * big_x.ln()).exp() * phase * f;
    Ok(KernelValue::exact(v, Complex64::new(0.0, 0.0)))
}

/// ξ(μ) = 2nν − (μ² + ν² + n²).
pub fn green_spectral_parameter(p: &Parameters, mu: Complex64) -> Complex64 {
    let (n, nu) = (p.nf(), p.nu);
    2.0 * n * nu - (mu * mu + nu * nu + n * n)
}

// ---------------------------------------------------------------- registry

/// A kernel that `eval` can sample on a grid of second arguments.
pub trait Kernel: Sync {
    fn name(&self) -> &'static str;
    /// Scalar arguments that must be present.
    fn required(&self) -> &'static [&'static str];
    /// Column labels of the scalar arguments echoed in CSV output.
    fn columns(&self) -> &'static [&'static str] {
        self.required()
    }
    fn evaluate(
        &self,
        p: &Parameters,
        args: &ScalarArguments,
        z: &[Complex64],
        w: &[Complex64],
        spec: &QuadratureSpec,
    ) -> Result<KernelValue>;
}

fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::Precondition(format!("missing --{name}")))
}

fn points(z: &[Complex64], w: &[Complex64]) -> Result<(BallPoint, BallPoint)> {
    Ok((BallPoint::new(z.to_vec())?, BallPoint::new(w.to_vec())?))
}

struct Heat;
struct Wave;
struct Resolvent;
struct Density;
struct Projector;
struct Green;
struct Poisson;

impl Kernel for Heat {
    fn name(&self) -> &'static str {
        "heat"
    }
    fn required(&self) -> &'static [&'static str] {
        &["t"]
    }
    fn evaluate(&self, p: &Parameters, a: &ScalarArguments, z: &[Complex64], w: &[Complex64], spec: &QuadratureSpec) -> Result<KernelValue> {
        let (z, w) = points(z, w)?;
        heat_kernel(p, need(a.t, "t")?, &z, &w, spec)
    }
}

impl Kernel for Wave {
    fn name(&self) -> &'static str {
        "wave"
    }
    fn required(&self) -> &'static [&'static str] {
        &["t"]
    }
    fn evaluate(&self, p: &Parameters, a: &ScalarArguments, z: &[Complex64], w: &[Complex64], spec: &QuadratureSpec) -> Result<KernelValue> {
        let (z, w) = points(z, w)?;
        wave_kernel(p, need(a.t, "t")?, &z, &w, spec)
    }
}

impl Kernel for Resolvent {
    fn name(&self) -> &'static str {
        "resolvent"
    }
    fn required(&self) -> &'static [&'static str] {
        &["xi"]
    }
    fn evaluate(&self, p: &Parameters, a: &ScalarArguments, z: &[Complex64], w: &[Complex64], spec: &QuadratureSpec) -> Result<KernelValue> {
        let (z, w) = points(z, w)?;
        resolvent_kernel(p, need(a.xi, "xi")?, &z, &w, spec)
    }
}

impl Kernel for Density {
    fn name(&self) -> &'static str {
        "density"
    }
    fn required(&self) -> &'static [&'static str] {
        &["s"]
    }
    fn evaluate(&self, p: &Parameters, a: &ScalarArguments, z: &[Complex64], w: &[Complex64], _: &QuadratureSpec) -> Result<KernelValue> {
        let (z, w) = points(z, w)?;
        spectral_density_continuous(p, need(a.s, "s")?, &z, &w)
    }
}

impl Kernel for Projector {
    fn name(&self) -> &'static str {
        "projector"
    }
    fn required(&self) -> &'static [&'static str] {
        &["j"]
    }
    fn evaluate(&self, p: &Parameters, a: &ScalarArguments, z: &[Complex64], w: &[Complex64], _: &QuadratureSpec) -> Result<KernelValue> {
        let (z, w) = points(z, w)?;
        let j = need(a.j, "j")?;
        let atoms = discrete_spectrum(p);
        let atom = atoms
            .get(j)
            .ok_or_else(|| Error::Precondition(format!("--j {j} exceeds the last atom index {}", atoms.len() - 1)))?;
        projector_kernel(p, atom, &z, &w)
    }
}

impl Kernel for Green {
    fn name(&self) -> &'static str {
        "green"
    }
    fn required(&self) -> &'static [&'static str] {
        &["mu"]
    }
    fn evaluate(&self, p: &Parameters, a: &ScalarArguments, z: &[Complex64], w: &[Complex64], _: &QuadratureSpec) -> Result<KernelValue> {
        let (z, w) = points(z, w)?;
        green_kernel(p, need(a.mu, "mu")?, &z, &w)
    }
}

impl Kernel for Poisson {
    fn name(&self) -> &'static str {
        "poisson"
    }
    fn required(&self) -> &'static [&'static str] {
        &["lambda"]
    }
    fn evaluate(&self, p: &Parameters, a: &ScalarArguments, z: &[Complex64], w: &[Complex64], _: &QuadratureSpec) -> Result<KernelValue> {
        let z = BallPoint::new(z.to_vec())?;
        let om = crate::geometry::BoundaryPoint::normalized(w.to_vec())?;
        let v = crate::transform::poisson_kernel(p, need(a.lambda, "lambda")?, &z, &om)?;
        Ok(KernelValue::exact(v, Complex64::new(0.0, 0.0)))
    }
}

/// All kernels reachable from `eval`, in a fixed order.
pub fn kernel_registry() -> Vec<Box<dyn Kernel>> {
    vec![
        Box::new(Heat),
        Box::new(Wave),
        Box::new(Resolvent),
        Box::new(Density),
        Box::new(Projector),
        Box::new(Green),
        Box::new(Poisson),
    ]
}

pub fn find_kernel(name: &str) -> Option<Box<dyn Kernel>> {
    kernel_registry().into_iter().find(|k| k.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(re: f64, im: f64) -> BallPoint {
        BallPoint::new(vec![Complex64::new(re, im)]).unwrap()
    }

    #[test]
    fn harish_chandra_split_matches_direct() {
        let p = Parameters::new(1, 2.5).unwrap();
        for &d in &[0.01, 0.1, 0.7, 2.5] {
            let rs = RadialSpectrum::new(&p, d);
            for &l in &[10.0, 13.7, 25.0] {
                let direct = plancherel_weight(&p, l) * jacobi_function(c(l), 0.0, -2.5, d).unwrap().re;
                let split = 2.0 * (Complex64::from_polar(1.0, l * d) * rs.amplitude(l).unwrap()).re;
                let scale = plancherel_weight(&p, l) * (1.0 + x_of(d)).powf(0.75);
                assert!((direct - split).abs() < 1e-10 * scale, "d={d} l={l}: {direct} vs {split}");
            }
        }
    }

    fn x_of(d: f64) -> f64 {
        d.sinh().powi(2)
    }

    #[test]
    fn density_examples() {
        let p = Parameters::new(1, 2.5).unwrap();
        let z = BallPoint::origin(1);
        let w = pt(0.5, 0.0);
        assert_eq!(spectral_density_continuous(&p, -1.0, &z, &w).unwrap().value, c(0.0));
        let v = spectral_density_continuous(&p, 1.0, &w, &w).unwrap().value;
        assert!(v.re > 0.0 && v.im.abs() < 1e-15);
    }

    #[test]
    fn projector_forms_agree() {
        let p = Parameters::new(1, 5.5).unwrap();
        let z = pt(0.3, -0.2);
        let w = pt(-0.1, 0.55);
        for atom in discrete_spectrum(&p) {
            let a = projector_kernel(&p, &atom, &z, &w).unwrap().value;
            let b = projector_kernel_hypergeometric(&p, &atom, &z, &w).unwrap().value;
            assert!((a - b).norm() < 1e-11 * a.norm(), "{a} {b}");
            let r = projector_kernel(&p, &atom, &w, &z).unwrap().value;
            assert!((a - r.conj()).norm() < 1e-12 * a.norm());
        }
    }

    #[test]
    fn heat_long_time_and_symmetry() {
        let p = Parameters::new(1, 2.5).unwrap();
        let spec = QuadratureSpec::default();
        let z = pt(0.2, 0.1);
        let w = pt(-0.3, 0.25);
        let k = heat_kernel(&p, 50.0, &z, &w, &spec).unwrap().value;
        let tau0 = 3.0 / std::f64::consts::PI;
        let lim = log_prefactor(&p, z.coords(), w.coords()).exp() * tau0;
        assert!((k - lim).norm() < 1e-6 * lim.norm());
        let a = heat_kernel(&p, 0.5, &z, &w, &spec).unwrap().value;
        let b = heat_kernel(&p, 0.5, &w, &z, &spec).unwrap().value;
        assert!((a - b.conj()).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn wave_basic_properties() {
        let p = Parameters::new(1, 2.5).unwrap();
        let spec = QuadratureSpec::default();
        let z = BallPoint::origin(1);
        let w = pt(0.3, 0.0);
        assert_eq!(wave_kernel(&p, 0.0, &z, &w, &spec).unwrap().value, c(0.0));
        let a = wave_kernel(&p, 1.2, &z, &w, &spec).unwrap().value;
        let b = wave_kernel(&p, -1.2, &z, &w, &spec).unwrap().value;
        assert!((a + b).norm() < 1e-12 * a.norm());
        assert!(matches!(wave_kernel(&p, 0.1, &z, &pt(0.9, 0.0), &spec), Err(Error::RefusedRegime(_))));
    }

    #[test]
    fn green_argument_and_lattice() {
        let p = Parameters::new(1, 2.5).unwrap();
        let z = pt(0.1, 0.2);
        let w = pt(-0.3, 0.1);
        let (x, _) = distance_pair(&z, &w);
        let big_x = (1.0 - z.norm_sqr()) * (1.0 - w.norm_sqr()) / (c(1.0) - inner(z.coords(), w.coords())).norm_sqr();
        assert!((big_x - 1.0 / (1.0 + x)).abs() < 1e-14);
        // μ = −i(n+ν) is excluded
        assert!(green_kernel(&p, Complex64::new(0.0, -3.5), &z, &w).is_err());
        let xi = green_spectral_parameter(&p, Complex64::new(0.0, 5.0));
        assert!((xi - c(22.75)).norm() < 1e-13);
    }

    #[test]
    fn registry_names_are_unique() {
        let names: Vec<_> = kernel_registry().iter().map(|k| k.name()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        assert!(find_kernel("heat").is_some());
        assert!(find_kernel("nope").is_none());
    }
}
