use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde_json::json;

use super::{check_rng, fmt_c, params_json, VerificationReport, TOLERANCES};
use crate::error::Result;
use crate::geometry::{
    apply_delta_alpha_beta, apply_delta_nu, random_ball_point, random_boundary_point, BallPoint,
    GeneralizedLaplacianParams, Stencil,
};
use crate::kernels::{distance_pair, heat_kernel, resolvent_kernel, wave_kernel};
use crate::params::{discrete_spectrum, Parameters};
use crate::quad::{gauss_legendre, QuadratureSpec};
use crate::transform::poisson_kernel;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn gaussian_c<R: Rng>(rng: &mut R, scale: f64) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * scale
}

/// Δ_ν P^ν_λ(·,ω) = −(λ² + (n−ν)²) P^ν_λ(·,ω), by finite differences, for n = 1
/// at the given ν and for n = 2 at ν + 1.2.
pub fn check_eigenfunctions(p: &Parameters, seed: u64) -> Result<VerificationReport> {
    let mut rng = check_rng(seed, "eigenfunctions");
    let st = Stencil { h: 1e-3, richardson: true };
    let mut dims = vec![Parameters::new(1, p.nu)?, Parameters::new(2, p.nu + 1.2)?];
    if p.n == 2 {
        dims[1] = *p;
    }
    let mut worst: f64 = 0.0;
    let mut first = None;
    let mut count = 0;
    for q in &dims {
        for _ in 0..10 {
            let lambda: f64 = rng.random_range(0.0..6.0);
            let z = random_ball_point(q.n, 0.6, &mut rng);
            let om = random_boundary_point(q.n, &mut rng);
            let f = |u: &[Complex64]| match BallPoint::new(u.to_vec()) {
                Ok(b) => poisson_kernel(q, c(lambda), &b, &om).unwrap_or(c(f64::NAN)),
                Err(_) => c(f64::NAN),
            };
            let lhs = apply_delta_nu(q, &f, &z, st)?;
            let rhs = -(lambda * lambda + q.gap() * q.gap()) * f(z.coords());
            worst = worst.max((lhs - rhs).norm() / rhs.norm());
            first.get_or_insert((lhs, rhs));
            count += 1;
        }
    }
    let spec = QuadratureSpec::default();
    let params = json!({ "n": [dims[0].n, dims[1].n], "nu": [dims[0].nu, dims[1].nu], "samples_per_n": 10, "h": st.h });
    let mut r = VerificationReport::new("eigenfunctions", params, &spec, seed);
    let (l, q) = first.unwrap_or_default();
    r.lhs = l.into();
    r.rhs = Some(q.into());
    r.ratio = (l / q).into();
    r.rel_err = worst;
    r.abs_err = (l - q).norm();
    r.nodes = count;
    r.passed = worst < TOLERANCES.eigenfunction;
    r.notes = format!(
        "Richardson-extrapolated central differences (h = {}, h/2); worst relative residual {worst:.2e} over {count} samples",
        st.h
    );
    Ok(r)
}

/// Smooth test field e^{⟨a,z⟩ + ⟨z,b⟩ + c|z|²}·(1 + ⟨z,e⟩²).
fn smooth_field<R: Rng>(n: usize, rng: &mut R) -> impl Fn(&[Complex64]) -> Complex64 {
    let a: Vec<Complex64> = (0..n).map(|_| gaussian_c(rng, 0.5)).collect();
    let b: Vec<Complex64> = (0..n).map(|_| gaussian_c(rng, 0.5)).collect();
    let e: Vec<Complex64> = (0..n).map(|_| gaussian_c(rng, 0.5)).collect();
    let cc = gaussian_c(rng, 0.3);
    move |z: &[Complex64]| {
        let za: Complex64 = z.iter().zip(&a).map(|(u, v)| u * v).sum();
        let zb: Complex64 = z.iter().zip(&b).map(|(u, v)| u.conj() * v).sum();
        let ze: Complex64 = z.iter().zip(&e).map(|(u, v)| u * v.conj()).sum();
        let r2: f64 = z.iter().map(|u| u.norm_sqr()).sum();
        (za + zb + cc * r2).exp() * (1.0 + ze * ze)
    }
}

/// Δ_{α,β}f = M⁻¹[Δ_{α−γ,β−γ} − 4γ(α+β+n−γ)]Mf with Mf = (1−|z|²)^{−γ}f, at
/// (α, β) = (0, −ν), γ = −ν/2.
pub fn check_intertwining(p: &Parameters, seed: u64) -> Result<VerificationReport> {
    let mut rng = check_rng(seed, "intertwining");
    let st = Stencil { h: 1e-3, richardson: true };
    let (alpha, beta, gamma) = (0.0, -p.nu, -p.nu / 2.0);
    let n = p.nf();
    let left = GeneralizedLaplacianParams::new(p.n, alpha, beta);
    let right = GeneralizedLaplacianParams::new(p.n, alpha - gamma, beta - gamma);
    let shift = 4.0 * gamma * (alpha + beta + n - gamma);
    let mut worst: f64 = 0.0;
    let mut first = None;
    let samples = 10;
    for _ in 0..samples {
        let f = smooth_field(p.n, &mut rng);
        let z = random_ball_point(p.n, 0.7, &mut rng);
        let m = |u: &[Complex64]| {
            let r2: f64 = u.iter().map(|v| v.norm_sqr()).sum();
            f(u) * (1.0 - r2).powf(-gamma)
        };
        let lhs = apply_delta_alpha_beta(&left, &f, &z, st)?;
        let inner = apply_delta_alpha_beta(&right, &m, &z, st)? - shift * m(z.coords());
        let rhs = inner * (1.0 - z.norm_sqr()).powf(gamma);
        let scale = lhs.norm().max(f(z.coords()).norm());
        worst = worst.max((lhs - rhs).norm() / scale);
        first.get_or_insert((lhs, rhs));
    }
    let params = json!({ "n": p.n, "nu": p.nu, "alpha": alpha, "beta": beta, "gamma": gamma, "samples": samples });
    let mut r = VerificationReport::new("intertwining", params, &QuadratureSpec::default(), seed);
    let (l, q) = first.unwrap_or_default();
    r.lhs = l.into();
    r.rhs = Some(q.into());
    r.ratio = (l / q).into();
    r.abs_err = (l - q).norm();
    r.rel_err = worst;
    r.nodes = samples;
    r.passed = worst < TOLERANCES.intertwining;
    r.notes = format!("shift 4 gamma (alpha+beta+n-gamma) = {shift}; worst residual relative to max(|lhs|,|f|) {worst:.2e}");
    Ok(r)
}

fn heat_at(p: &Parameters, t: f64, z: &[Complex64], w: &BallPoint, spec: &QuadratureSpec) -> Complex64 {
    BallPoint::new(z.to_vec())
        .and_then(|z| heat_kernel(p, t, &z, w, spec))
        .map(|k| k.value)
        .unwrap_or(c(f64::NAN))
}

/// ∫₀^∞ e^{−ξt} K(t,z,w) dt on graded panels; beyond t = 24 the kernel has
/// settled to its j = 0 limit, integrated in closed form.
fn laplace_of_heat(p: &Parameters, xi: f64, z: &BallPoint, w: &BallPoint, spec: &QuadratureSpec) -> Result<Complex64> {
    let breaks = [0.0, 0.02, 0.05, 0.1, 0.2, 0.4, 0.7, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0, 24.0];
    let gl = gauss_legendre(24);
    let mut acc = Complex64::new(0.0, 0.0);
    for win in breaks.windows(2) {
        let (a, b) = (win[0], win[1]);
        let half = 0.5 * (b - a);
        for (x, wt) in gl.nodes.iter().zip(&gl.weights) {
            let t = a + half * (1.0 + x);
            acc += heat_kernel(p, t, z, w, spec)?.value * ((-xi * t).exp() * wt * half);
        }
    }
    let end = *breaks.last().unwrap_or(&24.0);
    let limit = heat_kernel(p, 40.0, z, w, spec)?.value;
    Ok(acc + limit * (-xi * end).exp() / xi)
}

/// ∂_t K = Δ_ν K, the t → ∞ limit and the Laplace transform identity.
pub fn check_heat_pde(p: &Parameters, spec: &QuadratureSpec, seed: u64) -> Result<VerificationReport> {
    let mut rng = check_rng(seed, "heat_pde");
    let st = Stencil { h: 1e-3, richardson: true };
    let dt = 1e-3;
    let times = [0.1, 0.5, 1.0];
    let mut worst: f64 = 0.0;
    let mut first = None;
    let mut nodes = 0;
    for &t in &times {
        for _ in 0..5 {
            let z = random_ball_point(p.n, 0.6, &mut rng);
            let w = random_ball_point(p.n, 0.6, &mut rng);
            let f = |u: &[Complex64]| heat_at(p, t, u, &w, spec);
            let lap = apply_delta_nu(p, &f, &z, st)?;
            let k = |s: f64| heat_at(p, s, z.coords(), &w, spec);
            let d1 = (k(t + dt) - k(t - dt)) / (2.0 * dt);
            let d2 = (k(t + dt / 2.0) - k(t - dt / 2.0)) / dt;
            let dk = (4.0 * d2 - d1) / 3.0;
            let scale = dk.norm().max(lap.norm());
            worst = worst.max((dk - lap).norm() / scale);
            first.get_or_insert((dk, lap));
            nodes += heat_kernel(p, t, &z, &w, spec)?.diagnostics.nodes;
        }
    }

    let z = random_ball_point(p.n, 0.6, &mut rng);
    let w = random_ball_point(p.n, 0.6, &mut rng);
    let long = heat_kernel(p, 50.0, &z, &w, spec)?;
    let atom0 = discrete_spectrum(p)[0];
    let limit = atom0.tau_j * long.prefactor_exponent.exp();
    let long_err = (long.value - limit).norm() / limit.norm();

    let xi = 2.0;
    let zl = BallPoint::new(vec![Complex64::new(0.1, 0.2)])?;
    let wl = BallPoint::new(vec![Complex64::new(-0.3, 0.1)])?;
    let (zl, wl) = if p.n == 1 { (zl, wl) } else { (z.clone(), w.clone()) };
    let lap_t = laplace_of_heat(p, xi, &zl, &wl, spec)?;
    let res = resolvent_kernel(p, c(xi), &zl, &wl, spec)?.value;
    let laplace_err = (lap_t - res).norm() / res.norm();

    let mut r = VerificationReport::new("heat_pde", json!({ "n": p.n, "nu": p.nu, "t": times, "samples_per_t": 5 }), spec, seed);
    let (l, q) = first.unwrap_or_default();
    r.lhs = l.into();
    r.rhs = Some(q.into());
    r.ratio = (l / q).into();
    r.abs_err = (l - q).norm();
    r.rel_err = worst;
    r.nodes = nodes;
    r.passed = worst < TOLERANCES.heat_pde && long_err < TOLERANCES.heat_long_time && laplace_err < TOLERANCES.heat_laplace;
    r.notes = format!(
        "FD residual |dK/dt - Delta K| worst {worst:.2e}; t=50 vs tau_0 (1-<z,w>)^(-nu): rel {long_err:.2e}; \
         Laplace transform of K at xi=2 vs resolvent: rel {laplace_err:.2e} ({} vs {})",
        fmt_c(lap_t),
        fmt_c(res)
    );
    Ok(r)
}

/// ∂²_t W = Δ_ν W for d(z,w) < |t| − 0.2, W(0) = 0 and W(−t) = −W(t).
pub fn check_wave_pde(p: &Parameters, spec: &QuadratureSpec, seed: u64) -> Result<VerificationReport> {
    let mut rng = check_rng(seed, "wave_pde");
    // FD needs an integrand rule that varies smoothly with (t, z)
    let fixed = spec.fixed();
    let h = 2.5e-3;
    let st = Stencil { h, richardson: false };
    let mut worst: f64 = 0.0;
    let mut sym: f64 = 0.0;
    let mut zero: f64 = 0.0;
    let mut first = None;
    let mut samples = Vec::new();
    let mut nodes = 0;
    while samples.len() < 3 {
        let t: f64 = rng.random_range(0.8..2.0);
        let z = random_ball_point(p.n, 0.4, &mut rng);
        let w = random_ball_point(p.n, 0.4, &mut rng);
        if distance_pair(&z, &w).1 < t - 0.3 {
            samples.push((t, z, w));
        }
    }
    let wave = |t: f64, z: &[Complex64], w: &BallPoint| {
        BallPoint::new(z.to_vec())
            .and_then(|z| wave_kernel(p, t, &z, w, &fixed))
            .map(|k| k.value)
            .unwrap_or(c(f64::NAN))
    };
    for (t, z, w) in &samples {
        let t = *t;
        let f = |u: &[Complex64]| wave(t, u, w);
        let lap = apply_delta_nu(p, &f, z, st)?;
        let w0 = wave(t, z.coords(), w);
        let dtt = (wave(t + h, z.coords(), w) - 2.0 * w0 + wave(t - h, z.coords(), w)) / (h * h);
        let scale = dtt.norm().max(lap.norm());
        worst = worst.max((dtt - lap).norm() / scale);
        first.get_or_insert((dtt, lap));
        sym = sym.max((wave(-t, z.coords(), w) + w0).norm() / w0.norm());
        zero = zero.max(wave(0.0, z.coords(), w).norm());
        nodes += wave_kernel(p, t, z, w, &fixed)?.diagnostics.nodes;
    }
    let js: Vec<_> = samples.iter().map(|(t, z, w)| json!({ "t": t, "d": distance_pair(z, w).1 })).collect();
    let mut params = params_json(p);
    params["samples"] = json!(js);
    params["h"] = json!(h);
    let mut r = VerificationReport::new("wave_pde", params, &fixed, seed);
    let (l, q) = first.unwrap_or_default();
    r.lhs = l.into();
    r.rhs = Some(q.into());
    r.ratio = (l / q).into();
    r.abs_err = (l - q).norm();
    r.rel_err = worst;
    r.nodes = nodes;
    r.passed = worst < TOLERANCES.wave_pde && sym < TOLERANCES.wave_symmetry && zero == 0.0;
    r.notes = format!(
        "second-order FD (h = {h}) on a fixed quadrature rule: worst residual {worst:.2e}; |W(-t)+W(t)|/|W(t)| {sym:.1e}; |W(0)| {zero:.1e}"
    );
    Ok(r)
}
