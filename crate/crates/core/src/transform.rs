//! Poisson kernels P^ν_λ(z,ω), the spherical function Φ_λ, the spherical
//! kernel K^ν_λ(z,w) = ∫ P^ν_λ(z,ω) conj(P^ν_λ(w,ω)) dσ(ω), and the
//! Fourier–Helgason analysis/synthesis pair.

use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{inner, sinh2_distance, BallPoint, BoundaryPoint};
use crate::params::{discrete_spectrum, Parameters};
use crate::quad::{integrate_ball, integrate_sphere, BallGrid, CompensatedSum, SphereRule};
use crate::specfun::{gauss_2f1, plancherel_weight, HypergeometricArgs};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn poisson_raw(p: &Parameters, lambda: Complex64, z: &[Complex64], om: &[Complex64]) -> Complex64 {
    let one_m = c(1.0) - inner(z, om);
    let r2: f64 = z.iter().map(|v| v.norm_sqr()).sum();
    let base = (1.0 - r2) / one_m.norm_sqr();
    let e = (Complex64::i() * lambda + p.nf() - p.nu) / 2.0;
    (e * base.ln() - p.nu * one_m.ln()).exp()
}

/// P^ν_λ(z,ω) = ((1−|z|²)/|1−⟨z,ω⟩|²)^{(iλ+n−ν)/2} (1−⟨z,ω⟩)^{−ν}.
pub fn poisson_kernel(p: &Parameters, lambda: Complex64, z: &BallPoint, omega: &BoundaryPoint) -> Result<Complex64> {
    if z.dim() != p.n || omega.dim() != p.n {
        return Err(Error::UnsupportedDimension(z.dim().max(omega.dim())));
    }
    Ok(poisson_raw(p, lambda, z.coords(), omega.coords()))
}

/// Φ_λ(z) = (1−|z|²)^{(n−ν−iλ)/2} ₂F₁((n+ν−iλ)/2, (n−ν−iλ)/2; n; |z|²).
pub fn spherical_function(p: &Parameters, lambda: Complex64, z: &BallPoint) -> Result<Complex64> {
    let (n, nu) = (p.nf(), p.nu);
    let il = Complex64::i() * lambda;
    let r2 = z.norm_sqr();
    let f = gauss_2f1(HypergeometricArgs::new((n + nu - il) / 2.0, (n - nu - il) / 2.0, c(n), r2))?;
    Ok(((n - nu - il) / 2.0 * (1.0 - r2).ln()).exp() * f)
}

/// (1−⟨z,w⟩)^{−ν} ₂F₁((iλ+n−ν)/2, (−iλ+n−ν)/2; n; −sinh²d(z,w)).
pub fn spherical_kernel(p: &Parameters, lambda: f64, z: &BallPoint, w: &BallPoint) -> Result<Complex64> {
    let (n, nu) = (p.nf(), p.nu);
    let il = Complex64::new(0.0, lambda);
    let x = sinh2_distance(z.coords(), w.coords());
    let f = gauss_2f1(HypergeometricArgs::new((il + n - nu) / 2.0, (-il + n - nu) / 2.0, c(n), -x))?;
    Ok((-nu * (c(1.0) - inner(z.coords(), w.coords())).ln()).exp() * f)
}

/// ∫_{∂𝔹_n} P^ν_λ(z,ω) conj(P^ν_λ(w,ω)) dσ(ω) on `nodes` sphere nodes (n ∈ {1,2}).
/// Pairing with P^ν_{−λ}(w,ω) instead agrees only at z = 0 or w = 0.
pub fn spherical_kernel_quadrature(p: &Parameters, lambda: f64, z: &BallPoint, w: &BallPoint, nodes: usize) -> Result<Complex64> {
    let l = c(lambda);
    integrate_sphere(p.n, |om| poisson_raw(p, l, z.coords(), om) * poisson_raw(p, l, w.coords(), om).conj(), nodes)
}

// ---------------------------------------------------------------- Fourier–Helgason

/// F̃(λ,ω) at one real λ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HelgasonSample {
    pub lambda: f64,
    pub omega: BoundaryPoint,
    pub value: Complex64,
}

/// F̃(λ,ω) = ∫ F(z) P^ν_{−λ}(z,ω) dμ_ν(z) for F supported in |z| ≤ `radius`.
/// Samples of F at quadrature points outside that radius must vanish.
///
/// For real λ, P^ν_{−λ}(z,ω) and conj(P^ν_λ(z,ω)) differ by the phase of
/// (1−⟨z,ω⟩)^{−ν}; the two transforms coincide on fields with F(z̄) = F(z)
/// paired at real ω, in particular on radial fields.
pub fn fh_forward<F>(p: &Parameters, f: F, radius: f64, lambda: Complex64, omega: &BoundaryPoint, grid: BallGrid) -> Result<Complex64>
where
    F: Fn(&[Complex64]) -> Complex64,
{
    if omega.dim() != p.n {
        return Err(Error::UnsupportedDimension(omega.dim()));
    }
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::Precondition(format!("support radius {radius} must lie in (0,1)")));
    }
    let violation = std::cell::Cell::new(0.0f64);
    let r2max = radius * radius;
    let v = integrate_ball(
        p,
        |z| {
            let v = f(z);
            let r2: f64 = z.iter().map(|c| c.norm_sqr()).sum();
            if r2 > r2max && v.norm() > 0.0 {
                violation.set(violation.get().max(r2));
                return c(0.0);
            }
            v * poisson_raw(p, -lambda, z, omega.coords())
        },
        grid,
    )?;
    if violation.get() > 0.0 {
        return Err(Error::Precondition(format!(
            "field is nonzero at |z|^2 = {} beyond the declared support radius {radius}",
            violation.get()
        )));
    }
    Ok(v)
}

/// Transform data on a uniform λ-grid, sampled at ±λ_k, plus the atom values F̃(λ_j, ω).
#[derive(Debug, Clone, PartialEq)]
pub struct HelgasonData {
    /// Grid step; λ_k = k·step for k = 0..=count.
    pub step: f64,
    pub count: usize,
    pub sphere_nodes: usize,
    /// values[k][ω] at +λ_k, then at −λ_k
    pub plus: Vec<Vec<Complex64>>,
    pub minus: Vec<Vec<Complex64>>,
    /// atoms[j][ω]
    pub atoms: Vec<Vec<Complex64>>,
}

impl HelgasonData {
    pub fn zeros(p: &Parameters, step: f64, count: usize, sphere_nodes: usize) -> Result<Self> {
        let m = SphereRule::new(p.n, sphere_nodes)?.len();
        let row = vec![c(0.0); m];
        Ok(Self {
            step,
            count,
            sphere_nodes,
            plus: vec![row.clone(); count + 1],
            minus: vec![row.clone(); count + 1],
            atoms: vec![row; discrete_spectrum(p).len()],
        })
    }

    /// Flat list of the real-λ samples, for serialization.
    pub fn samples(&self, p: &Parameters) -> Result<Vec<HelgasonSample>> {
        let rule = SphereRule::new(p.n, self.sphere_nodes)?;
        let mut out = Vec::new();
        for k in 0..=self.count {
            let l = self.step * k as f64;
            for (sign, rows) in [(1.0, &self.plus), (-1.0, &self.minus)] {
                for ((om, _), v) in rule.points().zip(&rows[k]) {
                    out.push(HelgasonSample { lambda: sign * l, omega: BoundaryPoint::new(om.to_vec())?, value: *v });
                }
            }
        }
        Ok(out)
    }
}

/// Writes samples as CSV: lambda, omega components (re,im interleaved), value re/im.
pub fn write_samples_csv<W: Write>(out: &mut W, samples: &[HelgasonSample]) -> std::io::Result<()> {
    let n = samples.first().map_or(1, |s| s.omega.dim());
    let mut header = vec!["lambda".to_string()];
    for k in 1..=n {
        header.push(format!("omega{k}_re"));
        header.push(format!("omega{k}_im"));
    }
    header.push("value_re".into());
    header.push("value_im".into());
    writeln!(out, "{}", header.join(","))?;
    for s in samples {
        let mut row = vec![format!("{:.16e}", s.lambda)];
        for c in s.omega.coords() {
            row.push(format!("{:.16e}", c.re));
            row.push(format!("{:.16e}", c.im));
        }
        row.push(format!("{:.16e}", s.value.re));
        row.push(format!("{:.16e}", s.value.im));
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

/// Samples F̃ on the grid of `data` by [`fh_forward`]. With `radial` set the
/// transform is computed at the first sphere node only and copied, which is
/// exact for fields depending on |z| alone.
pub fn sample_transform<F>(
    p: &Parameters,
    f: F,
    radius: f64,
    step: f64,
    count: usize,
    sphere_nodes: usize,
    grid: BallGrid,
    radial: bool,
) -> Result<HelgasonData>
where
    F: Fn(&[Complex64]) -> Complex64,
{
    let rule = SphereRule::new(p.n, sphere_nodes)?;
    let oms: Vec<BoundaryPoint> = rule.points().map(|(o, _)| BoundaryPoint::new(o.to_vec())).collect::<Result<_>>()?;
    let mut data = HelgasonData::zeros(p, step, count, sphere_nodes)?;
    let eval_row = |lambda: Complex64| -> Result<Vec<Complex64>> {
        if radial {
            let v = fh_forward(p, &f, radius, lambda, &oms[0], grid)?;
            Ok(vec![v; oms.len()])
        } else {
            oms.iter().map(|om| fh_forward(p, &f, radius, lambda, om, grid)).collect()
        }
    };
    for k in 0..=count {
        let l = step * k as f64;
        data.plus[k] = eval_row(c(l))?;
        data.minus[k] = if k == 0 { data.plus[k].clone() } else { eval_row(c(-l))? };
    }
    for (j, atom) in discrete_spectrum(p).iter().enumerate() {
        data.atoms[j] = eval_row(atom.lambda_j)?;
    }
    Ok(data)
}

/// Right-hand side of the inversion formula at z:
/// (1/4)·Γ(n)/(2^{2(ν−n)}π^{n+1}) ∫_∂𝔹 ∫_ℝ F̃ P_λ |C_ν|⁻² dλ dσ + Σ_j c_j ∫_∂𝔹 F̃(λ_j,ω) P_{λ_j}(z,ω) dσ.
/// The λ-integral over ℝ uses the trapezoid rule on the ±λ_k samples.
pub fn fh_inverse(p: &Parameters, data: &HelgasonData, z: &BallPoint) -> Result<Complex64> {
    if z.dim() != p.n {
        return Err(Error::UnsupportedDimension(z.dim()));
    }
    let rule = SphereRule::new(p.n, data.sphere_nodes)?;
    let pts: Vec<(&[Complex64], f64)> = rule.points().collect();
    if data.plus.len() != data.count + 1 || data.plus.iter().chain(&data.minus).any(|r| r.len() != pts.len()) {
        return Err(Error::Precondition("sample grid does not match the sphere rule".into()));
    }
    let zc = z.coords();
    let mut cont = CompensatedSum::default();
    for k in 1..=data.count {
        let l = data.step * k as f64;
        let wgt = plancherel_weight(p, l) * data.step * if k == data.count { 0.5 } else { 1.0 };
        for (i, (om, sw)) in pts.iter().enumerate() {
            let v = data.plus[k][i] * poisson_raw(p, c(l), zc, om) + data.minus[k][i] * poisson_raw(p, c(-l), zc, om);
            cont.add(v * (wgt * sw));
        }
    }
    // Γ(n)/(4·2^{2(ν−n)}π^{n+1}) = continuous_prefactor/2
    let mut total = cont.value() * (0.5 * p.continuous_prefactor());
    for (atom, row) in discrete_spectrum(p).iter().zip(&data.atoms) {
        let mut acc = CompensatedSum::default();
        for ((om, sw), v) in pts.iter().zip(row) {
            acc.add(v * poisson_raw(p, atom.lambda_j, zc, om) * *sw);
        }
        total += atom.c_j * acc.value();
    }
    Ok(total)
}

/// exp(−r²/(R²−r²)) for r < R, else 0.
pub fn radial_bump(z: &[Complex64], radius: f64) -> Complex64 {
    let r2: f64 = z.iter().map(|v| v.norm_sqr()).sum();
    let big = radius * radius;
    if r2 >= big {
        c(0.0)
    } else {
        c((-r2 / (big - r2)).exp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(re: f64, im: f64) -> BallPoint {
        BallPoint::new(vec![Complex64::new(re, im)]).unwrap()
    }

    #[test]
    fn poisson_at_origin_is_one() {
        let p = Parameters::new(1, 2.5).unwrap();
        let om = BoundaryPoint::new(vec![Complex64::from_polar(1.0, 0.7)]).unwrap();
        let v = poisson_kernel(&p, Complex64::new(1.3, -0.4), &BallPoint::origin(1), &om).unwrap();
        assert!((v - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn spherical_function_is_sphere_mean() {
        let p = Parameters::new(1, 2.5).unwrap();
        let z = pt(0.4, -0.3);
        for &l in &[0.0, 1.0, 4.5] {
            let closed = spherical_function(&p, c(l), &z).unwrap();
            let quad = integrate_sphere(1, |om| poisson_raw(&p, c(l), z.coords(), om), 256).unwrap();
            assert!((closed - quad).norm() < 1e-9 * closed.norm().max(1.0), "{closed} {quad}");
        }
        let a = spherical_function(&p, c(2.0), &pt(0.5, 0.0)).unwrap();
        let b = spherical_function(&p, c(2.0), &pt(0.0, -0.5)).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn spherical_kernel_forms_agree() {
        let p = Parameters::new(1, 2.5).unwrap();
        let z = pt(0.3, 0.2);
        let w = pt(-0.5, 0.1);
        for &l in &[0.5, 2.0, 7.0] {
            let a = spherical_kernel(&p, l, &z, &w).unwrap();
            let b = spherical_kernel_quadrature(&p, l, &z, &w, 512).unwrap();
            assert!((a - b).norm() < 1e-8 * a.norm(), "l={l}: {a} {b}");
            let e = spherical_kernel(&p, -l, &z, &w).unwrap();
            assert!((a - e).norm() < 1e-13 * a.norm());
        }
    }

    #[test]
    fn forward_is_linear_and_checks_support() {
        let p = Parameters::new(1, 2.5).unwrap();
        let om = BoundaryPoint::new(vec![c(1.0)]).unwrap();
        let g = BallGrid { radial: 32, angular: 64, boundary_shift: 0.0 };
        let f1 = |z: &[Complex64]| radial_bump(z, 0.85);
        let f2 = |z: &[Complex64]| radial_bump(z, 0.85) * z[0];
        let a = fh_forward(&p, f1, 0.85, c(1.0), &om, g).unwrap();
        let b = fh_forward(&p, f2, 0.85, c(1.0), &om, g).unwrap();
        let s = fh_forward(&p, |z: &[Complex64]| f1(z) + f2(z), 0.85, c(1.0), &om, g).unwrap();
        assert!((a + b - s).norm() < 1e-12 * s.norm());
        assert_eq!(fh_forward(&p, |_: &[Complex64]| c(0.0), 0.85, c(1.0), &om, g).unwrap(), c(0.0));
        assert!(fh_forward(&p, |_: &[Complex64]| c(1.0), 0.5, c(1.0), &om, g).is_err());
    }
}
