//! The ball 𝔹_n ⊂ ℂⁿ, its boundary sphere, the Bergman distance, the
//! SU(1,n) action by fractional linear maps, and finite-difference versions
//! of Δ_ν and Δ_{α,β}.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::Parameters;

/// A point of the open unit ball.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallPoint {
    z: Vec<Complex64>,
}

impl BallPoint {
    pub fn new(z: Vec<Complex64>) -> Result<Self> {
        if z.is_empty() {
            return Err(Error::UnsupportedDimension(0));
        }
        let r2 = norm_sqr(&z);
        if !(r2 < 1.0) {
            return Err(Error::OutsideBall(r2));
        }
        Ok(Self { z })
    }

    pub fn origin(n: usize) -> Self {
        Self { z: vec![Complex64::new(0.0, 0.0); n] }
    }

    /// Point (x, 0, …, 0).
    pub fn on_axis(n: usize, x: Complex64) -> Result<Self> {
        let mut z = vec![Complex64::new(0.0, 0.0); n];
        z[0] = x;
        Self::new(z)
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.z
    }

    pub fn dim(&self) -> usize {
        self.z.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.z)
    }
}

/// A point of the unit sphere ∂𝔹_n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    omega: Vec<Complex64>,
}

impl BoundaryPoint {
    pub fn new(omega: Vec<Complex64>) -> Result<Self> {
        let r = norm_sqr(&omega).sqrt();
        if omega.is_empty() || (r - 1.0).abs() >= 1e-12 {
            return Err(Error::NotOnSphere(r));
        }
        Ok(Self { omega })
    }

    /// Projects a nonzero vector onto the sphere.
    pub fn normalized(v: Vec<Complex64>) -> Result<Self> {
        let r = norm_sqr(&v).sqrt();
        if r == 0.0 || !r.is_finite() {
            return Err(Error::NotOnSphere(r));
        }
        Self::new(v.into_iter().map(|c| c / r).collect())
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.omega
    }

    pub fn dim(&self) -> usize {
        self.omega.len()
    }
}

fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum()
}

/// ⟨z,w⟩ = Σ z_k w̄_k on raw coordinates.
pub fn inner(z: &[Complex64], w: &[Complex64]) -> Complex64 {
    z.iter().zip(w).map(|(a, b)| a * b.conj()).sum()
}

pub fn hermitian_inner(z: &BallPoint, w: &BallPoint) -> Complex64 {
    inner(&z.z, &w.z)
}

/// cosh² d(z,w) = |1−⟨z,w⟩|² / ((1−|z|²)(1−|w|²)).
pub fn cosh2_distance(z: &[Complex64], w: &[Complex64]) -> f64 {
    let num = (Complex64::new(1.0, 0.0) - inner(z, w)).norm_sqr();
    let v = num / ((1.0 - norm_sqr(z)) * (1.0 - norm_sqr(w)));
    if v < 1.0 && v > 1.0 - 1e-14 {
        1.0
    } else {
        v
    }
}

/// sinh² d(z,w) computed without the cancellation in cosh² − 1:
/// |z−w|²-type numerator |1−⟨z,w⟩|² − (1−|z|²)(1−|w|²).
pub fn sinh2_distance(z: &[Complex64], w: &[Complex64]) -> f64 {
    let a = 1.0 - norm_sqr(z);
    let b = 1.0 - norm_sqr(w);
    // |1−⟨z,w⟩|² − (1−|z|²)(1−|w|²) = |z−w|² − |z|²|w|² + |⟨z,w⟩|²
    let diff: f64 = z.iter().zip(w).map(|(p, q)| (p - q).norm_sqr()).sum();
    let num = diff - norm_sqr(z) * norm_sqr(w) + inner(z, w).norm_sqr();
    (num / (a * b)).max(0.0)
}

/// Bergman distance d(z,w) = arccosh √(cosh² d).
pub fn bergman_distance(z: &BallPoint, w: &BallPoint) -> f64 {
    sinh2_distance(&z.z, &w.z).sqrt().asinh()
}

/// An element of SU(1,n) stored as its (n+1)×(n+1) matrix with blocks
/// [[A, B], [C, D]].
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    m: DMatrix<Complex64>,
}

fn j_matrix(n: usize) -> DMatrix<Complex64> {
    let mut j = DMatrix::identity(n + 1, n + 1);
    j[(n, n)] = Complex64::new(-1.0, 0.0);
    j
}

impl GroupElement {
    /// Validates g*Jg = J (entrywise, scaled by the size of g) and det g = 1.
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        let k = m.nrows();
        if k < 2 || m.ncols() != k {
            return Err(Error::InvalidGroupElement(format!("matrix must be square of size n+1 ≥ 2, got {}x{}", k, m.ncols())));
        }
        let n = k - 1;
        let j = j_matrix(n);
        let scale = m.iter().map(|c| c.norm_sqr()).fold(1.0, f64::max);
        let defect = (m.adjoint() * &j * &m - &j).iter().map(|c| c.norm()).fold(0.0, f64::max);
        if defect > 1e-12 * scale {
            return Err(Error::InvalidGroupElement(format!("g*Jg - J has entry of size {defect:e}")));
        }
        let det = m.determinant();
        if (det - 1.0).norm() > 1e-10 * scale {
            return Err(Error::InvalidGroupElement(format!("det g = {det}")));
        }
        Ok(Self { m })
    }

    pub fn identity(n: usize) -> Self {
        Self { m: DMatrix::identity(n + 1, n + 1) }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows() - 1
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn a(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        self.m.view((0, 0), (n, n)).into_owned()
    }

    pub fn b(&self) -> DVector<Complex64> {
        let n = self.dim();
        self.m.view((0, n), (n, 1)).column(0).into_owned()
    }

    pub fn c(&self) -> DVector<Complex64> {
        let n = self.dim();
        self.m.view((n, 0), (1, n)).row(0).transpose().into_owned()
    }

    pub fn d(&self) -> Complex64 {
        let n = self.dim();
        self.m[(n, n)]
    }

    /// g⁻¹ = J g* J.
    pub fn inverse(&self) -> Self {
        let j = j_matrix(self.dim());
        Self { m: &j * self.m.adjoint() * &j }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self { m: &self.m * &other.m }
    }

    /// Cz + D.
    pub fn cocycle(&self, z: &[Complex64]) -> Complex64 {
        let n = self.dim();
        (0..n).map(|k| self.m[(n, k)] * z[k]).sum::<Complex64>() + self.m[(n, n)]
    }

    /// Action on raw coordinates; also used for boundary points.
    pub fn act(&self, z: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        let den = self.cocycle(z);
        (0..n)
            .map(|i| ((0..n).map(|k| self.m[(i, k)] * z[k]).sum::<Complex64>() + self.m[(i, n)]) / den)
            .collect()
    }
}

/// (Az+B)(Cz+D)⁻¹.
pub fn mobius_act(g: &GroupElement, z: &BallPoint) -> Result<BallPoint> {
    if g.dim() != z.dim() {
        return Err(Error::InvalidGroupElement("dimension mismatch".into()));
    }
    BallPoint::new(g.act(&z.z))
}

/// g_z = [[(I−zz*)^{−1/2}, z s], [z*(I−zz*)^{−1/2}, s]], s = (1−|z|²)^{−1/2}.
pub fn transvection(z: &BallPoint) -> GroupElement {
    let n = z.dim();
    let zv = DVector::from_column_slice(&z.z);
    let s = (1.0 - z.norm_sqr()).powf(-0.5);
    let m = DMatrix::<Complex64>::identity(n, n) - &zv * zv.adjoint();
    let eig = nalgebra::SymmetricEigen::new(m);
    let inv_sqrt = DVector::from_iterator(n, eig.eigenvalues.iter().map(|&e| Complex64::new(e.powf(-0.5), 0.0)));
    let a = &eig.eigenvectors * DMatrix::from_diagonal(&inv_sqrt) * eig.eigenvectors.adjoint();
    let c = zv.adjoint() * &a;
    let mut g = DMatrix::<Complex64>::zeros(n + 1, n + 1);
    g.view_mut((0, 0), (n, n)).copy_from(&a);
    for i in 0..n {
        g[(i, n)] = zv[i] * s;
        g[(n, i)] = c[(0, i)];
    }
    g[(n, n)] = Complex64::new(s, 0.0);
    GroupElement { m: g }
}

/// Uniform point in the ball of radius `r_max` (uniform in the Euclidean volume).
pub fn random_ball_point<R: Rng + ?Sized>(n: usize, r_max: f64, rng: &mut R) -> BallPoint {
    let v: Vec<Complex64> =
        (0..n).map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
    let len = norm_sqr(&v).sqrt();
    let u: f64 = rng.random();
    let r = r_max * u.powf(1.0 / (2 * n) as f64);
    BallPoint { z: v.into_iter().map(|c| c * (r / len)).collect() }
}

pub fn random_boundary_point<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BoundaryPoint {
    loop {
        let v: Vec<Complex64> =
            (0..n).map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
        if let Ok(b) = BoundaryPoint::normalized(v) {
            return b;
        }
    }
}

/// Haar-distributed unitary n×n matrix from QR of a complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = DVector::from_iterator(n, (0..n).map(|i| {
        let d = r[(i, i)];
        if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        }
    }));
    q * DMatrix::from_diagonal(&phases)
}

/// transvection(z) · diag(U, e^{iθ}) with θ = −arg det U, z drawn with |z| ≤ r_max.
pub fn random_group_element<R: Rng + ?Sized>(n: usize, r_max: f64, rng: &mut R) -> GroupElement {
    let z = random_ball_point(n, r_max, rng);
    let u = random_unitary(n, rng);
    let det = u.determinant();
    let mut k = DMatrix::<Complex64>::zeros(n + 1, n + 1);
    k.view_mut((0, 0), (n, n)).copy_from(&u);
    k[(n, n)] = (det / det.norm()).conj();
    transvection(&z).compose(&GroupElement { m: k })
}

/// Coefficients (α, β) of Δ_{α,β}; σ² = (α+β+n)².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedLaplacianParams {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub sigma2: f64,
}

impl GeneralizedLaplacianParams {
    pub fn new(n: usize, alpha: f64, beta: f64) -> Self {
        let s = alpha + beta + n as f64;
        Self { n, alpha, beta, sigma2: s * s }
    }

    /// (α, β) = (0, −ν), for which Δ_{α,β} = Δ_ν.
    pub fn from_nu(p: &Parameters) -> Self {
        Self::new(p.n, 0.0, -p.nu)
    }
}

/// Finite-difference settings for the Laplacians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stencil {
    pub h: f64,
    /// Combine steps h and h/2 as (4D(h/2) − D(h))/3.
    pub richardson: bool,
}

impl Default for Stencil {
    fn default() -> Self {
        Self { h: 1e-3, richardson: false }
    }
}

impl Stencil {
    pub fn with_h(h: f64) -> Self {
        Self { h, richardson: false }
    }
}

/// Gradient and Hessian in the 2n real coordinates (x_1, y_1, …, x_n, y_n).
struct Derivatives {
    grad: Vec<Complex64>,
    hess: Vec<Vec<Complex64>>,
    value: Complex64,
}

fn shifted(z: &[Complex64], k: usize, delta: f64) -> Vec<Complex64> {
    let mut out = z.to_vec();
    if k % 2 == 0 {
        out[k / 2].re += delta;
    } else {
        out[k / 2].im += delta;
    }
    out
}

fn central_derivatives<F>(f: &F, z: &[Complex64], h: f64) -> Derivatives
where
    F: Fn(&[Complex64]) -> Complex64 + ?Sized,
{
    let m = 2 * z.len();
    let f0 = f(z);
    let mut grad = vec![Complex64::new(0.0, 0.0); m];
    let mut hess = vec![vec![Complex64::new(0.0, 0.0); m]; m];
    for k in 0..m {
        let fp = f(&shifted(z, k, h));
        let fm = f(&shifted(z, k, -h));
        grad[k] = (fp - fm) / (2.0 * h);
        hess[k][k] = (fp - 2.0 * f0 + fm) / (h * h);
    }
    for k in 0..m {
        for l in (k + 1)..m {
            let pp = f(&shifted(&shifted(z, k, h), l, h));
            let pm = f(&shifted(&shifted(z, k, h), l, -h));
            let mp = f(&shifted(&shifted(z, k, -h), l, h));
            let mm = f(&shifted(&shifted(z, k, -h), l, -h));
            let v = (pp - pm - mp + mm) / (4.0 * h * h);
            hess[k][l] = v;
            hess[l][k] = v;
        }
    }
    Derivatives { grad, hess, value: f0 }
}

fn assemble(gp: &GeneralizedLaplacianParams, z: &[Complex64], d: &Derivatives) -> Complex64 {
    let n = z.len();
    let i = Complex64::i();
    // ∂_k = (∂x − i∂y)/2, ∂̄_k = (∂x + i∂y)/2
    let dz = |k: usize| (d.grad[2 * k] - i * d.grad[2 * k + 1]) / 2.0;
    let dzb = |k: usize| (d.grad[2 * k] + i * d.grad[2 * k + 1]) / 2.0;
    let dd = |a: usize, b: usize| {
        let (xa, ya, xb, yb) = (2 * a, 2 * a + 1, 2 * b, 2 * b + 1);
        (d.hess[xa][xb] + d.hess[ya][yb] + i * (d.hess[xa][yb] - d.hess[ya][xb])) / 4.0
    };
    let mut second = Complex64::new(0.0, 0.0);
    for a in 0..n {
        for b in 0..n {
            let delta = if a == b { 1.0 } else { 0.0 };
            second += (delta - z[a] * z[b].conj()) * dd(a, b);
        }
    }
    let mut first = Complex64::new(0.0, 0.0);
    for k in 0..n {
        first += gp.alpha * z[k] * dz(k) + gp.beta * z[k].conj() * dzb(k);
    }
    4.0 * (1.0 - norm_sqr(z)) * (second + first - gp.alpha * gp.beta * d.value)
}

fn check_stencil(z: &[Complex64], h: f64) -> Result<()> {
    let r = norm_sqr(z).sqrt() + 2.0 * h * std::f64::consts::SQRT_2;
    if r >= 1.0 {
        return Err(Error::StencilOutsideBall(r * r));
    }
    Ok(())
}

/// Δ_{α,β} f(z) by second-order central differences.
pub fn apply_delta_alpha_beta<F>(gp: &GeneralizedLaplacianParams, f: &F, z: &BallPoint, st: Stencil) -> Result<Complex64>
where
    F: Fn(&[Complex64]) -> Complex64 + ?Sized,
{
    if z.dim() != gp.n {
        return Err(Error::UnsupportedDimension(z.dim()));
    }
    check_stencil(&z.z, st.h)?;
    let coarse = assemble(gp, &z.z, &central_derivatives(f, &z.z, st.h));
    if !st.richardson {
        return Ok(coarse);
    }
    let fine = assemble(gp, &z.z, &central_derivatives(f, &z.z, st.h / 2.0));
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Δ_ν f(z) = Δ_{0,−ν} f(z).
pub fn apply_delta_nu<F>(p: &Parameters, f: &F, z: &BallPoint, st: Stencil) -> Result<Complex64>
where
    F: Fn(&[Complex64]) -> Complex64 + ?Sized,
{
    apply_delta_alpha_beta(&GeneralizedLaplacianParams::from_nu(p), f, z, st)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inner_and_distance_examples() {
        let z = BallPoint::new(vec![c(0.5, 0.0)]).unwrap();
        let w = BallPoint::new(vec![c(0.0, 0.6)]).unwrap();
        assert!((hermitian_inner(&z, &w) - c(0.0, -0.3)).norm() < 1e-16);
        let d = bergman_distance(&BallPoint::origin(1), &BallPoint::new(vec![c(0.6, 0.0)]).unwrap());
        assert!((d - std::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(bergman_distance(&z, &z), 0.0);
        assert!(BallPoint::new(vec![c(0.8, 0.6)]).is_err());
    }

    #[test]
    fn transvection_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [1, 2, 3] {
            let z = random_ball_point(n, 0.9, &mut rng);
            let g = transvection(&z);
            assert!(GroupElement::new(g.matrix().clone()).is_ok());
            let img = mobius_act(&g, &BallPoint::origin(n)).unwrap();
            for (a, b) in img.coords().iter().zip(z.coords()) {
                assert!((a - b).norm() < 1e-12);
            }
            // true inverse blocks: [[A, −zs], [−z*s, s]]
            let inv = g.inverse();
            let s = (1.0 - z.norm_sqr()).powf(-0.5);
            for k in 0..n {
                assert!((inv.b()[k] + z.coords()[k] * s).norm() < 1e-12);
                assert!((inv.c()[k] + z.coords()[k].conj() * s).norm() < 1e-12);
            }
            let prod = g.compose(&inv);
            assert!((prod.matrix() - DMatrix::<Complex64>::identity(n + 1, n + 1)).norm() < 1e-12);
        }
        assert_eq!(transvection(&BallPoint::origin(2)).matrix(), GroupElement::identity(2).matrix());
    }

    #[test]
    fn laplacian_examples() {
        let p = Parameters::new(1, 2.5).unwrap();
        let z = BallPoint::new(vec![c(0.5, 0.0)]).unwrap();
        let one = |_: &[Complex64]| c(1.0, 0.0);
        assert!(apply_delta_nu(&p, &one, &z, Stencil::default()).unwrap().norm() < 1e-9);
        let conj = |u: &[Complex64]| u[0].conj();
        let v = apply_delta_nu(&p, &conj, &z, Stencil::default()).unwrap();
        assert!((v - c(-3.75, 0.0)).norm() < 1e-6);
        let hol = |u: &[Complex64]| u[0] * u[0];
        assert!(apply_delta_nu(&p, &hol, &z, Stencil::default()).unwrap().norm() < 1e-8);
        let gp = GeneralizedLaplacianParams::new(1, 0.7, -1.3);
        let v = apply_delta_alpha_beta(&gp, &one, &z, Stencil::default()).unwrap();
        assert!((v.re + 4.0 * 0.75 * 0.7 * -1.3).abs() < 1e-9);
        assert!(apply_delta_nu(&p, &one, &BallPoint::new(vec![c(0.9995, 0.0)]).unwrap(), Stencil::default()).is_err());
    }
}
