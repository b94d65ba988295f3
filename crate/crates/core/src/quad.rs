//! Numerical integration: half-line spectral integrals (smooth and
//! oscillatory), ball integrals against dμ_ν and sphere means against the
//! normalized measure dσ.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::Parameters;
use crate::specfun::ln_gamma;

/// Truncation, panel and tolerance policy shared by every integral.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub lambda_max: f64,
    /// Gauss–Legendre order per panel.
    pub panel_points: usize,
    /// Period of the dominant oscillation, if any. Selects the half-period
    /// panel path with averaged partial sums.
    pub oscillation_period: Option<f64>,
    /// Number of repeated-averaging stages applied to the partial sums.
    pub accel_terms: usize,
    /// Bisection depth per panel; 0 gives a fixed rule that is a smooth
    /// function of the integrand's parameters.
    pub max_bisections: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            lambda_max: 60.0,
            panel_points: 32,
            oscillation_period: None,
            accel_terms: 12,
            max_bisections: 40,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::InvalidSpec("tolerances must be positive".into()));
        }
        if self.panel_points < 4 {
            return Err(Error::InvalidSpec("panel_points must be at least 4".into()));
        }
        if !(self.lambda_max > 0.0 && self.lambda_max.is_finite()) {
            return Err(Error::InvalidSpec("lambda_max must be positive and finite".into()));
        }
        if let Some(p) = self.oscillation_period {
            if !(p > 0.0 && p.is_finite()) {
                return Err(Error::InvalidSpec("oscillation_period must be positive".into()));
            }
        }
        Ok(())
    }

    pub fn with_period(&self, period: f64) -> Self {
        Self { oscillation_period: Some(period), ..self.clone() }
    }

    pub fn fixed(&self) -> Self {
        Self { max_bisections: 0, ..self.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct QuadDiagnostics {
    pub nodes: usize,
    pub panels: usize,
    pub tail_estimate: f64,
    pub converged: bool,
}

impl QuadDiagnostics {
    pub fn merge(self, other: Self) -> Self {
        Self {
            nodes: self.nodes + other.nodes,
            panels: self.panels + other.panels,
            tail_estimate: self.tail_estimate + other.tail_estimate,
            converged: self.converged && other.converged,
        }
    }

    pub fn exact() -> Self {
        Self { converged: true, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub diag: QuadDiagnostics,
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: Complex64) {
        self.sum.re = two_sum(self.sum.re, x.re, &mut self.comp.re);
        self.sum.im = two_sum(self.sum.im, x.im, &mut self.comp.im);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn two_sum(s: f64, x: f64, c: &mut f64) -> f64 {
    let t = s + x;
    if s.abs() >= x.abs() {
        *c += (s - t) + x;
    } else {
        *c += (x - t) + s;
    }
    t
}

// ---------------------------------------------------------------- rules

/// Nodes and weights of a Gauss rule on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

type RuleCache = Mutex<HashMap<(usize, u64, u64), Arc<GaussRule>>>;

fn rule_cache() -> &'static RuleCache {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Gauss–Legendre rule of order `n` (Newton iteration on P_n).
pub fn gauss_legendre(n: usize) -> Arc<GaussRule> {
    let key = (n, 0, 0);
    if let Some(r) = rule_cache().lock().unwrap().get(&key) {
        return r.clone();
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_and_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    let rule = Arc::new(GaussRule { nodes, weights });
    rule_cache().lock().unwrap().insert(key, rule.clone());
    rule
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

/// Gauss–Jacobi rule for the weight (1−x)^a (1+x)^b on [−1, 1]
/// (Golub–Welsch), a, b > −1.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> Result<Arc<GaussRule>> {
    if !(a > -1.0 && b > -1.0) {
        return Err(Error::Precondition(format!("Gauss-Jacobi exponents must exceed -1 (a={a}, b={b})")));
    }
    let key = (n, a.to_bits(), b.to_bits());
    if let Some(r) = rule_cache().lock().unwrap().get(&key) {
        return Ok(r.clone());
    }
    let mut t = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        t[(k, k)] = if k == 0 {
            (b - a) / (a + b + 2.0)
        } else {
            (b * b - a * a) / (s * (s + 2.0))
        };
        if k + 1 < n {
            let k1 = kf + 1.0;
            let s1 = 2.0 * k1 + a + b;
            let num = 4.0 * k1 * (k1 + a) * (k1 + b) * (k1 + a + b);
            let den = s1 * s1 * (s1 + 1.0) * (s1 - 1.0);
            let off = (num / den).sqrt();
            t[(k, k + 1)] = off;
            t[(k + 1, k)] = off;
        }
    }
    let eig = SymmetricEigen::new(t);
    let log_mu0 = (a + b + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0);
    let mu0 = log_mu0.exp();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], mu0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let rule = Arc::new(GaussRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    });
    rule_cache().lock().unwrap().insert(key, rule.clone());
    Ok(rule)
}

fn apply_rule<F>(f: &F, rule: &GaussRule, a: f64, b: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = CompensatedSum::default();
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let t = mid + half * x;
        let v = f(t);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NanIntegrand(t));
        }
        acc.add(v * *w);
    }
    Ok(acc.value() * half)
}

// ---------------------------------------------------------------- intervals

/// ∫_a^b f by Gauss–Legendre with error estimate from the half-order rule
/// and deterministic bisection (left half first) up to `spec.max_bisections`.
/// `tol` is the absolute target for this interval.
pub fn integrate_interval<F>(f: &F, a: f64, b: f64, tol: f64, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let hi = gauss_legendre(spec.panel_points);
    if spec.max_bisections == 0 {
        let v = apply_rule(f, &hi, a, b)?;
        return Ok(QuadResult {
            value: v,
            diag: QuadDiagnostics { nodes: spec.panel_points, panels: 1, tail_estimate: 0.0, converged: true },
        });
    }
    let lo = gauss_legendre(spec.panel_points / 2);
    let mut budget = PANEL_BUDGET;
    panel_recursive(f, a, b, tol, spec.max_bisections, &hi, &lo, &mut budget)
}

/// Upper bound on panels spent by one adaptive interval.
const PANEL_BUDGET: usize = 4096;

#[allow(clippy::too_many_arguments)]
fn panel_recursive<F>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    depth: usize,
    hi: &GaussRule,
    lo: &GaussRule,
    budget: &mut usize,
) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let vh = apply_rule(f, hi, a, b)?;
    let vl = apply_rule(f, lo, a, b)?;
    let nodes = hi.nodes.len() + lo.nodes.len();
    let err = (vh - vl).norm();
    *budget = budget.saturating_sub(1);
    if err <= tol || depth == 0 || *budget == 0 {
        return Ok(QuadResult {
            value: vh,
            diag: QuadDiagnostics { nodes, panels: 1, tail_estimate: 0.0, converged: err <= tol },
        });
    }
    let m = 0.5 * (a + b);
    let left = panel_recursive(f, a, m, tol / 2.0, depth - 1, hi, lo, budget)?;
    let right = panel_recursive(f, m, b, tol / 2.0, depth - 1, hi, lo, budget)?;
    Ok(QuadResult {
        value: left.value + right.value,
        diag: QuadDiagnostics { nodes: nodes + left.diag.nodes + right.diag.nodes, ..left.diag.merge(right.diag) },
    })
}

/// ∫ over consecutive panels given by `breaks`, with a per-panel tolerance
/// scaled from a magnitude estimate.
pub fn integrate_panels<F>(f: &F, breaks: &[f64], scale: f64, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let mut acc = CompensatedSum::default();
    let mut diag = QuadDiagnostics::exact();
    let count = breaks.len().saturating_sub(1).max(1) as f64;
    let tol = (spec.abs_tol + spec.rel_tol * scale) / count;
    for w in breaks.windows(2) {
        let r = integrate_interval(f, w[0], w[1], tol, spec)?;
        acc.add(r.value);
        diag = diag.merge(r.diag);
    }
    Ok(QuadResult { value: acc.value(), diag })
}

/// Rough magnitude of ∫|f| on [a,b] from a coarse midpoint sample, used to
/// turn the relative tolerance into per-panel absolute targets.
fn magnitude_estimate<F>(f: &F, a: f64, b: f64) -> f64
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let m = 24;
    let h = (b - a) / m as f64;
    (0..m)
        .map(|i| f(a + (i as f64 + 0.5) * h).norm())
        .filter(|v| v.is_finite())
        .sum::<f64>()
        * h
}

// ---------------------------------------------------------------- half-line

/// ∫₀^∞ f(λ) dλ.
///
/// Without `oscillation_period`: Gauss–Legendre panels of unit width on
/// (0, lambda_max], the tail bounded by lambda_max·|f(lambda_max)|.
/// With a period P: panels of width P/2, and beyond lambda_max the partial
/// sums S_k, …, S_{k+m} (m = accel_terms) are averaged pairwise m times.
/// λ = 0 is never sampled.
pub fn integrate_halfline<F>(f: F, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    integrate_from(&f, 0.0, spec)
}

/// ∫_a^∞ f(λ) dλ with the same policy as [`integrate_halfline`]; the
/// oscillatory panels start at `a`.
pub fn integrate_from<F>(f: &F, a: f64, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    spec.validate()?;
    match spec.oscillation_period {
        None => smooth_from(f, a, spec),
        Some(p) => oscillatory_from(f, a, p, spec),
    }
}

fn smooth_from<F>(f: &F, a: f64, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let b = spec.lambda_max.max(a);
    let count = ((b - a).ceil() as usize).max(1);
    let breaks: Vec<f64> = (0..=count).map(|i| a + (b - a) * i as f64 / count as f64).collect();
    let scale = magnitude_estimate(f, a, b);
    let mut r = integrate_panels(f, &breaks, scale, spec)?;
    let tail = b * f(b).norm();
    r.diag.tail_estimate = tail;
    if tail > spec.abs_tol + spec.rel_tol * r.value.norm() {
        r.diag.converged = false;
    }
    Ok(r)
}

fn oscillatory_from<F>(f: &F, a: f64, period: f64, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let half = 0.5 * period;
    let n_main = (((spec.lambda_max - a) / half).ceil().max(1.0)) as usize;
    let n_total = n_main + spec.accel_terms;
    let scale = magnitude_estimate(f, a, a + half * n_main as f64).max(f64::MIN_POSITIVE);
    let tol = (spec.abs_tol + spec.rel_tol * scale) / n_total as f64;
    let mut acc = CompensatedSum::default();
    let mut diag = QuadDiagnostics::exact();
    let mut partial = Vec::with_capacity(spec.accel_terms + 1);
    for k in 0..n_total {
        let lo = a + half * k as f64;
        let r = integrate_interval(f, lo, lo + half, tol, spec)?;
        acc.add(r.value);
        diag = diag.merge(r.diag);
        if k + 1 >= n_main {
            partial.push(acc.value());
        }
    }
    let mut level = partial;
    let mut tail = 0.0;
    while level.len() > 1 {
        tail = (level[level.len() - 1] - level[level.len() - 2]).norm() / 2.0;
        level = level.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    let value = level[0];
    diag.tail_estimate = tail;
    if tail > spec.abs_tol + spec.rel_tol * value.norm().max(scale * 1e-3) {
        diag.converged = false;
    }
    Ok(QuadResult { value, diag })
}

// ---------------------------------------------------------------- ball and sphere

/// Node counts for [`integrate_ball`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallGrid {
    /// Gauss–Jacobi nodes in u = |z|².
    pub radial: usize,
    /// Circle nodes (n = 1) or per-angle nodes of the S³ rule (n = 2).
    pub angular: usize,
    /// Extra power k: the rule integrates (1−|z|²)^k f against
    /// (1−|z|²)^{ν−n−1−k}, which absorbs boundary growth of f like (1−|z|²)^{−k}.
    pub boundary_shift: f64,
}

impl Default for BallGrid {
    fn default() -> Self {
        Self { radial: 64, angular: 128, boundary_shift: 0.0 }
    }
}

/// ∫_{𝔹_n} f dμ_ν, dμ_ν = (1−|z|²)^{ν−n−1} dm(z), n ∈ {1, 2}.
pub fn integrate_ball<F>(p: &Parameters, f: F, grid: BallGrid) -> Result<Complex64>
where
    F: Fn(&[Complex64]) -> Complex64,
{
    let n = p.n;
    if n > 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    let a = p.nu - p.nf() - 1.0 - grid.boundary_shift;
    let b = p.nf() - 1.0;
    let rule = gauss_jacobi(grid.radial, a, b)?;
    // u = (1+x)/2 maps the Jacobi weight to 2^{a+b+1} (1−u)^a u^b du
    let jac = 2f64.powf(-(a + b + 1.0));
    let sphere_area = 2.0 * std::f64::consts::PI.powi(n as i32) / ln_gamma(p.nf()).exp();
    let sphere = SphereRule::new(n, grid.angular)?;
    let mut acc = CompensatedSum::default();
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let u = 0.5 * (1.0 + x);
        let r = u.sqrt();
        let shift = (1.0 - u).powf(grid.boundary_shift);
        let mean = sphere.mean(|om| {
            let z: Vec<Complex64> = om.iter().map(|c| c * r).collect();
            f(&z)
        })?;
        acc.add(mean * (w * jac * shift));
    }
    // r^{2n−1} dr = u^{n−1} du / 2
    Ok(acc.value() * (0.5 * sphere_area))
}

/// Mean of f over S^{2n−1} with respect to the normalized measure
/// (σ(S^{2n−1}) = 1), n ∈ {1, 2}.
pub fn integrate_sphere<F>(n: usize, f: F, nodes: usize) -> Result<Complex64>
where
    F: Fn(&[Complex64]) -> Complex64,
{
    SphereRule::new(n, nodes)?.mean(f)
}

/// Product rule on S¹ (trapezoid) or S³ (ω = (√(1−s)e^{iφ₁}, √s e^{iφ₂}),
/// s Gauss–Legendre on [0,1], φ trapezoid); σ is uniform in (s, φ₁, φ₂).
#[derive(Debug, Clone)]
pub struct SphereRule {
    points: Vec<Vec<Complex64>>,
    weights: Vec<f64>,
}

impl SphereRule {
    pub fn new(n: usize, nodes: usize) -> Result<Self> {
        let tau = std::f64::consts::TAU;
        match n {
            1 => {
                let m = nodes.max(1);
                let points = (0..m)
                    .map(|k| vec![Complex64::from_polar(1.0, tau * k as f64 / m as f64)])
                    .collect();
                Ok(Self { points, weights: vec![1.0 / m as f64; m] })
            }
            2 => {
                let m = nodes.max(4);
                let gl = gauss_legendre((m / 2).max(2));
                let mut points = Vec::new();
                let mut weights = Vec::new();
                for (x, ws) in gl.nodes.iter().zip(&gl.weights) {
                    let s = 0.5 * (1.0 + x);
                    for i in 0..m {
                        for j in 0..m {
                            let e1 = Complex64::from_polar((1.0 - s).sqrt(), tau * i as f64 / m as f64);
                            let e2 = Complex64::from_polar(s.sqrt(), tau * j as f64 / m as f64);
                            points.push(vec![e1, e2]);
                            weights.push(0.5 * ws / (m * m) as f64);
                        }
                    }
                }
                Ok(Self { points, weights })
            }
            _ => Err(Error::UnsupportedDimension(n)),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = (&[Complex64], f64)> {
        self.points.iter().map(|p| p.as_slice()).zip(self.weights.iter().copied())
    }

    pub fn mean<F>(&self, f: F) -> Result<Complex64>
    where
        F: Fn(&[Complex64]) -> Complex64,
    {
        let mut acc = CompensatedSum::default();
        for (pt, w) in self.points.iter().zip(&self.weights) {
            let v = f(pt);
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::NanIntegrand(pt[0].arg()));
            }
            acc.add(v * *w);
        }
        Ok(acc.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        let r = gauss_legendre(32);
        let s: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(40)).sum();
        assert!((s - 2.0 / 41.0).abs() < 1e-15);
        assert!((r.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn jacobi_rule_moments() {
        let (a, b) = (0.5, 0.0);
        let r = gauss_jacobi(64, a, b).unwrap();
        // ∫(1−x)^{1/2}(1+x)^3 dx = 2^{4.5} B(1.5, 4)
        let exact = (4.5 * std::f64::consts::LN_2 + ln_gamma(1.5) + ln_gamma(4.0) - ln_gamma(5.5)).exp();
        let s: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * (1.0 + x).powi(3)).sum();
        assert!((s - exact).abs() < 1e-13 * exact);
    }

    #[test]
    fn halfline_examples() {
        let spec = QuadratureSpec::default();
        let g = integrate_halfline(|l| c((-l * l).exp()), &spec).unwrap();
        assert!((g.value.re - PI.sqrt() / 2.0).abs() < 1e-13, "{:?}", g);
        assert!(g.diag.converged);
        let e = integrate_halfline(|l| c((-l).exp() * (2.0 * l).sin()), &spec).unwrap();
        assert!((e.value.re - 0.4).abs() < 1e-12);
        let fres = integrate_halfline(|l| c(l.sin() / l.sqrt()), &spec.with_period(2.0 * PI)).unwrap();
        assert!((fres.value.re - (PI / 2.0).sqrt()).abs() < 1e-9, "{:?}", fres);
        assert!(fres.diag.converged, "{:?} err {}", fres, fres.value.re - (PI / 2.0).sqrt());
    }

    #[test]
    fn smooth_path_flags_slow_tails() {
        let r = integrate_halfline(|l| c(l.sin() / l.sqrt()), &QuadratureSpec::default()).unwrap();
        assert!(!r.diag.converged);
    }

    #[test]
    fn ball_examples() {
        let p = Parameters::new(1, 2.5).unwrap();
        let g = BallGrid::default();
        let one = integrate_ball(&p, |_| c(1.0), g).unwrap();
        assert!((one.re - PI / 1.5).abs() < 1e-13);
        let z1 = integrate_ball(&p, |z| z[0], g).unwrap();
        assert!(z1.norm() < 1e-14);
        let r2 = integrate_ball(&p, |z| c(z[0].norm_sqr()), g).unwrap();
        assert!((r2.re - PI * 4.0 / 15.0).abs() < 1e-13);
        let p2 = Parameters::new(2, 3.7).unwrap();
        // ∫ dμ = π^n Γ(ν−n)/Γ(ν)
        let m = integrate_ball(&p2, |_| c(1.0), BallGrid { angular: 8, ..g }).unwrap();
        let exact = PI * PI * (ln_gamma(1.7) - ln_gamma(3.7)).exp();
        assert!((m.re - exact).abs() < 1e-13 * exact);
    }

    #[test]
    fn sphere_examples() {
        assert!((integrate_sphere(1, |_| c(1.0), 128).unwrap() - 1.0).norm() < 1e-15);
        assert!(integrate_sphere(2, |w| w[0], 16).unwrap().norm() < 1e-15);
        let v = integrate_sphere(1, |w| c((c(1.0) - 0.5 * w[0].conj()).norm_sqr().recip()), 128).unwrap();
        assert!((v.re - 4.0 / 3.0).abs() < 1e-14);
        // E|ω₁|⁴ on S³ = 1/3
        let m4 = integrate_sphere(2, |w| c(w[0].norm_sqr().powi(2)), 16).unwrap();
        assert!((m4.re - 1.0 / 3.0).abs() < 1e-14);
        assert!(integrate_sphere(3, |_| c(1.0), 8).is_err());
    }
}
