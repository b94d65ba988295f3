use num_complex::Complex64;
use rand::Rng;
use serde_json::json;

use super::{check_rng, fixtures_dir, params_json, VerificationReport, TOLERANCES};
use crate::error::{Error, Result};
use crate::geometry::random_ball_point;
use crate::params::Parameters;
use crate::quad::QuadratureSpec;
use crate::specfun::{gauss_2f1, log_gamma, HypergeometricArgs};
use crate::transform::{spherical_kernel, spherical_kernel_quadrature};

/// |Γ(iλ)|² λ sinh(πλ)/π = 1 on [0.1, 30], and ₂F₁ against the pinned 50-digit oracle.
pub fn check_specfun(p: &Parameters, seed: u64) -> Result<VerificationReport> {
    let spec = QuadratureSpec::default();
    let mut r = VerificationReport::new("specfun", params_json(p), &spec, seed);
    let pi = std::f64::consts::PI;
    let mut gamma_err: f64 = 0.0;
    for k in 0..=299 {
        let l = 0.1 + (30.0 - 0.1) * k as f64 / 299.0;
        let lg = log_gamma(Complex64::new(0.0, l)).re;
        // log of |Γ(iλ)|² λ sinh(πλ)/π, with sinh(πλ) = e^{πλ}(1−e^{−2πλ})/2
        let v = 2.0 * lg + l.ln() + pi * l + (-(-2.0 * pi * l).exp()).ln_1p() - 2f64.ln() - pi.ln();
        gamma_err = gamma_err.max(v.exp_m1().abs());
    }
    let path = fixtures_dir().join("specfun_oracle.csv");
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    let mut worst = (0.0f64, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    let mut cases = 0;
    for line in text.lines().skip(1) {
        let v: Vec<f64> = line
            .split(',')
            .map(|s| s.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Precondition(format!("bad fixture line {line:?}: {e}")))?;
        let args = HypergeometricArgs::new(
            Complex64::new(v[0], v[1]),
            Complex64::new(v[2], v[3]),
            Complex64::new(v[4], v[5]),
            v[6],
        );
        let want = Complex64::new(v[7], v[8]);
        let got = gauss_2f1(args)?;
        let err = (got - want).norm() / want.norm().max(f64::MIN_POSITIVE);
        if err >= worst.0 {
            worst = (err, got, want);
        }
        cases += 1;
    }
    r.lhs = worst.1.into();
    r.rhs = Some(worst.2.into());
    r.abs_err = (worst.1 - worst.2).norm();
    r.rel_err = worst.0.max(gamma_err);
    r.passed = gamma_err < TOLERANCES.gamma_identity && worst.0 < TOLERANCES.hypergeometric_oracle;
    r.params = json!({ "n": p.n, "nu": p.nu, "gamma_grid": [0.1, 30.0, 300], "hypergeometric_cases": cases });
    r.notes = format!(
        "max rel err of |Gamma(i lambda)|^2 lambda sinh(pi lambda)/pi - 1: {gamma_err:.3e}; \
         worst 2F1 rel err over {cases} oracle cases: {:.3e} (lhs/rhs above are that case)",
        worst.0
    );
    Ok(r)
}

/// Sphere-quadrature spherical kernel against its closed form at 20 seeded (λ, z, w).
pub fn check_lemma31(p: &Parameters, seed: u64) -> Result<VerificationReport> {
    let spec = QuadratureSpec::default();
    let mut rng = check_rng(seed, "lemma31");
    let mut r = VerificationReport::new("lemma31", params_json(p), &spec, seed);
    let nodes = 512;
    let mut worst: f64 = 0.0;
    let mut first = None;
    let mut samples = Vec::new();
    for _ in 0..20 {
        let l: f64 = rng.random_range(0.0..8.0);
        let z = random_ball_point(p.n, 0.7, &mut rng);
        let w = random_ball_point(p.n, 0.7, &mut rng);
        let closed = spherical_kernel(p, l, &z, &w)?;
        let quad = spherical_kernel_quadrature(p, l, &z, &w, nodes)?;
        let err = (quad - closed).norm() / closed.norm();
        if first.is_none() {
            first = Some((quad, closed));
        }
        if err > worst {
            r.abs_err = (quad - closed).norm();
        }
        worst = worst.max(err);
        samples.push(json!({ "lambda": l, "z": super::point_json(z.coords()), "w": super::point_json(w.coords()), "rel_err": err }));
    }
    let (q, c) = first.expect("20 samples");
    r.lhs = q.into();
    r.rhs = Some(c.into());
    r.ratio = (q / c).into();
    r.rel_err = worst;
    r.nodes = nodes * 20;
    r.passed = worst < TOLERANCES.lemma31;
    r.params = json!({ "n": p.n, "nu": p.nu, "sphere_nodes": nodes, "samples": samples });
    r.notes = format!("max rel err over 20 seeded samples: {worst:.3e}");
    Ok(r)
}
