use std::path::PathBuf;

use hyperball::specfun::{gauss_2f1, gauss_2f1_eval, log_gamma, HypergeometricArgs};
use hyperball::Complex64;

fn fixtures_dir() -> PathBuf {
    std::env::var_os("HYPERBALL_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"))
}

fn load() -> Vec<(HypergeometricArgs, Complex64)> {
    let text = std::fs::read_to_string(fixtures_dir().join("specfun_oracle.csv")).unwrap();
    text.lines()
        .skip(1)
        .map(|line| {
            let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
            let args = HypergeometricArgs::new(
                Complex64::new(v[0], v[1]),
                Complex64::new(v[2], v[3]),
                Complex64::new(v[4], v[5]),
                v[6],
            );
            (args, Complex64::new(v[7], v[8]))
        })
        .collect()
}

#[test]
fn hypergeometric_matches_oracle() {
    let cases = load();
    assert_eq!(cases.len(), 200);
    let mut worst = 0.0_f64;
    for (i, (args, expect)) in cases.iter().enumerate() {
        let ev = gauss_2f1_eval(*args).unwrap();
        let rel = (ev.value - expect).norm() / expect.norm();
        worst = worst.max(rel);
        assert!(rel < 1e-10, "case {i}: {args:?} got {} ({:?}) want {expect}, rel {rel:e}", ev.value, ev.route);
    }
    eprintln!("worst relative error {worst:e}");
}

#[test]
fn documented_anchor() {
    // ((n−ν−iλ)/2, (n−ν+iλ)/2; n; −0.5) at n=1, ν=2.5, λ=1
    let (args, expect) = load()[3];
    assert_eq!(args.x, -0.5);
    let v = gauss_2f1(args).unwrap();
    assert!((v - expect).norm() < 1e-13 * expect.norm());
}

#[test]
fn gamma_reflection_on_imaginary_axis() {
    for k in 0..=299 {
        let lam = 0.1 + 0.1 * k as f64;
        let g2 = (2.0 * log_gamma(Complex64::new(0.0, lam)).re).exp();
        let v = g2 * lam * (std::f64::consts::PI * lam).sinh() / std::f64::consts::PI;
        assert!((v - 1.0).abs() < 1e-12, "lambda {lam}: {v}");
    }
}
