use std::path::PathBuf;

use hyperball::geometry::{BallPoint, BoundaryPoint};
use hyperball::kernels::{
    closed_form_wave_kernel, functional_calculus, green_kernel, heat_kernel, projector_kernel, spectral_density_continuous,
};
use hyperball::params::discrete_spectrum;
use hyperball::quad::{BallGrid, QuadratureSpec};
use hyperball::specfun::harish_chandra_c;
use hyperball::transform::{fh_forward, poisson_kernel, radial_bump};
use hyperball::{Complex64, Parameters};

struct Row {
    kind: String,
    p: Parameters,
    arg: f64,
    z: Vec<Complex64>,
    w: Vec<Complex64>,
    value: Complex64,
}

fn fixtures_dir() -> PathBuf {
    std::env::var_os("HYPERBALL_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"))
}

fn parse_point(s: &str) -> Vec<Complex64> {
    s.split(';')
        .map(|c| {
            let (re, im) = c.split_once(':').unwrap();
            Complex64::new(re.parse().unwrap(), im.parse().unwrap())
        })
        .collect()
}

fn load() -> Vec<Row> {
    let text = std::fs::read_to_string(fixtures_dir().join("kernel_oracle.csv")).unwrap();
    text.lines()
        .skip(1)
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            let arg = f[3].split_once('=').unwrap().1.trim_end_matches('i').parse().unwrap();
            Row {
                kind: f[0].to_string(),
                p: Parameters::new(f[1].parse().unwrap(), f[2].parse().unwrap()).unwrap(),
                arg,
                z: parse_point(f[4]),
                w: parse_point(f[5]),
                value: Complex64::new(f[6].parse().unwrap(), f[7].parse().unwrap()),
            }
        })
        .collect()
}

fn ball(v: &[Complex64]) -> BallPoint {
    BallPoint::new(v.to_vec()).unwrap()
}

#[test]
fn kernels_match_pinned_oracle() {
    let spec = QuadratureSpec::default();
    let rows = load();
    assert_eq!(rows.len(), 9);
    for r in rows {
        let (got, tol) = match r.kind.as_str() {
            "density" => (spectral_density_continuous(&r.p, r.arg, &ball(&r.z), &ball(&r.w)).unwrap().value, 1e-12),
            "heat" => (heat_kernel(&r.p, r.arg, &ball(&r.z), &ball(&r.w), &spec).unwrap().value, 1e-10),
            "closed_wave" => (closed_form_wave_kernel(&r.p, r.arg, &ball(&r.z), &ball(&r.w)).unwrap().value, 1e-12),
            "green" => (green_kernel(&r.p, Complex64::new(0.0, r.arg), &ball(&r.z), &ball(&r.w)).unwrap().value, 1e-12),
            "poisson" => {
                let om = BoundaryPoint::new(r.w.clone()).unwrap();
                (poisson_kernel(&r.p, Complex64::new(r.arg, 0.0), &ball(&r.z), &om).unwrap(), 1e-14)
            }
            "c_function" => (harish_chandra_c(&r.p, r.arg).unwrap(), 1e-13),
            "fh_forward_bump" => {
                let om = BoundaryPoint::new(r.w.clone()).unwrap();
                let v = fh_forward(&r.p, |z| radial_bump(z, 0.85), 0.85, Complex64::new(r.arg, 0.0), &om, BallGrid::default());
                (v.unwrap(), 1e-8)
            }
            other => panic!("unknown fixture kind {other}"),
        };
        let err = (got - r.value).norm() / r.value.norm();
        assert!(err < tol, "{} {}: got {got}, want {} (rel {err:e})", r.kind, r.arg, r.value);
    }
}

#[test]
fn functional_calculus_reproduces_heat_and_atoms() {
    let p = Parameters::new(1, 2.5).unwrap();
    let spec = QuadratureSpec { lambda_max: 12.0, ..QuadratureSpec::default() };
    let z = ball(&[Complex64::new(0.1, -0.2)]);
    let w = ball(&[Complex64::new(0.35, 0.1)]);
    let t = 0.5;
    let fc = functional_calculus(&p, |s| Complex64::new((-t * s).exp(), 0.0), &z, &w, &spec).unwrap().value;
    let heat = heat_kernel(&p, t, &z, &w, &QuadratureSpec::default()).unwrap().value;
    let shifted = heat * (t * p.gap() * p.gap()).exp();
    assert!((fc - shifted).norm() < 1e-9 * shifted.norm(), "{fc} vs {shifted}");

    let atoms = discrete_spectrum(&p);
    let s0 = atoms[0].s_j;
    let ind = functional_calculus(&p, |s| Complex64::new(if s == s0 { 1.0 } else { 0.0 }, 0.0), &z, &w, &spec).unwrap();
    let k0 = projector_kernel(&p, &atoms[0], &z, &w).unwrap().value;
    assert!((ind.value - k0).norm() < 1e-14 * k0.norm());
    let zero = functional_calculus(&p, |_| Complex64::new(0.0, 0.0), &z, &w, &spec).unwrap().value;
    assert_eq!(zero, Complex64::new(0.0, 0.0));
}
