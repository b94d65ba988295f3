use hyperball::geometry::{
    bergman_distance, cosh2_distance, mobius_act, random_ball_point, random_boundary_point, random_group_element,
    BallPoint,
};
use hyperball::kernels::{heat_kernel, projector_kernel, resolvent_kernel};
use hyperball::params::discrete_spectrum;
use hyperball::quad::{integrate_ball, integrate_sphere, BallGrid, QuadratureSpec};
use hyperball::specfun::{gauss_2f1, jacobi_function, jacobi_polynomial, log_gamma, HypergeometricArgs};
use hyperball::transform::{poisson_kernel, spherical_kernel};
use hyperball::{Complex64, Parameters};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn nu_for(n: usize, frac: f64, whole: usize) -> f64 {
    n as f64 + whole as f64 + 0.05 + 0.9 * frac
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn atoms_are_consistent(n in 1usize..4, whole in 0usize..6, frac in 0.0f64..1.0) {
        let p = Parameters::new(n, nu_for(n, frac, whole)).unwrap();
        let atoms = discrete_spectrum(&p);
        prop_assert_eq!(atoms.len(), ((p.nu - p.nf()) / 2.0).floor() as usize + 1);
        for a in &atoms {
            let other = -(a.s_j + p.gap() * p.gap());
            prop_assert!((a.rho_j - other).abs() < 1e-12 * (1.0 + a.rho_j.abs()));
            prop_assert!(a.c_j > 0.0);
        }
        let q = Parameters::new(n, p.nu + 0.5).unwrap();
        prop_assert!(discrete_spectrum(&q).len() >= atoms.len());
    }

    #[test]
    fn c_j_is_twice_the_reproducing_constant(n in 1usize..4, whole in 0usize..5, frac in 0.0f64..1.0) {
        let p = Parameters::new(n, nu_for(n, frac, whole)).unwrap();
        for a in discrete_spectrum(&p) {
            let r = a.c_j / p.bergman_constant(a.j);
            prop_assert!((r - 2.0).abs() < 1e-12, "ratio {}", r);
        }
    }

    #[test]
    fn gamma_on_the_imaginary_axis(l in 0.1f64..30.0) {
        let g = log_gamma(Complex64::new(0.0, l)).re;
        let v = (2.0 * g + (l * (std::f64::consts::PI * l).sinh() / std::f64::consts::PI).ln()).exp();
        prop_assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn jacobi_three_term_recurrence(n in 1usize..4, whole in 0usize..4, frac in 0.0f64..1.0, j in 1usize..12, y in 1.0f64..9.0) {
        let (a, b) = (n as f64 - 1.0, -nu_for(n, frac, whole));
        let jf = j as f64;
        let s = 2.0 * jf + a + b;
        let lhs = 2.0 * (jf + 1.0) * (jf + a + b + 1.0) * s * jacobi_polynomial(j + 1, a, b, y);
        let t1 = (s + 1.0) * ((s + 2.0) * s * y + a * a - b * b) * jacobi_polynomial(j, a, b, y);
        let t2 = 2.0 * (jf + a) * (jf + b) * (s + 2.0) * jacobi_polynomial(j - 1, a, b, y);
        let rhs = t1 - t2;
        let scale = lhs.abs().max(t1.abs()).max(t2.abs()).max(1.0);
        prop_assert!((lhs - rhs).abs() < 1e-11 * scale, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn jacobi_function_at_atoms_is_a_polynomial(whole in 0usize..5, frac in 0.0f64..1.0, d in 0.0f64..3.0) {
        let p = Parameters::new(1, nu_for(1, frac, whole)).unwrap();
        for a in discrete_spectrum(&p) {
            let phi = jacobi_function(a.lambda_j, 0.0, -p.nu, d).unwrap();
            let poly = jacobi_polynomial(a.j, 0.0, -p.nu, (2.0 * d).cosh()) / jacobi_polynomial(a.j, 0.0, -p.nu, 1.0);
            prop_assert!((phi.re - poly).abs() < 1e-11 * poly.abs().max(1.0) && phi.im.abs() < 1e-11 * poly.abs().max(1.0));
        }
    }

    #[test]
    fn mobius_keeps_points_inside_and_distances(seed in any::<u64>(), n in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_group_element(n, 0.9, &mut rng);
        let z = random_ball_point(n, 0.95, &mut rng);
        let w = random_ball_point(n, 0.95, &mut rng);
        let gz = mobius_act(&g, &z).unwrap();
        let gw = mobius_act(&g, &w).unwrap();
        prop_assert!(gz.norm_sqr() < 1.0);
        let a = cosh2_distance(z.coords(), w.coords());
        let b = cosh2_distance(gz.coords(), gw.coords());
        prop_assert!((a - b).abs() < 1e-8 * a);
        let ch = bergman_distance(&z, &w).cosh();
        prop_assert!((ch * ch - a).abs() < 1e-13 * a.max(1.0) * 10.0);
    }

    #[test]
    fn spherical_kernel_is_even(l in 0.0f64..20.0, seed in any::<u64>()) {
        let p = Parameters::new(1, 2.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = random_ball_point(1, 0.8, &mut rng);
        let w = random_ball_point(1, 0.8, &mut rng);
        let a = spherical_kernel(&p, l, &z, &w).unwrap();
        let b = spherical_kernel(&p, -l, &z, &w).unwrap();
        prop_assert!((a - b).norm() < 1e-11 * a.norm().max(1e-300), "{} vs {}", a, b);
    }

    #[test]
    fn sphere_rule_is_exact_for_trig_polynomials(k in 0i32..16, phase in 0.0f64..6.3) {
        let v = integrate_sphere(1, |om| Complex64::new(0.0, phase).exp() * om[0].powi(k), 32).unwrap();
        let expect = if k == 0 { Complex64::new(0.0, phase).exp() } else { c(0.0) };
        prop_assert!((v - expect).norm() < 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn weighted_heat_is_isometry_invariant(seed in any::<u64>(), t in 0.2f64..1.5) {
        let p = Parameters::new(1, 2.5).unwrap();
        let spec = QuadratureSpec::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_group_element(1, 0.5, &mut rng);
        let z = random_ball_point(1, 0.5, &mut rng);
        let w = random_ball_point(1, 0.5, &mut rng);
        let weighted = |z: &BallPoint, w: &BallPoint, k: Complex64| {
            ((1.0 - z.norm_sqr()) * (1.0 - w.norm_sqr())).powf(p.nu / 2.0) * k.norm()
        };
        let a = weighted(&z, &w, heat_kernel(&p, t, &z, &w, &spec).unwrap().value);
        let (gz, gw) = (mobius_act(&g, &z).unwrap(), mobius_act(&g, &w).unwrap());
        let b = weighted(&gz, &gw, heat_kernel(&p, t, &gz, &gw, &spec).unwrap().value);
        prop_assert!((a - b).abs() < 1e-8 * a, "{} vs {}", a, b);
        let ra = weighted(&z, &w, resolvent_kernel(&p, c(2.0), &z, &w, &spec).unwrap().value);
        let rb = weighted(&gz, &gw, resolvent_kernel(&p, c(2.0), &gz, &gw, &spec).unwrap().value);
        prop_assert!((ra - rb).abs() < 1e-8 * ra);
    }

    #[test]
    fn poisson_kernel_is_entire_in_lambda(l in -5.0f64..5.0, im in -2.0f64..2.0, seed in any::<u64>()) {
        let p = Parameters::new(1, 2.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = random_ball_point(1, 0.7, &mut rng);
        let om = random_boundary_point(1, &mut rng);
        let l0 = Complex64::new(l, im);
        let f = |x: Complex64| poisson_kernel(&p, x, &z, &om).unwrap();
        // Cauchy integral for f'(l0) on a circle of radius 0.1
        let m = 64;
        let r = 0.1;
        let mut cauchy = c(0.0);
        for k in 0..m {
            let e = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / m as f64);
            cauchy += f(l0 + r * e) / (r * e);
        }
        cauchy /= m as f64;
        let h = 1e-5;
        let fd = (f(l0 + h) - f(l0 - h)) / (2.0 * h);
        prop_assert!((cauchy - fd).norm() < 1e-8 * fd.norm().max(f(l0).norm()), "{} vs {}", cauchy, fd);
    }
}

#[test]
fn ball_rule_is_exact_for_radial_polynomials() {
    let p = Parameters::new(1, 2.5).unwrap();
    let grid = BallGrid { radial: 8, angular: 4, boundary_shift: 0.0 };
    for k in 0..16 {
        let v = integrate_ball(&p, |z| c(z[0].norm_sqr().powi(k)), grid).unwrap();
        // π ∫₀¹ u^k (1−u)^{ν−2} du = π B(k+1, ν−1)
        let lb = log_gamma(c(k as f64 + 1.0)).re + log_gamma(c(p.nu - 1.0)).re - log_gamma(c(k as f64 + p.nu)).re;
        let expect = std::f64::consts::PI * lb.exp();
        assert!((v.re - expect).abs() < 1e-13 * expect, "k={k}: {v} vs {expect}");
    }
}

#[test]
fn doubling_panel_points_is_stable() {
    let p = Parameters::new(1, 2.5).unwrap();
    let spec = QuadratureSpec::default();
    let fine = QuadratureSpec { panel_points: 64, ..spec.clone() };
    let z = BallPoint::new(vec![Complex64::new(0.2, -0.1)]).unwrap();
    let w = BallPoint::new(vec![Complex64::new(-0.4, 0.3)]).unwrap();
    for t in [0.1, 0.7] {
        let a = heat_kernel(&p, t, &z, &w, &spec).unwrap().value;
        let b = heat_kernel(&p, t, &z, &w, &fine).unwrap().value;
        assert!((a - b).norm() < spec.rel_tol * a.norm());
    }
    for xi in [2.0, 9.0] {
        let a = resolvent_kernel(&p, c(xi), &z, &w, &spec).unwrap().value;
        let b = resolvent_kernel(&p, c(xi), &z, &w, &fine).unwrap().value;
        assert!((a - b).norm() < spec.rel_tol * a.norm());
    }
}

#[test]
fn projectors_vanish_off_their_own_atom() {
    // the terminating form and the Jacobi-polynomial form agree across parameters
    for nu in [3.3, 4.7, 6.1] {
        let p = Parameters::new(1, nu).unwrap();
        let z = BallPoint::new(vec![Complex64::new(0.3, 0.1)]).unwrap();
        let w = BallPoint::new(vec![Complex64::new(-0.2, 0.5)]).unwrap();
        for a in discrete_spectrum(&p) {
            let k = projector_kernel(&p, &a, &z, &w).unwrap().value;
            let x = hyperball::kernels::distance_pair(&z, &w).0;
            let f = gauss_2f1(HypergeometricArgs::real(-(a.j as f64), a.j as f64 - nu + 1.0, 1.0, -x)).unwrap();
            let expect = a.c_j * f * hyperball::kernels::log_prefactor(&p, z.coords(), w.coords()).exp();
            assert!((k - expect).norm() < 1e-12 * k.norm());
        }
    }
}
