//! Gauss hypergeometric function ₂F₁(a,b;c;x) for real x < 1.

use num_complex::Complex64;

use super::gamma::{is_nonpositive_integer, log_rgamma, log_gamma};
use crate::error::{Error, Result};

const SERIES_TOL: f64 = 1e-15;
const MAX_TERMS: usize = 1_000_000;

/// Parameters of one ₂F₁ evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeometricArgs {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub x: f64,
}

impl HypergeometricArgs {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Self {
        Self { a, b, c, x }
    }

    pub fn real(a: f64, b: f64, c: f64, x: f64) -> Self {
        Self::new(a.into(), b.into(), c.into(), x)
    }
}

/// Which evaluation route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Trivial,
    Terminating,
    Direct,
    PfaffA,
    PfaffB,
    Connection,
}

#[derive(Debug, Clone, Copy)]
pub struct Evaluation {
    pub value: Complex64,
    pub route: Route,
    pub terms: usize,
    /// Rounding-error estimate relative to |value|, from the largest summand.
    pub rel_error: f64,
}

struct Series {
    sum: Complex64,
    max_term: f64,
    terms: usize,
}

/// Non-positive integer value of `z`, if any.
fn nonpositive_int(z: Complex64) -> Option<usize> {
    if is_nonpositive_integer(z) {
        Some((-z.re.round()) as usize)
    } else {
        None
    }
}

/// Neumaier-compensated complex accumulator.
#[derive(Default, Clone, Copy)]
struct KahanC {
    re: f64,
    im: f64,
    cre: f64,
    cim: f64,
}

impl KahanC {
    fn add(&mut self, v: Complex64) {
        let two_sum = |s: &mut f64, c: &mut f64, x: f64| {
            let t = *s + x;
            if s.abs() >= x.abs() {
                *c += (*s - t) + x;
            } else {
                *c += (x - t) + *s;
            }
            *s = t;
        };
        two_sum(&mut self.re, &mut self.cre, v.re);
        two_sum(&mut self.im, &mut self.cim, v.im);
    }

    fn value(&self) -> Complex64 {
        Complex64::new(self.re + self.cre, self.im + self.cim)
    }
}

/// Maclaurin series. Terminates exactly when a or b is a non-positive integer.
fn series(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Series> {
    let stop = match (nonpositive_int(a), nonpositive_int(b)) {
        (Some(m), Some(k)) => Some(m.min(k)),
        (Some(m), None) | (None, Some(m)) => Some(m),
        (None, None) => None,
    };
    if let Some(m) = nonpositive_int(c) {
        if stop.is_none_or(|k| k > m) {
            return Err(Error::HypergeometricPole(c.re));
        }
    }
    let mut acc = KahanC::default();
    let mut term = Complex64::new(1.0, 0.0);
    acc.add(term);
    let mut max_term = 1.0_f64;
    // past this index every factor (a+m), (b+m), (c+m) has positive real part
    let settled = a.re.min(b.re).min(c.re).min(0.0).abs().ceil() as usize + 2;
    let mut m = 0usize;
    loop {
        if let Some(k) = stop {
            if m >= k {
                return Ok(Series { sum: acc.value(), max_term, terms: m + 1 });
            }
        }
        let mf = m as f64;
        let factor = (a + mf) * (b + mf) / ((c + mf) * (mf + 1.0)) * x;
        term *= factor;
        acc.add(term);
        m += 1;
        let tn = term.norm();
        max_term = max_term.max(tn);
        if stop.is_none() && m > settled {
            let r = factor.norm().max(x.abs());
            let s = acc.value().norm();
            if r < 1.0 && tn * r / (1.0 - r) <= SERIES_TOL * s {
                return Ok(Series { sum: acc.value(), max_term, terms: m + 1 });
            }
            if tn == 0.0 {
                return Ok(Series { sum: acc.value(), max_term, terms: m + 1 });
            }
        }
        if m >= MAX_TERMS {
            let v = acc.value();
            return Err(Error::NoConvergence { terms: m, partial_re: v.re, partial_im: v.im });
        }
        if !term.re.is_finite() || !term.im.is_finite() {
            let v = acc.value();
            return Err(Error::NoConvergence { terms: m, partial_re: v.re, partial_im: v.im });
        }
    }
}

fn rel_err(s: &Series, scale: f64, value: Complex64) -> f64 {
    let v = value.norm();
    if v == 0.0 {
        f64::INFINITY
    } else {
        f64::EPSILON * (s.terms as f64).sqrt() * s.max_term * scale / v
    }
}

/// ₂F₁(a,b;c;x).
pub fn gauss_2f1(args: HypergeometricArgs) -> Result<Complex64> {
    gauss_2f1_eval(args).map(|e| e.value)
}

/// ₂F₁ with route and error diagnostics.
///
/// Zones: x = 0 trivial; terminating parameters summed exactly; 0 < x < 1 by
/// the Maclaurin series; x < 0 by whichever of the two Pfaff forms and the
/// 1/(1−x) connection formula has the smallest cancellation estimate.
pub fn gauss_2f1_eval(args: HypergeometricArgs) -> Result<Evaluation> {
    let HypergeometricArgs { a, b, c, x } = args;
    if !x.is_finite() || x >= 1.0 {
        return Err(Error::Precondition(format!("2F1 argument x = {x} must be finite and < 1")));
    }
    if x == 0.0 {
        return Ok(Evaluation { value: Complex64::new(1.0, 0.0), route: Route::Trivial, terms: 1, rel_error: 0.0 });
    }
    if nonpositive_int(a).is_some() || nonpositive_int(b).is_some() {
        return terminating(a, b, c, x);
    }
    if nonpositive_int(c).is_some() {
        return Err(Error::HypergeometricPole(c.re));
    }
    if x > 0.0 {
        let s = series(a, b, c, x)?;
        let e = rel_err(&s, 1.0, s.sum);
        return Ok(Evaluation { value: s.sum, route: Route::Direct, terms: s.terms, rel_error: e });
    }

    let amb = a - b;
    let amb_integral = amb.im.abs() < 1e-12 && (amb.re - amb.re.round()).abs() < 1e-6;
    // far from 0 the Pfaff argument crowds 1; the connection sum is short there
    if x < -3.0 && !amb_integral {
        if let Ok(ev) = connection(a, b, c, x) {
            if ev.rel_error < 1e-13 {
                return Ok(ev);
            }
        }
    }

    let z = x / (x - 1.0);
    let ln1mx = (1.0 - x).ln();
    let mut best: Option<Evaluation> = None;
    fn consider(best: &mut Option<Evaluation>, cand: Evaluation) {
        if best.is_none_or(|b| cand.rel_error < b.rel_error) {
            *best = Some(cand);
        }
    }

    // Pfaff: (1−x)^{−a} F(a, c−b; c; z)  and  (1−x)^{−b} F(c−a, b; c; z)
    let pfaff_a_terminates = nonpositive_int(c - b).is_some();
    let pfaff_b_terminates = nonpositive_int(c - a).is_some();
    let mut last_err = None;
    for (route, p, q, e) in [(Route::PfaffA, a, c - b, a), (Route::PfaffB, c - a, b, b)] {
        if route == Route::PfaffB && pfaff_a_terminates {
            continue;
        }
        if route == Route::PfaffA && pfaff_b_terminates && !pfaff_a_terminates {
            continue;
        }
        match series(p, q, c, z) {
            Ok(s) => {
                let value = s.sum * (-e * ln1mx).exp();
                let err = rel_err(&s, 1.0, s.sum);
                consider(&mut best, Evaluation { value, route, terms: s.terms, rel_error: err });
            }
            Err(err) => last_err = Some(err),
        }
    }
    let needs_more = best.is_none_or(|b| b.rel_error > 1e-14 || b.terms > 2000);
    if needs_more && !amb_integral {
        match connection(a, b, c, x) {
            Ok(ev) => consider(&mut best, ev),
            Err(err) => last_err = Some(err),
        }
    }
    match best {
        Some(ev) => Ok(ev),
        None => Err(last_err.unwrap_or_else(|| Error::Other("2F1: no route available".into()))),
    }
}

/// Polynomial case. The direct sum can cancel badly for x near 1, so the
/// Pfaff form and the 1−x reflection (DLMF 15.8.7) are also tried and the
/// best-conditioned sum is kept.
fn terminating(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Evaluation> {
    let s = series(a, b, c, x)?;
    let mut best = Evaluation { value: s.sum, route: Route::Terminating, terms: s.terms, rel_error: rel_err(&s, 1.0, s.sum) };
    if best.rel_error < 1e-14 || nonpositive_int(c).is_some() {
        return Ok(best);
    }
    let (a, b) = match (nonpositive_int(a), nonpositive_int(b)) {
        (Some(ka), Some(kb)) if kb < ka => (b, a),
        (None, Some(_)) => (b, a),
        _ => (a, b),
    };
    let m = nonpositive_int(a).unwrap_or(0);
    let mut cands = Vec::new();
    if let Ok(s) = series(a, c - b, c, x / (x - 1.0)) {
        let pre = (1.0 - x).powi(m as i32);
        cands.push((s, Complex64::new(pre, 0.0)));
    }
    let c2 = b - c - (m as f64) + 1.0;
    if nonpositive_int(c2).is_none_or(|k| k >= m) {
        if let Ok(s) = series(a, b, c2, 1.0 - x) {
            let mut pre = Complex64::new(1.0, 0.0);
            for i in 0..m {
                pre *= (c - b + i as f64) / (c + i as f64);
            }
            cands.push((s, pre));
        }
    }
    for (s, pre) in cands {
        let value = s.sum * pre;
        let err = rel_err(&s, 1.0, s.sum) + 4.0 * m as f64 * f64::EPSILON;
        if value.norm().is_finite() && err < best.rel_error {
            best = Evaluation { value, route: Route::Terminating, terms: s.terms, rel_error: err };
        }
    }
    Ok(best)
}

/// DLMF 15.8.2 with w = 1/(1−x) ∈ (0,1).
fn connection(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Evaluation> {
    let w = 1.0 / (1.0 - x);
    let ln1mx = (1.0 - x).ln();
    let one = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut err_abs = 0.0;
    let mut terms = 0;
    let lgc = log_gamma(c);
    for (p, q) in [(a, b), (b, a)] {
        // Γ(c)Γ(q−p)/(Γ(q)Γ(c−p)) (1−x)^{−p} F(p, c−q; p−q+1; w)
        let (Some(r1), Some(r2)) = (log_rgamma(q), log_rgamma(c - p)) else {
            continue;
        };
        let log_coef = lgc + log_gamma(q - p) + r1 + r2 - p * ln1mx;
        let s = series(p, c - q, p - q + one, w)?;
        let coef = log_coef.exp();
        let part = coef * s.sum;
        err_abs += f64::EPSILON * (s.terms as f64).sqrt() * coef.norm() * s.max_term
            + 1e-15 * log_coef.norm().max(1.0) * part.norm();
        acc += part;
        terms += s.terms;
    }
    let v = acc.norm();
    let rel_error = if v > 0.0 { err_abs / v } else { f64::INFINITY };
    Ok(Evaluation { value: acc, route: Route::Connection, terms, rel_error })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn closed_forms() {
        let v = gauss_2f1(HypergeometricArgs::new(c(0.7, 0.0), c(0.0, -1.2), c(2.5, 0.0), 0.0)).unwrap();
        assert_eq!(v, c(1.0, 0.0));
        let v = gauss_2f1(HypergeometricArgs::real(0.5, 3.0, 3.0, -3.0)).unwrap();
        assert!((v - 0.5).norm() < 1e-15);
        let v = gauss_2f1(HypergeometricArgs::real(1.0, 1.0, 2.0, -1.0)).unwrap();
        assert!((v.re - std::f64::consts::LN_2).abs() < 1e-15);
        // −ln(1−x)/x at x = 0.8
        let v = gauss_2f1(HypergeometricArgs::real(1.0, 1.0, 2.0, 0.8)).unwrap();
        assert!((v.re - 5f64.ln() / 0.8).abs() < 1e-13);
    }

    #[test]
    fn pole_and_domain() {
        assert!(matches!(
            gauss_2f1(HypergeometricArgs::real(0.5, 0.5, -2.0, -0.3)),
            Err(Error::HypergeometricPole(_))
        ));
        // terminating before the c-pole is fine
        assert!(gauss_2f1(HypergeometricArgs::real(-1.0, 0.5, -2.0, -0.3)).is_ok());
        assert!(gauss_2f1(HypergeometricArgs::real(0.5, 0.5, 1.0, 1.0)).is_err());
    }

    #[test]
    fn connection_agrees_with_pfaff() {
        let a = c(-0.75, -7.5);
        let b = c(-0.75, 7.5);
        let x = -20.0;
        let p = gauss_2f1_eval(HypergeometricArgs::new(a, b, c(1.0, 0.0), x)).unwrap();
        let q = connection(a, b, c(1.0, 0.0), x).unwrap();
        assert!((p.value - q.value).norm() < 1e-11 * p.value.norm().max(1e-300), "{:?} {:?}", p, q.value);
    }
}
