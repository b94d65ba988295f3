//! Audit harness. Each check evaluates one identity over a seeded sample
//! set and returns a [`VerificationReport`]; ratio-mode checks pass on the
//! spread of LHS/RHS across samples, never on the ratio being 1.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::path::PathBuf;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::params::Parameters;
use crate::quad::QuadratureSpec;

mod constants;
mod identities;
mod pde;
mod special;

pub use constants::{check_delta_pairing, check_inversion, check_projectors, check_semigroup, constant_audit};
pub use identities::{
    check_green_resolvent, check_prop61, check_prop62, check_wave_equality, prop61_rhs, prop62_lhs, prop62_rhs,
    Prop61Variant, Prop62Variant,
};
pub use pde::{check_eigenfunctions, check_heat_pde, check_intertwining, check_wave_pde};
pub use special::{check_lemma31, check_specfun};

/// Every tolerance used by the harness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub gamma_identity: f64,
    pub hypergeometric_oracle: f64,
    pub lemma31: f64,
    pub eigenfunction: f64,
    pub intertwining: f64,
    pub heat_pde: f64,
    pub heat_long_time: f64,
    pub heat_laplace: f64,
    pub wave_pde: f64,
    pub wave_symmetry: f64,
    pub wave_equality_cv: f64,
    pub prop61_cv: f64,
    pub prop62_cv: f64,
    pub prop62_tail: f64,
    pub green_cv: f64,
    pub projector_cross: f64,
    pub projector_kappa_spread: f64,
    pub projector_constant: f64,
    pub semigroup_kappa_spread: f64,
    pub inversion_l2: f64,
    pub inversion_radial: f64,
    pub audit_spread: f64,
}

pub const TOLERANCES: Tolerances = Tolerances {
    gamma_identity: 1e-12,
    hypergeometric_oracle: 1e-10,
    lemma31: 1e-8,
    eigenfunction: 1e-5,
    intertwining: 1e-6,
    heat_pde: 1e-4,
    heat_long_time: 1e-6,
    heat_laplace: 1e-6,
    wave_pde: 1e-3,
    wave_symmetry: 1e-10,
    wave_equality_cv: 1e-3,
    prop61_cv: 1e-2,
    prop62_cv: 1e-3,
    prop62_tail: 1e-8,
    green_cv: 1e-3,
    projector_cross: 1e-6,
    projector_kappa_spread: 1e-2,
    projector_constant: 1e-12,
    semigroup_kappa_spread: 1e-2,
    inversion_l2: 1e-2,
    inversion_radial: 1e-6,
    audit_spread: 1e-2,
};

/// Complex number as `{re, im}` in reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Cx {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RhsVariant {
    pub label: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: Value,
    pub lhs: Cx,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Cx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_variants: Option<Vec<RhsVariant>>,
    pub ratio: Cx,
    pub ratio_cv: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub nodes: usize,
    pub lambda_max: f64,
    pub seed: u64,
    pub passed: bool,
    pub notes: String,
    /// Fitted global constant, for checks that measure one.
    #[serde(skip)]
    pub kappa: Option<f64>,
}

impl VerificationReport {
    pub(crate) fn new(check: &str, params: Value, spec: &QuadratureSpec, seed: u64) -> Self {
        Self {
            check: check.to_string(),
            params,
            lhs: Cx { re: 0.0, im: 0.0 },
            rhs: None,
            rhs_variants: None,
            ratio: Cx { re: 1.0, im: 0.0 },
            ratio_cv: 0.0,
            abs_err: 0.0,
            rel_err: 0.0,
            nodes: 0,
            lambda_max: spec.lambda_max,
            seed,
            passed: false,
            notes: String::new(),
            kappa: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

/// Mean ratio and coefficient of variation sqrt(mean|r−r̄|²)/|r̄|.
pub fn ratio_stats(ratios: &[Complex64]) -> (Complex64, f64) {
    if ratios.is_empty() {
        return (Complex64::new(f64::NAN, 0.0), f64::NAN);
    }
    let m = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
    let var = ratios.iter().map(|r| (r - m).norm_sqr()).sum::<f64>() / ratios.len() as f64;
    (m, var.sqrt() / m.norm())
}

/// Per-check generator: ChaCha8 seeded with `seed`, stream chosen by the check name.
pub fn check_rng(seed: u64, name: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // FNV-1a of the name
    let stream = name.bytes().fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3));
    rng.set_stream(stream);
    rng
}

pub(crate) fn params_json(p: &Parameters) -> Value {
    json!({ "n": p.n, "nu": p.nu })
}

pub(crate) fn point_json(z: &[Complex64]) -> Value {
    Value::Array(z.iter().map(|c| json!({ "re": c.re, "im": c.im })).collect())
}

pub(crate) fn fmt_c(z: Complex64) -> String {
    format!("{:.10e}{:+.10e}i", z.re, z.im)
}

/// Directory of the pinned oracle files: `HYPERBALL_FIXTURES` or the
/// repository's `fixtures/`.
pub fn fixtures_dir() -> PathBuf {
    std::env::var_os("HYPERBALL_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"))
}

/// Optional overrides of a check's default sample set.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CheckArgs {
    pub t: Option<f64>,
    pub x: Option<f64>,
    pub mu: Option<Complex64>,
    pub z: Option<Vec<Complex64>>,
    pub w: Option<Vec<Complex64>>,
}

pub struct CheckContext {
    pub p: Parameters,
    pub spec: QuadratureSpec,
    pub seed: u64,
    pub args: CheckArgs,
    kappas: RefCell<BTreeMap<String, f64>>,
}

impl CheckContext {
    pub fn new(p: Parameters, spec: QuadratureSpec, seed: u64) -> Self {
        Self { p, spec, seed, args: CheckArgs::default(), kappas: RefCell::new(BTreeMap::new()) }
    }

    pub fn with_args(mut self, args: CheckArgs) -> Self {
        self.args = args;
        self
    }

    /// κ measured by an earlier check in this context, if any.
    pub fn kappa(&self, check: &str) -> Option<f64> {
        self.kappas.borrow().get(check).copied()
    }

    fn record(&self, r: &VerificationReport) {
        if let Some(k) = r.kappa {
            self.kappas.borrow_mut().insert(r.check.clone(), k);
        }
    }

    fn require_n1(&self, check: &str) -> Result<()> {
        if self.p.n != 1 {
            return Err(Error::Precondition(format!("{check} runs at n = 1 only (got n = {})", self.p.n)));
        }
        Ok(())
    }
}

/// One named entry of `verify`.
pub trait Check: Sync {
    fn name(&self) -> &'static str;
    fn run(&self, ctx: &CheckContext) -> Result<VerificationReport>;
}

macro_rules! check {
    ($ty:ident, $name:literal, |$ctx:ident| $body:expr) => {
        struct $ty;
        impl Check for $ty {
            fn name(&self) -> &'static str {
                $name
            }
            fn run(&self, $ctx: &CheckContext) -> Result<VerificationReport> {
                $body
            }
        }
    };
}

check!(Specfun, "specfun", |ctx| check_specfun(&ctx.p, ctx.seed));
check!(Lemma31, "lemma31", |ctx| {
    ctx.require_n1("lemma31")?;
    check_lemma31(&ctx.p, ctx.seed)
});
check!(Eigen, "eigenfunctions", |ctx| check_eigenfunctions(&ctx.p, ctx.seed));
check!(Intertwining, "intertwining", |ctx| check_intertwining(&ctx.p, ctx.seed));
check!(HeatPde, "heat_pde", |ctx| {
    ctx.require_n1("heat_pde")?;
    check_heat_pde(&ctx.p, &ctx.spec, ctx.seed)
});
check!(WavePde, "wave_pde", |ctx| {
    ctx.require_n1("wave_pde")?;
    check_wave_pde(&ctx.p, &ctx.spec, ctx.seed)
});
check!(WaveEquality, "wave_equality", |ctx| {
    ctx.require_n1("wave_equality")?;
    identities::wave_equality_default(ctx)
});
check!(Prop61, "prop61", |ctx| {
    ctx.require_n1("prop61")?;
    let samples = match (ctx.args.t, ctx.args.x) {
        (Some(t), Some(x)) => vec![(t, x)],
        (Some(t), None) => vec![(t, 0.5)],
        _ => vec![(1.5, 0.5), (2.0, 0.8), (2.5, 1.2)],
    };
    check_prop61(&ctx.p, &samples, &ctx.spec, ctx.seed)
});
check!(Prop62, "prop62", |ctx| {
    ctx.require_n1("prop62")?;
    let mu = ctx.args.mu.unwrap_or(Complex64::new(0.0, 5.0));
    let xs = match ctx.args.x {
        Some(x) => vec![x],
        None => vec![0.2, 0.5, 1.0],
    };
    check_prop62(&ctx.p, mu, &xs, &ctx.spec, ctx.seed)
});
check!(GreenResolvent, "green_resolvent", |ctx| {
    ctx.require_n1("green_resolvent")?;
    identities::green_resolvent_default(ctx)
});
check!(Projectors, "projectors", |ctx| {
    ctx.require_n1("projectors")?;
    check_projectors(&ctx.p, ctx.seed)
});
check!(Semigroup, "semigroup", |ctx| {
    ctx.require_n1("semigroup")?;
    check_semigroup(&ctx.p, &ctx.spec, ctx.seed)
});
check!(Inversion, "inversion", |ctx| {
    ctx.require_n1("inversion")?;
    check_inversion(&ctx.p, ctx.seed)
});
check!(DeltaPairing, "delta_pairing", |ctx| {
    ctx.require_n1("delta_pairing")?;
    check_delta_pairing(&ctx.p, ctx.seed)
});
check!(ConstantAudit, "constant_audit", |ctx| {
    ctx.require_n1("constant_audit")?;
    constant_audit(ctx)
});

/// All checks in `verify all` order; the audit comes last so that it can
/// reuse the κ values measured before it.
pub fn check_registry() -> Vec<Box<dyn Check>> {
    vec![
        Box::new(Specfun),
        Box::new(Lemma31),
        Box::new(Eigen),
        Box::new(Intertwining),
        Box::new(HeatPde),
        Box::new(WavePde),
        Box::new(WaveEquality),
        Box::new(Prop61),
        Box::new(Prop62),
        Box::new(GreenResolvent),
        Box::new(Projectors),
        Box::new(Semigroup),
        Box::new(Inversion),
        Box::new(DeltaPairing),
        Box::new(ConstantAudit),
    ]
}

pub fn find_check(name: &str) -> Option<Box<dyn Check>> {
    check_registry().into_iter().find(|c| c.name() == name)
}

/// Runs one check and remembers its κ for the audit.
pub fn run_check(check: &dyn Check, ctx: &CheckContext) -> Result<VerificationReport> {
    let r = check.run(ctx)?;
    ctx.record(&r);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_stats_constant_and_spread() {
        let (m, cv) = ratio_stats(&[Complex64::new(2.0, 0.0); 3]);
        assert_eq!(m, Complex64::new(2.0, 0.0));
        assert_eq!(cv, 0.0);
        let (_, cv) = ratio_stats(&[Complex64::new(1.0, 0.0), Complex64::new(3.0, 0.0)]);
        assert!((cv - 0.5).abs() < 1e-15);
    }

    #[test]
    fn registry_is_unique_and_ends_with_audit() {
        let names: Vec<_> = check_registry().iter().map(|c| c.name()).collect();
        let mut s = names.clone();
        s.sort();
        s.dedup();
        assert_eq!(s.len(), names.len());
        assert_eq!(*names.last().unwrap(), "constant_audit");
    }

    #[test]
    fn streams_differ_by_name() {
        use rand::Rng;
        let a: u64 = check_rng(7, "a").random();
        let b: u64 = check_rng(7, "b").random();
        let a2: u64 = check_rng(7, "a").random();
        assert_ne!(a, b);
        assert_eq!(a, a2);
    }
}
