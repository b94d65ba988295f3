use std::path::PathBuf;

use hyperball::verify::{check_registry, find_check, run_check, Check, CheckArgs, CheckContext};

use crate::config::resolve;
use crate::grid::parse_point;
use crate::{Common, Scalars, UsageError};

pub const DEFAULT_REPORT_DIR: &str = "reports";

pub fn run(name: &str, common: &Common, scalars: &Scalars, x: Option<f64>) -> Result<u8, UsageError> {
    let checks: Vec<Box<dyn Check>> = if name == "all" {
        check_registry()
    } else {
        vec![find_check(name).ok_or_else(|| {
            let names: Vec<_> = check_registry().iter().map(|c| c.name()).collect();
            UsageError(format!("unknown check `{name}`; expected `all` or one of {}", names.join(", ")))
        })?]
    };
    let cfg = resolve(common)?;
    let n = cfg.params.n;
    let args = CheckArgs {
        t: scalars.t,
        x,
        mu: scalars.mu,
        z: scalars.z.as_deref().map(|s| parse_point(s, n, "--z")).transpose()?,
        w: scalars.w.as_deref().map(|s| parse_point(s, n, "--w")).transpose()?,
    };
    let dir = cfg.output.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_REPORT_DIR));
    std::fs::create_dir_all(&dir).map_err(|e| UsageError(format!("--out {}: {e}", dir.display())))?;
    let ctx = CheckContext::new(cfg.params, cfg.spec.clone(), cfg.seed).with_args(args);

    println!("{:<16} {:>24} {:>12} {:>7}", "check", "ratio", "cv", "passed");
    let mut all_passed = true;
    for check in &checks {
        match run_check(check.as_ref(), &ctx) {
            Ok(r) => {
                let path = dir.join(format!("{}.json", r.check));
                let mut text = r.to_json();
                text.push('\n');
                std::fs::write(&path, text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
                let ratio = format!("{:.10}{:+.3e}i", r.ratio.re, r.ratio.im);
                println!("{:<16} {:>24} {:>12.3e} {:>7}", r.check, ratio, r.ratio_cv, r.passed);
                all_passed &= r.passed;
            }
            Err(e) => {
                println!("{:<16} {:>24} {:>12} {:>7}", check.name(), "error", "-", false);
                eprintln!("{}: {e}", check.name());
                all_passed = false;
            }
        }
    }
    Ok(if all_passed { 0 } else { 1 })
}
