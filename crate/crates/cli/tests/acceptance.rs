//! Acceptance run: one line per criterion.
//!
//! Criteria 1-12 are read from the reports of `verify all --seed 7`; criterion 13
//! reruns it into a second directory and compares the files byte for byte.
//! Criteria 8 and 11 are known to fail at the printed constants; the target exits
//! nonzero only when an outcome differs from the recorded expectation.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

const CRITERIA: &[(u32, &str, &[&str], bool)] = &[
    (1, "special functions", &["specfun"], true),
    (2, "circle-average closed form", &["lemma31"], true),
    (3, "eigenfunctions", &["eigenfunctions"], true),
    (4, "intertwining", &["intertwining"], true),
    (5, "heat PDE, long time, Laplace transform", &["heat_pde"], true),
    (6, "wave PDE, oddness, W(0)", &["wave_pde"], true),
    (7, "wave equality", &["wave_equality"], true),
    (8, "sinh-support integral formula", &["prop61"], false),
    (9, "(1+x)-power integral formula", &["prop62"], true),
    (10, "Green kernel vs resolvent", &["green_resolvent"], true),
    (11, "projectors and their constants", &["projectors"], false),
    (12, "inversion and constant audit", &["inversion", "constant_audit"], true),
];

fn run_verify_all(dir: &Path) -> Result<(), String> {
    let _ = std::fs::remove_dir_all(dir);
    let out = Command::new(env!("CARGO_BIN_EXE_hyperball"))
        .args(["verify", "all", "--seed", "7", "--out"])
        .arg(dir)
        .output()
        .map_err(|e| e.to_string())?;
    print!("{}", String::from_utf8_lossy(&out.stdout));
    match out.status.code() {
        Some(0) | Some(1) => Ok(()),
        other => Err(format!("verify all exited with {other:?}: {}", String::from_utf8_lossy(&out.stderr))),
    }
}

fn report(dir: &Path, check: &str) -> Option<Value> {
    let text = std::fs::read_to_string(dir.join(format!("{check}.json"))).ok()?;
    serde_json::from_str(&text).ok()
}

fn summary(v: &Value) -> String {
    let ratio = &v["ratio"];
    format!(
        "ratio {:.10}{:+.2e}i cv {:.2e} rel {:.2e}",
        ratio["re"].as_f64().unwrap_or(f64::NAN),
        ratio["im"].as_f64().unwrap_or(f64::NAN),
        v["ratio_cv"].as_f64().unwrap_or(f64::NAN),
        v["rel_err"].as_f64().unwrap_or(f64::NAN),
    )
}

fn same_files(a: &Path, b: &Path) -> Result<usize, String> {
    let mut names: Vec<PathBuf> = std::fs::read_dir(a)
        .map_err(|e| e.to_string())?
        .map(|e| e.map(|e| e.path()).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    names.sort();
    let count_b = std::fs::read_dir(b).map_err(|e| e.to_string())?.count();
    if names.len() != count_b {
        return Err(format!("{} files vs {count_b}", names.len()));
    }
    for path in &names {
        let name = path.file_name().unwrap();
        let x = std::fs::read(path).map_err(|e| e.to_string())?;
        let y = std::fs::read(b.join(name)).map_err(|e| format!("{}: {e}", name.to_string_lossy()))?;
        if x != y {
            return Err(format!("{} differs", name.to_string_lossy()));
        }
    }
    Ok(names.len())
}

fn main() {
    let root = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    let (dir_a, dir_b) = (root.join("a"), root.join("b"));
    if let Err(e) = run_verify_all(&dir_a) {
        eprintln!("{e}");
        std::process::exit(1);
    }

    let mut lines = Vec::new();
    let mut unexpected = 0;
    for &(id, label, checks, expect_pass) in CRITERIA {
        let reports: Vec<_> = checks.iter().map(|c| (c, report(&dir_a, c))).collect();
        let passed = reports.iter().all(|(_, r)| r.as_ref().is_some_and(|v| v["passed"] == Value::Bool(true)));
        let detail: Vec<String> = reports
            .iter()
            .map(|(c, r)| match r {
                Some(v) => format!("{c}: {}; {}", summary(v), v["notes"].as_str().unwrap_or("")),
                None => format!("{c}: no report"),
            })
            .collect();
        if passed != expect_pass {
            unexpected += 1;
        }
        lines.push(format!(
            "criterion {id:>2} [{label}] {} (expected {}) | {}",
            if passed { "PASS" } else { "FAIL" },
            if expect_pass { "PASS" } else { "FAIL" },
            detail.join(" | ")
        ));
    }

    let det = run_verify_all(&dir_b).and_then(|_| same_files(&dir_a, &dir_b));
    match &det {
        Ok(k) => lines.push(format!("criterion 13 [determinism] PASS (expected PASS) | {k} report files byte-identical")),
        Err(e) => {
            unexpected += 1;
            lines.push(format!("criterion 13 [determinism] FAIL (expected PASS) | {e}"));
        }
    }

    println!();
    for l in &lines {
        println!("{l}");
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criterion outcome(s) differ from expectation");
        std::process::exit(1);
    }
}
