use std::io::Write;

use hyperball::kernels::{find_kernel, kernel_registry, Kernel, KernelValue, ScalarArguments};
use hyperball::Complex64;
use serde_json::json;

use crate::config::{resolve, Resolved};
use crate::grid::{parse_grid, parse_point};
use crate::{Common, Format, Scalars, UsageError};

struct Row {
    w: Vec<Complex64>,
    value: KernelValue,
}

fn scalar_arguments(s: &Scalars) -> ScalarArguments {
    ScalarArguments { s: s.s, lambda: s.lambda, t: s.t, xi: s.xi, mu: s.mu, j: s.j }
}

fn present(a: &ScalarArguments, name: &str) -> bool {
    match name {
        "s" => a.s.is_some(),
        "lambda" => a.lambda.is_some(),
        "t" => a.t.is_some(),
        "xi" => a.xi.is_some(),
        "mu" => a.mu.is_some(),
        "j" => a.j.is_some(),
        _ => false,
    }
}

/// Values of the kernel's scalar columns, complex ones split into re/im.
fn scalar_cells(k: &dyn Kernel, a: &ScalarArguments) -> (Vec<String>, Vec<f64>) {
    let mut names = Vec::new();
    let mut vals = Vec::new();
    for &c in k.columns() {
        let z = match c {
            "s" => a.s.map(|v| Complex64::new(v, 0.0)),
            "t" => a.t.map(|v| Complex64::new(v, 0.0)),
            "j" => a.j.map(|v| Complex64::new(v as f64, 0.0)),
            "lambda" => a.lambda,
            "xi" => a.xi,
            "mu" => a.mu,
            _ => None,
        }
        .unwrap_or_default();
        if matches!(c, "lambda" | "xi" | "mu") {
            names.push(format!("{c}_re"));
            names.push(format!("{c}_im"));
            vals.push(z.re);
            vals.push(z.im);
        } else {
            names.push(c.to_string());
            vals.push(z.re);
        }
    }
    (names, vals)
}

fn point_columns(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).flat_map(|k| [format!("{prefix}{k}_re"), format!("{prefix}{k}_im")]).collect()
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn header_line(kind: &str, cfg: &Resolved) -> String {
    let spec = serde_json::to_string(&cfg.spec).unwrap_or_default();
    format!(
        "# hyperball {} {kind} n={} nu={} seed={} spec={spec}",
        hyperball::VERSION,
        cfg.params.n,
        cfg.params.nu,
        cfg.seed
    )
}

pub fn run(kind: &str, common: &Common, scalars: &Scalars) -> Result<u8, UsageError> {
    let kernel = find_kernel(kind).ok_or_else(|| {
        let names: Vec<_> = kernel_registry().iter().map(|k| k.name()).collect();
        UsageError(format!("unknown kernel `{kind}`; expected one of {}", names.join(", ")))
    })?;
    let cfg = resolve(common)?;
    let n = cfg.params.n;
    let args = scalar_arguments(scalars);
    for r in kernel.required() {
        if !present(&args, r) {
            return Err(UsageError(format!("`eval {kind}` needs --{r}")));
        }
    }
    let z = parse_point(scalars.z.as_deref().ok_or_else(|| UsageError("missing --z".into()))?, n, "--z")?;
    let ws = match (&scalars.w, &scalars.w_grid) {
        (Some(_), Some(_)) => return Err(UsageError("give either --w or --w-grid, not both".into())),
        (Some(w), None) => vec![parse_point(w, n, "--w")?],
        (None, Some(g)) => parse_grid(g, n)?,
        (None, None) => return Err(UsageError("missing --w or --w-grid".into())),
    };
    let mut rows = Vec::with_capacity(ws.len());
    for w in ws {
        let value = kernel
            .evaluate(&cfg.params, &args, &z, &w, &cfg.spec)
            .map_err(|e| UsageError(format!("{kind} at w = ({}): {e}", w.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))))?;
        rows.push(Row { w, value });
    }
    let text = match cfg.format {
        Format::Csv => to_csv(kernel.as_ref(), kind, &cfg, &args, &z, &rows),
        Format::Json => to_json(kernel.as_ref(), kind, &cfg, &args, &z, &rows),
    };
    match &cfg.output {
        Some(path) => std::fs::write(path, text).map_err(|e| UsageError(format!("--out {}: {e}", path.display())))?,
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| UsageError(format!("stdout: {e}")))?,
    }
    let flagged = rows.iter().filter(|r| !r.value.diagnostics.converged).count();
    if flagged > 0 {
        eprintln!("warning: {flagged} row(s) carry a quadrature flag (diag_flag = 1)");
        return Ok(2);
    }
    Ok(0)
}

fn to_csv(k: &dyn Kernel, kind: &str, cfg: &Resolved, a: &ScalarArguments, z: &[Complex64], rows: &[Row]) -> String {
    let n = cfg.params.n;
    let (snames, svals) = scalar_cells(k, a);
    let mut cols = snames;
    cols.extend(point_columns("z", n));
    cols.extend(point_columns("w", n));
    cols.extend(["value_re", "value_im", "diag_nodes", "diag_flag"].map(String::from));
    let mut out = String::new();
    out.push_str(&header_line(kind, cfg));
    out.push('\n');
    out.push_str(&cols.join(","));
    out.push('\n');
    for r in rows {
        let mut cells: Vec<String> = svals.iter().map(|v| num(*v)).collect();
        for c in z.iter().chain(&r.w) {
            cells.push(num(c.re));
            cells.push(num(c.im));
        }
        cells.push(num(r.value.value.re));
        cells.push(num(r.value.value.im));
        cells.push(r.value.diagnostics.nodes.to_string());
        cells.push(if r.value.diagnostics.converged { "0" } else { "1" }.to_string());
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn to_json(k: &dyn Kernel, kind: &str, cfg: &Resolved, a: &ScalarArguments, z: &[Complex64], rows: &[Row]) -> String {
    let (snames, svals) = scalar_cells(k, a);
    let scal: serde_json::Map<String, serde_json::Value> = snames.into_iter().zip(svals).map(|(k, v)| (k, json!(v))).collect();
    let pt = |p: &[Complex64]| p.iter().map(|c| json!({ "re": c.re, "im": c.im })).collect::<Vec<_>>();
    let rows: Vec<_> = rows
        .iter()
        .map(|r| {
            json!({
                "w": pt(&r.w),
                "value": { "re": r.value.value.re, "im": r.value.value.im },
                "diag_nodes": r.value.diagnostics.nodes,
                "diag_flag": !r.value.diagnostics.converged,
            })
        })
        .collect();
    let doc = json!({
        "version": hyperball::VERSION,
        "kind": kind,
        "params": { "n": cfg.params.n, "nu": cfg.params.nu },
        "spec": cfg.spec,
        "seed": cfg.seed,
        "scalars": scal,
        "z": pt(z),
        "rows": rows,
    });
    let mut s = serde_json::to_string_pretty(&doc).unwrap_or_default();
    s.push('\n');
    s
}
