use std::path::{Path, PathBuf};

use hyperball::quad::QuadratureSpec;
use hyperball::Parameters;
use serde::Deserialize;

use crate::{Common, Format, UsageError};

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    pub n: Option<usize>,
    pub nu: Option<f64>,
}

/// Contents of `--config`; every field optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub params: ParamsConfig,
    pub spec: Option<QuadratureSpec>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
}

/// Configuration after merging file and flags (flags win).
#[derive(Debug, Clone)]
pub struct Resolved {
    pub params: Parameters,
    pub spec: QuadratureSpec,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub format: Format,
}

pub const DEFAULT_N: usize = 1;
pub const DEFAULT_NU: f64 = 2.5;
pub const DEFAULT_SEED: u64 = 7;

pub fn load(path: &Path) -> Result<RunConfig, UsageError> {
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("--config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| UsageError(format!("--config {}: {e}", path.display())))
}

pub fn resolve(common: &Common) -> Result<Resolved, UsageError> {
    let file = match &common.config {
        Some(p) => load(p)?,
        None => RunConfig::default(),
    };
    let n = common.n.or(file.params.n).unwrap_or(DEFAULT_N);
    let nu = common.nu.or(file.params.nu).unwrap_or(DEFAULT_NU);
    let params = Parameters::new(n, nu).map_err(|e| UsageError(format!("--n/--nu: {e}")))?;
    let mut spec = file.spec.unwrap_or_default();
    if let Some(l) = common.lambda_max {
        spec.lambda_max = l;
    }
    if let Some(r) = common.rel_tol {
        spec.rel_tol = r;
    }
    spec.validate().map_err(|e| UsageError(format!("--lambda-max/--rel-tol: {e}")))?;
    Ok(Resolved {
        params,
        spec,
        seed: common.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
        output: common.out.clone().or(file.output),
        format: common.format.or(file.format).unwrap_or(Format::Csv),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"params":{"n":1},"bogus":1}"#).is_err());
        assert!(serde_json::from_str::<RunConfig>(r#"{"spec":{"lambda_maxx":3}}"#).is_err());
        let c: RunConfig = serde_json::from_str(r#"{"params":{"n":1,"nu":3.5},"spec":{"lambda_max":30},"seed":3,"format":"json"}"#).unwrap();
        assert_eq!(c.params.nu, Some(3.5));
        assert_eq!(c.spec.unwrap().lambda_max, 30.0);
        assert_eq!(c.format, Some(Format::Json));
    }

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join(format!("hyperball-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.json");
        std::fs::write(&path, r#"{"params":{"nu":3.5},"seed":3}"#).unwrap();
        let common = Common { config: Some(path), seed: Some(11), ..Common::default() };
        let r = resolve(&common).unwrap();
        assert_eq!(r.params.nu, 3.5);
        assert_eq!(r.seed, 11);
        assert_eq!(r.format, Format::Csv);
    }
}
