//! Run configuration: defaults, then a TOML file (`--config` or
//! `FDQ_CONFIG`), then command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};

use fdq_core::io::json;
use fdq_core::star::{ProductKind, StarProductSpec};

pub const DEFAULT_K: usize = fdq_core::DEFAULT_ORDER;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProductChoice {
    Builtin(ProductKind),
    Custom(PathBuf),
}

impl ProductChoice {
    pub fn parse(s: &str) -> Option<Self> {
        if let Some(path) = s.strip_prefix("custom:") {
            return (!path.is_empty()).then(|| ProductChoice::Custom(PathBuf::from(path)));
        }
        match ProductKind::from_name(s) {
            Some(ProductKind::Custom) | None => None,
            Some(k) => Some(ProductChoice::Builtin(k)),
        }
    }
}

impl fmt::Display for ProductChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductChoice::Builtin(k) => f.write_str(k.name()),
            ProductChoice::Custom(p) => write!(f, "custom:{}", p.display()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub k: usize,
    pub n: usize,
    pub product: ProductChoice,
    pub seed: u64,
    pub output: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { k: DEFAULT_K, n: 1, product: ProductChoice::Builtin(ProductKind::Weyl), seed: DEFAULT_SEED, output: OutputFormat::Text }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub key: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConfigError: {}: {}", self.key, self.message)
    }
}

impl std::error::Error for ConfigError {}

fn err(key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError { key: key.into(), message: message.into() }
}

/// Values given on the command line; `None` means "not given".
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub k: Option<usize>,
    pub n: Option<usize>,
    pub product: Option<String>,
    pub seed: Option<u64>,
    pub json: bool,
    pub config: Option<PathBuf>,
}

fn positive(key: &str, v: usize) -> Result<usize, ConfigError> {
    if v == 0 {
        Err(err(key, "must be at least 1"))
    } else {
        Ok(v)
    }
}

fn product(key: &str, s: &str) -> Result<ProductChoice, ConfigError> {
    ProductChoice::parse(s).ok_or_else(|| err(key, format!("unknown product '{}' (expected weyl, wick, std or custom:<file>)", s)))
}

/// Applies a TOML document to `cfg`.
pub fn apply_toml(cfg: &mut RunConfig, text: &str) -> Result<(), ConfigError> {
    let table: toml::Table = text.parse().map_err(|e: toml::de::Error| err("config", e.message().to_string()))?;
    for (key, value) in &table {
        let int = || {
            value
                .as_integer()
                .and_then(|v| u64::try_from(v).ok())
                .ok_or_else(|| err(key, "expected a nonnegative integer"))
        };
        match key.as_str() {
            "K" => cfg.k = positive(key, int()? as usize)?,
            "n" => cfg.n = positive(key, int()? as usize)?,
            "seed" => cfg.seed = int()?,
            "product" => cfg.product = product(key, value.as_str().ok_or_else(|| err(key, "expected a string"))?)?,
            "output" => {
                cfg.output = match value.as_str() {
                    Some("text") => OutputFormat::Text,
                    Some("json") => OutputFormat::Json,
                    _ => return Err(err(key, "expected \"text\" or \"json\"")),
                }
            }
            _ => return Err(err(key, "unknown key")),
        }
    }
    Ok(())
}

/// Defaults, then the config file, then flags.
pub fn config_load(flags: &Overrides, env_config: Option<PathBuf>) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = flags.config.clone().or(env_config) {
        let text = std::fs::read_to_string(&path).map_err(|e| err("config", format!("cannot read {}: {}", path.display(), e)))?;
        apply_toml(&mut cfg, &text)?;
    }
    if let Some(k) = flags.k {
        cfg.k = positive("K", k)?;
    }
    if let Some(n) = flags.n {
        cfg.n = positive("n", n)?;
    }
    if let Some(p) = &flags.product {
        cfg.product = product("product", p)?;
    }
    if let Some(s) = flags.seed {
        cfg.seed = s;
    }
    if flags.json {
        cfg.output = OutputFormat::Json;
    }
    Ok(cfg)
}

impl RunConfig {
    /// The selected star product at this configuration's `n` and `K`.
    pub fn spec(&self) -> fdq_core::Result<StarProductSpec> {
        match &self.product {
            ProductChoice::Builtin(k) => Ok(StarProductSpec::builtin(*k, self.n, self.k).expect("built-in kind")),
            ProductChoice::Custom(path) => load_spec(path),
        }
    }
}

fn load_spec(path: &Path) -> fdq_core::Result<StarProductSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fdq_core::Error::Schema { pointer: String::new(), message: format!("cannot read {}: {}", path.display(), e) })?;
    json::from_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        assert_eq!(config_load(&Overrides::default(), None).unwrap(), RunConfig::default());
        let e = config_load(&Overrides { k: Some(0), ..Default::default() }, None).unwrap_err();
        assert_eq!(e.key, "K");
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fdq.toml");
        std::fs::write(&path, "K = 4\nproduct = \"wick\"\n").unwrap();
        let cfg = config_load(&Overrides { k: Some(8), config: Some(path.clone()), ..Default::default() }, None).unwrap();
        assert_eq!((cfg.k, cfg.product), (8, ProductChoice::Builtin(ProductKind::Wick)));
        let cfg = config_load(&Overrides::default(), Some(path)).unwrap();
        assert_eq!(cfg.k, 4);
    }

    #[test]
    fn bad_keys_are_named() {
        let mut cfg = RunConfig::default();
        assert_eq!(apply_toml(&mut cfg, "colour = 3").unwrap_err().key, "colour");
        assert_eq!(apply_toml(&mut cfg, "n = 0").unwrap_err().key, "n");
        assert_eq!(apply_toml(&mut cfg, "product = \"moyal\"").unwrap_err().key, "product");
        assert_eq!(apply_toml(&mut cfg, "output = 1").unwrap_err().key, "output");
    }
}
